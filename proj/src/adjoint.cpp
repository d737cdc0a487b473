#include "orn/adjoint.hpp"

#include "orn/errors.hpp"

namespace orn {

Value runLeft(const IndexedFnLeft& f, const Value& i, const Value& t) {
  if (!checkValue(SetCode::mu(f.base, i), t))
    throw IllTypedValue("left argument does not inhabit its family");
  Value y = f.f(i, t);
  Value x = fold(f.base, f.alg, i, t);
  if (!checkValue(SetCode::mu(f.result, Value::pair(i, x)), y))
    throw IllTypedValue("left result misses its computed index");
  return y;
}

Value runRight(const IndexedFnRight& g, const Value& i, const Value& x,
               const Value& tx) {
  Value y = g.g(i, x, tx);
  if (!checkValue(SetCode::mu(g.result, Value::pair(i, x)), y))
    throw IllTypedValue("right result misses its index");
  return y;
}

IndexedFnRight rlAdjoint(const IndexedFnLeft& f) {
  IndexedFnRight out;
  out.base = f.base;
  out.alg = f.alg;
  out.result = f.result;
  Ornament algOrn = algebraicOrnament(f.base, f.alg);
  out.g = [f, algOrn](const Value& i, const Value& x, const Value& tx) -> Value {
    Value t = ornForget(algOrn, Value::pair(i, x), tx);
    Value recomputed = fold(f.base, f.alg, i, t);
    if (!equalValue(f.alg.carrierAt(i), recomputed, x))
      throw IndexMismatch("decorated argument does not refold to its index");
    return runLeft(f, i, t);
  };
  return out;
}

IndexedFnLeft lrAdjoint(const IndexedFnRight& g) {
  IndexedFnLeft out;
  out.base = g.base;
  out.alg = g.alg;
  out.result = g.result;
  out.f = [g](const Value& i, const Value& t) -> Value {
    Value x = fold(g.base, g.alg, i, t);
    Value tx = remember(g.base, g.alg, i, t);
    return runRight(g, i, x, tx);
  };
  return out;
}

}  // namespace orn

#pragma once

#include <functional>

#include "orn/algebraic.hpp"
#include "orn/core.hpp"

namespace orn {

// The two sides of the index-computation adjunction over a family `base`,
// an algebra `alg` on it, and a result family indexed by pairs (i, x) with
// x in the carrier at i.
//
// The left side computes its result index: f(i, t) lands in the result
// family at (i, fold alg t). The right side draws its argument from the
// algebraic ornament instead: g(i, x, tx) takes a decorated tx sitting over
// index (i, x) and lands at (i, x) directly.

struct IndexedFnLeft {
  DescFun base;
  Algebra alg;
  DescFun result;
  std::function<Value(const Value& i, const Value& t)> f;
};

struct IndexedFnRight {
  DescFun base;
  Algebra alg;
  DescFun result;
  std::function<Value(const Value& i, const Value& x, const Value& tx)> g;
};

// Run one side with its contract enforced: arguments are checked against
// their claimed sets and the result against the result family at its claimed
// index. Throws IllTypedValue. runRight trusts tx (the caller's obligation);
// the conversions below verify it by recomputation instead.
Value runLeft(const IndexedFnLeft& f, const Value& i, const Value& t);
Value runRight(const IndexedFnRight& g, const Value& i, const Value& x, const Value& tx);

// Strengthen the premise: feed the forgotten decoration to f. The index is
// transported by recomputation: fold alg (forget tx) must equal x, else
// IndexMismatch (for a well-typed tx this cannot fail; values are
// index-agnostic trees, so the transport itself is the identity).
IndexedFnRight rlAdjoint(const IndexedFnLeft& f);

// Weaken the premise: remember t into the algebraic ornament and feed it to
// g at the computed index (i, fold alg t).
IndexedFnLeft lrAdjoint(const IndexedFnRight& g);

}  // namespace orn

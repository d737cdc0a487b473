#include "orn/algebraic.hpp"

#include <utility>

#include "orn/errors.hpp"

namespace orn {

// ---- algebraic ornaments ---------------------------------------------------

namespace {

// Walk one description, building the ornament code for the branch. `build`
// completes the payload seen so far: handed the remainder from the current
// node on (with recursive positions holding fold results), it returns the
// full payload, ready for the algebra's step.
OrnCode algCode(const Desc& d, const Algebra& alg, const Value& i, const Value& x,
                const std::function<Value(const Value&)>& build) {
  switch (d.kind()) {
    case Desc::Kind::One: {
      Value result = alg.step(i, build(Value::unit()));
      SetCode carrier = alg.carrierAt(i);
      if (!checkValue(carrier, result))
        throw IllFormedAlgebra("algebra step left its carrier at " + showValue(i) +
                               ": " + showValue(result));
      SetCode constraint = SetCode::eq(carrier, result, x);
      return OrnCode::insert(constraint, [](const Value&) { return OrnCode::one(); });
    }
    case Desc::Kind::Var: {
      Value sub = d.index();
      return OrnCode::insert(alg.carrierAt(sub), [=](const Value& dec) {
        Value result = alg.step(i, build(dec));
        SetCode carrier = alg.carrierAt(i);
        if (!checkValue(carrier, result))
          throw IllFormedAlgebra("algebra step left its carrier at " + showValue(i) +
                                 ": " + showValue(result));
        SetCode constraint = SetCode::eq(carrier, result, x);
        return OrnCode::insert(constraint, [sub, dec](const Value&) {
          return OrnCode::var(Value::pair(sub, dec), sub);
        });
      });
    }
    case Desc::Kind::Sigma: {
      auto fam = d.fam();
      return OrnCode::sigma([=](const Value& s) {
        return algCode(fam(s), alg, i, x, [build, s](const Value& rest) {
          return build(Value::pair(s, rest));
        });
      });
    }
    case Desc::Kind::Pi:
      throw IllFormedOrnament("algebraic ornaments do not support pi payloads");
  }
  throw IllFormedOrnament("unreachable description kind");
}

}  // namespace

Ornament algebraicOrnament(const DescFun& d, const Algebra& alg) {
  Ornament o;
  o.name = d.name + "^";
  o.base = d;
  o.re.fancyIndexSet =
      SetCode::sigma(d.indexSet, [alg](const Value& i) { return alg.carrierAt(i); });
  o.re.down = [](const Value& ix) { return ix.first(); };
  o.at = [d, alg](const Value& ix) {
    Value i = ix.first();
    Value x = ix.second();
    return algCode(d.at(i), alg, i, x, [](const Value& rest) { return rest; });
  };
  return o;
}

namespace {

Value rememberPayload(const Desc& desc, const DescFun& d, const Algebra& alg,
                      const Value& payload) {
  switch (desc.kind()) {
    case Desc::Kind::One:
      return Value::pair(Value::refl(), Value::unit());
    case Desc::Kind::Var: {
      Value dec = fold(d, alg, desc.index(), payload);
      Value sub = remember(d, alg, desc.index(), payload);
      return Value::pair(dec, Value::pair(Value::refl(), sub));
    }
    case Desc::Kind::Sigma: {
      Value s = payload.first();
      return Value::pair(s, rememberPayload(desc.fam()(s), d, alg, payload.second()));
    }
    case Desc::Kind::Pi:
      throw IllFormedOrnament("algebraic ornaments do not support pi payloads");
  }
  throw IllFormedOrnament("unreachable description kind");
}

}  // namespace

Value remember(const DescFun& d, const Algebra& alg, const Value& i, const Value& t) {
  return Value::in(rememberPayload(d.at(i), d, alg, t.payload()));
}

Value assertRecomputation(const DescFun& d, const Algebra& alg, const Value& ix,
                          const Value& tPlus) {
  Value base = ornForget(algebraicOrnament(d, alg), ix, tPlus);
  Value recomputed = fold(d, alg, ix.first(), base);
  if (!equalValue(alg.carrierAt(ix.first()), recomputed, ix.second())) {
    throw RecomputationFailure("index decoration " + showValue(ix.second()) +
                               " disagrees with recomputed " + showValue(recomputed));
  }
  return base;
}

Algebra forgetAlgebra(const Ornament& o) {
  Algebra alg;
  alg.carrierAt = [o](const Value& j) { return SetCode::mu(o.base, o.re.down(j)); };
  alg.step = [o](const Value& j, const Value& payload) {
    return Value::in(ornForgetNat(o.base.at(o.re.down(j)), o.at(j), payload));
  };
  return alg;
}

// ---- reornaments -----------------------------------------------------------

std::vector<std::string> survivingTags(const Desc& d, const OrnCode& code,
                                       const Value& payload) {
  std::vector<std::string> live;
  for (const auto& t : code.inserted().tags()) {
    SetCode branch = extension(d, code.fam()(Value::tag(t)), payload);
    if (branch.kind() != SetCode::Kind::Empty) live.push_back(t);
  }
  return live;
}

SetCode extension(const Desc& d, const OrnCode& code, const Value& payload) {
  switch (code.kind()) {
    case OrnCode::Kind::Var:
    case OrnCode::Kind::One:
      return SetCode::unitSet();
    case OrnCode::Kind::Pi: {
      auto df = d.fam();
      auto of = code.fam();
      return SetCode::pi(d.dom(), [df, of, payload](const Value& s) {
        return extension(df(s), of(s), payload.apply(s));
      });
    }
    case OrnCode::Kind::Sigma: {
      Value s = payload.first();
      return extension(d.fam()(s), code.fam()(s), payload.second());
    }
    case OrnCode::Kind::Insert: {
      auto of = code.fam();
      if (code.inserted().kind() == SetCode::Kind::Enum) {
        std::vector<std::string> live = survivingTags(d, code, payload);
        if (live.empty()) return SetCode::emptySet();
        if (live.size() == 1)
          return extension(d, of(Value::tag(live.front())), payload);
        return SetCode::sigma(SetCode::enumSet(live), [d, of, payload](const Value& s) {
          return extension(d, of(s), payload);
        });
      }
      return SetCode::sigma(code.inserted(), [d, of, payload](const Value& s) {
        return extension(d, of(s), payload);
      });
    }
    case OrnCode::Kind::Delete: {
      // The equation is closed, so decide it instead of storing a proof.
      if (!equalValue(d.dom(), payload.first(), code.replacement()))
        return SetCode::emptySet();
      return extension(d.fam()(code.replacement()), code.rest(), payload.second());
    }
  }
  throw IllFormedOrnament("unreachable ornament code kind");
}

OrnCode structureCode(const Desc& d, const OrnCode& code, const Value& payload,
                      const Value& ext) {
  switch (code.kind()) {
    case OrnCode::Kind::Var:
      return OrnCode::var(Value::pair(code.witness().fancy, payload),
                          code.witness().fancy);
    case OrnCode::Kind::One:
      return OrnCode::one();
    case OrnCode::Kind::Pi: {
      auto df = d.fam();
      auto of = code.fam();
      return OrnCode::pi([df, of, payload, ext](const Value& s) {
        return structureCode(df(s), of(s), payload.apply(s), ext.apply(s));
      });
    }
    case OrnCode::Kind::Sigma: {
      Value s = payload.first();
      return OrnCode::del(
          s, structureCode(d.fam()(s), code.fam()(s), payload.second(), ext));
    }
    case OrnCode::Kind::Insert: {
      if (code.inserted().kind() == SetCode::Kind::Enum) {
        std::vector<std::string> live = survivingTags(d, code, payload);
        if (live.size() == 1) {
          Value s = Value::tag(live.front());
          return OrnCode::del(s, structureCode(d, code.fam()(s), payload, ext));
        }
      }
      Value s = ext.first();
      return OrnCode::del(s, structureCode(d, code.fam()(s), payload, ext.second()));
    }
    case OrnCode::Kind::Delete:
      return structureCode(d.fam()(code.replacement()), code.rest(), payload.second(),
                           ext);
  }
  throw IllFormedOrnament("unreachable ornament code kind");
}

Ornament reornament(const Ornament& o) {
  Ornament r;
  r.name = o.name + "^";
  r.base = interpOrn(o);
  r.re.fancyIndexSet = SetCode::sigma(o.re.fancyIndexSet, [o](const Value& j) {
    return SetCode::mu(o.base, o.re.down(j));
  });
  r.re.down = [](const Value& jt) { return jt.first(); };
  r.at = [o](const Value& jt) {
    Value j = jt.first();
    Desc d = o.base.at(o.re.down(j));
    OrnCode c = o.at(j);
    Value xs = jt.second().payload();
    return OrnCode::insert(extension(d, c, xs), [d, c, xs](const Value& e) {
      return structureCode(d, c, xs, e);
    });
  };
  return r;
}

namespace {

// The base payload as far as extension decisions can see it, reconstructed
// from a refined payload. Recursive positions are opaque to those decisions
// and hold a placeholder.
Value baseSkeleton(const Desc& d, const OrnCode& code, const Value& vPlus) {
  switch (code.kind()) {
    case OrnCode::Kind::Var:
    case OrnCode::Kind::One:
      return Value::unit();
    case OrnCode::Kind::Pi: {
      Value::Table out;
      for (const auto& entry : vPlus.table()) {
        out.emplace_back(entry.first, baseSkeleton(d.fam()(entry.first),
                                                   code.fam()(entry.first),
                                                   entry.second));
      }
      return Value::fun(std::move(out));
    }
    case OrnCode::Kind::Sigma:
      return Value::pair(vPlus.first(), baseSkeleton(d.fam()(vPlus.first()),
                                                     code.fam()(vPlus.first()),
                                                     vPlus.second()));
    case OrnCode::Kind::Insert:
      return baseSkeleton(d, code.fam()(vPlus.first()), vPlus.second());
    case OrnCode::Kind::Delete:
      return Value::pair(code.replacement(),
                         baseSkeleton(d.fam()(code.replacement()), code.rest(), vPlus));
  }
  throw IllFormedOrnament("unreachable ornament code kind");
}

Value extOf(const Desc& d, const OrnCode& code, const Value& vPlus) {
  switch (code.kind()) {
    case OrnCode::Kind::Var:
    case OrnCode::Kind::One:
      return Value::unit();
    case OrnCode::Kind::Pi: {
      Value::Table out;
      for (const auto& entry : vPlus.table()) {
        out.emplace_back(entry.first, extOf(d.fam()(entry.first),
                                            code.fam()(entry.first), entry.second));
      }
      return Value::fun(std::move(out));
    }
    case OrnCode::Kind::Sigma:
      return extOf(d.fam()(vPlus.first()), code.fam()(vPlus.first()), vPlus.second());
    case OrnCode::Kind::Insert: {
      if (code.inserted().kind() == SetCode::Kind::Enum &&
          survivingTags(d, code, baseSkeleton(d, code, vPlus)).size() == 1) {
        return extOf(d, code.fam()(vPlus.first()), vPlus.second());
      }
      return Value::pair(vPlus.first(),
                         extOf(d, code.fam()(vPlus.first()), vPlus.second()));
    }
    case OrnCode::Kind::Delete:
      return extOf(d.fam()(code.replacement()), code.rest(), vPlus);
  }
  throw IllFormedOrnament("unreachable ornament code kind");
}

Value structOf(const Ornament& o, const Desc& d, const OrnCode& code, const Value& vPlus) {
  switch (code.kind()) {
    case OrnCode::Kind::Var:
      return rememberReorn(o, code.witness().fancy, vPlus);
    case OrnCode::Kind::One:
      return Value::unit();
    case OrnCode::Kind::Pi: {
      Value::Table out;
      for (const auto& entry : vPlus.table()) {
        out.emplace_back(entry.first, structOf(o, d.fam()(entry.first),
                                               code.fam()(entry.first), entry.second));
      }
      return Value::fun(std::move(out));
    }
    case OrnCode::Kind::Sigma:
      return structOf(o, d.fam()(vPlus.first()), code.fam()(vPlus.first()),
                      vPlus.second());
    case OrnCode::Kind::Insert:
      return structOf(o, d, code.fam()(vPlus.first()), vPlus.second());
    case OrnCode::Kind::Delete:
      return structOf(o, d.fam()(code.replacement()), code.rest(), vPlus);
  }
  throw IllFormedOrnament("unreachable ornament code kind");
}

}  // namespace

Value rememberReorn(const Ornament& o, const Value& j, const Value& t) {
  Desc d = o.base.at(o.re.down(j));
  OrnCode c = o.at(j);
  const Value& xs = t.payload();
  return Value::in(Value::pair(extOf(d, c, xs), structOf(o, d, c, xs)));
}

Value forgetReorn(const Ornament& o, const Value& jt, const Value& w) {
  return ornForget(reornament(o), jt, w);
}

}  // namespace orn

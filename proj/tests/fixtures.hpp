#pragma once

// Hand-built ornaments and algebras shared across test files. These are
// fixtures (inputs under test), not oracles; the independent expectations
// live in oracles.hpp.

#include <string>
#include <vector>

#include "oracles.hpp"
#include "orn/funorn.hpp"
#include "orn/lift.hpp"
#include "orn/ornament.hpp"

namespace fixtures {

using namespace orn;

inline SetCode elemSet() { return SetCode::enumSet({"x", "y"}); }

// Lists refine the naturals: a fresh constructor enum replaces zero/suc and
// the suc branch gains an element.
inline Ornament listOrn() {
  Ornament o;
  o.name = "List";
  o.base = oracle::natDesc();
  o.re.fancyIndexSet = SetCode::unitSet();
  o.re.down = [](const Value&) { return Value::unit(); };
  o.at = [](const Value&) {
    return OrnCode::insert(SetCode::enumSet({"nil", "cons"}), [](const Value& t) {
      if (t.tagName() == "nil") return OrnCode::del(Value::tag("zero"), OrnCode::one());
      return OrnCode::del(Value::tag("suc"), OrnCode::insert(elemSet(), [](const Value&) {
                            return OrnCode::var(Value::unit(), Value::unit());
                          }));
    });
  };
  return o;
}

// Maybe refines the booleans: just carries an element over true, nothing
// sits over false.
inline Ornament maybeOrn() {
  Ornament o;
  o.name = "Maybe";
  o.base = oracle::boolDesc();
  o.re.fancyIndexSet = SetCode::unitSet();
  o.re.down = [](const Value&) { return Value::unit(); };
  o.at = [](const Value&) {
    return OrnCode::insert(SetCode::enumSet({"nothing", "just"}), [](const Value& t) {
      if (t.tagName() == "nothing")
        return OrnCode::del(Value::tag("false"), OrnCode::one());
      return OrnCode::del(Value::tag("true"), OrnCode::insert(elemSet(), [](const Value&) {
                            return OrnCode::one();
                          }));
    });
  };
  return o;
}

// Vectors refine lists with a length index; the refined index decides the
// constructor, so both list tags are deleted.
inline Ornament vecOrn() {
  Ornament o;
  o.name = "Vector";
  o.base = oracle::listDesc({"x", "y"});
  o.re.fancyIndexSet = oracle::natSet();
  o.re.down = [](const Value&) { return Value::unit(); };
  o.at = [](const Value& n) {
    if (n.payload().first().tagName() == "zero")
      return OrnCode::del(Value::tag("nil"), OrnCode::one());
    Value m = n.payload().second();
    return OrnCode::del(Value::tag("cons"), OrnCode::sigma([m](const Value&) {
                          return OrnCode::var(m, Value::unit());
                        }));
  };
  return o;
}

// Folding a list to its length.
inline Algebra lengthAlgebra() {
  Algebra alg;
  alg.carrierAt = [](const Value&) { return oracle::natSet(); };
  alg.step = [](const Value&, const Value& payload) {
    if (payload.first().tagName() == "nil") return oracle::nat(0);
    return Value::in(Value::pair(Value::tag("suc"), payload.second().second()));
  };
  return alg;
}

// Values of the refined maybe family.
inline Value nothing() {
  return Value::in(Value::pair(Value::tag("nothing"), Value::unit()));
}
inline Value just(const std::string& t) {
  return Value::in(Value::pair(Value::tag("just"), Value::pair(Value::tag(t), Value::unit())));
}

// ---- signature slots and base functions -------------------------------------

inline TypeSlot natSlot() { return TypeSlot{oracle::natDesc(), Value::unit()}; }
inline TypeSlot boolSlot() { return TypeSlot{oracle::boolDesc(), Value::unit()}; }
inline TypeSlot listSlot() { return TypeSlot{oracle::listDesc({"x", "y"}), Value::unit()}; }

inline BaseFn lessThanFn() {
  BaseFn f;
  f.name = "lessThan";
  f.type = FunType{{natSlot(), natSlot()}, {boolSlot()}};
  f.run = [](const std::vector<Value>& a) {
    return std::vector<Value>{oracle::boolVal(oracle::natOf(a[0]) < oracle::natOf(a[1]))};
  };
  return f;
}

inline BaseFn isSucFn() {
  BaseFn f;
  f.name = "isSuc";
  f.type = FunType{{natSlot()}, {boolSlot()}};
  f.run = [](const std::vector<Value>& a) {
    return std::vector<Value>{oracle::boolVal(oracle::natOf(a[0]) > 0)};
  };
  return f;
}

inline BaseFn plusFn() {
  BaseFn f;
  f.name = "plus";
  f.type = FunType{{natSlot(), natSlot()}, {natSlot()}};
  f.run = [](const std::vector<Value>& a) {
    return std::vector<Value>{oracle::nat(oracle::natOf(a[0]) + oracle::natOf(a[1]))};
  };
  return f;
}

// Elements stored in a decoration of the list ornament's reornament, i.e. in
// a computed-index vector.
inline std::vector<std::string> decorElems(const Value& w) {
  std::vector<std::string> out;
  Value node = w;
  while (true) {
    // The constructor choice is recomputable, so a node stores only its
    // inserted element: nil nodes keep unit, cons nodes keep (element, unit).
    Value ext = node.payload().first();
    if (!ext.isPair()) return out;
    out.push_back(ext.first().tagName());
    node = node.payload().second();
  }
}

// Decorations of the two reornaments used throughout the lift tests.
inline Value listDecor(const std::vector<std::string>& items) {
  return rememberReorn(listOrn(), Value::unit(), oracle::list(items));
}
inline Value maybeDecor(const Value& m) {
  return rememberReorn(maybeOrn(), Value::unit(), m);
}

// ---- scripted definitions and lifting scripts --------------------------------

inline ScriptEnv scriptEnv() {
  ScriptEnv env;
  env.addFamily(oracle::natDesc());
  env.addFamily(oracle::boolDesc());
  env.addFamily(oracle::listDesc({"x", "y"}));
  return env;
}

inline FunDef isSucDef() {
  FunDef d;
  d.name = "isSuc";
  d.params = {"m"};
  d.type = FunType{{natSlot()}, {boolSlot()}};
  d.body = Body::elim(Body::Method::Case, 0,
                      {Branch{"zero", {}, Body::ret(Expr::ctor("false", {}))},
                       Branch{"suc", {"m2"}, Body::ret(Expr::ctor("true", {}))}});
  return d;
}

inline FunDef isSucFoldDef() {
  FunDef d;
  d.name = "isSucFold";
  d.params = {"m"};
  d.type = FunType{{natSlot()}, {boolSlot()}};
  d.body = Body::elim(Body::Method::Fold, 0,
                      {Branch{"zero", {}, Body::ret(Expr::ctor("false", {}))},
                       Branch{"suc", {"r"}, Body::ret(Expr::ctor("true", {}))}});
  return d;
}

inline FunDef predDef() {
  FunDef d;
  d.name = "pred";
  d.params = {"m"};
  d.type = FunType{{natSlot()}, {natSlot()}};
  d.body = Body::elim(Body::Method::Case, 0,
                      {Branch{"zero", {}, Body::ret(Expr::ctor("zero", {}))},
                       Branch{"suc", {"m2"}, Body::ret(Expr::var("m2"))}});
  return d;
}

inline FunDef plusDef() {
  FunDef d;
  d.name = "plus";
  d.params = {"m", "n"};
  d.type = FunType{{natSlot(), natSlot()}, {natSlot()}};
  d.body = Body::elim(
      Body::Method::Ind, 0,
      {Branch{"zero", {}, Body::ret(Expr::var("n"))},
       Branch{"suc", {"m2", "ih"}, Body::ret(Expr::ctor("suc", {Expr::var("ih")}))}});
  return d;
}

inline FunDef lessThanDef() {
  FunDef d;
  d.name = "lessThan";
  d.params = {"m", "n"};
  d.type = FunType{{natSlot(), natSlot()}, {boolSlot()}};
  Body onM = Body::elim(
      Body::Method::Case, 0,
      {Branch{"zero", {}, Body::ret(Expr::ctor("true", {}))},
       Branch{"suc",
              {"m2"},
              Body::ret(Expr::selfCall({Expr::var("m2"), Expr::var("n2")}))}});
  d.body = Body::elim(Body::Method::Case, 1,
                      {Branch{"zero", {}, Body::ret(Expr::ctor("false", {}))},
                       Branch{"suc", {"n2"}, onM}});
  return d;
}

// ---- functional ornaments of the base signatures ------------------------------

inline FunOrn headFO() {
  FunOrn fo;
  fo.args = {ornSlot(listOrn(), Value::unit())};
  fo.results = {ornSlot(maybeOrn(), Value::unit())};
  return fo;
}

inline FunOrn tailFO() {
  FunOrn fo;
  fo.args = {ornSlot(listOrn(), Value::unit())};
  fo.results = {ornSlot(listOrn(), Value::unit())};
  return fo;
}

inline FunOrn lookupFO() {
  FunOrn fo;
  fo.args = {idSlot(), ornSlot(listOrn(), Value::unit())};
  fo.results = {ornSlot(maybeOrn(), Value::unit())};
  return fo;
}

inline FunOrn appendFO() {
  FunOrn fo;
  fo.args = {ornSlot(listOrn(), Value::unit()), ornSlot(listOrn(), Value::unit())};
  fo.results = {ornSlot(listOrn(), Value::unit())};
  return fo;
}

// ---- lifting scripts -----------------------------------------------------------

// head over isSuc: the cons branch must produce the element, a hole.
inline LiftScript iheadScript() {
  LiftScript s;
  s.name = "ihead";
  s.base = "isSuc";
  s.params = {"xs"};
  using F = Body::Fill;
  s.body = Body::elim(
      Body::Method::Case, 0,
      {Branch{"nil",
              {},
              Body::ctor({F::lit(Value::tag("nothing")), F::lit(Value::unit())}, {})},
       Branch{"cons",
              {"a", "r"},
              Body::ctor({F::lit(Value::tag("just")), F::hole("payload"),
                          F::hole("rest")},
                         {})}});
  return s;
}

// head over the fold form of isSuc: the tail's sub-result is in scope and
// ignored.
inline LiftScript iheadFoldScript() {
  LiftScript s;
  s.name = "iheadFold";
  s.base = "isSucFold";
  s.params = {"xs"};
  using F = Body::Fill;
  s.body = Body::elim(
      Body::Method::Fold, 0,
      {Branch{"nil",
              {},
              Body::ctor({F::lit(Value::tag("nothing")), F::lit(Value::unit())}, {})},
       Branch{"cons",
              {"a", "rw"},
              Body::ctor({F::lit(Value::tag("just")), F::hole("payload"),
                          F::lit(Value::unit())},
                         {})}});
  return s;
}

// lookup over lessThan: case on the vector, then on the bound.
inline LiftScript ilookupScript() {
  LiftScript s;
  s.name = "ilookup";
  s.base = "lessThan";
  s.params = {"m", "xs"};
  using F = Body::Fill;
  Body onM = Body::elim(
      Body::Method::Case, 0,
      {Branch{"zero",
              {},
              Body::ctor({F::lit(Value::tag("just")), F::hole("payload"),
                          F::lit(Value::unit())},
                         {})},
       Branch{"suc", {"m2"}, Body::selfCall({Expr::var("m2"), Expr::var("r")})}});
  s.body = Body::elim(
      Body::Method::Case, 1,
      {Branch{"nil",
              {},
              Body::ctor({F::lit(Value::tag("nothing")), F::lit(Value::unit())}, {})},
       Branch{"cons", {"a", "r"}, onM}});
  return s;
}

// append over plus: induction on the first vector, consing onto the
// sub-result decoration.
inline LiftScript vappendScript() {
  LiftScript s;
  s.name = "vappend";
  s.base = "plus";
  s.params = {"xs", "ys"};
  using F = Body::Fill;
  s.body = Body::elim(
      Body::Method::Ind, 0,
      {Branch{"nil", {}, Body::ret(Expr::var("ys"))},
       Branch{"cons",
              {"a", "rp", "ihw"},
              Body::ctor({F::lit(Value::tag("cons")), F::hole("payload"),
                          F::lit(Value::unit())},
                         {Body::ret(Expr::var("ihw"))})}});
  return s;
}

// tail over pred: the cons branch is one unwritten leaf.
inline LiftScript itailScript() {
  LiftScript s;
  s.name = "itail";
  s.base = "pred";
  s.params = {"xs"};
  using F = Body::Fill;
  s.body = Body::elim(
      Body::Method::Case, 0,
      {Branch{"nil",
              {},
              Body::ctor({F::lit(Value::tag("nil")), F::lit(Value::unit())}, {})},
       Branch{"cons", {"a", "r"}, Body::hole("rest")}});
  return s;
}

// Kind-aligned but wrong: drops the element it is obliged to keep.
inline LiftScript iheadBrokenScript() {
  LiftScript s = iheadScript();
  s.name = "iheadBroken";
  using F = Body::Fill;
  s.body = Body::elim(
      Body::Method::Case, 0,
      {Branch{"nil",
              {},
              Body::ctor({F::lit(Value::tag("nothing")), F::lit(Value::unit())}, {})},
       Branch{"cons",
              {"a", "r"},
              Body::ctor({F::lit(Value::tag("nothing")), F::lit(Value::unit())}, {})}});
  return s;
}

// The data every element-valued hole above wants: the element in scope.
inline Fills elemFill() { return Fills{{"payload", Expr::var("a")}}; }
inline Fills tailFill() { return Fills{{"rest", Expr::var("r")}}; }

// ---- steps for the structure-transporting combinators -------------------------

// isSuc as a fold of the naturals.
inline Algebra isSucAlg() {
  Algebra alg;
  alg.carrierAt = [](const Value&) { return oracle::boolSet(); };
  alg.step = [](const Value&, const Value& payload) {
    return oracle::boolVal(payload.first().tagName() == "suc");
  };
  return alg;
}

// head, coherently over isSuc: nil gives nothing, cons keeps its element.
// A node's extension is unit for nil and (element, unit) for cons.
inline CoherentAlgebra iheadCoherent() {
  CoherentAlgebra beta;
  beta.step = [](const Value&, const Value&, const Value& payload) {
    Value ext = payload.first();
    if (!ext.isPair()) return maybeDecor(nothing());
    return maybeDecor(just(ext.first().tagName()));
  };
  return beta;
}

// last, coherently over isSuc: keep the deepest element.
inline CoherentAlgebra ilastCoherent() {
  CoherentAlgebra beta;
  beta.step = [](const Value&, const Value&, const Value& payload) {
    Value ext = payload.first();
    if (!ext.isPair()) return maybeDecor(nothing());
    Value sub = payload.second();  // the tail's result decoration
    if (!sub.payload().first().isPair())
      return maybeDecor(just(ext.first().tagName()));
    return sub;
  };
  return beta;
}

// The same step in induction form, reading the sub-result positionally.
inline CoherentInduction ilastInduction() {
  CoherentInduction beta;
  beta.step = [](const Value&, const Value&, const Value& payload,
                 const Value& subResults) {
    Value ext = payload.first();
    if (!ext.isPair()) return maybeDecor(nothing());
    Value sub = subResults.second();
    if (!sub.payload().first().isPair())
      return maybeDecor(just(ext.first().tagName()));
    return sub;
  };
  return beta;
}

// head in case form: no recursive data needed at all.
inline CoherentCase iheadCase() {
  CoherentCase beta;
  beta.step = [](const Value&, const Value&, const Value& payload) {
    Value ext = payload.first();
    if (!ext.isPair()) return maybeDecor(nothing());
    return maybeDecor(just(ext.first().tagName()));
  };
  return beta;
}

// ---- index-computation adjunction fixtures ------------------------------------

// m -> (m, m < n) as one fold of the naturals, n fixed in the closure. The
// paired carrier keeps the comparison a fold without function-valued
// carriers.
inline Algebra lessPairAlg(size_t n) {
  Algebra alg;
  alg.carrierAt = [](const Value&) {
    return SetCode::sigma(oracle::natSet(),
                          [](const Value&) { return oracle::boolSet(); });
  };
  alg.step = [n](const Value&, const Value& payload) {
    if (payload.first().tagName() == "zero")
      return Value::pair(oracle::nat(0), oracle::boolVal(0 < n));
    size_t m = oracle::natOf(payload.second().first()) + 1;
    return Value::pair(oracle::nat(m), oracle::boolVal(m < n));
  };
  return alg;
}

// The m-th bounded natural below n: a decoration of m at index
// (unit, (m, m < n)).
inline Value finVal(size_t m, size_t n) {
  return remember(oracle::natDesc(), lessPairAlg(n), Value::unit(), oracle::nat(m));
}

// The result family of bounded lookup: at ((), (m, b)) live the decorated
// options over b, so a hit is forced exactly when the bound held.
inline DescFun lookupResultFam() {
  DescFun reorn = interpOrn(reornament(maybeOrn()));
  DescFun e;
  e.name = "LookupResult";
  e.indexSet = SetCode::sigma(SetCode::unitSet(), [](const Value&) {
    return SetCode::sigma(oracle::natSet(),
                          [](const Value&) { return oracle::boolSet(); });
  });
  e.at = [reorn](const Value& ix) {
    return reorn.at(Value::pair(Value::unit(), ix.second().second()));
  };
  return e;
}

// The hand-written minimal data of head, for comparison with everything the
// lift machinery produces.
inline PatchFn handHeadPatch() {
  PatchFn p;
  p.name = "head";
  p.run = [](const std::vector<Value>& a) {
    auto items = decorElems(a[1]);
    Value m = items.empty() ? nothing() : just(items[0]);
    return std::vector<Value>{maybeDecor(m)};
  };
  return p;
}

}  // namespace fixtures

#include <optional>
#include <string>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "orn/algebraic.hpp"
#include "orn/errors.hpp"
#include "orn/lift.hpp"

using namespace orn;
namespace fx = fixtures;

namespace {

Value u() { return Value::unit(); }

std::vector<std::vector<std::string>> lists(int maxLen) {
  return oracle::allLists({"x", "y"}, maxLen);
}

Value expectedHead(const std::vector<std::string>& items) {
  return fx::maybeDecor(items.empty() ? fx::nothing() : fx::just(items[0]));
}

}  // namespace

TEST_CASE("scripted definitions run their recursion skeletons") {
  ScriptEnv env = fx::scriptEnv();

  BaseFn isSuc = elaborateFun(fx::isSucDef(), env);
  BaseFn isSucFold = elaborateFun(fx::isSucFoldDef(), env);
  BaseFn pred = elaborateFun(fx::predDef(), env);
  for (size_t n = 0; n <= 5; ++n) {
    CHECK(sameValue(isSuc.run({oracle::nat(n)})[0], oracle::boolVal(n > 0)));
    CHECK(sameValue(isSucFold.run({oracle::nat(n)})[0], oracle::boolVal(n > 0)));
    CHECK(sameValue(pred.run({oracle::nat(n)})[0], oracle::nat(n == 0 ? 0 : n - 1)));
  }

  BaseFn plus = elaborateFun(fx::plusDef(), env);
  BaseFn less = elaborateFun(fx::lessThanDef(), env);
  for (size_t m = 0; m <= 4; ++m) {
    for (size_t n = 0; n <= 4; ++n) {
      CHECK(sameValue(plus.run({oracle::nat(m), oracle::nat(n)})[0], oracle::nat(m + n)));
      CHECK(sameValue(less.run({oracle::nat(m), oracle::nat(n)})[0],
                      oracle::boolVal(m < n)));
    }
  }
}

TEST_CASE("definition runners police their signatures") {
  ScriptEnv env = fx::scriptEnv();
  BaseFn isSuc = elaborateFun(fx::isSucDef(), env);
  CHECK_THROWS_AS(isSuc.run({}), SignatureMismatch);
  CHECK_THROWS_AS(isSuc.run({oracle::boolVal(true)}), IllTypedValue);

  FunDef bad = fx::predDef();
  bad.name = "wrongResult";
  bad.body = Body::elim(Body::Method::Case, 0,
                        {Branch{"zero", {}, Body::ret(Expr::ctor("true", {}))},
                         Branch{"suc", {"m2"}, Body::ret(Expr::var("m2"))}});
  BaseFn wrong = elaborateFun(bad, env);
  CHECK_THROWS_AS(wrong.run({oracle::nat(0)}), IllTypedValue);
}

TEST_CASE("malformed definitions are rejected") {
  ScriptEnv env = fx::scriptEnv();

  FunDef d = fx::isSucDef();
  d.body = Body::elim(Body::Method::Case, 0,
                      {Branch{"zero", {}, Body::ret(Expr::ctor("false", {}))}});
  CHECK_THROWS_AS(elaborateFun(d, env), ElaborationError);

  d = fx::isSucDef();
  d.body = Body::elim(Body::Method::Case, 0,
                      {Branch{"zero", {}, Body::ret(Expr::ctor("false", {}))},
                       Branch{"suc", {}, Body::ret(Expr::ctor("true", {}))}});
  CHECK_THROWS_AS(elaborateFun(d, env), ElaborationError);

  d = fx::isSucDef();
  d.body = Body::elim(Body::Method::Case, 0,
                      {Branch{"zero", {}, Body::ret(Expr::ctor("false", {}))},
                       Branch{"zero", {}, Body::ret(Expr::ctor("false", {}))}});
  CHECK_THROWS_AS(elaborateFun(d, env), ElaborationError);

  d = fx::isSucDef();
  d.body = Body::elim(Body::Method::Case, 0,
                      {Branch{"zero", {}, Body::ret(Expr::var("ghost"))},
                       Branch{"suc", {"m2"}, Body::ret(Expr::ctor("true", {}))}});
  CHECK_THROWS_AS(elaborateFun(d, env), ElaborationError);

  // The recursive call hands back the whole argument: nothing decreases.
  d = fx::predDef();
  d.name = "looper";
  d.body = Body::elim(Body::Method::Case, 0,
                      {Branch{"zero", {}, Body::ret(Expr::ctor("zero", {}))},
                       Branch{"suc", {"m2"}, Body::ret(Expr::selfCall({Expr::var("m")}))}});
  CHECK_THROWS_AS(elaborateFun(d, env), ElaborationError);

  // Recursive calls make no sense once a fold has consumed the argument.
  d = fx::predDef();
  d.name = "foldLooper";
  d.body = Body::elim(Body::Method::Fold, 0,
                      {Branch{"zero", {}, Body::ret(Expr::ctor("zero", {}))},
                       Branch{"suc", {"r"}, Body::ret(Expr::selfCall({Expr::var("r")}))}});
  CHECK_THROWS_AS(elaborateFun(d, env), ElaborationError);

  d = fx::predDef();
  d.name = "arity";
  d.body = Body::elim(
      Body::Method::Case, 0,
      {Branch{"zero", {}, Body::ret(Expr::ctor("zero", {}))},
       Branch{"suc", {"m2"}, Body::ret(Expr::selfCall({Expr::var("m2"), Expr::var("m2")}))}});
  CHECK_THROWS_AS(elaborateFun(d, env), ElaborationError);

  d = fx::isSucDef();
  d.body = Body::ctor({}, {});
  CHECK_THROWS_AS(elaborateFun(d, env), ElaborationError);

  d = fx::isSucDef();
  d.params = {"m", "extra"};
  CHECK_THROWS_AS(elaborateFun(d, env), ElaborationError);
}

TEST_CASE("constructor transport checks both halves") {
  Ornament lo = fx::listOrn();

  // Every enumerated decoration node decomposes into (e, a) and reassembles.
  for (const Value& t : enumerate(SetCode::mu(oracle::natDesc(), u()), 2)) {
    SetCode nodeSet = fancySet(reornament(lo), Value::pair(u(), t));
    for (const Value& w : enumerate(nodeSet, 2)) {
      Value e = w.payload().first();
      Value a = w.payload().second();
      Value out = liftConstructor(lo, u(), t.payload(), e, a, u());
      CHECK(sameValue(out.first(), w));
      CHECK(sameValue(out.second(), u()));
    }
  }

  // Over a suc payload only cons stands, so the node's extension is just the
  // inserted element.
  Value xs = Value::pair(Value::tag("suc"), oracle::nat(0));
  Value goodE = Value::pair(Value::tag("x"), u());
  Value goodA = fx::listDecor({});
  Value node = liftConstructor(lo, u(), xs, goodE, goodA, u()).first();
  CHECK(sameValue(node, fx::listDecor({"x"})));

  Value badE = Value::pair(u(), u());
  try {
    liftConstructor(lo, u(), xs, badE, goodA, u());
    CHECK(false);
  } catch (const IllTypedValue& ex) {
    CHECK(std::string(ex.what()).find("extension") != std::string::npos);
  }

  Value badA = fx::listDecor({"x"});  // decorates one, the node sits over zero
  try {
    liftConstructor(lo, u(), xs, goodE, badA, u());
    CHECK(false);
  } catch (const IllTypedValue& ex) {
    CHECK(std::string(ex.what()).find("structure") != std::string::npos);
  }

  Ornament mo = fx::maybeOrn();
  Value justE = Value::pair(Value::tag("y"), u());
  Value justNode =
      liftConstructor(mo, u(), Value::pair(Value::tag("true"), u()), justE, u(), u())
          .first();
  CHECK(sameValue(justNode, fx::maybeDecor(fx::just("y"))));
}

TEST_CASE("folds, inductions and cases lift through reornaments") {
  ScriptEnv env = fx::scriptEnv();
  BaseFn isSuc = elaborateFun(fx::isSucDef(), env);

  PatchFn foldHead = liftFold(fx::listOrn(), u(), fx::isSucAlg(), fx::iheadCoherent());
  PatchFn handHead = fx::handHeadPatch();
  for (const auto& items : lists(3)) {
    Value t = oracle::nat(items.size());
    Value w = fx::listDecor(items);
    Value got = foldHead.run({t, w})[0];
    CHECK(sameValue(got, expectedHead(items)));
    CHECK(sameValue(got, handHead.run({t, w})[0]));
  }
  CHECK_FALSE(checkPatch(isSuc, fx::headFO(), foldHead, 3));
  LiftedFn head = patch(isSuc, fx::headFO(), foldHead);
  CHECK_FALSE(coherenceCheck(isSuc, fx::headFO(), head, 3));
  CHECK_THROWS_AS(foldHead.run({oracle::nat(0)}), SignatureMismatch);

  InductionStep isSucInd{[](const Value&, const Value& payload, const Value&) {
    return oracle::boolVal(payload.first().tagName() == "suc");
  }};
  PatchFn foldLast = liftFold(fx::listOrn(), u(), fx::isSucAlg(), fx::ilastCoherent());
  PatchFn indLast = liftInd(fx::listOrn(), u(), isSucInd, fx::ilastInduction());
  for (const auto& items : lists(3)) {
    Value t = oracle::nat(items.size());
    Value w = fx::listDecor(items);
    Value viaFold = foldLast.run({t, w})[0];
    Value viaInd = indLast.run({t, w})[0];
    CHECK(sameValue(viaFold, viaInd));
    Value expect =
        fx::maybeDecor(items.empty() ? fx::nothing() : fx::just(items.back()));
    CHECK(sameValue(viaFold, expect));
  }
  CHECK_FALSE(checkPatch(isSuc, fx::headFO(), foldLast, 3));

  CaseStep isSucCase{[](const Value&, const Value& payload) {
    return oracle::boolVal(payload.first().tagName() == "suc");
  }};
  PatchFn caseHead = liftCase(fx::listOrn(), u(), isSucCase, fx::iheadCase());
  for (const auto& items : lists(3)) {
    Value t = oracle::nat(items.size());
    Value w = fx::listDecor(items);
    CHECK(sameValue(caseHead.run({t, w})[0], foldHead.run({t, w})[0]));
  }
}

TEST_CASE("lifting scripts elaborate and patch their bases") {
  ScriptEnv env = fx::scriptEnv();
  BaseFn isSuc = elaborateFun(fx::isSucDef(), env);
  BaseFn less = elaborateFun(fx::lessThanDef(), env);
  BaseFn plus = elaborateFun(fx::plusDef(), env);
  BaseFn pred = elaborateFun(fx::predDef(), env);

  LiftResult rh =
      elaborateScript(fx::iheadScript(), fx::isSucDef(), fx::headFO(), env, fx::elemFill());
  REQUIRE(rh.fn.has_value());
  CHECK(rh.report.outstanding() == 0);
  PatchFn handHead = fx::handHeadPatch();
  for (const auto& items : lists(3)) {
    Value t = oracle::nat(items.size());
    Value w = fx::listDecor(items);
    CHECK(sameValue(rh.fn->run({t, w})[0], handHead.run({t, w})[0]));
  }
  CHECK_FALSE(checkPatch(isSuc, fx::headFO(), *rh.fn, 3));
  LiftedFn head = patch(isSuc, fx::headFO(), *rh.fn);
  CHECK(sameValue(head.run({oracle::list({"x", "y"})})[0], fx::just("x")));
  CHECK(sameValue(head.run({oracle::list({})})[0], fx::nothing()));
  CHECK_FALSE(coherenceCheck(isSuc, fx::headFO(), head, 3));

  LiftResult rf = elaborateScript(fx::iheadFoldScript(), fx::isSucFoldDef(), fx::headFO(),
                                  env, fx::elemFill());
  REQUIRE(rf.fn.has_value());
  for (const auto& items : lists(3)) {
    Value t = oracle::nat(items.size());
    Value w = fx::listDecor(items);
    CHECK(sameValue(rf.fn->run({t, w})[0], handHead.run({t, w})[0]));
  }

  LiftResult rl = elaborateScript(fx::ilookupScript(), fx::lessThanDef(), fx::lookupFO(),
                                  env, fx::elemFill());
  REQUIRE(rl.fn.has_value());
  for (size_t n = 0; n <= 4; ++n) {
    for (const auto& items : lists(3)) {
      Value t = oracle::nat(items.size());
      Value w = fx::listDecor(items);
      auto hit = oracle::bruteLookup(n, items);
      Value expect = fx::maybeDecor(hit ? fx::just(*hit) : fx::nothing());
      CHECK(sameValue(rl.fn->run({oracle::nat(n), t, w})[0], expect));
    }
  }
  CHECK_FALSE(checkPatch(less, fx::lookupFO(), *rl.fn, 3));
  LiftedFn lookup = patch(less, fx::lookupFO(), *rl.fn);
  CHECK_FALSE(coherenceCheck(less, fx::lookupFO(), lookup, 3));

  LiftResult rv = elaborateScript(fx::vappendScript(), fx::plusDef(), fx::appendFO(), env,
                                  fx::elemFill());
  REQUIRE(rv.fn.has_value());
  for (const auto& xs : lists(2)) {
    for (const auto& ys : lists(2)) {
      Value got = rv.fn->run({oracle::nat(xs.size()), fx::listDecor(xs),
                              oracle::nat(ys.size()), fx::listDecor(ys)})[0];
      CHECK(sameValue(got, fx::listDecor(oracle::bruteAppend(xs, ys))));
    }
  }
  CHECK_FALSE(checkPatch(plus, fx::appendFO(), *rv.fn, 2));
  LiftedFn append = patch(plus, fx::appendFO(), *rv.fn);
  CHECK_FALSE(coherenceCheck(plus, fx::appendFO(), append, 2));

  LiftResult rt = elaborateScript(fx::itailScript(), fx::predDef(), fx::tailFO(), env,
                                  fx::tailFill());
  REQUIRE(rt.fn.has_value());
  for (const auto& items : lists(3)) {
    Value t = oracle::nat(items.size());
    Value w = fx::listDecor(items);
    std::vector<std::string> rest(items.begin() + (items.empty() ? 0 : 1), items.end());
    CHECK(sameValue(rt.fn->run({t, w})[0], fx::listDecor(rest)));
  }
  CHECK_FALSE(checkPatch(pred, fx::tailFO(), *rt.fn, 3));
}

TEST_CASE("hole reports are stable, contextual and minimal") {
  ScriptEnv env = fx::scriptEnv();

  LiftResult rh = elaborateScript(fx::iheadScript(), fx::isSucDef(), fx::headFO(), env);
  CHECK_FALSE(rh.fn.has_value());
  REQUIRE(rh.report.holes.size() == 2);
  CHECK(rh.report.outstanding() == 1);

  const Hole& payload = rh.report.holes[0];
  CHECK(payload.label == "payload");
  CHECK(payload.path == "ihead.cons.payload");
  CHECK(payload.shown == "(enum x y)");
  CHECK_FALSE(payload.trivial);
  CHECK(setEqual(payload.expected, fx::elemSet(), 3));
  REQUIRE(payload.context.size() == 3);
  CHECK(payload.context[0].first == "xs");
  CHECK(payload.context[0].second == "argument");
  CHECK(payload.context[1].first == "a");
  CHECK(payload.context[1].second == "inserted value");
  CHECK(payload.context[2].first == "r");
  CHECK(payload.context[2].second == "recursive pair");

  const Hole& rest = rh.report.holes[1];
  CHECK(rest.path == "ihead.cons.rest");
  CHECK(rest.trivial);
  CHECK(sameValue(rest.solution, u()));

  CHECK(rh.report.render() ==
        "HOLE ihead.cons.payload : (enum x y)\n"
        "HOLE ihead.cons.rest : unit\n");

  // Filling only the blocking hole is enough: the trivial one self-solves.
  LiftResult rhFilled =
      elaborateScript(fx::iheadScript(), fx::isSucDef(), fx::headFO(), env, fx::elemFill());
  CHECK(rhFilled.fn.has_value());
  REQUIRE(rhFilled.report.holes.size() == 1);
  CHECK(rhFilled.report.holes[0].trivial);

  LiftResult rl =
      elaborateScript(fx::ilookupScript(), fx::lessThanDef(), fx::lookupFO(), env);
  CHECK_FALSE(rl.fn.has_value());
  REQUIRE(rl.report.holes.size() == 1);
  CHECK(rl.report.outstanding() == 1);
  CHECK(rl.report.holes[0].path == "ilookup.cons.zero.payload");
  CHECK(setEqual(rl.report.holes[0].expected, fx::elemSet(), 3));
  REQUIRE(rl.report.holes[0].context.size() == 4);
  CHECK(rl.report.holes[0].context[2].first == "a");
  CHECK(rl.report.holes[0].context[3].first == "r");

  LiftResult rv = elaborateScript(fx::vappendScript(), fx::plusDef(), fx::appendFO(), env);
  CHECK_FALSE(rv.fn.has_value());
  REQUIRE(rv.report.holes.size() == 1);
  CHECK(rv.report.holes[0].path == "vappend.cons.payload");
  CHECK(setEqual(rv.report.holes[0].expected, fx::elemSet(), 3));

  // An unwritten leaf reports one blocking hole at the decoration type.
  LiftResult rt = elaborateScript(fx::itailScript(), fx::predDef(), fx::tailFO(), env);
  CHECK_FALSE(rt.fn.has_value());
  REQUIRE(rt.report.holes.size() == 1);
  CHECK(rt.report.holes[0].path == "itail.cons.rest");
  CHECK(rt.report.holes[0].shown == "(mu List^ _)");
  CHECK_FALSE(rt.report.holes[0].trivial);
}

TEST_CASE("skeleton mismatches are reported") {
  ScriptEnv env = fx::scriptEnv();

  // The script folds where the definition merely cases.
  LiftScript s = fx::iheadFoldScript();
  s.base = "isSuc";
  CHECK_THROWS_AS(elaborateScript(s, fx::isSucDef(), fx::headFO(), env),
                  SkeletonMismatch);

  // The script eliminates the wrong argument.
  s = fx::vappendScript();
  auto branches = std::vector<Branch>{
      Branch{"nil", {}, Body::ret(Expr::var("ys"))},
      Branch{"cons", {"a", "rp", "ihw"}, Body::ret(Expr::var("ihw"))}};
  s.body = Body::elim(Body::Method::Ind, 1, branches);
  CHECK_THROWS_AS(elaborateScript(s, fx::plusDef(), fx::appendFO(), env),
                  SkeletonMismatch);

  // The script recurses where the definition does not.
  s = fx::vappendScript();
  using F = Body::Fill;
  s.body = Body::elim(
      Body::Method::Ind, 0,
      {Branch{"nil", {}, Body::ret(Expr::var("ys"))},
       Branch{"cons",
              {"a", "rp", "ihw"},
              Body::ctor({F::lit(Value::tag("cons")), F::hole("payload"),
                          F::lit(Value::unit())},
                         {Body::selfCall({Expr::var("rp"), Expr::var("ys")})})}});
  CHECK_THROWS_AS(elaborateScript(s, fx::plusDef(), fx::appendFO(), env),
                  SkeletonMismatch);

  // The script splits where the definition returns.
  s = fx::iheadScript();
  s.body = Body::elim(
      Body::Method::Case, 0,
      {Branch{"nil", {}, fx::iheadScript().body},
       Branch{"cons", {"a", "r"},
              Body::ctor({F::lit(Value::tag("nothing")), F::lit(Value::unit())}, {})}});
  CHECK_THROWS_AS(elaborateScript(s, fx::isSucDef(), fx::headFO(), env),
                  SkeletonMismatch);

  // The script returns where the definition splits.
  s = fx::iheadScript();
  s.body = Body::ret(Expr::var("xs"));
  CHECK_THROWS_AS(elaborateScript(s, fx::isSucDef(), fx::headFO(), env),
                  SkeletonMismatch);

  // A branch tag the refined family does not have.
  s = fx::iheadScript();
  s.body = Body::elim(
      Body::Method::Case, 0,
      {Branch{"nil", {},
              Body::ctor({F::lit(Value::tag("nothing")), F::lit(Value::unit())}, {})},
       Branch{"snoc", {"a", "r"},
              Body::ctor({F::lit(Value::tag("nothing")), F::lit(Value::unit())}, {})}});
  CHECK_THROWS_AS(elaborateScript(s, fx::isSucDef(), fx::headFO(), env),
                  SkeletonMismatch);
}

TEST_CASE("malformed scripts are rejected") {
  ScriptEnv env = fx::scriptEnv();
  using F = Body::Fill;

  // Wrong binder count on an ornamented branch.
  LiftScript s = fx::iheadScript();
  s.body = Body::elim(
      Body::Method::Case, 0,
      {Branch{"nil", {},
              Body::ctor({F::lit(Value::tag("nothing")), F::lit(Value::unit())}, {})},
       Branch{"cons", {"a"},
              Body::ctor({F::lit(Value::tag("nothing")), F::lit(Value::unit())}, {})}});
  CHECK_THROWS_AS(elaborateScript(s, fx::isSucDef(), fx::headFO(), env),
                  ElaborationError);

  // A fill for a hole that does not exist.
  CHECK_THROWS_AS(elaborateScript(fx::iheadScript(), fx::isSucDef(), fx::headFO(), env,
                                  Fills{{"ghost", Expr::var("a")}}),
                  ElaborationError);

  // A fill expression out of scope.
  CHECK_THROWS_AS(elaborateScript(fx::iheadScript(), fx::isSucDef(), fx::headFO(), env,
                                  Fills{{"payload", Expr::var("zz")}}),
                  ElaborationError);

  // Scripts must produce an ornamented result.
  FunOrn idResult = fx::headFO();
  idResult.results = {idSlot()};
  CHECK_THROWS_AS(elaborateScript(fx::iheadScript(), fx::isSucDef(), idResult, env),
                  ElaborationError);

  // Too many extension values in a constructor.
  s = fx::iheadScript();
  s.body = Body::elim(
      Body::Method::Case, 0,
      {Branch{"nil", {},
              Body::ctor({F::lit(Value::tag("nothing")), F::lit(Value::unit()),
                          F::lit(Value::unit())},
                         {})},
       Branch{"cons", {"a", "r"},
              Body::ctor({F::lit(Value::tag("just")), F::hole("payload"),
                          F::hole("rest")},
                         {})}});
  CHECK_THROWS_AS(elaborateScript(s, fx::isSucDef(), fx::headFO(), env),
                  ElaborationError);

  // Missing recursive argument.
  s = fx::vappendScript();
  s.body = Body::elim(
      Body::Method::Ind, 0,
      {Branch{"nil", {}, Body::ret(Expr::var("ys"))},
       Branch{"cons", {"a", "rp", "ihw"},
              Body::ctor({F::lit(Value::tag("cons")), F::hole("payload"),
                          F::lit(Value::unit())},
                         {})}});
  CHECK_THROWS_AS(elaborateScript(s, fx::plusDef(), fx::appendFO(), env),
                  ElaborationError);

  // An eliminator cannot sit in recursive argument position.
  s = fx::vappendScript();
  s.body = Body::elim(
      Body::Method::Ind, 0,
      {Branch{"nil", {}, Body::ret(Expr::var("ys"))},
       Branch{"cons", {"a", "rp", "ihw"},
              Body::ctor({F::lit(Value::tag("cons")), F::hole("payload"),
                          F::lit(Value::unit())},
                         {Body::elim(Body::Method::Case, 0, {})})}});
  CHECK_THROWS_AS(elaborateScript(s, fx::plusDef(), fx::appendFO(), env),
                  ElaborationError);

  // The script names a different base.
  CHECK_THROWS_AS(elaborateScript(fx::iheadScript(), fx::predDef(), fx::tailFO(), env),
                  ElaborationError);

  // One parameter per slot.
  s = fx::iheadScript();
  s.params = {"xs", "extra"};
  CHECK_THROWS_AS(elaborateScript(s, fx::isSucDef(), fx::headFO(), env),
                  ElaborationError);
}

TEST_CASE("incoherent scripts elaborate but fail the patch sweeps") {
  ScriptEnv env = fx::scriptEnv();
  BaseFn isSuc = elaborateFun(fx::isSucDef(), env);

  LiftResult rb =
      elaborateScript(fx::iheadBrokenScript(), fx::isSucDef(), fx::headFO(), env);
  REQUIRE(rb.fn.has_value());
  CHECK(rb.report.outstanding() == 0);

  auto failure = checkPatch(isSuc, fx::headFO(), *rb.fn, 3);
  CHECK(failure.has_value());

  LiftedFn bad = patch(isSuc, fx::headFO(), *rb.fn);
  CHECK_THROWS_AS(bad.run({oracle::list({"x"})}), PatchTypeError);
}

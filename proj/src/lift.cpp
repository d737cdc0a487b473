#include "orn/lift.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <set>
#include <sstream>
#include <utility>

#include "orn/errors.hpp"

namespace orn {

// ---- Expr ------------------------------------------------------------------

struct Expr::Node {
  Kind kind;
  std::string name;
  std::vector<Expr> args;
};

Expr::Expr() : node_(nullptr) {}
Expr::Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expr Expr::var(std::string name) {
  return Expr(std::make_shared<Node>(Node{Kind::Var, std::move(name), {}}));
}
Expr Expr::tagLit(std::string tag) {
  return Expr(std::make_shared<Node>(Node{Kind::Tag, std::move(tag), {}}));
}
Expr Expr::ctor(std::string ctorTag, std::vector<Expr> fields) {
  return Expr(std::make_shared<Node>(Node{Kind::Ctor, std::move(ctorTag), std::move(fields)}));
}
Expr Expr::selfCall(std::vector<Expr> args) {
  return Expr(std::make_shared<Node>(Node{Kind::SelfCall, "", std::move(args)}));
}

Expr::Kind Expr::kind() const { return node_ ? node_->kind : Kind::Var; }

const std::string& Expr::name() const {
  static const std::string empty;
  return node_ ? node_->name : empty;
}

const std::vector<Expr>& Expr::args() const {
  static const std::vector<Expr> none;
  return node_ ? node_->args : none;
}

// ---- ScriptEnv ---------------------------------------------------------------

void ScriptEnv::addFamily(const DescFun& d) {
  families[d.name] = d;
  try {
    Desc root = d.at(Value::unit());
    if (root.kind() == Desc::Kind::Sigma && root.dom().kind() == SetCode::Kind::Enum) {
      for (const auto& t : root.dom().tags()) tagFamily[t] = d.name;
    }
  } catch (const Error&) {
    // Families that reject the unit index contribute no buildable tags.
  }
}

const DescFun& ScriptEnv::family(const std::string& name) const {
  auto it = families.find(name);
  if (it == families.end()) throw UnknownName("unknown family: " + name);
  return it->second;
}

const DescFun& ScriptEnv::familyOfTag(const std::string& tag) const {
  auto it = tagFamily.find(tag);
  if (it == tagFamily.end()) throw UnknownName("unknown constructor: " + tag);
  return family(it->second);
}

// ---- Body --------------------------------------------------------------------

struct Body::Node {
  Kind kind;
  Method method = Method::Case;
  size_t slot = 0;
  std::vector<Branch> branches;
  Expr expr;
  std::vector<Fill> fills;
  std::vector<Body> recs;
  std::vector<Expr> args;
  std::string label;
};

Body::Body() : node_(nullptr) {}
Body::Body(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Body Body::elim(Method m, size_t slot, std::vector<Branch> branches) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Elim;
  n->method = m;
  n->slot = slot;
  n->branches = std::move(branches);
  return Body(n);
}
Body Body::ret(Expr e) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Ret;
  n->expr = std::move(e);
  return Body(n);
}
Body Body::ctor(std::vector<Fill> fills, std::vector<Body> recs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Ctor;
  n->fills = std::move(fills);
  n->recs = std::move(recs);
  return Body(n);
}
Body Body::selfCall(std::vector<Expr> args) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::SelfCall;
  n->args = std::move(args);
  return Body(n);
}
Body Body::hole(std::string label) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Hole;
  n->label = std::move(label);
  return Body(n);
}

Body::Kind Body::kind() const { return node_ ? node_->kind : Kind::Ret; }

namespace {
void wantBody(bool ok, const char* what) {
  if (!ok) throw ElaborationError(std::string("body accessed as ") + what);
}
}  // namespace

Body::Method Body::method() const {
  wantBody(kind() == Kind::Elim, "an eliminator");
  return node_->method;
}
size_t Body::slot() const {
  wantBody(kind() == Kind::Elim, "an eliminator");
  return node_->slot;
}
const std::vector<Body::Branch>& Body::branches() const {
  wantBody(kind() == Kind::Elim, "an eliminator");
  return node_->branches;
}
const Expr& Body::expr() const {
  static const Expr empty;
  if (!node_) return empty;
  wantBody(kind() == Kind::Ret, "a returned expression");
  return node_->expr;
}
const std::vector<Body::Fill>& Body::fills() const {
  wantBody(kind() == Kind::Ctor, "a constructor");
  return node_->fills;
}
const std::vector<Body>& Body::recs() const {
  wantBody(kind() == Kind::Ctor, "a constructor");
  return node_->recs;
}
const std::vector<Expr>& Body::args() const {
  wantBody(kind() == Kind::SelfCall, "a recursive call");
  return node_->args;
}
const std::string& Body::label() const {
  wantBody(kind() == Kind::Hole, "a hole");
  return node_->label;
}

// ---- shared helpers ----------------------------------------------------------

namespace {

using Pedigree = std::pair<size_t, int>;  // (argument slot, descent depth)

struct Scope {
  std::map<std::string, std::optional<Pedigree>> vars;
  std::vector<std::pair<std::string, std::string>> order;  // name, role

  void bind(const std::string& name, const std::string& role,
            std::optional<Pedigree> p = std::nullopt) {
    if (name.empty()) throw ElaborationError("binder names must be non-empty");
    vars[name] = p;
    order.emplace_back(name, role);
  }
  bool has(const std::string& name) const { return vars.count(name) != 0; }
  std::optional<Pedigree> pedigree(const std::string& name) const {
    auto it = vars.find(name);
    return it == vars.end() ? std::nullopt : it->second;
  }
};

std::optional<Value> firstInhabitant(const SetCode& s) {
  auto vs = enumerate(s, 2);
  if (vs.empty()) return std::nullopt;
  return vs.front();
}

// The scrutinee description of an argument slot, which must be rooted in a
// constructor enum to be matchable.
Desc scrutineeDesc(const TypeSlot& ts, const std::string& who) {
  Desc d = ts.family.at(ts.index);
  if (d.kind() != Desc::Kind::Sigma || d.dom().kind() != SetCode::Kind::Enum) {
    throw ElaborationError(who + ": " + ts.family.name +
                           " is not rooted in a constructor enum");
  }
  return d;
}

// Count recursive calls syntactically under an expression.
int exprSelfCalls(const Expr& e) {
  int n = e.kind() == Expr::Kind::SelfCall ? 1 : 0;
  for (const auto& a : e.args()) n += exprSelfCalls(a);
  return n;
}

// Count recursive calls under a script leaf (Ret expressions cannot contain
// them; Ctor recursion arguments can).
int leafSelfCalls(const Body& b) {
  switch (b.kind()) {
    case Body::Kind::SelfCall:
      return 1;
    case Body::Kind::Ctor: {
      int n = 0;
      for (const auto& r : b.recs()) n += leafSelfCalls(r);
      return n;
    }
    default:
      return 0;
  }
}

std::string methodName(Body::Method m) {
  switch (m) {
    case Body::Method::Case:
      return "case";
    case Body::Method::Ind:
      return "ind";
    case Body::Method::Fold:
      return "fold";
  }
  return "?";
}

// Intersect per-call candidate slots and demand one common strictly
// decreasing argument position.
void requireDecreasing(const std::vector<std::set<size_t>>& calls, const std::string& who) {
  if (calls.empty()) return;
  std::set<size_t> common = calls.front();
  for (const auto& c : calls) {
    std::set<size_t> next;
    std::set_intersection(common.begin(), common.end(), c.begin(), c.end(),
                          std::inserter(next, next.begin()));
    common = std::move(next);
  }
  if (common.empty()) {
    throw ElaborationError(who +
                           ": no argument position strictly decreases at every "
                           "recursive call");
  }
}

std::set<size_t> callCandidates(const std::vector<Expr>& args, const Scope& scope) {
  std::set<size_t> out;
  for (size_t p = 0; p < args.size(); ++p) {
    if (args[p].kind() != Expr::Kind::Var) continue;
    auto ped = scope.pedigree(args[p].name());
    if (ped && ped->first == p && ped->second >= 1) out.insert(p);
  }
  return out;
}

// ---- plain expression evaluation ---------------------------------------------

struct EvalCtx {
  const ScriptEnv* env;
  const std::map<std::string, Value>* locals;
  std::function<Value(const std::vector<Value>&)> self;  // absent in scripts
};

Value buildCtorPayload(Desc d, const std::string& tag, const std::vector<Value>& fields) {
  size_t k = 0;
  std::function<Value(const Desc&)> go = [&](const Desc& at) -> Value {
    switch (at.kind()) {
      case Desc::Kind::One:
        return Value::unit();
      case Desc::Kind::Var: {
        if (k >= fields.size())
          throw IllTypedValue("constructor " + tag + " applied to too few fields");
        return fields[k++];
      }
      case Desc::Kind::Sigma: {
        if (k >= fields.size())
          throw IllTypedValue("constructor " + tag + " applied to too few fields");
        Value s = fields[k++];
        return Value::pair(s, go(at.fam()(s)));
      }
      case Desc::Kind::Pi:
        throw ElaborationError("constructor " + tag + " has a pi payload and cannot be built");
    }
    return Value::unit();
  };
  Value payload = go(d);
  if (k != fields.size())
    throw IllTypedValue("constructor " + tag + " applied to too many fields");
  return payload;
}

Value evalExpr(const Expr& e, const EvalCtx& ctx) {
  switch (e.kind()) {
    case Expr::Kind::Var: {
      auto it = ctx.locals->find(e.name());
      if (it == ctx.locals->end()) throw UnknownName("unbound variable: " + e.name());
      return it->second;
    }
    case Expr::Kind::Tag:
      return Value::tag(e.name());
    case Expr::Kind::Ctor: {
      const DescFun& fam = ctx.env->familyOfTag(e.name());
      Desc root = fam.at(Value::unit());
      std::vector<Value> fields;
      fields.reserve(e.args().size());
      for (const auto& a : e.args()) fields.push_back(evalExpr(a, ctx));
      Value payload = buildCtorPayload(root.fam()(Value::tag(e.name())), e.name(), fields);
      return Value::in(Value::pair(Value::tag(e.name()), payload));
    }
    case Expr::Kind::SelfCall: {
      if (!ctx.self)
        throw ElaborationError("recursive calls are not expressions in lifting scripts");
      std::vector<Value> args;
      args.reserve(e.args().size());
      for (const auto& a : e.args()) args.push_back(evalExpr(a, ctx));
      return ctx.self(args);
    }
  }
  return Value::unit();
}

// Static scoping pass over an expression.
void checkExpr(const Expr& e, const Scope& scope, const ScriptEnv& env, bool allowSelf,
               bool inFold, size_t arity, std::vector<std::set<size_t>>& calls,
               const std::string& who) {
  switch (e.kind()) {
    case Expr::Kind::Var:
      if (!scope.has(e.name()))
        throw ElaborationError(who + ": unbound variable " + e.name());
      return;
    case Expr::Kind::Tag:
      return;
    case Expr::Kind::Ctor:
      env.familyOfTag(e.name());
      for (const auto& a : e.args())
        checkExpr(a, scope, env, allowSelf, inFold, arity, calls, who);
      return;
    case Expr::Kind::SelfCall: {
      if (!allowSelf)
        throw ElaborationError(who + ": recursive calls are not expressions here");
      if (inFold)
        throw ElaborationError(who + ": recursive calls are not allowed under a fold");
      if (e.args().size() != arity)
        throw ElaborationError(who + ": recursive call arity mismatch");
      for (const auto& a : e.args())
        checkExpr(a, scope, env, allowSelf, inFold, arity, calls, who);
      calls.push_back(callCandidates(e.args(), scope));
      return;
    }
  }
}

}  // namespace

// ---- scripted definitions ------------------------------------------------

namespace {

// Binder multiplicity of one recursive position.
int recBinders(Body::Method m) { return m == Body::Method::Ind ? 2 : 1; }

// Walk one constructor branch of a plain description, reporting binder roles
// in payload order. Dependent branches are probed with a small inhabitant.
void baseBinderRoles(const Desc& d, Body::Method m,
                     std::vector<std::pair<std::string, bool>>& out,
                     const std::string& who) {
  // role text, paired with whether the binder is a raw subvalue
  switch (d.kind()) {
    case Desc::Kind::One:
      return;
    case Desc::Kind::Var:
      if (m == Body::Method::Fold) {
        out.emplace_back("sub-result", false);
      } else {
        out.emplace_back("subvalue", true);
        if (m == Body::Method::Ind) out.emplace_back("sub-result", false);
      }
      return;
    case Desc::Kind::Sigma: {
      out.emplace_back("field", false);
      auto probe = firstInhabitant(d.dom());
      if (!probe)
        throw ElaborationError(who + ": cannot probe an uninhabited field");
      baseBinderRoles(d.fam()(*probe), m, out, who);
      return;
    }
    case Desc::Kind::Pi:
      throw ElaborationError(who + ": pi payloads are not scriptable");
  }
}

struct DefCheck {
  const FunDef* def;
  const ScriptEnv* env;
  std::vector<std::set<size_t>> calls;

  void body(const Body& b, Scope scope, bool inFold, const std::string& path) {
    switch (b.kind()) {
      case Body::Kind::Ret:
        checkExpr(b.expr(), scope, *env, true, inFold, def->params.size(), calls, path);
        return;
      case Body::Kind::Elim: {
        if (b.slot() >= def->params.size())
          throw ElaborationError(path + ": eliminated argument out of range");
        Desc d = scrutineeDesc(def->type.args[b.slot()], path);
        std::vector<std::string> tags = d.dom().tags();
        if (b.branches().size() != tags.size())
          throw ElaborationError(path + ": expected " + std::to_string(tags.size()) +
                                 " branches");
        std::set<std::string> seen;
        for (const auto& br : b.branches()) {
          if (std::find(tags.begin(), tags.end(), br.tag) == tags.end())
            throw ElaborationError(path + ": " + br.tag + " is not a constructor here");
          if (!seen.insert(br.tag).second)
            throw ElaborationError(path + ": duplicate branch " + br.tag);
          std::vector<std::pair<std::string, bool>> roles;
          baseBinderRoles(d.fam()(Value::tag(br.tag)), b.method(), roles,
                          path + "." + br.tag);
          if (roles.size() != br.binders.size())
            throw ElaborationError(path + "." + br.tag + ": expected " +
                                   std::to_string(roles.size()) + " binders");
          Scope inner = scope;
          for (size_t k = 0; k < roles.size(); ++k) {
            std::optional<Pedigree> ped;
            if (roles[k].second) ped = Pedigree{b.slot(), 1};
            inner.bind(br.binders[k], roles[k].first, ped);
          }
          body(br.body, inner, inFold || b.method() == Body::Method::Fold,
               path + "." + br.tag);
        }
        return;
      }
      default:
        throw ElaborationError(path +
                               ": definition bodies are eliminator trees over "
                               "returned expressions");
    }
  }
};

}  // namespace

BaseFn elaborateFun(const FunDef& def, const ScriptEnv& env) {
  if (def.params.size() != def.type.args.size())
    throw ElaborationError(def.name + ": one parameter per argument slot required");
  if (def.type.results.size() != 1)
    throw ElaborationError(def.name + ": scripted definitions return exactly one value");
  {
    Scope scope;
    for (size_t i = 0; i < def.params.size(); ++i)
      scope.bind(def.params[i], "argument", Pedigree{i, 0});
    DefCheck check{&def, &env, {}};
    check.body(def.body, scope, false, def.name);
    requireDecreasing(check.calls, def.name);
  }

  // The interpreter proper. Copies of def/env keep the closure self-contained.
  auto defp = std::make_shared<FunDef>(def);
  auto envp = std::make_shared<ScriptEnv>(env);
  auto call = std::make_shared<std::function<Value(const std::vector<Value>&)>>();
  *call = [defp, envp, call](const std::vector<Value>& args) -> Value {
    std::function<Value(const Body&, std::map<std::string, Value>,
                        const std::vector<Value>&)>
        eval = [&](const Body& b, std::map<std::string, Value> locals,
                   const std::vector<Value>& slots) -> Value {
      switch (b.kind()) {
        case Body::Kind::Ret: {
          EvalCtx ctx{envp.get(), &locals,
                      [call](const std::vector<Value>& as) { return (*call)(as); }};
          return evalExpr(b.expr(), ctx);
        }
        case Body::Kind::Elim: {
          const Value& v = slots[b.slot()];
          if (!v.isIn()) throw IllTypedValue(defp->name + ": eliminating a non-value");
          std::string tag = v.payload().first().tagName();
          const Body::Branch* br = nullptr;
          for (const auto& cand : b.branches())
            if (cand.tag == tag) br = &cand;
          if (!br) throw IllTypedValue(defp->name + ": no branch for " + tag);
          Desc d = scrutineeDesc(defp->type.args[b.slot()], defp->name);
          // Bind fields in payload order; recursive positions may carry the
          // recursively computed result after the raw subvalue.
          std::map<std::string, Value> inner = locals;
          size_t k = 0;
          std::function<void(const Desc&, const Value&)> walk = [&](const Desc& at,
                                                                    const Value& payl) {
            switch (at.kind()) {
              case Desc::Kind::One:
                return;
              case Desc::Kind::Var: {
                auto recurse = [&]() {
                  std::vector<Value> sub = slots;
                  sub[b.slot()] = payl;
                  return eval(b, locals, sub);
                };
                if (b.method() == Body::Method::Fold) {
                  inner[br->binders[k++]] = recurse();
                } else {
                  inner[br->binders[k++]] = payl;
                  if (b.method() == Body::Method::Ind)
                    inner[br->binders[k++]] = recurse();
                }
                return;
              }
              case Desc::Kind::Sigma: {
                inner[br->binders[k++]] = payl.first();
                walk(at.fam()(payl.first()), payl.second());
                return;
              }
              case Desc::Kind::Pi:
                throw ElaborationError(defp->name + ": pi payloads are not scriptable");
            }
          };
          walk(d.fam()(Value::tag(tag)), v.payload().second());
          return eval(br->body, inner, slots);
        }
        default:
          throw ElaborationError(defp->name + ": malformed definition body");
      }
    };
    std::map<std::string, Value> locals;
    for (size_t i = 0; i < defp->params.size(); ++i) locals[defp->params[i]] = args[i];
    return eval(defp->body, locals, args);
  };

  BaseFn fn;
  fn.name = def.name;
  fn.type = def.type;
  fn.run = [defp, call](const std::vector<Value>& args) -> std::vector<Value> {
    if (args.size() != defp->params.size())
      throw SignatureMismatch(defp->name + " expects " +
                              std::to_string(defp->params.size()) + " arguments");
    for (size_t i = 0; i < args.size(); ++i) {
      SetCode s = SetCode::mu(defp->type.args[i].family, defp->type.args[i].index);
      if (!checkValue(s, args[i]))
        throw IllTypedValue(defp->name + ": argument " + std::to_string(i) +
                            " is ill-typed");
    }
    Value out = (*call)(args);
    SetCode rs = SetCode::mu(defp->type.results[0].family, defp->type.results[0].index);
    if (!checkValue(rs, out))
      throw IllTypedValue(defp->name + " produced a result outside its type");
    return {out};
  };
  return fn;
}

// ---- combinators -----------------------------------------------------------

PatchFn liftFold(const Ornament& o, const Value& j, const Algebra&,
                 const CoherentAlgebra& beta) {
  DescFun fam = interpOrn(reornament(o));
  auto run = [fam, beta, j](const std::vector<Value>& args) -> std::vector<Value> {
    if (args.size() != 2)
      throw SignatureMismatch("lift-fold expects one base value and its decoration");
    std::function<Value(const Value&, const Value&)> go = [&](const Value& jt,
                                                              const Value& w) -> Value {
      if (!w.isIn()) throw IllTypedValue("lift-fold: decoration is not a value");
      Value payload = mapPayload(fam.at(jt), go, w.payload());
      return beta.step(jt.first(), jt.second(), payload);
    };
    return {go(Value::pair(j, args[0]), args[1])};
  };
  return PatchFn{"lift-fold", run};
}

PatchFn liftInd(const Ornament& o, const Value& j, const InductionStep&,
                const CoherentInduction& beta) {
  DescFun fam = interpOrn(reornament(o));
  auto run = [fam, beta, j](const std::vector<Value>& args) -> std::vector<Value> {
    if (args.size() != 2)
      throw SignatureMismatch("lift-ind expects one base value and its decoration");
    std::function<Value(const Value&, const Value&)> go = [&](const Value& jt,
                                                              const Value& w) -> Value {
      if (!w.isIn()) throw IllTypedValue("lift-ind: decoration is not a value");
      Value raw = w.payload();
      Value results = mapPayload(fam.at(jt), go, raw);
      return beta.step(jt.first(), jt.second(), raw, results);
    };
    return {go(Value::pair(j, args[0]), args[1])};
  };
  return PatchFn{"lift-ind", run};
}

PatchFn liftCase(const Ornament& o, const Value& j, const CaseStep& step,
                 const CoherentCase& beta) {
  InductionStep ind{[step](const Value& i, const Value& payload, const Value&) {
    return step.step ? step.step(i, payload) : Value::unit();
  }};
  CoherentInduction cind{[beta](const Value& j2, const Value& t, const Value& payload,
                                const Value&) { return beta.step(j2, t, payload); }};
  PatchFn p = liftInd(o, j, ind, cind);
  p.name = "lift-case";
  return p;
}

Value liftConstructor(const Ornament& o, const Value& j, const Value& xs, const Value& e,
                      const Value& a, const Value& rest) {
  Value i = o.re.down(j);
  Desc d = o.base.at(i);
  OrnCode oc = o.at(j);
  SetCode extSet = extension(d, oc, xs);
  if (!checkValue(extSet, e))
    throw IllTypedValue("lift-constructor: extension value does not inhabit " +
                        showSet(extSet));
  Value node = Value::in(Value::pair(e, a));
  SetCode nodeSet = fancySet(reornament(o), Value::pair(j, Value::in(xs)));
  if (!checkValue(nodeSet, node))
    throw IllTypedValue(
        "lift-constructor: structure value does not fit the reornament node");
  return Value::pair(node, rest);
}

// ---- lifting scripts ---------------------------------------------------------

size_t HoleReport::outstanding() const {
  size_t n = 0;
  for (const auto& h : holes)
    if (!h.trivial) ++n;
  return n;
}

std::string HoleReport::render() const {
  std::ostringstream out;
  for (const auto& h : holes) out << "HOLE " << h.path << " : " << h.shown << "\n";
  return out.str();
}

namespace {

// Constructor view of an ornamented argument: the refined tags and the base
// tag each one stands over.
struct CtorView {
  bool inserted;  // refined tags come from a root insert (vs copied base tags)
  std::vector<std::string> tags;
  std::map<std::string, std::string> toBase;
};

std::string baseTagBehind(OrnCode c, const std::string& tag) {
  for (;;) {
    switch (c.kind()) {
      case OrnCode::Kind::Delete:
        if (c.replacement().isTag()) return c.replacement().tagName();
        c = c.rest();
        break;
      case OrnCode::Kind::Insert: {
        auto probe = firstInhabitant(c.inserted());
        if (!probe)
          throw SkeletonMismatch("cannot see past an empty insertion behind " + tag);
        c = c.fam()(*probe);
        break;
      }
      default:
        throw SkeletonMismatch("cannot determine the base constructor behind " + tag);
    }
  }
}

CtorView ctorView(const Ornament& o, const Value& j) {
  OrnCode c = o.at(j);
  CtorView view;
  if (c.kind() == OrnCode::Kind::Insert && c.inserted().kind() == SetCode::Kind::Enum) {
    view.inserted = true;
    view.tags = c.inserted().tags();
    for (const auto& t : view.tags)
      view.toBase[t] = baseTagBehind(c.fam()(Value::tag(t)), t);
    return view;
  }
  if (c.kind() == OrnCode::Kind::Sigma) {
    Desc d = o.base.at(o.re.down(j));
    if (d.kind() == Desc::Kind::Sigma && d.dom().kind() == SetCode::Kind::Enum) {
      view.inserted = false;
      view.tags = d.dom().tags();
      for (const auto& t : view.tags) view.toBase[t] = t;
      return view;
    }
  }
  throw SkeletonMismatch(o.name + " is not rooted in constructors at this index");
}

// Binder roles of one refined branch: copied fields, inserted values and
// recursive positions in walk order.
void ornBinderRoles(const Desc& d, const OrnCode& oc, Body::Method m,
                    std::vector<std::string>& out, const std::string& who) {
  switch (oc.kind()) {
    case OrnCode::Kind::One:
      return;
    case OrnCode::Kind::Var:
      if (m == Body::Method::Fold) {
        out.emplace_back("sub-result");
      } else {
        out.emplace_back("recursive pair");
        if (m == Body::Method::Ind) out.emplace_back("sub-result");
      }
      return;
    case OrnCode::Kind::Pi:
      throw ElaborationError(who + ": pi payloads are not scriptable");
    case OrnCode::Kind::Sigma: {
      if (d.kind() != Desc::Kind::Sigma)
        throw ElaborationError(who + ": ornament does not fit its base");
      out.emplace_back("copied field");
      auto probe = firstInhabitant(d.dom());
      if (!probe) throw ElaborationError(who + ": cannot probe an uninhabited field");
      ornBinderRoles(d.fam()(*probe), oc.fam()(*probe), m, out, who);
      return;
    }
    case OrnCode::Kind::Insert: {
      out.emplace_back("inserted value");
      auto probe = firstInhabitant(oc.inserted());
      if (!probe)
        throw ElaborationError(who + ": cannot probe an empty insertion");
      ornBinderRoles(d, oc.fam()(*probe), m, out, who);
      return;
    }
    case OrnCode::Kind::Delete: {
      if (d.kind() != Desc::Kind::Sigma)
        throw ElaborationError(who + ": ornament does not fit its base");
      ornBinderRoles(d.fam()(oc.replacement()), oc.rest(), m, out, who);
      return;
    }
  }
}

// Bind the binders of one refined branch against a live decoration node.
// payl walks the base payload, ext the node's extension, struc its
// structural positions. recEval produces the result decoration of one
// recursive pair when the method requires it.
void bindOrnBranch(const Desc& d, const OrnCode& oc, const Value& payl, const Value& ext,
                   const Value& struc, Body::Method m,
                   const std::vector<std::string>& binders, size_t& k,
                   std::map<std::string, Value>& locals,
                   const std::function<Value(const Value&, const Value&)>& recEval,
                   const std::string& who) {
  switch (oc.kind()) {
    case OrnCode::Kind::One:
      return;
    case OrnCode::Kind::Var: {
      if (m == Body::Method::Fold) {
        locals[binders[k++]] = recEval(payl, struc);
      } else {
        locals[binders[k++]] = Value::pair(payl, struc);
        if (m == Body::Method::Ind) locals[binders[k++]] = recEval(payl, struc);
      }
      return;
    }
    case OrnCode::Kind::Pi:
      throw ElaborationError(who + ": pi payloads are not scriptable");
    case OrnCode::Kind::Sigma: {
      Value s = payl.first();
      locals[binders[k++]] = s;
      bindOrnBranch(d.fam()(s), oc.fam()(s), payl.second(), ext, struc, m, binders, k,
                    locals, recEval, who);
      return;
    }
    case OrnCode::Kind::Insert: {
      // A collapsed constructor choice is not stored in the extension; it is
      // recomputed from the base payload.
      Value v;
      Value extRest = ext;
      if (oc.inserted().kind() == SetCode::Kind::Enum) {
        auto live = survivingTags(d, oc, payl);
        if (live.size() == 1) {
          v = Value::tag(live.front());
        } else {
          v = ext.first();
          extRest = ext.second();
        }
      } else {
        v = ext.first();
        extRest = ext.second();
      }
      locals[binders[k++]] = v;
      bindOrnBranch(d, oc.fam()(v), payl, extRest, struc, m, binders, k, locals,
                    recEval, who);
      return;
    }
    case OrnCode::Kind::Delete: {
      if (!sameValue(payl.first(), oc.replacement()))
        throw IllTypedValue(who + ": decoration contradicts its base value");
      bindOrnBranch(d.fam()(payl.first()), oc.rest(), payl.second(), ext, struc,
                    m, binders, k, locals, recEval, who);
      return;
    }
  }
}

// One extension position of a result constructor walk.
struct FillPos {
  SetCode set;
  bool terminal;  // the trailing unit of the branch (var / one)
  bool recHere;   // a recursive slot sits at this position
};

// Walk the result ornament code, reporting each fill position and probing
// past holes with a small inhabitant so later positions stay visible. The
// callback receives the position and the fill index and must return the
// value to continue the walk with.
void walkFillPositions(OrnCode oc, const std::function<Value(const FillPos&, size_t)>& at,
                       const std::string& who) {
  size_t k = 0;
  for (;;) {
    switch (oc.kind()) {
      case OrnCode::Kind::One: {
        at(FillPos{SetCode::unitSet(), true, false}, k++);
        return;
      }
      case OrnCode::Kind::Var: {
        at(FillPos{SetCode::unitSet(), true, true}, k++);
        return;
      }
      case OrnCode::Kind::Insert: {
        Value v = at(FillPos{oc.inserted(), false, false}, k++);
        oc = oc.fam()(v);
        break;
      }
      case OrnCode::Kind::Delete:
        oc = oc.rest();
        break;
      case OrnCode::Kind::Sigma:
        throw ElaborationError(who +
                               ": result ornaments with copied fields cannot be "
                               "assembled by scripts");
      case OrnCode::Kind::Pi:
        throw ElaborationError(who + ": pi payloads are not scriptable");
    }
  }
}

// Assemble the (extension, structure) pair of one result node from resolved
// fill values and evaluated recursive decorations. The base payload behind
// the node, as far as extension decisions can see it, is replayed from the
// branch's deletions so collapsed choices are omitted exactly as the
// reornament omits them.
std::pair<Value, Value> assembleNode(const Desc& d, OrnCode oc,
                                     const std::vector<Value>& fillVals,
                                     const std::vector<Value>& recVals,
                                     const std::string& who) {
  size_t k = 0;
  size_t r = 0;
  std::function<Value(OrnCode, size_t)> skel = [&](OrnCode at, size_t kk) -> Value {
    switch (at.kind()) {
      case OrnCode::Kind::One:
      case OrnCode::Kind::Var:
        return Value::unit();
      case OrnCode::Kind::Insert:
        return skel(at.fam()(fillVals[kk]), kk + 1);
      case OrnCode::Kind::Delete:
        return Value::pair(at.replacement(), skel(at.rest(), kk));
      default:
        throw ElaborationError(who + ": result ornament cannot be assembled");
    }
  };
  std::function<std::pair<Value, Value>(const Desc&, OrnCode)> go =
      [&](const Desc& dd, OrnCode at) -> std::pair<Value, Value> {
    switch (at.kind()) {
      case OrnCode::Kind::One: {
        if (!sameValue(fillVals[k++], Value::unit()))
          throw IllTypedValue(who + ": the trailing extension value must be unit");
        return {Value::unit(), Value::unit()};
      }
      case OrnCode::Kind::Var: {
        if (!sameValue(fillVals[k++], Value::unit()))
          throw IllTypedValue(who + ": the trailing extension value must be unit");
        return {Value::unit(), recVals[r++]};
      }
      case OrnCode::Kind::Insert: {
        bool collapse = false;
        if (at.inserted().kind() == SetCode::Kind::Enum) {
          auto live = survivingTags(dd, at, skel(at, k));
          if (live.empty())
            throw IllTypedValue(who + ": no constructor stands over this node");
          collapse = live.size() == 1;
          if (collapse && !sameValue(fillVals[k], Value::tag(live.front())))
            throw IllTypedValue(who +
                                ": constructor choice contradicts its base value");
        }
        Value v = fillVals[k++];
        auto rest = go(dd, at.fam()(v));
        if (collapse) return rest;
        return {Value::pair(v, rest.first), rest.second};
      }
      case OrnCode::Kind::Delete:
        return go(dd.fam()(at.replacement()), at.rest());
      default:
        throw ElaborationError(who + ": result ornament cannot be assembled");
    }
  };
  return go(d, std::move(oc));
}

struct ScriptCheck {
  const LiftScript* script;
  const FunDef* base;
  const FunOrn* fo;
  const ScriptEnv* env;
  const Fills* fills;

  std::vector<Hole> holes;
  std::map<std::string, Value> solved;  // by path
  std::set<std::string> labels;
  std::vector<std::set<size_t>> calls;

  // ---- kind-level alignment against the definition skeleton ----
  void align(const Body& s, const Body& b, const std::string& path) const {
    if (s.kind() == Body::Kind::Elim) {
      if (b.kind() != Body::Kind::Elim)
        throw SkeletonMismatch(path + ": the definition does not split here");
      if (s.method() != b.method())
        throw SkeletonMismatch(path + ": script uses " + methodName(s.method()) +
                               " but the definition uses " + methodName(b.method()));
      if (s.slot() != b.slot())
        throw SkeletonMismatch(path + ": script eliminates argument " +
                               std::to_string(s.slot()) + " but the definition uses " +
                               std::to_string(b.slot()));
      const OrnSlot& os = fo->args[s.slot()];
      std::map<std::string, std::string> toBase;
      std::vector<std::string> tags;
      if (os.ornamented) {
        CtorView view = ctorView(os.orn, os.fancyIndex);
        tags = view.tags;
        toBase = view.toBase;
      } else {
        Desc d = scrutineeDesc(base->type.args[s.slot()], path);
        tags = d.dom().tags();
        for (const auto& t : tags) toBase[t] = t;
      }
      if (s.branches().size() != tags.size())
        throw SkeletonMismatch(path + ": expected " + std::to_string(tags.size()) +
                               " branches");
      for (const auto& br : s.branches()) {
        if (!toBase.count(br.tag))
          throw SkeletonMismatch(path + ": " + br.tag + " is not a constructor here");
        const Body::Branch* bb = nullptr;
        for (const auto& cand : b.branches())
          if (cand.tag == toBase.at(br.tag)) bb = &cand;
        if (!bb)
          throw SkeletonMismatch(path + ": the definition has no branch behind " +
                                 br.tag);
        align(br.body, bb->body, path + "." + br.tag);
      }
      return;
    }
    if (b.kind() == Body::Kind::Elim)
      throw SkeletonMismatch(path + ": the definition splits on argument " +
                             std::to_string(b.slot()) + " here");
    if (s.kind() == Body::Kind::Hole) return;  // unwritten; anything aligns
    int ours = leafSelfCalls(s);
    int theirs = exprSelfCalls(b.expr());
    if (ours != theirs)
      throw SkeletonMismatch(path + ": script performs " + std::to_string(ours) +
                             " recursive calls but the definition performs " +
                             std::to_string(theirs));
  }

  // ---- script-side validation, hole collection, termination ----
  void addHole(const std::string& label, const std::string& path, const SetCode& set,
               const std::string& shown, const Scope& scope) {
    labels.insert(label);
    if (fills->count(label)) return;  // filled; validated at the use site
    Hole h;
    h.label = label;
    h.path = path;
    h.expected = set;
    h.shown = shown;
    h.trivial = false;
    if (enumerable(set)) {
      auto all = enumerateAll(set);
      if (all.size() == 1) {
        h.trivial = true;
        h.solution = all.front();
        solved[path] = all.front();
      }
    }
    h.context = scope.order;
    holes.push_back(std::move(h));
  }

  void check(const Body& s, Scope scope, bool inFold, const std::string& path) {
    switch (s.kind()) {
      case Body::Kind::Ret:
        checkExpr(s.expr(), scope, *env, false, inFold, script->params.size(), calls,
                  path);
        return;
      case Body::Kind::Hole: {
        const Ornament& ro = fo->results[0].orn;
        addHole(s.label(), path + "." + s.label(), SetCode::unitSet(),
                "(mu " + ro.name + "^ _)", scope);
        // Body holes are never trivial: their index is only known at run time.
        if (!fills->count(s.label())) {
          holes.back().trivial = false;
          solved.erase(path + "." + s.label());
        } else {
          checkExpr(fills->at(s.label()), scope, *env, false, inFold,
                    script->params.size(), calls, path);
        }
        return;
      }
      case Body::Kind::SelfCall: {
        if (inFold)
          throw ElaborationError(path + ": recursive calls are not allowed under a fold");
        if (s.args().size() != script->params.size())
          throw ElaborationError(path + ": recursive call arity mismatch");
        for (const auto& a : s.args())
          checkExpr(a, scope, *env, false, inFold, script->params.size(), calls, path);
        calls.push_back(callCandidates(s.args(), scope));
        return;
      }
      case Body::Kind::Ctor: {
        const OrnSlot& rs = fo->results[0];
        OrnCode code = rs.orn.at(rs.fancyIndex);
        size_t recCount = 0;
        size_t used = 0;
        const auto& fs = s.fills();
        walkFillPositions(
            code,
            [&](const FillPos& pos, size_t k) -> Value {
              if (pos.recHere) ++recCount;
              used = k + 1;
              if (k >= fs.size())
                throw ElaborationError(path + ": too few extension values");
              const Body::Fill& f = fs[k];
              if (!f.isHole) {
                if (!checkValue(pos.set, f.value))
                  throw ElaborationError(path + ": extension value " +
                                         std::to_string(k) + " does not inhabit " +
                                         showSet(pos.set));
                return f.value;
              }
              addHole(f.label, path + "." + f.label, pos.set, showSet(pos.set), scope);
              if (fills->count(f.label)) {
                checkExpr(fills->at(f.label), scope, *env, false, inFold,
                          script->params.size(), calls, path);
                auto probe = firstInhabitant(pos.set);
                return probe ? *probe : Value::unit();
              }
              auto it = solved.find(path + "." + f.label);
              if (it != solved.end()) return it->second;
              auto probe = firstInhabitant(pos.set);
              if (!probe)
                throw ElaborationError(path + ": cannot see past a hole of the empty set");
              return *probe;
            },
            path);
        if (used < fs.size())
          throw ElaborationError(path + ": too many extension values");
        if (s.recs().size() != recCount)
          throw ElaborationError(path + ": expected " + std::to_string(recCount) +
                                 " recursive arguments");
        for (const auto& r : s.recs()) {
          if (r.kind() == Body::Kind::Elim)
            throw ElaborationError(path + ": eliminators cannot sit in recursive "
                                          "argument position");
          check(r, scope, inFold, path);
        }
        return;
      }
      case Body::Kind::Elim: {
        if (s.slot() >= script->params.size())
          throw ElaborationError(path + ": eliminated argument out of range");
        const OrnSlot& os = fo->args[s.slot()];
        if (os.ornamented) {
          CtorView view = ctorView(os.orn, os.fancyIndex);
          Value i = os.orn.re.down(os.fancyIndex);
          Desc d = os.orn.base.at(i);
          OrnCode code = os.orn.at(os.fancyIndex);
          for (const auto& br : s.branches()) {
            // An inserted root consumes the refined tag only; a copied root
            // consumes the branch tag on both sides.
            std::vector<std::string> roles;
            Value tagv = Value::tag(br.tag);
            OrnCode branchCode = code.fam()(tagv);
            Desc branchDesc = view.inserted ? d : d.fam()(tagv);
            ornBinderRoles(branchDesc, branchCode, s.method(), roles,
                           path + "." + br.tag);
            if (roles.size() != br.binders.size())
              throw ElaborationError(path + "." + br.tag + ": expected " +
                                     std::to_string(roles.size()) + " binders");
            Scope inner = scope;
            for (size_t k = 0; k < roles.size(); ++k) {
              std::optional<Pedigree> ped;
              if (roles[k] == "recursive pair") ped = Pedigree{s.slot(), 1};
              inner.bind(br.binders[k], roles[k], ped);
            }
            check(br.body, inner, inFold || s.method() == Body::Method::Fold,
                  path + "." + br.tag);
          }
        } else {
          Desc d = scrutineeDesc(base->type.args[s.slot()], path);
          for (const auto& br : s.branches()) {
            std::vector<std::pair<std::string, bool>> roles;
            // Identity slots bind raw fields only; recursion goes through
            // explicit self-calls.
            baseBinderRoles(d.fam()(Value::tag(br.tag)), Body::Method::Case, roles,
                            path + "." + br.tag);
            if (roles.size() != br.binders.size())
              throw ElaborationError(path + "." + br.tag + ": expected " +
                                     std::to_string(roles.size()) + " binders");
            Scope inner = scope;
            for (size_t k = 0; k < roles.size(); ++k) {
              std::optional<Pedigree> ped;
              if (roles[k].second) ped = Pedigree{s.slot(), 1};
              inner.bind(br.binders[k], roles[k].first, ped);
            }
            check(br.body, inner, inFold || s.method() == Body::Method::Fold,
                  path + "." + br.tag);
          }
        }
        return;
      }
    }
  }
};

// The runtime interpreter of a validated, hole-free (modulo auto-solved)
// script.
struct LiftInterp {
  LiftScript script;
  FunDef base;
  FunOrn fo;
  ScriptEnv env;
  Fills filled;
  std::map<std::string, Value> solved;  // trivial holes, by path

  size_t patchArity() const {
    size_t n = 0;
    for (const auto& s : fo.args) n += s.ornamented ? 2 : 1;
    return n;
  }

  std::vector<Value> top(const std::vector<Value>& patchArgs) {
    if (patchArgs.size() != patchArity())
      throw SignatureMismatch(script.name + " expects " +
                              std::to_string(patchArity()) + " patch arguments");
    std::vector<Value> slots;
    size_t k = 0;
    for (const auto& s : fo.args) {
      if (s.ornamented) {
        Value t = patchArgs[k++];
        Value w = patchArgs[k++];
        slots.push_back(Value::pair(t, w));
      } else {
        slots.push_back(patchArgs[k++]);
      }
    }
    std::map<std::string, Value> locals;
    for (size_t i = 0; i < script.params.size(); ++i) locals[script.params[i]] = slots[i];
    return {eval(script.body, locals, slots, script.name)};
  }

  Value resolveFill(const Body::Fill& f, const std::map<std::string, Value>& locals,
                    const std::string& path) {
    if (!f.isHole) return f.value;
    auto it = filled.find(f.label);
    if (it != filled.end()) {
      EvalCtx ctx{&env, &locals, nullptr};
      return evalExpr(it->second, ctx);
    }
    auto sv = solved.find(path + "." + f.label);
    if (sv == solved.end()) throw UnfilledHole(path + "." + f.label);
    return sv->second;
  }

  // A value standing for a decoration: either a decoration itself or a
  // (base value, decoration) pair, whose decoration half is meant.
  static Value decorOf(const Value& v, const std::string& who) {
    if (v.isIn()) return v;
    if (v.isPair() && v.second().isIn()) return v.second();
    throw IllTypedValue(who + ": expected a decoration");
  }

  Value eval(const Body& b, const std::map<std::string, Value>& locals,
             const std::vector<Value>& slots, const std::string& path) {
    switch (b.kind()) {
      case Body::Kind::Ret: {
        EvalCtx ctx{&env, &locals, nullptr};
        return decorOf(evalExpr(b.expr(), ctx), path);
      }
      case Body::Kind::Hole: {
        auto it = filled.find(b.label());
        if (it == filled.end()) throw UnfilledHole(path + "." + b.label());
        EvalCtx ctx{&env, &locals, nullptr};
        return decorOf(evalExpr(it->second, ctx), path);
      }
      case Body::Kind::SelfCall: {
        std::vector<Value> next;
        EvalCtx ctx{&env, &locals, nullptr};
        for (size_t i = 0; i < b.args().size(); ++i) {
          Value v = evalExpr(b.args()[i], ctx);
          if (fo.args[i].ornamented) {
            if (!v.isPair())
              throw IllTypedValue(path + ": ornamented argument " + std::to_string(i) +
                                  " of a recursive call must be a (value, decoration) "
                                  "pair");
            next.push_back(v.first());
            next.push_back(v.second());
          } else {
            next.push_back(v);
          }
        }
        return top(next)[0];
      }
      case Body::Kind::Ctor: {
        const OrnSlot& rs = fo.results[0];
        OrnCode code = rs.orn.at(rs.fancyIndex);
        Desc d = rs.orn.base.at(rs.orn.re.down(rs.fancyIndex));
        std::vector<Value> recVals;
        for (const auto& r : b.recs()) recVals.push_back(eval(r, locals, slots, path));
        std::vector<Value> fillVals;
        walkFillPositions(
            code,
            [&](const FillPos&, size_t k) -> Value {
              Value v = resolveFill(b.fills()[k], locals, path);
              fillVals.push_back(v);
              return v;
            },
            path);
        auto node = assembleNode(d, code, fillVals, recVals, path);
        return Value::in(Value::pair(node.first, node.second));
      }
      case Body::Kind::Elim: {
        const OrnSlot& os = fo.args[b.slot()];
        if (os.ornamented) return evalOrnElim(b, locals, slots, path);
        return evalIdElim(b, locals, slots, path);
      }
    }
    throw ElaborationError(path + ": malformed script body");
  }

  Value evalOrnElim(const Body& b, const std::map<std::string, Value>& locals,
                    const std::vector<Value>& slots, const std::string& path) {
    const OrnSlot& os = fo.args[b.slot()];
    const Value& pv = slots[b.slot()];
    if (!pv.isPair() || !pv.second().isIn())
      throw IllTypedValue(path + ": ornamented argument lost its decoration");
    Value t = pv.first();
    Value w = pv.second();
    CtorView view = ctorView(os.orn, os.fancyIndex);
    Value ext = w.payload().first();
    Value struc = w.payload().second();
    Value i = os.orn.re.down(os.fancyIndex);
    Desc d = os.orn.base.at(i);
    OrnCode code = os.orn.at(os.fancyIndex);
    // An inserted root's tag is stored in the extension only while several
    // constructors stand over the base value; a collapsed choice is
    // recomputed. A copied root carries its tag in the base value.
    std::string tag;
    Value extRest = ext;
    if (view.inserted) {
      auto live = survivingTags(d, code, t.payload());
      if (live.size() == 1) {
        tag = live.front();
      } else {
        tag = ext.first().tagName();
        extRest = ext.second();
      }
    } else {
      tag = t.payload().first().tagName();
    }
    const Body::Branch* br = nullptr;
    for (const auto& cand : b.branches())
      if (cand.tag == tag) br = &cand;
    if (!br) throw IllTypedValue(path + ": no branch for " + tag);

    Value tagv = Value::tag(tag);
    OrnCode branchCode = code.fam()(tagv);
    Desc branchDesc = view.inserted ? d : d.fam()(tagv);
    Value payl = view.inserted ? t.payload() : t.payload().second();

    auto recEval = [&](const Value& tSub, const Value& wSub) -> Value {
      std::vector<Value> sub = slots;
      sub[b.slot()] = Value::pair(tSub, wSub);
      return eval(b, locals, sub, path);
    };

    std::map<std::string, Value> inner = locals;
    size_t k = 0;
    bindOrnBranch(branchDesc, branchCode, payl, extRest, struc, b.method(), br->binders,
                  k, inner, recEval, path + "." + tag);
    return eval(br->body, inner, slots, path + "." + tag);
  }

  Value evalIdElim(const Body& b, const std::map<std::string, Value>& locals,
                   const std::vector<Value>& slots, const std::string& path) {
    const Value& v = slots[b.slot()];
    if (!v.isIn()) throw IllTypedValue(path + ": eliminating a non-value");
    std::string tag = v.payload().first().tagName();
    const Body::Branch* br = nullptr;
    for (const auto& cand : b.branches())
      if (cand.tag == tag) br = &cand;
    if (!br) throw IllTypedValue(path + ": no branch for " + tag);
    Desc d = scrutineeDesc(base.type.args[b.slot()], path);
    std::map<std::string, Value> inner = locals;
    size_t k = 0;
    std::function<void(const Desc&, const Value&)> walk = [&](const Desc& at,
                                                              const Value& payl) {
      switch (at.kind()) {
        case Desc::Kind::One:
          return;
        case Desc::Kind::Var:
          inner[br->binders[k++]] = payl;
          return;
        case Desc::Kind::Sigma:
          inner[br->binders[k++]] = payl.first();
          walk(at.fam()(payl.first()), payl.second());
          return;
        case Desc::Kind::Pi:
          throw ElaborationError(path + ": pi payloads are not scriptable");
      }
    };
    walk(d.fam()(Value::tag(tag)), v.payload().second());
    return eval(br->body, inner, slots, path + "." + tag);
  }
};

}  // namespace

LiftResult elaborateScript(const LiftScript& script, const FunDef& base,
                           const FunOrn& fo, const ScriptEnv& env, const Fills& fills) {
  if (!script.base.empty() && script.base != base.name)
    throw ElaborationError(script.name + " lifts " + script.base +
                           " but was elaborated against " + base.name);
  if (script.params.size() != base.params.size())
    throw ElaborationError(script.name + ": one parameter per argument slot required");
  checkFunOrn(fo, base.type, 1);
  if (fo.results.size() != 1 || !fo.results[0].ornamented)
    throw ElaborationError(script.name +
                           ": scripts produce exactly one ornamented result");

  ScriptCheck check{&script, &base, &fo, &env, &fills, {}, {}, {}, {}};
  check.align(script.body, base.body, script.name);
  {
    Scope scope;
    for (size_t i = 0; i < script.params.size(); ++i)
      scope.bind(script.params[i], "argument", Pedigree{i, 0});
    check.check(script.body, scope, false, script.name);
  }
  requireDecreasing(check.calls, script.name);
  for (const auto& f : fills) {
    if (!check.labels.count(f.first))
      throw ElaborationError(script.name + ": fill for unknown hole " + f.first);
  }

  LiftResult result;
  result.report.holes = check.holes;
  if (result.report.outstanding() == 0) {
    auto interp = std::make_shared<LiftInterp>(
        LiftInterp{script, base, fo, env, fills, check.solved});
    PatchFn fn;
    fn.name = script.name;
    fn.run = [interp](const std::vector<Value>& args) { return interp->top(args); };
    result.fn = fn;
  }
  return result;
}

}  // namespace orn

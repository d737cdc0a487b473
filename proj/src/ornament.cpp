#include "orn/ornament.hpp"

#include <sstream>
#include <utility>

#include "orn/errors.hpp"

namespace orn {

struct OrnCode::Node {
  Kind kind;
  InvWitness witness;  // Var
  Fam fam;             // Pi / Sigma / Insert
  SetCode inserted;    // Insert
  Value replacement;   // Delete
  OrnCode rest;        // Delete

  explicit Node(Kind k) : kind(k) {}
};

// Null node means one(), as for Desc.
OrnCode::OrnCode() : node_(nullptr) {}
OrnCode::OrnCode(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

OrnCode OrnCode::one() { return OrnCode(); }

OrnCode OrnCode::var(Value fancyIndex, Value coarseIndex) {
  auto node = std::make_shared<Node>(Kind::Var);
  node->witness = InvWitness{std::move(fancyIndex), std::move(coarseIndex)};
  return OrnCode(std::move(node));
}

OrnCode OrnCode::pi(Fam fam) {
  auto node = std::make_shared<Node>(Kind::Pi);
  node->fam = std::move(fam);
  return OrnCode(std::move(node));
}

OrnCode OrnCode::sigma(Fam fam) {
  auto node = std::make_shared<Node>(Kind::Sigma);
  node->fam = std::move(fam);
  return OrnCode(std::move(node));
}

OrnCode OrnCode::insert(SetCode inserted, Fam rest) {
  auto node = std::make_shared<Node>(Kind::Insert);
  node->inserted = std::move(inserted);
  node->fam = std::move(rest);
  return OrnCode(std::move(node));
}

OrnCode OrnCode::del(Value replacement, OrnCode rest) {
  auto node = std::make_shared<Node>(Kind::Delete);
  node->replacement = std::move(replacement);
  node->rest = std::move(rest);
  return OrnCode(std::move(node));
}

OrnCode::Kind OrnCode::kind() const { return node_ ? node_->kind : Kind::One; }

namespace {
[[noreturn]] void badCodeAccess(const char* what) {
  throw IllFormedOrnament(std::string("ornament code accessor misused: ") + what);
}
}  // namespace

const InvWitness& OrnCode::witness() const {
  if (kind() != Kind::Var) badCodeAccess("witness");
  return node_->witness;
}
const OrnCode::Fam& OrnCode::fam() const {
  if (kind() != Kind::Pi && kind() != Kind::Sigma && kind() != Kind::Insert)
    badCodeAccess("fam");
  return node_->fam;
}
const SetCode& OrnCode::inserted() const {
  if (kind() != Kind::Insert) badCodeAccess("inserted");
  return node_->inserted;
}
const Value& OrnCode::replacement() const {
  if (kind() != Kind::Delete) badCodeAccess("replacement");
  return node_->replacement;
}
const OrnCode& OrnCode::rest() const {
  if (kind() != Kind::Delete) badCodeAccess("rest");
  return node_->rest;
}

// ---- interpretation --------------------------------------------------------

namespace {
[[noreturn]] void shapeMismatch(const char* code, const Desc& d) {
  throw IllFormedOrnament(std::string("ornament code '") + code +
                          "' does not fit description " + showDesc(d));
}
}  // namespace

Desc interpCode(const Desc& d, const OrnCode& code) {
  switch (code.kind()) {
    case OrnCode::Kind::Var: {
      if (d.kind() != Desc::Kind::Var) shapeMismatch("var", d);
      const InvWitness& w = code.witness();
      if (!sameValue(w.coarse, d.index())) {
        throw IllFormedOrnament("var witness claims base index " + showValue(w.coarse) +
                                " but the description recurses at " + showValue(d.index()));
      }
      return Desc::var(w.fancy);
    }
    case OrnCode::Kind::One:
      if (d.kind() != Desc::Kind::One) shapeMismatch("one", d);
      return Desc::one();
    case OrnCode::Kind::Pi: {
      if (d.kind() != Desc::Kind::Pi) shapeMismatch("pi", d);
      auto df = d.fam();
      auto of = code.fam();
      return Desc::pi(d.dom(), [df, of](const Value& s) { return interpCode(df(s), of(s)); });
    }
    case OrnCode::Kind::Sigma: {
      if (d.kind() != Desc::Kind::Sigma) shapeMismatch("sigma", d);
      auto df = d.fam();
      auto of = code.fam();
      return Desc::sigma(d.dom(), [df, of](const Value& s) { return interpCode(df(s), of(s)); });
    }
    case OrnCode::Kind::Insert: {
      auto of = code.fam();
      return Desc::sigma(code.inserted(),
                         [d, of](const Value& s) { return interpCode(d, of(s)); });
    }
    case OrnCode::Kind::Delete: {
      if (d.kind() != Desc::Kind::Sigma) shapeMismatch("delete", d);
      return interpCode(d.fam()(code.replacement()), code.rest());
    }
  }
  throw IllFormedOrnament("unreachable ornament code kind");
}

DescFun interpOrn(const Ornament& o) {
  DescFun out;
  out.name = o.name;
  out.indexSet = o.re.fancyIndexSet;
  out.at = [o](const Value& j) { return interpCode(o.base.at(o.re.down(j)), o.at(j)); };
  return out;
}

SetCode fancySet(const Ornament& o, const Value& j) {
  return SetCode::mu(interpOrn(o), j);
}

OrnCode mirrorCode(const Desc& d) {
  switch (d.kind()) {
    case Desc::Kind::Var:
      return OrnCode::var(d.index(), d.index());
    case Desc::Kind::One:
      return OrnCode::one();
    case Desc::Kind::Pi: {
      auto f = d.fam();
      return OrnCode::pi([f](const Value& s) { return mirrorCode(f(s)); });
    }
    case Desc::Kind::Sigma: {
      auto f = d.fam();
      return OrnCode::sigma([f](const Value& s) { return mirrorCode(f(s)); });
    }
  }
  throw IllFormedOrnament("unreachable description kind");
}

Ornament idOrn(const DescFun& d) {
  Ornament o;
  o.name = d.name;
  o.base = d;
  o.re.fancyIndexSet = d.indexSet;
  o.re.down = [](const Value& j) { return j; };
  o.at = [d](const Value& j) { return mirrorCode(d.at(j)); };
  return o;
}

// ---- well-formedness -------------------------------------------------------

namespace {
void validateCode(const Desc& d, const OrnCode& code, const Reindexing& re, int depth,
                  const std::string& path) {
  switch (code.kind()) {
    case OrnCode::Kind::Var: {
      if (d.kind() != Desc::Kind::Var)
        throw IllFormedOrnament(path + ": var code over " + showDesc(d));
      const InvWitness& w = code.witness();
      if (!checkValue(re.fancyIndexSet, w.fancy))
        throw IllFormedOrnament(path + ": var witness " + showValue(w.fancy) +
                                " is not a refined index");
      if (!sameValue(w.coarse, d.index()))
        throw IllFormedOrnament(path + ": var witness claims base index " +
                                showValue(w.coarse) + " over recursion at " +
                                showValue(d.index()));
      if (!sameValue(re.down(w.fancy), w.coarse))
        throw IllFormedOrnament(path + ": reindexing sends " + showValue(w.fancy) +
                                " to " + showValue(re.down(w.fancy)) + ", not " +
                                showValue(w.coarse));
      return;
    }
    case OrnCode::Kind::One:
      if (d.kind() != Desc::Kind::One)
        throw IllFormedOrnament(path + ": one code over " + showDesc(d));
      return;
    case OrnCode::Kind::Pi:
    case OrnCode::Kind::Sigma: {
      const bool isPi = code.kind() == OrnCode::Kind::Pi;
      if (d.kind() != (isPi ? Desc::Kind::Pi : Desc::Kind::Sigma))
        throw IllFormedOrnament(path + ": " + (isPi ? "pi" : "sigma") + " code over " +
                                showDesc(d));
      for (const Value& s : enumerate(d.dom(), depth)) {
        validateCode(d.fam()(s), code.fam()(s), re, depth,
                     path + "." + (isPi ? "pi[" : "sigma[") + showValue(s) + "]");
      }
      return;
    }
    case OrnCode::Kind::Insert: {
      for (const Value& s : enumerate(code.inserted(), depth)) {
        validateCode(d, code.fam()(s), re, depth, path + ".insert[" + showValue(s) + "]");
      }
      return;
    }
    case OrnCode::Kind::Delete: {
      if (d.kind() != Desc::Kind::Sigma)
        throw IllFormedOrnament(path + ": delete code over " + showDesc(d));
      if (!checkValue(d.dom(), code.replacement()))
        throw IllFormedOrnament(path + ": deleted value " + showValue(code.replacement()) +
                                " does not inhabit the component it replaces");
      validateCode(d.fam()(code.replacement()), code.rest(), re, depth,
                   path + ".delete[" + showValue(code.replacement()) + "]");
      return;
    }
  }
}
}  // namespace

void wellFormedOrn(const Ornament& o, int depth) {
  for (const Value& j : enumerate(o.re.fancyIndexSet, depth)) {
    Value i = o.re.down(j);
    if (!checkValue(o.base.indexSet, i)) {
      throw IllFormedOrnament(o.name + ": reindexing sends " + showValue(j) +
                              " outside the base index set");
    }
    validateCode(o.base.at(i), o.at(j), o.re, depth, o.name + "[" + showValue(j) + "]");
  }
}

// ---- forgetting ------------------------------------------------------------

Value ornForgetNat(const Desc& d, const OrnCode& code, const Value& v) {
  switch (code.kind()) {
    case OrnCode::Kind::Var:
    case OrnCode::Kind::One:
      return v;
    case OrnCode::Kind::Pi: {
      Value::Table out;
      for (const auto& entry : v.table()) {
        out.emplace_back(entry.first, ornForgetNat(d.fam()(entry.first),
                                                   code.fam()(entry.first), entry.second));
      }
      return Value::fun(std::move(out));
    }
    case OrnCode::Kind::Sigma:
      return Value::pair(v.first(), ornForgetNat(d.fam()(v.first()),
                                                 code.fam()(v.first()), v.second()));
    case OrnCode::Kind::Insert:
      return ornForgetNat(d, code.fam()(v.first()), v.second());
    case OrnCode::Kind::Delete:
      return Value::pair(code.replacement(),
                         ornForgetNat(d.fam()(code.replacement()), code.rest(), v));
  }
  throw IllFormedOrnament("unreachable ornament code kind");
}

Value ornForget(const Ornament& o, const Value& j, const Value& t) {
  DescFun fancy = interpOrn(o);
  Algebra alg;
  alg.carrierAt = [o](const Value& j2) { return SetCode::mu(o.base, o.re.down(j2)); };
  alg.step = [o](const Value& j2, const Value& payload) {
    return Value::in(ornForgetNat(o.base.at(o.re.down(j2)), o.at(j2), payload));
  };
  return fold(fancy, alg, j, t);
}

}  // namespace orn

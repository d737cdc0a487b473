#include "orn/core.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "orn/errors.hpp"

namespace orn {

// ---- node layouts ------------------------------------------------------

struct SetCode::Node {
  Kind kind;
  std::vector<std::string> tags;          // Enum
  SetCode inner;                          // Sigma first / Pi dom / Eq carrier
  Fam fam;                                // Sigma rest / Pi cod
  Value lhs, rhs;                         // Eq
  std::shared_ptr<const DescFun> family;  // Mu
  Value index;                            // Mu

  explicit Node(Kind k) : kind(k) {}
};

struct Desc::Node {
  Kind kind;
  Value index;  // Var
  SetCode dom;  // Pi / Sigma
  Fam fam;      // Pi / Sigma

  explicit Node(Kind k) : kind(k) {}
};

// The null node stands for the unit set, so default construction never
// allocates and node payloads may default-initialize without recursion.
SetCode::SetCode() : node_(nullptr) {}
SetCode::SetCode(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

SetCode SetCode::unitSet() { return SetCode(); }

SetCode SetCode::emptySet() {
  static const auto node = std::make_shared<const Node>(Kind::Empty);
  return SetCode(node);
}

SetCode SetCode::enumSet(std::vector<std::string> tags) {
  std::set<std::string> seen;
  for (const auto& t : tags) {
    if (!seen.insert(t).second) throw IllFormedSet("enum set repeats tag '" + t);
  }
  auto node = std::make_shared<Node>(Kind::Enum);
  node->tags = std::move(tags);
  return SetCode(std::move(node));
}

SetCode SetCode::sigma(SetCode first, Fam rest) {
  auto node = std::make_shared<Node>(Kind::Sigma);
  node->inner = std::move(first);
  node->fam = std::move(rest);
  return SetCode(std::move(node));
}

SetCode SetCode::pi(SetCode dom, Fam cod) {
  auto node = std::make_shared<Node>(Kind::Pi);
  node->inner = std::move(dom);
  node->fam = std::move(cod);
  return SetCode(std::move(node));
}

SetCode SetCode::eq(SetCode carrier, Value lhs, Value rhs) {
  auto node = std::make_shared<Node>(Kind::Eq);
  node->inner = std::move(carrier);
  node->lhs = std::move(lhs);
  node->rhs = std::move(rhs);
  return SetCode(std::move(node));
}

SetCode SetCode::mu(DescFun family, Value index) {
  auto node = std::make_shared<Node>(Kind::Mu);
  node->family = std::make_shared<const DescFun>(std::move(family));
  node->index = std::move(index);
  return SetCode(std::move(node));
}

SetCode::Kind SetCode::kind() const { return node_ ? node_->kind : Kind::Unit; }

namespace {
[[noreturn]] void badSetAccess(const char* what) {
  throw IllFormedSet(std::string("set accessor misused: ") + what);
}
}  // namespace

const std::vector<std::string>& SetCode::tags() const {
  if (kind() != Kind::Enum) badSetAccess("tags");
  return node_->tags;
}
const SetCode& SetCode::first() const {
  if (kind() != Kind::Sigma) badSetAccess("first");
  return node_->inner;
}
const SetCode& SetCode::dom() const {
  if (kind() != Kind::Pi) badSetAccess("dom");
  return node_->inner;
}
const SetCode::Fam& SetCode::rest() const {
  if (kind() != Kind::Sigma) badSetAccess("rest");
  return node_->fam;
}
const SetCode::Fam& SetCode::cod() const {
  if (kind() != Kind::Pi) badSetAccess("cod");
  return node_->fam;
}
const SetCode& SetCode::carrier() const {
  if (kind() != Kind::Eq) badSetAccess("carrier");
  return node_->inner;
}
const Value& SetCode::lhs() const {
  if (kind() != Kind::Eq) badSetAccess("lhs");
  return node_->lhs;
}
const Value& SetCode::rhs() const {
  if (kind() != Kind::Eq) badSetAccess("rhs");
  return node_->rhs;
}
const DescFun& SetCode::family() const {
  if (kind() != Kind::Mu) badSetAccess("family");
  return *node_->family;
}
const Value& SetCode::index() const {
  if (kind() != Kind::Mu) badSetAccess("index");
  return node_->index;
}

// Null node means the trivial description, mirroring SetCode's default.
Desc::Desc() : node_(nullptr) {}
Desc::Desc(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Desc Desc::one() { return Desc(); }

Desc Desc::var(Value index) {
  auto node = std::make_shared<Node>(Kind::Var);
  node->index = std::move(index);
  return Desc(std::move(node));
}

Desc Desc::pi(SetCode dom, Fam fam) {
  auto node = std::make_shared<Node>(Kind::Pi);
  node->dom = std::move(dom);
  node->fam = std::move(fam);
  return Desc(std::move(node));
}

Desc Desc::sigma(SetCode dom, Fam fam) {
  auto node = std::make_shared<Node>(Kind::Sigma);
  node->dom = std::move(dom);
  node->fam = std::move(fam);
  return Desc(std::move(node));
}

Desc::Kind Desc::kind() const { return node_ ? node_->kind : Kind::One; }

const Value& Desc::index() const {
  if (kind() != Kind::Var) throw IllFormedSet("desc accessor misused: index");
  return node_->index;
}
const SetCode& Desc::dom() const {
  if (kind() != Kind::Pi && kind() != Kind::Sigma)
    throw IllFormedSet("desc accessor misused: dom");
  return node_->dom;
}
const Desc::Fam& Desc::fam() const {
  if (kind() != Kind::Pi && kind() != Kind::Sigma)
    throw IllFormedSet("desc accessor misused: fam");
  return node_->fam;
}

// ---- equality-set sanity -------------------------------------------------

namespace {
void requireEqSides(const SetCode& s) {
  if (!checkValue(s.carrier(), s.lhs()) || !checkValue(s.carrier(), s.rhs())) {
    throw IllFormedSet("equality set endpoints do not inhabit their carrier: " +
                       showValue(s.lhs()) + " = " + showValue(s.rhs()));
  }
}
}  // namespace

// ---- checking ------------------------------------------------------------

bool checkValue(const SetCode& s, const Value& v) {
  switch (s.kind()) {
    case SetCode::Kind::Unit:
      return v.isUnit();
    case SetCode::Kind::Empty:
      return false;
    case SetCode::Kind::Enum: {
      if (!v.isTag()) return false;
      const auto& ts = s.tags();
      return std::find(ts.begin(), ts.end(), v.tagName()) != ts.end();
    }
    case SetCode::Kind::Sigma:
      return v.isPair() && checkValue(s.first(), v.first()) &&
             checkValue(s.rest()(v.first()), v.second());
    case SetCode::Kind::Pi: {
      if (!v.isFun()) return false;
      std::vector<Value> domain = enumerateAll(s.dom());
      const auto& table = v.table();
      if (table.size() != domain.size()) return false;
      for (size_t i = 0; i < domain.size(); ++i) {
        if (!sameValue(table[i].first, domain[i])) return false;
        if (!checkValue(s.cod()(domain[i]), table[i].second)) return false;
      }
      return true;
    }
    case SetCode::Kind::Eq: {
      requireEqSides(s);
      return v.isRefl() && equalValue(s.carrier(), s.lhs(), s.rhs());
    }
    case SetCode::Kind::Mu: {
      if (!v.isIn()) return false;
      const DescFun& fam = s.family();
      auto checkRec = [&fam](const Value& i, const Value& sub) {
        return checkValue(SetCode::mu(fam, i), sub);
      };
      return checkPayload(fam.at(s.index()), checkRec, v.payload());
    }
  }
  return false;
}

bool checkPayload(const Desc& d,
                  const std::function<bool(const Value&, const Value&)>& checkRec,
                  const Value& v) {
  switch (d.kind()) {
    case Desc::Kind::Var:
      return checkRec(d.index(), v);
    case Desc::Kind::One:
      return v.isUnit();
    case Desc::Kind::Pi: {
      if (!v.isFun()) return false;
      std::vector<Value> domain = enumerateAll(d.dom());
      const auto& table = v.table();
      if (table.size() != domain.size()) return false;
      for (size_t i = 0; i < domain.size(); ++i) {
        if (!sameValue(table[i].first, domain[i])) return false;
        if (!checkPayload(d.fam()(domain[i]), checkRec, table[i].second)) return false;
      }
      return true;
    }
    case Desc::Kind::Sigma:
      return v.isPair() && checkValue(d.dom(), v.first()) &&
             checkPayload(d.fam()(v.first()), checkRec, v.second());
  }
  return false;
}

// ---- equality --------------------------------------------------------------

namespace {
bool payloadEqual(const Desc& d, const DescFun& fam, const Value& a, const Value& b);
}

bool equalValue(const SetCode& s, const Value& a, const Value& b) {
  switch (s.kind()) {
    case SetCode::Kind::Unit:
    case SetCode::Kind::Empty:
      return true;  // at most one inhabitant
    case SetCode::Kind::Enum:
      return a.tagName() == b.tagName();
    case SetCode::Kind::Sigma:
      return equalValue(s.first(), a.first(), b.first()) &&
             equalValue(s.rest()(a.first()), a.second(), b.second());
    case SetCode::Kind::Pi: {
      for (const Value& arg : enumerateAll(s.dom())) {
        if (!equalValue(s.cod()(arg), a.apply(arg), b.apply(arg))) return false;
      }
      return true;
    }
    case SetCode::Kind::Eq:
      return true;  // proof-irrelevant
    case SetCode::Kind::Mu:
      return payloadEqual(s.family().at(s.index()), s.family(), a.payload(), b.payload());
  }
  return false;
}

namespace {
bool payloadEqual(const Desc& d, const DescFun& fam, const Value& a, const Value& b) {
  switch (d.kind()) {
    case Desc::Kind::Var:
      return equalValue(SetCode::mu(fam, d.index()), a, b);
    case Desc::Kind::One:
      return true;
    case Desc::Kind::Pi: {
      for (const Value& arg : enumerateAll(d.dom())) {
        if (!payloadEqual(d.fam()(arg), fam, a.apply(arg), b.apply(arg))) return false;
      }
      return true;
    }
    case Desc::Kind::Sigma:
      return equalValue(d.dom(), a.first(), b.first()) &&
             payloadEqual(d.fam()(a.first()), fam, a.second(), b.second());
  }
  return false;
}
}  // namespace

// ---- enumeration ---------------------------------------------------------

namespace {

// Payload enumeration for one mu node: recursive positions draw from an
// enumeration one level shallower, other components use the full depth.
std::vector<Value> enumPayload(const Desc& d, const DescFun& fam, int recDepth,
                               int domDepth) {
  switch (d.kind()) {
    case Desc::Kind::Var:
      if (recDepth < 0) return {};
      return enumerate(SetCode::mu(fam, d.index()), recDepth);
    case Desc::Kind::One:
      return {Value::unit()};
    case Desc::Kind::Sigma: {
      std::vector<Value> out;
      for (const Value& a : enumerate(d.dom(), domDepth)) {
        for (const Value& b : enumPayload(d.fam()(a), fam, recDepth, domDepth)) {
          out.push_back(Value::pair(a, b));
        }
      }
      return out;
    }
    case Desc::Kind::Pi: {
      std::vector<Value> domain = enumerateAll(d.dom());
      std::vector<std::vector<Value>> options;
      options.reserve(domain.size());
      for (const Value& a : domain) {
        options.push_back(enumPayload(d.fam()(a), fam, recDepth, domDepth));
      }
      std::vector<Value> out;
      std::vector<size_t> pick(domain.size(), 0);
      for (const auto& opt : options) {
        if (opt.empty()) return out;  // no total table exists
      }
      while (true) {
        Value::Table table;
        table.reserve(domain.size());
        for (size_t i = 0; i < domain.size(); ++i) {
          table.emplace_back(domain[i], options[i][pick[i]]);
        }
        out.push_back(Value::fun(std::move(table)));
        // advance odometer, last position fastest
        size_t i = domain.size();
        while (i > 0) {
          --i;
          if (++pick[i] < options[i].size()) break;
          pick[i] = 0;
          if (i == 0) return out;
        }
        if (domain.empty()) return out;  // single empty table
      }
    }
  }
  return {};
}

}  // namespace

std::vector<Value> enumerate(const SetCode& s, int depth) {
  switch (s.kind()) {
    case SetCode::Kind::Unit:
      return {Value::unit()};
    case SetCode::Kind::Empty:
      return {};
    case SetCode::Kind::Enum: {
      std::vector<Value> out;
      for (const auto& t : s.tags()) out.push_back(Value::tag(t));
      return out;
    }
    case SetCode::Kind::Sigma: {
      std::vector<Value> out;
      for (const Value& a : enumerate(s.first(), depth)) {
        for (const Value& b : enumerate(s.rest()(a), depth)) {
          out.push_back(Value::pair(a, b));
        }
      }
      return out;
    }
    case SetCode::Kind::Pi: {
      std::vector<Value> domain = enumerateAll(s.dom());
      std::vector<std::vector<Value>> options;
      options.reserve(domain.size());
      for (const Value& a : domain) options.push_back(enumerate(s.cod()(a), depth));
      for (const auto& opt : options) {
        if (opt.empty()) return {};
      }
      std::vector<Value> out;
      std::vector<size_t> pick(domain.size(), 0);
      while (true) {
        Value::Table table;
        table.reserve(domain.size());
        for (size_t i = 0; i < domain.size(); ++i) {
          table.emplace_back(domain[i], options[i][pick[i]]);
        }
        out.push_back(Value::fun(std::move(table)));
        size_t i = domain.size();
        bool advanced = false;
        while (i > 0) {
          --i;
          if (++pick[i] < options[i].size()) {
            advanced = true;
            break;
          }
          pick[i] = 0;
        }
        if (!advanced) return out;
      }
    }
    case SetCode::Kind::Eq: {
      requireEqSides(s);
      if (equalValue(s.carrier(), s.lhs(), s.rhs())) return {Value::refl()};
      return {};
    }
    case SetCode::Kind::Mu: {
      if (depth < 0) return {};
      std::vector<Value> out;
      for (const Value& payload :
           enumPayload(s.family().at(s.index()), s.family(), depth - 1, depth)) {
        Value v = Value::in(payload);
        if (depthOf(v) <= depth) out.push_back(std::move(v));
      }
      std::stable_sort(out.begin(), out.end(),
                       [](const Value& a, const Value& b) { return depthOf(a) < depthOf(b); });
      return out;
    }
  }
  return {};
}

bool enumerable(const SetCode& s) {
  switch (s.kind()) {
    case SetCode::Kind::Unit:
    case SetCode::Kind::Empty:
    case SetCode::Kind::Enum:
      return true;
    case SetCode::Kind::Eq:
      return true;
    case SetCode::Kind::Sigma: {
      if (!enumerable(s.first())) return false;
      for (const Value& a : enumerateAll(s.first())) {
        if (!enumerable(s.rest()(a))) return false;
      }
      return true;
    }
    case SetCode::Kind::Pi: {
      if (!enumerable(s.dom())) return false;
      for (const Value& a : enumerateAll(s.dom())) {
        if (!enumerable(s.cod()(a))) return false;
      }
      return true;
    }
    case SetCode::Kind::Mu:
      return false;
  }
  return false;
}

std::vector<Value> enumerateAll(const SetCode& s) {
  if (!enumerable(s)) {
    throw NonEnumerableDomain("set is not fully enumerable: " + showSet(s));
  }
  // Depth is irrelevant for mu-free sets.
  return enumerate(s, 0);
}

// ---- recursion -------------------------------------------------------------

Value mapPayload(const Desc& d,
                 const std::function<Value(const Value&, const Value&)>& rec,
                 const Value& v) {
  switch (d.kind()) {
    case Desc::Kind::Var:
      return rec(d.index(), v);
    case Desc::Kind::One:
      return v;
    case Desc::Kind::Pi: {
      Value::Table table;
      table.reserve(v.table().size());
      for (const auto& entry : v.table()) {
        table.emplace_back(entry.first, mapPayload(d.fam()(entry.first), rec, entry.second));
      }
      return Value::fun(std::move(table));
    }
    case Desc::Kind::Sigma:
      return Value::pair(v.first(), mapPayload(d.fam()(v.first()), rec, v.second()));
  }
  return v;
}

Value fold(const DescFun& d, const Algebra& alg, const Value& i, const Value& t) {
  auto rec = [&d, &alg](const Value& sub_i, const Value& sub) {
    return fold(d, alg, sub_i, sub);
  };
  return alg.step(i, mapPayload(d.at(i), rec, t.payload()));
}

Value induction(const DescFun& d,
                const std::function<Value(const Value&, const Value&, const Value&)>& step,
                const Value& i, const Value& t) {
  auto rec = [&d, &step](const Value& sub_i, const Value& sub) {
    return induction(d, step, sub_i, sub);
  };
  const Value& payload = t.payload();
  Value subResults = mapPayload(d.at(i), rec, payload);
  return step(i, payload, subResults);
}

// ---- bounded structural comparison ----------------------------------------

bool setEqual(const SetCode& a, const SetCode& b, int depth) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case SetCode::Kind::Unit:
    case SetCode::Kind::Empty:
      return true;
    case SetCode::Kind::Enum:
      return a.tags() == b.tags();
    case SetCode::Kind::Sigma: {
      if (!setEqual(a.first(), b.first(), depth)) return false;
      for (const Value& v : enumerate(a.first(), depth)) {
        if (!setEqual(a.rest()(v), b.rest()(v), depth)) return false;
      }
      return true;
    }
    case SetCode::Kind::Pi: {
      if (!setEqual(a.dom(), b.dom(), depth)) return false;
      for (const Value& v : enumerate(a.dom(), depth)) {
        if (!setEqual(a.cod()(v), b.cod()(v), depth)) return false;
      }
      return true;
    }
    case SetCode::Kind::Eq:
      return setEqual(a.carrier(), b.carrier(), depth) &&
             equalValue(a.carrier(), a.lhs(), b.lhs()) &&
             equalValue(a.carrier(), a.rhs(), b.rhs());
    case SetCode::Kind::Mu: {
      if (!sameValue(a.index(), b.index())) return false;
      if (depth <= 0) return true;  // probe budget exhausted; call it equal
      return descEqual(a.family().at(a.index()), b.family().at(b.index()), depth - 1);
    }
  }
  return false;
}

bool descEqual(const Desc& a, const Desc& b, int depth) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Desc::Kind::Var:
      return sameValue(a.index(), b.index());
    case Desc::Kind::One:
      return true;
    case Desc::Kind::Pi:
    case Desc::Kind::Sigma: {
      if (!setEqual(a.dom(), b.dom(), depth)) return false;
      for (const Value& v : enumerate(a.dom(), depth)) {
        if (!descEqual(a.fam()(v), b.fam()(v), depth)) return false;
      }
      return true;
    }
  }
  return false;
}

// ---- rendering -------------------------------------------------------------

namespace {
// Families print by expansion over small, cheaply enumerable domains.
bool probeDomain(const SetCode& dom, std::vector<Value>& out) {
  switch (dom.kind()) {
    case SetCode::Kind::Unit:
    case SetCode::Kind::Empty:
    case SetCode::Kind::Enum:
      out = enumerate(dom, 0);
      return true;
    default:
      return false;
  }
}
}  // namespace

std::string showSet(const SetCode& s) {
  std::ostringstream out;
  switch (s.kind()) {
    case SetCode::Kind::Unit:
      return "unit";
    case SetCode::Kind::Empty:
      return "empty";
    case SetCode::Kind::Enum: {
      out << "(enum";
      for (const auto& t : s.tags()) out << " " << t;
      out << ")";
      return out.str();
    }
    case SetCode::Kind::Sigma: {
      out << "(sigma " << showSet(s.first());
      std::vector<Value> probe;
      if (probeDomain(s.first(), probe)) {
        for (const Value& v : probe) {
          out << " (" << showValue(v) << " " << showSet(s.rest()(v)) << ")";
        }
      } else {
        out << " ...";
      }
      out << ")";
      return out.str();
    }
    case SetCode::Kind::Pi: {
      out << "(pi " << showSet(s.dom());
      std::vector<Value> probe;
      if (probeDomain(s.dom(), probe)) {
        for (const Value& v : probe) {
          out << " (" << showValue(v) << " " << showSet(s.cod()(v)) << ")";
        }
      } else {
        out << " ...";
      }
      out << ")";
      return out.str();
    }
    case SetCode::Kind::Eq:
      out << "(eq " << showSet(s.carrier()) << " " << showValue(s.lhs()) << " "
          << showValue(s.rhs()) << ")";
      return out.str();
    case SetCode::Kind::Mu:
      out << "(mu " << (s.family().name.empty() ? "_" : s.family().name) << " "
          << showValue(s.index()) << ")";
      return out.str();
  }
  return "?";
}

std::string showDesc(const Desc& d) {
  std::ostringstream out;
  switch (d.kind()) {
    case Desc::Kind::Var:
      out << "(var " << showValue(d.index()) << ")";
      return out.str();
    case Desc::Kind::One:
      return "one";
    case Desc::Kind::Pi:
    case Desc::Kind::Sigma: {
      out << (d.kind() == Desc::Kind::Pi ? "(dpi " : "(dsigma ") << showSet(d.dom());
      std::vector<Value> probe;
      if (probeDomain(d.dom(), probe)) {
        for (const Value& v : probe) {
          out << " (" << showValue(v) << " " << showDesc(d.fam()(v)) << ")";
        }
      } else {
        out << " ...";
      }
      out << ")";
      return out.str();
    }
  }
  return "?";
}

}  // namespace orn

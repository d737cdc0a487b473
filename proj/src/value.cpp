#include "orn/value.hpp"

#include <algorithm>
#include <sstream>

#include "orn/errors.hpp"

namespace orn {

struct Value::Node {
  Kind kind;
  Value a;  // Pair first / In payload
  Value b;  // Pair second
  std::string tag;
  Table table;

  explicit Node(Kind k) : kind(k) {}
};

// The null node stands for unit, so default construction never allocates and
// node payloads may default-initialize their members without recursion.
Value::Value() : node_(nullptr) {}
Value::Value(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Value Value::unit() { return Value(); }

Value Value::refl() {
  static const auto node = std::make_shared<const Node>(Kind::Refl);
  return Value(node);
}

Value Value::pair(Value first, Value second) {
  auto node = std::make_shared<Node>(Kind::Pair);
  node->a = std::move(first);
  node->b = std::move(second);
  return Value(std::move(node));
}

Value Value::tag(std::string name) {
  auto node = std::make_shared<Node>(Kind::Tag);
  node->tag = std::move(name);
  return Value(std::move(node));
}

Value Value::in(Value payload) {
  auto node = std::make_shared<Node>(Kind::In);
  node->a = std::move(payload);
  return Value(std::move(node));
}

Value Value::fun(Table table) {
  auto node = std::make_shared<Node>(Kind::Fun);
  node->table = std::move(table);
  return Value(std::move(node));
}

Value::Kind Value::kind() const { return node_ ? node_->kind : Kind::Unit; }

const Value& Value::first() const {
  if (!isPair()) throw IllTypedValue("first: not a pair: " + showValue(*this));
  return node_->a;
}
const Value& Value::second() const {
  if (!isPair()) throw IllTypedValue("second: not a pair: " + showValue(*this));
  return node_->b;
}
const std::string& Value::tagName() const {
  if (!isTag()) throw IllTypedValue("tagName: not a tag: " + showValue(*this));
  return node_->tag;
}
const Value& Value::payload() const {
  if (!isIn()) throw IllTypedValue("payload: not a mu value: " + showValue(*this));
  return node_->a;
}
const Value::Table& Value::table() const {
  if (!isFun()) throw IllTypedValue("table: not a function: " + showValue(*this));
  return node_->table;
}

const Value& Value::apply(const Value& arg) const {
  for (const auto& entry : table()) {
    if (sameValue(entry.first, arg)) return entry.second;
  }
  throw IllTypedValue("apply: argument outside function domain: " + showValue(arg));
}

bool sameValue(const Value& a, const Value& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Value::Kind::Unit:
    case Value::Kind::Refl:
      return true;
    case Value::Kind::Tag:
      return a.tagName() == b.tagName();
    case Value::Kind::Pair:
      return sameValue(a.first(), b.first()) && sameValue(a.second(), b.second());
    case Value::Kind::In:
      return sameValue(a.payload(), b.payload());
    case Value::Kind::Fun: {
      const auto& ta = a.table();
      const auto& tb = b.table();
      if (ta.size() != tb.size()) return false;
      for (size_t i = 0; i < ta.size(); ++i) {
        if (!sameValue(ta[i].first, tb[i].first)) return false;
        if (!sameValue(ta[i].second, tb[i].second)) return false;
      }
      return true;
    }
  }
  return false;
}

std::string showValue(const Value& v) {
  std::ostringstream out;
  switch (v.kind()) {
    case Value::Kind::Unit:
      out << "unit";
      break;
    case Value::Kind::Refl:
      out << "refl";
      break;
    case Value::Kind::Tag:
      out << "'" << v.tagName();
      break;
    case Value::Kind::Pair:
      out << "(pair " << showValue(v.first()) << " " << showValue(v.second()) << ")";
      break;
    case Value::Kind::In:
      out << "(in " << showValue(v.payload()) << ")";
      break;
    case Value::Kind::Fun: {
      out << "(fun";
      for (const auto& entry : v.table()) {
        out << " (" << showValue(entry.first) << " " << showValue(entry.second) << ")";
      }
      out << ")";
      break;
    }
  }
  return out.str();
}

int depthOf(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Unit:
    case Value::Kind::Refl:
    case Value::Kind::Tag:
      return -1;
    case Value::Kind::Pair:
      return std::max(depthOf(v.first()), depthOf(v.second()));
    case Value::Kind::In:
      return 1 + depthOf(v.payload());
    case Value::Kind::Fun: {
      int d = -1;
      for (const auto& entry : v.table()) {
        d = std::max(d, std::max(depthOf(entry.first), depthOf(entry.second)));
      }
      return d;
    }
  }
  return -1;
}

}  // namespace orn

#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace orn {

// A runtime value of the closed universe. Values are immutable trees shared
// by pointer, so copying is cheap and sub-values may be aliased freely.
//
//   unit            the sole inhabitant of the unit set
//   pair(a, b)      sigma introduction
//   tag("x")        an enumeration label
//   in(payload)     mu introduction; payload follows the node description
//   refl            the proof of a true equality (proof-irrelevant)
//   fun(table)      a pi inhabitant: one (argument, result) entry per domain
//                   value, kept in domain enumeration order
class Value {
 public:
  enum class Kind { Unit, Pair, Tag, In, Refl, Fun };

  using Table = std::vector<std::pair<Value, Value>>;

  // Defaults to unit so Value works in standard containers.
  Value();

  static Value unit();
  static Value pair(Value first, Value second);
  static Value tag(std::string name);
  static Value in(Value payload);
  static Value refl();
  static Value fun(Table table);

  Kind kind() const;
  bool isUnit() const { return kind() == Kind::Unit; }
  bool isPair() const { return kind() == Kind::Pair; }
  bool isTag() const { return kind() == Kind::Tag; }
  bool isIn() const { return kind() == Kind::In; }
  bool isRefl() const { return kind() == Kind::Refl; }
  bool isFun() const { return kind() == Kind::Fun; }

  const Value& first() const;   // Pair
  const Value& second() const;  // Pair
  const std::string& tagName() const;
  const Value& payload() const;  // In
  const Table& table() const;    // Fun

  // Table lookup by structural equality; throws IllTypedValue when the
  // argument is not in the table (i.e. outside the function's domain).
  const Value& apply(const Value& arg) const;

 private:
  struct Node;
  explicit Value(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

// Raw structural equality. Because fun tables are canonical (one entry per
// domain value, in enumeration order) this coincides with pointwise equality
// for well-typed values of the same set.
bool sameValue(const Value& a, const Value& b);

// Canonical textual dump, used for diagnostics and as a map key.
std::string showValue(const Value& v);

// Depth of mu nesting: the largest number of `in` nodes along any path,
// where a leaf `in` counts zero. Values containing no `in` have depth -1.
// Examples over the unary naturals: 0 has depth 0, 3 has depth 3.
int depthOf(const Value& v);

}  // namespace orn

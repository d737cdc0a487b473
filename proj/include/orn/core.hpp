#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "orn/value.hpp"

namespace orn {

class Desc;
struct DescFun;

// A code for a set in the closed universe. Like values, set codes are
// immutable shared trees; the dependent parts (sigma/pi families) are host
// closures from values to further codes.
class SetCode {
 public:
  enum class Kind { Unit, Empty, Enum, Sigma, Pi, Eq, Mu };

  using Fam = std::function<SetCode(const Value&)>;

  SetCode();  // defaults to the unit set

  static SetCode unitSet();
  static SetCode emptySet();
  // Throws IllFormedSet when tags repeat.
  static SetCode enumSet(std::vector<std::string> tags);
  static SetCode sigma(SetCode first, Fam rest);
  static SetCode pi(SetCode dom, Fam cod);
  static SetCode eq(SetCode carrier, Value lhs, Value rhs);
  static SetCode mu(DescFun family, Value index);

  Kind kind() const;
  const std::vector<std::string>& tags() const;  // Enum
  const SetCode& first() const;                  // Sigma
  const SetCode& dom() const;                    // Pi
  const Fam& rest() const;                       // Sigma
  const Fam& cod() const;                        // Pi
  const SetCode& carrier() const;                // Eq
  const Value& lhs() const;                      // Eq
  const Value& rhs() const;                      // Eq
  const DescFun& family() const;                 // Mu
  const Value& index() const;                    // Mu

 private:
  struct Node;
  explicit SetCode(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

// A code for one node of an inductive family's signature functor.
//
//   var(i)           a recursive position at index i
//   one()            end of payload
//   pi(S, fam)       payload component (s : S) -> fam(s)
//   sigma(S, fam)    payload component (s : S) paired with fam(s)
class Desc {
 public:
  enum class Kind { Var, One, Pi, Sigma };

  using Fam = std::function<Desc(const Value&)>;

  Desc();  // defaults to one()

  static Desc var(Value index);
  static Desc one();
  static Desc pi(SetCode dom, Fam fam);
  static Desc sigma(SetCode dom, Fam fam);

  Kind kind() const;
  const Value& index() const;   // Var
  const SetCode& dom() const;   // Pi / Sigma
  const Fam& fam() const;       // Pi / Sigma

 private:
  struct Node;
  explicit Desc(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

// An indexed family of descriptions: one Desc per index value. The name is
// carried for printing only and plays no semantic role.
struct DescFun {
  std::string name;
  SetCode indexSet;
  std::function<Desc(const Value&)> at;
};

// A fold target: a carrier set per index together with one step that turns a
// payload whose recursive positions already hold carrier values into a
// carrier value.
struct Algebra {
  std::function<SetCode(const Value&)> carrierAt;
  std::function<Value(const Value& index, const Value& payload)> step;
};

// ---- checking ----------------------------------------------------------

// Does v inhabit S? Total for first-order sets; may throw IllFormedSet for
// malformed codes and NonEnumerableDomain when validating a function against
// a pi whose domain cannot be fully enumerated.
bool checkValue(const SetCode& s, const Value& v);

// Does v inhabit the payload interpretation of d, where recursive positions
// are validated by checkRec(index, subvalue)?
bool checkPayload(const Desc& d,
                  const std::function<bool(const Value&, const Value&)>& checkRec,
                  const Value& v);

// ---- equality ----------------------------------------------------------

// Structural equality directed by a set code: functions compare pointwise
// over their (fully enumerated) domain, everything else componentwise.
bool equalValue(const SetCode& s, const Value& a, const Value& b);

// ---- enumeration -------------------------------------------------------

// All inhabitants of s whose mu depth does not exceed `depth`, in a
// deterministic order: sigma components vary lexicographically (first
// component outermost) and mu inhabitants come in increasing depth, ties
// broken by payload order.
std::vector<Value> enumerate(const SetCode& s, int depth);

// Complete enumeration. Throws NonEnumerableDomain when s contains a mu.
std::vector<Value> enumerateAll(const SetCode& s);

// Structural finiteness test backing enumerateAll.
bool enumerable(const SetCode& s);

// ---- recursion ---------------------------------------------------------

// Replace every recursive position of a payload of shape d by the image of
// rec(index, subvalue), keeping the rest of the payload intact.
Value mapPayload(const Desc& d,
                 const std::function<Value(const Value&, const Value&)>& rec,
                 const Value& v);

// Iteration: fold(d, alg, i, in(xs)) = alg.step(i, mapPayload(... fold ...) xs).
Value fold(const DescFun& d, const Algebra& alg, const Value& i, const Value& t);

// Primitive induction: the step sees both the original payload and the
// payload of recursive results (same shape, recursive positions replaced).
Value induction(const DescFun& d,
                const std::function<Value(const Value& index, const Value& payload,
                                          const Value& subResults)>& step,
                const Value& i, const Value& t);

// ---- bounded structural comparison (used by tests and reports) ---------

// Compare set codes by structure, probing dependent families over domains
// enumerated at the given depth. Mu sets compare by index and by probing
// their descriptions; the probe budget decreases at each mu to keep the
// comparison finite.
bool setEqual(const SetCode& a, const SetCode& b, int depth);
bool descEqual(const Desc& a, const Desc& b, int depth);

// Structural renderings (deterministic; families print as their expansion
// over small enum domains where possible, and "..." otherwise).
std::string showSet(const SetCode& s);
std::string showDesc(const Desc& d);

}  // namespace orn

#pragma once

#include <functional>
#include <memory>
#include <string>

#include "orn/core.hpp"

namespace orn {

// Witness that a copied recursive position lies in the inverse image of the
// reindexing: `fancy` is the refined index, `coarse` the base index it must
// map down to.
struct InvWitness {
  Value fancy;
  Value coarse;
};

// A code describing how one description node is refined. Copy codes (var,
// one, pi, sigma) must match the shape of the node they sit over; insert adds
// a payload component the base never had; del fixes a base sigma component to
// one known value and drops it from the refined payload.
class OrnCode {
 public:
  enum class Kind { Var, One, Pi, Sigma, Insert, Delete };

  using Fam = std::function<OrnCode(const Value&)>;

  OrnCode();  // defaults to one()

  static OrnCode var(Value fancyIndex, Value coarseIndex);
  static OrnCode one();
  // Copy a pi / sigma node; the family refines each branch. The domain is
  // inherited from the description being refined.
  static OrnCode pi(Fam fam);
  static OrnCode sigma(Fam fam);
  static OrnCode insert(SetCode inserted, Fam rest);
  static OrnCode del(Value replacement, OrnCode rest);

  Kind kind() const;
  const InvWitness& witness() const;  // Var
  const Fam& fam() const;             // Pi / Sigma / Insert
  const SetCode& inserted() const;    // Insert
  const Value& replacement() const;   // Delete
  const OrnCode& rest() const;        // Delete

 private:
  struct Node;
  explicit OrnCode(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

// A refinement of the index set: every refined index j sits over the base
// index down(j).
struct Reindexing {
  SetCode fancyIndexSet;
  std::function<Value(const Value&)> down;
};

// An ornament of the family `base`: a reindexing together with one ornament
// code per refined index, each refining base.at(re.down(j)).
struct Ornament {
  std::string name;
  DescFun base;
  Reindexing re;
  std::function<OrnCode(const Value&)> at;
};

// Interpret an ornament code over the description it refines. Throws
// IllFormedOrnament when the code does not fit the description.
Desc interpCode(const Desc& base, const OrnCode& code);

// The refined family an ornament describes.
DescFun interpOrn(const Ornament& o);

// The refined fixpoint at index j, i.e. mu(interpOrn(o), j).
SetCode fancySet(const Ornament& o, const Value& j);

// The code that copies a description verbatim (every var witnessed by its
// own index). Only meaningful where the reindexing is the identity.
OrnCode mirrorCode(const Desc& d);

// The identity ornament of a family.
Ornament idOrn(const DescFun& d);

// Probe an ornament for internal consistency: codes fit their descriptions,
// inserted sets are well formed, deleted values inhabit the component they
// replace, and every var witness maps down to the index it claims. Families
// are probed over domains enumerated at the given depth. Throws
// IllFormedOrnament on the first violation.
void wellFormedOrn(const Ornament& o, int depth = 3);

// The payload-level forgetful map: strips inserted components, reinstates
// deleted ones, and leaves recursive positions untouched.
Value ornForgetNat(const Desc& base, const OrnCode& code, const Value& v);

// Forget a whole refined value down to the base family (a fold).
Value ornForget(const Ornament& o, const Value& j, const Value& t);

}  // namespace orn

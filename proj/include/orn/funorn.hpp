#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orn/algebraic.hpp"
#include "orn/core.hpp"
#include "orn/ornament.hpp"

namespace orn {

// One component of a first-order function signature: an inductive set at a
// fixed index.
struct TypeSlot {
  DescFun family;
  Value index;
};

// Signatures are spines: argument slots to the left of the arrow, result
// slots (a product) to the right.
struct FunType {
  std::vector<TypeSlot> args;
  std::vector<TypeSlot> results;
};

using Runner = std::function<std::vector<Value>(const std::vector<Value>&)>;

struct BaseFn {
  std::string name;
  FunType type;
  Runner run;
};

// One slot of a functional ornament: either the identity (the slot passes
// through untouched) or an ornament of the slot's family at a fixed refined
// index.
struct OrnSlot {
  bool ornamented;
  Ornament orn;
  Value fancyIndex;
};

inline OrnSlot idSlot() { return OrnSlot{false, Ornament{}, Value()}; }
inline OrnSlot ornSlot(Ornament o, Value fancyIndex) {
  return OrnSlot{true, std::move(o), std::move(fancyIndex)};
}

struct FunOrn {
  std::vector<OrnSlot> args;
  std::vector<OrnSlot> results;
};

// A function between the refined slots. Coherence with a base function is a
// separate, checkable property.
struct LiftedFn {
  std::string name;
  Runner run;
};

// The data a lifting adds to its base: for each argument slot the base value
// (and, when the slot is ornamented, its reornament decoration as a second
// entry), and for each ornamented result slot a decoration of the base
// result. Identity result slots contribute nothing.
struct PatchFn {
  std::string name;
  Runner run;
};

struct CoherenceFailure {
  std::vector<Value> args;
  std::string detail;
};

// The refined value space of one argument slot.
SetCode fancyArgSet(const FunType& t, const FunOrn& fo, size_t slot);

// Forget one refined argument down to its base slot.
Value forgetArg(const FunType& t, const FunOrn& fo, size_t slot, const Value& fancy);

// Positional compatibility of a functional ornament with a signature: same
// arity and, per ornamented slot, the slot's family is the ornament's base
// with the refined index sitting over the slot index. Throws
// SignatureMismatch.
void checkFunOrn(const FunOrn& fo, const FunType& type, int depth = 2);

// Sweep a function over its enumerated argument space and report the first
// result that fails to inhabit its slot.
std::optional<std::string> checkFn(const BaseFn& f, int depth);

// Run base and lifting on one refined argument tuple and certify that every
// result slot forgets to the base result, returning one (trivial) witness
// per result slot. Throws RecomputationFailure on disagreement.
std::vector<Value> coherenceWitness(const BaseFn& base, const FunOrn& fo,
                                    const LiftedFn& lifted,
                                    const std::vector<Value>& fancyArgs);

// Sweep the refined argument space and report the first incoherent tuple.
std::optional<CoherenceFailure> coherenceCheck(const BaseFn& base, const FunOrn& fo,
                                               const LiftedFn& lifted, int depth);

// Sweep base arguments and decorations and report the first patch output
// that is not a decoration of the corresponding base result.
std::optional<std::string> checkPatch(const BaseFn& base, const FunOrn& fo,
                                      const PatchFn& p, int depth);

// Combine a base function with a patch into a lifting that is coherent by
// construction: arguments are forgotten and decorated for the patch, base
// results are computed on the forgotten arguments, and each ornamented
// result is reassembled from its base result and the patch's decoration.
// The lifting validates patch outputs as it runs (PatchTypeError).
LiftedFn patch(const BaseFn& base, const FunOrn& fo, const PatchFn& p);

}  // namespace orn

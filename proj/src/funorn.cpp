#include "orn/funorn.hpp"

#include <sstream>
#include <utility>

#include "orn/errors.hpp"

namespace orn {

namespace {

std::string showArgs(const std::vector<Value>& args) {
  std::ostringstream out;
  out << "(";
  for (size_t i = 0; i < args.size(); ++i) {
    if (i) out << " ";
    out << showValue(args[i]);
  }
  out << ")";
  return out.str();
}

// Iterate a cartesian product, first coordinate outermost. Stops early when
// the visitor returns false.
bool sweep(const std::vector<std::vector<Value>>& spaces,
           const std::function<bool(const std::vector<Value>&)>& visit) {
  for (const auto& space : spaces) {
    if (space.empty()) return true;
  }
  std::vector<size_t> at(spaces.size(), 0);
  std::vector<Value> tuple(spaces.size());
  while (true) {
    for (size_t i = 0; i < spaces.size(); ++i) tuple[i] = spaces[i][at[i]];
    if (!visit(tuple)) return false;
    size_t i = spaces.size();
    while (i > 0) {
      --i;
      if (++at[i] < spaces[i].size()) break;
      at[i] = 0;
      if (i == 0) return true;
    }
    if (spaces.empty()) return true;
  }
}

std::vector<Value> runChecked(const Runner& run, const std::vector<Value>& args,
                              size_t expected, const std::string& who) {
  std::vector<Value> out = run(args);
  if (out.size() != expected) {
    throw SignatureMismatch(who + " returned " + std::to_string(out.size()) +
                            " results, expected " + std::to_string(expected));
  }
  return out;
}

}  // namespace

SetCode fancyArgSet(const FunType& t, const FunOrn& fo, size_t slot) {
  const OrnSlot& s = fo.args.at(slot);
  if (!s.ornamented) return SetCode::mu(t.args.at(slot).family, t.args.at(slot).index);
  return SetCode::mu(interpOrn(s.orn), s.fancyIndex);
}

Value forgetArg(const FunType& t, const FunOrn& fo, size_t slot, const Value& fancy) {
  (void)t;
  const OrnSlot& s = fo.args.at(slot);
  if (!s.ornamented) return fancy;
  return ornForget(s.orn, s.fancyIndex, fancy);
}

void checkFunOrn(const FunOrn& fo, const FunType& type, int depth) {
  if (fo.args.size() != type.args.size() || fo.results.size() != type.results.size()) {
    throw SignatureMismatch("functional ornament shape (" +
                            std::to_string(fo.args.size()) + " -> " +
                            std::to_string(fo.results.size()) +
                            ") does not match signature (" +
                            std::to_string(type.args.size()) + " -> " +
                            std::to_string(type.results.size()) + ")");
  }
  auto checkSlot = [depth](const OrnSlot& s, const TypeSlot& t, const std::string& where) {
    if (!s.ornamented) return;
    if (!checkValue(s.orn.re.fancyIndexSet, s.fancyIndex)) {
      throw SignatureMismatch(where + ": refined index " + showValue(s.fancyIndex) +
                              " does not inhabit the ornament's index set");
    }
    if (!setEqual(s.orn.base.indexSet, t.family.indexSet, depth) ||
        !sameValue(s.orn.re.down(s.fancyIndex), t.index) ||
        !descEqual(s.orn.base.at(t.index), t.family.at(t.index), depth)) {
      throw SignatureMismatch(where + ": ornament does not refine the slot's family at " +
                              showValue(t.index));
    }
  };
  for (size_t i = 0; i < fo.args.size(); ++i) {
    checkSlot(fo.args[i], type.args[i], "argument " + std::to_string(i));
  }
  for (size_t i = 0; i < fo.results.size(); ++i) {
    checkSlot(fo.results[i], type.results[i], "result " + std::to_string(i));
  }
}

std::optional<std::string> checkFn(const BaseFn& f, int depth) {
  std::vector<std::vector<Value>> spaces;
  for (const TypeSlot& slot : f.type.args) {
    spaces.push_back(enumerate(SetCode::mu(slot.family, slot.index), depth));
  }
  std::optional<std::string> report;
  sweep(spaces, [&](const std::vector<Value>& args) {
    std::vector<Value> out = runChecked(f.run, args, f.type.results.size(), f.name);
    for (size_t i = 0; i < out.size(); ++i) {
      SetCode s = SetCode::mu(f.type.results[i].family, f.type.results[i].index);
      if (!checkValue(s, out[i])) {
        report = f.name + showArgs(args) + ": result " + std::to_string(i) + " = " +
                 showValue(out[i]) + " leaves its slot";
        return false;
      }
    }
    return true;
  });
  return report;
}

std::vector<Value> coherenceWitness(const BaseFn& base, const FunOrn& fo,
                                    const LiftedFn& lifted,
                                    const std::vector<Value>& fancyArgs) {
  if (fancyArgs.size() != fo.args.size()) {
    throw SignatureMismatch(lifted.name + " applied to " +
                            std::to_string(fancyArgs.size()) + " arguments, expected " +
                            std::to_string(fo.args.size()));
  }
  std::vector<Value> baseArgs;
  baseArgs.reserve(fancyArgs.size());
  for (size_t i = 0; i < fancyArgs.size(); ++i) {
    baseArgs.push_back(forgetArg(base.type, fo, i, fancyArgs[i]));
  }
  std::vector<Value> baseOut =
      runChecked(base.run, baseArgs, base.type.results.size(), base.name);
  std::vector<Value> liftedOut =
      runChecked(lifted.run, fancyArgs, fo.results.size(), lifted.name);

  std::vector<Value> witnesses;
  for (size_t i = 0; i < fo.results.size(); ++i) {
    const TypeSlot& slot = base.type.results[i];
    const OrnSlot& os = fo.results[i];
    Value seen = liftedOut[i];
    if (os.ornamented) {
      if (!checkValue(SetCode::mu(interpOrn(os.orn), os.fancyIndex), seen)) {
        throw RecomputationFailure(lifted.name + showArgs(fancyArgs) + ": result " +
                                   std::to_string(i) + " = " + showValue(seen) +
                                   " leaves the refined slot");
      }
      seen = ornForget(os.orn, os.fancyIndex, seen);
    }
    if (!equalValue(SetCode::mu(slot.family, slot.index), seen, baseOut[i])) {
      throw RecomputationFailure(lifted.name + showArgs(fancyArgs) + ": result " +
                                 std::to_string(i) + " forgets to " + showValue(seen) +
                                 " but " + base.name + showArgs(baseArgs) + " = " +
                                 showValue(baseOut[i]));
    }
    witnesses.push_back(Value::refl());
  }
  return witnesses;
}

std::optional<CoherenceFailure> coherenceCheck(const BaseFn& base, const FunOrn& fo,
                                               const LiftedFn& lifted, int depth) {
  checkFunOrn(fo, base.type);
  std::vector<std::vector<Value>> spaces;
  for (size_t i = 0; i < fo.args.size(); ++i) {
    spaces.push_back(enumerate(fancyArgSet(base.type, fo, i), depth));
  }
  std::optional<CoherenceFailure> failure;
  sweep(spaces, [&](const std::vector<Value>& args) {
    try {
      coherenceWitness(base, fo, lifted, args);
      return true;
    } catch (const RecomputationFailure& e) {
      failure = CoherenceFailure{args, e.what()};
      return false;
    }
  });
  return failure;
}

namespace {

// Decoration space of one ornamented argument slot at a fixed base value.
SetCode decorationSet(const OrnSlot& s, const Value& baseValue) {
  return SetCode::mu(interpOrn(reornament(s.orn)),
                     Value::pair(s.fancyIndex, baseValue));
}

size_t patchArity(const FunOrn& fo) {
  size_t n = 0;
  for (const OrnSlot& s : fo.args) n += s.ornamented ? 2 : 1;
  return n;
}

size_t patchResultCount(const FunOrn& fo) {
  size_t n = 0;
  for (const OrnSlot& s : fo.results) n += s.ornamented ? 1 : 0;
  return n;
}

}  // namespace

std::optional<std::string> checkPatch(const BaseFn& base, const FunOrn& fo,
                                      const PatchFn& p, int depth) {
  checkFunOrn(fo, base.type);
  std::vector<std::vector<Value>> baseSpaces;
  for (const TypeSlot& slot : base.type.args) {
    baseSpaces.push_back(enumerate(SetCode::mu(slot.family, slot.index), depth));
  }
  std::optional<std::string> report;
  sweep(baseSpaces, [&](const std::vector<Value>& baseArgs) {
    std::vector<std::vector<Value>> decorSpaces;
    for (size_t i = 0; i < fo.args.size(); ++i) {
      if (fo.args[i].ornamented) {
        decorSpaces.push_back(enumerate(decorationSet(fo.args[i], baseArgs[i]), depth));
      }
    }
    bool keepGoing = sweep(decorSpaces, [&](const std::vector<Value>& decors) {
      std::vector<Value> patchArgs;
      size_t d = 0;
      for (size_t i = 0; i < fo.args.size(); ++i) {
        patchArgs.push_back(baseArgs[i]);
        if (fo.args[i].ornamented) patchArgs.push_back(decors[d++]);
      }
      std::vector<Value> baseOut =
          runChecked(base.run, baseArgs, base.type.results.size(), base.name);
      std::vector<Value> patchOut =
          runChecked(p.run, patchArgs, patchResultCount(fo), p.name);
      size_t k = 0;
      for (size_t i = 0; i < fo.results.size(); ++i) {
        if (!fo.results[i].ornamented) continue;
        Value w = patchOut[k++];
        if (!checkValue(decorationSet(fo.results[i], baseOut[i]), w)) {
          report = p.name + showArgs(patchArgs) + ": result " + std::to_string(i) +
                   " = " + showValue(w) + " is not a decoration of " +
                   showValue(baseOut[i]);
          return false;
        }
      }
      return true;
    });
    return keepGoing;
  });
  return report;
}

LiftedFn patch(const BaseFn& base, const FunOrn& fo, const PatchFn& p) {
  checkFunOrn(fo, base.type);
  LiftedFn lifted;
  lifted.name = p.name;
  FunType type = base.type;
  Runner baseRun = base.run;
  Runner patchRun = p.run;
  std::string baseName = base.name;
  std::string patchName = p.name;
  lifted.run = [type, fo, baseRun, patchRun, baseName, patchName](
                   const std::vector<Value>& fancyArgs) {
    if (fancyArgs.size() != fo.args.size()) {
      throw SignatureMismatch(patchName + " applied to " +
                              std::to_string(fancyArgs.size()) +
                              " arguments, expected " + std::to_string(fo.args.size()));
    }
    std::vector<Value> baseArgs;
    std::vector<Value> patchArgs;
    for (size_t i = 0; i < fancyArgs.size(); ++i) {
      const OrnSlot& s = fo.args[i];
      if (!checkValue(fancyArgSet(type, fo, i), fancyArgs[i])) {
        throw IllTypedValue(patchName + ": argument " + std::to_string(i) + " = " +
                            showValue(fancyArgs[i]) + " leaves its slot");
      }
      if (s.ornamented) {
        Value t = ornForget(s.orn, s.fancyIndex, fancyArgs[i]);
        baseArgs.push_back(t);
        patchArgs.push_back(t);
        patchArgs.push_back(rememberReorn(s.orn, s.fancyIndex, fancyArgs[i]));
      } else {
        baseArgs.push_back(fancyArgs[i]);
        patchArgs.push_back(fancyArgs[i]);
      }
    }
    std::vector<Value> baseOut =
        runChecked(baseRun, baseArgs, type.results.size(), baseName);
    std::vector<Value> patchOut =
        runChecked(patchRun, patchArgs, patchResultCount(fo), patchName);
    std::vector<Value> out;
    size_t k = 0;
    for (size_t i = 0; i < fo.results.size(); ++i) {
      const OrnSlot& s = fo.results[i];
      if (!s.ornamented) {
        out.push_back(baseOut[i]);
        continue;
      }
      Value w = patchOut[k++];
      Value jt = Value::pair(s.fancyIndex, baseOut[i]);
      if (!checkValue(SetCode::mu(interpOrn(reornament(s.orn)), jt), w)) {
        throw PatchTypeError(patchName + showArgs(patchArgs) + ": result " +
                             std::to_string(i) + " = " + showValue(w) +
                             " is not a decoration of " + showValue(baseOut[i]));
      }
      out.push_back(forgetReorn(s.orn, jt, w));
    }
    return out;
  };
  return lifted;
}

}  // namespace orn

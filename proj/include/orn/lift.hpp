#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orn/funorn.hpp"

namespace orn {

// ---- expressions ---------------------------------------------------------

// First-order expressions over constructor data: variables, enum tags,
// saturated constructor applications and recursive calls. Constructors are
// resolved through a ScriptEnv; only unit-indexed, tag-rooted families can
// be built this way.
class Expr {
 public:
  enum class Kind { Var, Tag, Ctor, SelfCall };

  Expr();  // defaults to var("")

  static Expr var(std::string name);
  static Expr tagLit(std::string tag);
  static Expr ctor(std::string ctorTag, std::vector<Expr> fields);
  static Expr selfCall(std::vector<Expr> args);

  Kind kind() const;
  const std::string& name() const;      // Var / Tag / Ctor
  const std::vector<Expr>& args() const;  // Ctor / SelfCall

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

// Families whose constructors scripted definitions may build and match on.
struct ScriptEnv {
  std::map<std::string, DescFun> families;
  std::map<std::string, std::string> tagFamily;  // constructor tag -> family

  // Registers d and, when d is unit-indexed and rooted in a constructor
  // enum, its tags.
  void addFamily(const DescFun& d);
  const DescFun& family(const std::string& name) const;     // UnknownName
  const DescFun& familyOfTag(const std::string& tag) const;  // UnknownName
};

// ---- bodies ----------------------------------------------------------------

// The recursion skeleton shared by scripted definitions and lifting scripts:
// eliminator nodes (case / ind / fold on one argument slot) over leaves. A
// definition leaf is a returned expression; a lifting leaf returns a
// decoration, assembles one (Ctor) from extension fills and recursive
// decorations, re-enters the lifting (SelfCall), or is an unwritten Hole.
struct Branch;

class Body {
 public:
  enum class Kind { Elim, Ret, Ctor, SelfCall, Hole };
  enum class Method { Case, Ind, Fold };

  using Branch = orn::Branch;

  // One extension position of a Ctor node: a literal value or a labelled
  // hole to be filled separately.
  struct Fill {
    bool isHole;
    std::string label;
    Value value;
    static Fill lit(Value v) { return Fill{false, "", std::move(v)}; }
    static Fill hole(std::string label) { return Fill{true, std::move(label), Value()}; }
  };

  Body();  // defaults to ret(var(""))

  static Body elim(Method m, size_t slot, std::vector<Branch> branches);
  static Body ret(Expr e);
  static Body ctor(std::vector<Fill> fills, std::vector<Body> recs);
  static Body selfCall(std::vector<Expr> args);
  static Body hole(std::string label);

  Kind kind() const;
  Method method() const;                        // Elim
  size_t slot() const;                          // Elim
  const std::vector<Branch>& branches() const;  // Elim
  const Expr& expr() const;                     // Ret
  const std::vector<Fill>& fills() const;       // Ctor
  const std::vector<Body>& recs() const;        // Ctor
  const std::vector<Expr>& args() const;        // SelfCall
  const std::string& label() const;             // Hole

 private:
  struct Node;
  explicit Body(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

// One constructor branch of an eliminator node.
struct Branch {
  std::string tag;
  std::vector<std::string> binders;
  Body body;
};

// ---- scripted definitions ---------------------------------------------------

// A function given by its recursion skeleton: one parameter name per
// argument slot and an eliminator tree whose leaves are plain expressions.
struct FunDef {
  std::string name;
  std::vector<std::string> params;
  FunType type;
  Body body;
};

// Validate a definition (branch coverage, binder counts, variable scoping,
// and a self-call discipline in which some fixed argument position strictly
// decreases at every recursive call) and close it into a runnable function.
// Results are checked against the declared result slot as they are produced.
// Throws ElaborationError on malformed definitions.
BaseFn elaborateFun(const FunDef& def, const ScriptEnv& env);

// ---- lifting scripts ---------------------------------------------------------

struct LiftScript {
  std::string name;
  std::string base;  // name of the definition whose skeleton it mirrors
  std::vector<std::string> params;
  Body body;
};

struct Hole {
  std::string label;
  std::string path;  // script name, branch tags and label, dot-joined
  SetCode expected;
  std::string shown;  // deterministic rendering of the expected set
  bool trivial;       // the expected set has exactly one inhabitant
  Value solution;     // that inhabitant, when trivial
  std::vector<std::pair<std::string, std::string>> context;  // binder, role
};

// Every unfilled hole of a script, in walk order. Trivial entries are
// auto-solved and do not block elaboration.
struct HoleReport {
  std::vector<Hole> holes;
  size_t outstanding() const;  // non-trivial entries
  std::string render() const;  // one "HOLE <path> : <set>" line per entry
};

// Expressions for labelled holes, evaluated in the hole's scope.
using Fills = std::map<std::string, Expr>;

struct LiftResult {
  std::optional<PatchFn> fn;  // present when no non-trivial hole remains
  HoleReport report;
};

// Check a lifting script against the recursion skeleton of its base
// definition, report its holes, and, when every non-trivial hole is filled,
// interpret it as a PatchFn. Alignment is by kind: eliminator methods and
// argument slots must match, branch tags must correspond through the slot's
// ornament, and each leaf must perform the same number of recursive calls as
// the definition leaf under it. Throws SkeletonMismatch on misalignment and
// ElaborationError on malformed scripts.
LiftResult elaborateScript(const LiftScript& script, const FunDef& base,
                           const FunOrn& fo, const ScriptEnv& env,
                           const Fills& fills = {});

// ---- structure-transporting combinators -------------------------------------
// Arity-one building blocks: each takes the step of the base recursion (which
// pins down the function being lifted; coherence of the output is enforced
// downstream by patch validation) and a coherent step producing result
// decorations, and yields a PatchFn over one ornamented argument slot.

// Coherent fold step: the payload's recursive positions already hold result
// decorations of the subvalues.
struct CoherentAlgebra {
  std::function<Value(const Value& j, const Value& t, const Value& payload)> step;
};

// Coherent induction step: sees the raw decoration payload and, positionally,
// the payload with recursive positions replaced by result decorations.
struct CoherentInduction {
  std::function<Value(const Value& j, const Value& t, const Value& payload,
                      const Value& subResults)>
      step;
};

// Coherent case step: raw decoration payload only.
struct CoherentCase {
  std::function<Value(const Value& j, const Value& t, const Value& payload)> step;
};

// Base recursion steps, mirroring fold / induction / case over the base
// family.
struct InductionStep {
  std::function<Value(const Value& i, const Value& payload, const Value& subResults)>
      step;
};
struct CaseStep {
  std::function<Value(const Value& i, const Value& payload)> step;
};

// Lift a fold: the returned PatchFn takes (t, w) with w a decoration of t
// over o's reornament at j, and folds beta through it.
PatchFn liftFold(const Ornament& o, const Value& j, const Algebra& alg,
                 const CoherentAlgebra& beta);

// Lift an induction: as liftFold, passing raw payload and sub-results.
PatchFn liftInd(const Ornament& o, const Value& j, const InductionStep& step,
                const CoherentInduction& beta);

// Lift a case analysis: induction with the hypotheses discarded.
PatchFn liftCase(const Ornament& o, const Value& j, const CaseStep& step,
                 const CoherentCase& beta);

// Assemble one reornament node over the base node payload xs: checks e
// against the node's extension and In(pair(e, a)) against the reornament of
// o at (j, in(xs)), then pairs the node onto rest. IllTypedValue messages
// identify whether e or a failed.
Value liftConstructor(const Ornament& o, const Value& j, const Value& xs,
                      const Value& e, const Value& a, const Value& rest);

}  // namespace orn

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "orn/adjoint.hpp"
#include "orn/algebraic.hpp"
#include "orn/core.hpp"
#include "orn/funorn.hpp"
#include "orn/lift.hpp"
#include "orn/ornament.hpp"

namespace orn {

// One symbolic-expression form: a symbol, a natural, a quoted constructor
// tag, or a parenthesized list. Forms remember where they started.
class Sexp {
 public:
  enum class Kind { Sym, Nat, Tag, List };

  Sexp();  // defaults to the empty list

  static Sexp sym(std::string text, int line = 0, int col = 0);
  static Sexp nat(long value, int line = 0, int col = 0);
  static Sexp tag(std::string text, int line = 0, int col = 0);
  static Sexp list(std::vector<Sexp> items, int line = 0, int col = 0);

  Kind kind() const;
  const std::string& text() const;         // Sym / Tag
  long value() const;                      // Nat
  const std::vector<Sexp>& items() const;  // List
  int line() const;
  int col() const;

 private:
  struct Node;
  explicit Sexp(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

using SourceFile = std::vector<Sexp>;

// Read a whole text of forms. Comments run from ';' to end of line; atoms
// are symbols, naturals and 'tags. Throws ParseError with position and the
// expectation that failed.
SourceFile parse(const std::string& text);

// Structural equality, ignoring source positions.
bool sexpEqual(const Sexp& a, const Sexp& b);
bool fileEqual(const SourceFile& a, const SourceFile& b);

// Deterministic rendering: a form stays on one line when it fits in 80
// columns, otherwise its head stays on the opening line and every remaining
// item is indented two further spaces on a line of its own. Top-level forms
// are separated by blank lines.
std::string printForm(const Sexp& s);
std::string printFile(const SourceFile& file);

// A closed value literal: unit, refl, naturals, 'tags (or bare tag names),
// (pair a b) and (in v). Throws ElaborationError on anything else.
Value valueOfSexp(const Sexp& s);

// Values rendered in the same literal syntax, with naturals as numerals and
// tag-rooted payloads spelled as constructor applications.
std::string printValueSurface(const Value& v);

// The classification of one top-level form by its head symbol.
struct Declaration {
  enum class Kind { Data, Ornament, Fun, FunOrn, Lift, Fill };
  Kind kind;
  std::string name;
  Sexp form;
};

// Validate the head and name of one form. Throws ElaborationError.
Declaration classify(const Sexp& form);

// A lifting script together with everything its elaboration produced.
struct ScriptEntry {
  LiftScript script;
  std::string funorn;   // the functional ornament it lifts along
  HoleReport unfilled;  // the report before any fills
  Fills fills;
  std::optional<PatchFn> fn;  // present once every hole is filled
};

// Elaborated entities by name. Extension is by value: elaborate returns a
// new environment and leaves its input untouched.
struct Env {
  std::map<std::string, SetCode> sets;  // set parameters (e.g. A) and aliases
  std::map<std::string, DescFun> families;
  std::map<std::string, Ornament> ornaments;
  std::map<std::string, FunDef> defs;
  std::map<std::string, BaseFn> fns;
  std::map<std::string, FunOrn> funorns;
  std::map<std::string, std::string> funornBase;  // funorn -> base fn
  std::map<std::string, ScriptEntry> scripts;
  std::map<std::string, LiftedFn> lifted;  // functions over refined values
  std::vector<Sexp> decls;                 // every elaborated form, in order
  ScriptEnv scriptEnv;                     // constructors visible to bodies

  const SetCode& set(const std::string& name) const;
  const DescFun& family(const std::string& name) const;
  const Ornament& ornament(const std::string& name) const;
  const FunDef& def(const std::string& name) const;
  const BaseFn& fn(const std::string& name) const;
  const FunOrn& funorn(const std::string& name) const;
  const ScriptEntry& script(const std::string& name) const;
  const LiftedFn& liftedFn(const std::string& name) const;
};

// Elaborate every form of a file in order, returning the extended
// environment. Throws ElaborationError, UnknownName or the kernel's own
// errors on the first failing form.
Env elaborate(const SourceFile& file, Env env);

// Evaluate a closed value expression (literals plus saturated constructor
// applications of env's families) or a set expression against env.
Value evalValue(const Env& env, const Sexp& s);
SetCode evalSet(const Env& env, const Sexp& s);

// The declaration text of the standard prelude.
std::string preludeSource();

// The standard prelude over a chosen element parameter A (default: the
// two-tag enum {x, y}): datatypes, ornaments, functions, functional
// ornaments, lifting scripts with their fills, plus the derived entities
// Vector and IMaybe (reornaments of List and Maybe) and the refined
// functions head, lookup, append and vlookup.
Env prelude();
Env prelude(const SetCode& elemParam);

}  // namespace orn

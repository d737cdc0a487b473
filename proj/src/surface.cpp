#include "orn/surface.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <utility>

#include "orn/errors.hpp"

namespace orn {

// ===== forms =================================================================

struct Sexp::Node {
  Kind kind = Kind::List;
  std::string text;
  long value = 0;
  std::vector<Sexp> items;
  int line = 0;
  int col = 0;
};

Sexp::Sexp() : node_(std::make_shared<const Node>()) {}
Sexp::Sexp(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Sexp Sexp::sym(std::string text, int line, int col) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sym;
  n->text = std::move(text);
  n->line = line;
  n->col = col;
  return Sexp(std::move(n));
}

Sexp Sexp::nat(long value, int line, int col) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Nat;
  n->value = value;
  n->line = line;
  n->col = col;
  return Sexp(std::move(n));
}

Sexp Sexp::tag(std::string text, int line, int col) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Tag;
  n->text = std::move(text);
  n->line = line;
  n->col = col;
  return Sexp(std::move(n));
}

Sexp Sexp::list(std::vector<Sexp> items, int line, int col) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::List;
  n->items = std::move(items);
  n->line = line;
  n->col = col;
  return Sexp(std::move(n));
}

Sexp::Kind Sexp::kind() const { return node_->kind; }
const std::string& Sexp::text() const { return node_->text; }
long Sexp::value() const { return node_->value; }
const std::vector<Sexp>& Sexp::items() const { return node_->items; }
int Sexp::line() const { return node_->line; }
int Sexp::col() const { return node_->col; }

// ===== reading ===============================================================

namespace {

struct Reader {
  const std::string& s;
  size_t i = 0;
  int line = 1;
  int col = 1;

  bool eof() const { return i >= s.size(); }
  char peek() const { return s[i]; }
  void advance() {
    if (s[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  }
  void skipSpace() {
    while (!eof()) {
      char c = peek();
      if (c == ';') {
        while (!eof() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }
};

// A token continues through anything that cannot start something else; an
// apostrophe only opens a tag at token start, so primed names stay symbols.
bool tokenChar(char c) {
  return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' &&
         c != ';';
}

std::string readToken(Reader& r) {
  std::string t;
  while (!r.eof() && tokenChar(r.peek())) {
    t += r.peek();
    r.advance();
  }
  return t;
}

Sexp readForm(Reader& r) {
  r.skipSpace();
  if (r.eof()) throw ParseError(r.line, r.col, "a form", "end of input");
  int line = r.line, col = r.col;
  char c = r.peek();
  if (c == ')') throw ParseError(line, col, "a form", ")");
  if (c == '(') {
    r.advance();
    std::vector<Sexp> items;
    while (true) {
      r.skipSpace();
      if (r.eof()) throw ParseError(r.line, r.col, ")", "end of input");
      if (r.peek() == ')') {
        r.advance();
        break;
      }
      items.push_back(readForm(r));
    }
    return Sexp::list(std::move(items), line, col);
  }
  if (c == '\'') {
    r.advance();
    std::string t = readToken(r);
    if (t.empty())
      throw ParseError(line, col, "a tag name after '",
                       r.eof() ? std::string("end of input") : std::string(1, r.peek()));
    return Sexp::tag(std::move(t), line, col);
  }
  std::string t = readToken(r);
  if (std::isdigit(static_cast<unsigned char>(t[0]))) {
    for (char d : t)
      if (!std::isdigit(static_cast<unsigned char>(d)))
        throw ParseError(line, col, "a natural number", t);
    try {
      return Sexp::nat(std::stol(t), line, col);
    } catch (const std::exception&) {
      throw ParseError(line, col, "a representable natural number", t);
    }
  }
  return Sexp::sym(std::move(t), line, col);
}

}  // namespace

SourceFile parse(const std::string& text) {
  Reader r{text};
  SourceFile out;
  while (true) {
    r.skipSpace();
    if (r.eof()) break;
    out.push_back(readForm(r));
  }
  return out;
}

// ===== equality and printing ================================================

bool sexpEqual(const Sexp& a, const Sexp& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Sexp::Kind::Sym:
    case Sexp::Kind::Tag:
      return a.text() == b.text();
    case Sexp::Kind::Nat:
      return a.value() == b.value();
    case Sexp::Kind::List: {
      if (a.items().size() != b.items().size()) return false;
      for (size_t k = 0; k < a.items().size(); ++k)
        if (!sexpEqual(a.items()[k], b.items()[k])) return false;
      return true;
    }
  }
  return false;
}

bool fileEqual(const SourceFile& a, const SourceFile& b) {
  if (a.size() != b.size()) return false;
  for (size_t k = 0; k < a.size(); ++k)
    if (!sexpEqual(a[k], b[k])) return false;
  return true;
}

namespace {

std::string inlineForm(const Sexp& s) {
  switch (s.kind()) {
    case Sexp::Kind::Sym:
      return s.text();
    case Sexp::Kind::Nat:
      return std::to_string(s.value());
    case Sexp::Kind::Tag:
      return "'" + s.text();
    case Sexp::Kind::List: {
      std::string out = "(";
      for (size_t k = 0; k < s.items().size(); ++k) {
        if (k) out += " ";
        out += inlineForm(s.items()[k]);
      }
      return out + ")";
    }
  }
  return "";
}

std::string prettyForm(const Sexp& s, int indent) {
  std::string flat = inlineForm(s);
  if (static_cast<int>(flat.size()) + indent <= 80 || s.kind() != Sexp::Kind::List ||
      s.items().size() < 2)
    return flat;
  std::string out = "(" + prettyForm(s.items()[0], indent + 1);
  std::string pad(static_cast<size_t>(indent) + 2, ' ');
  for (size_t k = 1; k < s.items().size(); ++k)
    out += "\n" + pad + prettyForm(s.items()[k], indent + 2);
  return out + ")";
}

}  // namespace

std::string printForm(const Sexp& s) { return prettyForm(s, 0); }

std::string printFile(const SourceFile& file) {
  std::string out;
  for (size_t k = 0; k < file.size(); ++k) {
    if (k) out += "\n";
    out += printForm(file[k]);
    out += "\n";
  }
  return out;
}

// ===== value literals =======================================================

namespace {

std::string posOf(const Sexp& s) {
  return std::to_string(s.line()) + ":" + std::to_string(s.col());
}

[[noreturn]] void bad(const Sexp& s, const std::string& msg) {
  throw ElaborationError(msg + " (at " + posOf(s) + ")");
}

bool isSym(const Sexp& s, const char* t) {
  return s.kind() == Sexp::Kind::Sym && s.text() == t;
}

bool headIs(const Sexp& s, const char* t) {
  return s.kind() == Sexp::Kind::List && !s.items().empty() && isSym(s.items()[0], t);
}

std::string symText(const Sexp& s, const char* what) {
  if (s.kind() != Sexp::Kind::Sym) bad(s, std::string("expected ") + what);
  return s.text();
}

Value natLit(long k) {
  Value v = Value::in(Value::pair(Value::tag("zero"), Value::unit()));
  for (long i = 0; i < k; ++i) v = Value::in(Value::pair(Value::tag("suc"), v));
  return v;
}

bool natShaped(const Value& v, long& n) {
  long k = 0;
  Value cur = v;
  while (true) {
    if (!cur.isIn() || !cur.payload().isPair() || !cur.payload().first().isTag())
      return false;
    const std::string& t = cur.payload().first().tagName();
    if (t == "zero") {
      if (!cur.payload().second().isUnit()) return false;
      n = k;
      return true;
    }
    if (t != "suc") return false;
    cur = cur.payload().second();
    ++k;
  }
}

// A payload as the list of its components: sigma components in order, then
// the terminal subvalue if the branch recurses.
std::vector<Value> flattenPayload(const Value& v) {
  std::vector<Value> out;
  Value cur = v;
  while (cur.isPair()) {
    out.push_back(cur.first());
    cur = cur.second();
  }
  if (!cur.isUnit()) out.push_back(cur);
  return out;
}

}  // namespace

Value valueOfSexp(const Sexp& s) {
  switch (s.kind()) {
    case Sexp::Kind::Sym:
      if (s.text() == "unit") return Value::unit();
      if (s.text() == "refl") return Value::refl();
      return Value::tag(s.text());
    case Sexp::Kind::Nat:
      return natLit(s.value());
    case Sexp::Kind::Tag:
      return Value::tag(s.text());
    case Sexp::Kind::List: {
      if (headIs(s, "pair") && s.items().size() == 3)
        return Value::pair(valueOfSexp(s.items()[1]), valueOfSexp(s.items()[2]));
      if (headIs(s, "in") && s.items().size() == 2)
        return Value::in(valueOfSexp(s.items()[1]));
      bad(s, "expected a value literal");
    }
  }
  bad(s, "expected a value literal");
}

std::string printValueSurface(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Unit:
      return "unit";
    case Value::Kind::Refl:
      return "refl";
    case Value::Kind::Tag:
      return "'" + v.tagName();
    case Value::Kind::Pair:
      return "(pair " + printValueSurface(v.first()) + " " +
             printValueSurface(v.second()) + ")";
    case Value::Kind::Fun: {
      std::string out = "(fun";
      for (const auto& e : v.table())
        out += " (" + printValueSurface(e.first) + " " + printValueSurface(e.second) + ")";
      return out + ")";
    }
    case Value::Kind::In: {
      long n = 0;
      if (natShaped(v, n)) return std::to_string(n);
      if (v.payload().isPair() && v.payload().first().isTag()) {
        std::string out = "(" + v.payload().first().tagName();
        for (const Value& c : flattenPayload(v.payload().second()))
          out += " " + printValueSurface(c);
        return out + ")";
      }
      return "(in " + printValueSurface(v.payload()) + ")";
    }
  }
  return "unit";
}

// ===== classification =======================================================

Declaration classify(const Sexp& form) {
  if (form.kind() != Sexp::Kind::List || form.items().empty() ||
      form.items()[0].kind() != Sexp::Kind::Sym)
    bad(form, "expected a declaration form");
  const std::string& head = form.items()[0].text();
  Declaration::Kind kind;
  if (head == "data")
    kind = Declaration::Kind::Data;
  else if (head == "ornament")
    kind = Declaration::Kind::Ornament;
  else if (head == "fun")
    kind = Declaration::Kind::Fun;
  else if (head == "funorn")
    kind = Declaration::Kind::FunOrn;
  else if (head == "lift")
    kind = Declaration::Kind::Lift;
  else if (head == "fill")
    kind = Declaration::Kind::Fill;
  else
    bad(form, "unknown declaration head '" + head + "'");
  if (form.items().size() < 2 || form.items()[1].kind() != Sexp::Kind::Sym)
    bad(form, "expected (" + head + " NAME ...)");
  return Declaration{kind, form.items()[1].text(), form};
}

// ===== environment lookups ==================================================

namespace {

template <class M>
const typename M::mapped_type& findIn(const M& m, const std::string& name,
                                      const char* what) {
  auto it = m.find(name);
  if (it == m.end())
    throw UnknownName(std::string("no ") + what + " named '" + name + "'");
  return it->second;
}

}  // namespace

const SetCode& Env::set(const std::string& name) const { return findIn(sets, name, "set"); }
const DescFun& Env::family(const std::string& name) const {
  return findIn(families, name, "family");
}
const Ornament& Env::ornament(const std::string& name) const {
  return findIn(ornaments, name, "ornament");
}
const FunDef& Env::def(const std::string& name) const {
  return findIn(defs, name, "definition");
}
const BaseFn& Env::fn(const std::string& name) const { return findIn(fns, name, "function"); }
const FunOrn& Env::funorn(const std::string& name) const {
  return findIn(funorns, name, "functional ornament");
}
const ScriptEntry& Env::script(const std::string& name) const {
  return findIn(scripts, name, "lifting script");
}
const LiftedFn& Env::liftedFn(const std::string& name) const {
  return findIn(lifted, name, "lifted function");
}

// ===== elaboration ==========================================================

namespace {

// Per-alternative scope: bound values and, where declared, their sets (used
// to pick equality carriers).
struct Scope {
  std::map<std::string, Value> vals;
  std::map<std::string, SetCode> sets;
};

Value evalVexpr(const Env& env, const Scope& sc, const Sexp& s);

Value buildPayloadFields(const Desc& d, const std::vector<Value>& fields, size_t k,
                         const Sexp& at) {
  switch (d.kind()) {
    case Desc::Kind::One:
      if (k != fields.size()) bad(at, "constructor arity mismatch");
      return Value::unit();
    case Desc::Kind::Var:
      if (k + 1 != fields.size()) bad(at, "constructor arity mismatch");
      return fields[k];
    case Desc::Kind::Sigma: {
      if (k >= fields.size()) bad(at, "constructor arity mismatch");
      return Value::pair(fields[k], buildPayloadFields(d.fam()(fields[k]), fields, k + 1, at));
    }
    case Desc::Kind::Pi:
      bad(at, "constructors with function fields are not expressible");
  }
  bad(at, "constructor arity mismatch");
}

Value buildCtorValue(const Env& env, const std::string& ctor,
                     const std::vector<Value>& fields, const Sexp& at) {
  const DescFun& fam = env.scriptEnv.familyOfTag(ctor);
  Desc root = fam.at(Value::unit());
  Desc branch = root.fam()(Value::tag(ctor));
  Value v = Value::in(Value::pair(Value::tag(ctor), buildPayloadFields(branch, fields, 0, at)));
  if (!checkValue(SetCode::mu(fam, Value::unit()), v))
    bad(at, "ill-typed application of constructor '" + ctor + "'");
  return v;
}

Value evalVexpr(const Env& env, const Scope& sc, const Sexp& s) {
  switch (s.kind()) {
    case Sexp::Kind::Sym: {
      auto it = sc.vals.find(s.text());
      if (it != sc.vals.end()) return it->second;
      if (s.text() == "unit") return Value::unit();
      if (s.text() == "refl") return Value::refl();
      if (env.scriptEnv.tagFamily.count(s.text())) return buildCtorValue(env, s.text(), {}, s);
      bad(s, "unbound name '" + s.text() + "' in a value expression");
    }
    case Sexp::Kind::Nat:
      return natLit(s.value());
    case Sexp::Kind::Tag:
      return Value::tag(s.text());
    case Sexp::Kind::List: {
      if (s.items().empty() || s.items()[0].kind() != Sexp::Kind::Sym)
        bad(s, "expected a value expression");
      const std::string& head = s.items()[0].text();
      if (head == "pair" && s.items().size() == 3)
        return Value::pair(evalVexpr(env, sc, s.items()[1]), evalVexpr(env, sc, s.items()[2]));
      if (head == "in" && s.items().size() == 2)
        return Value::in(evalVexpr(env, sc, s.items()[1]));
      if (env.scriptEnv.tagFamily.count(head)) {
        std::vector<Value> fields;
        for (size_t k = 1; k < s.items().size(); ++k)
          fields.push_back(evalVexpr(env, sc, s.items()[k]));
        return buildCtorValue(env, head, fields, s);
      }
      bad(s, "expected a value expression");
    }
  }
  bad(s, "expected a value expression");
}

SetCode setOfSexp(const Env& env, const Scope& sc, const Sexp& s) {
  if (s.kind() == Sexp::Kind::Sym) {
    if (s.text() == "unit") return SetCode::unitSet();
    if (s.text() == "empty") return SetCode::emptySet();
    auto it = env.sets.find(s.text());
    if (it != env.sets.end()) return it->second;
    bad(s, "unknown set '" + s.text() + "'");
  }
  if (s.kind() == Sexp::Kind::List && !s.items().empty() &&
      s.items()[0].kind() == Sexp::Kind::Sym) {
    const std::string& head = s.items()[0].text();
    if (head == "enum") {
      std::vector<std::string> tags;
      for (size_t k = 1; k < s.items().size(); ++k)
        tags.push_back(symText(s.items()[k], "an enum tag"));
      return SetCode::enumSet(std::move(tags));
    }
    if (head == "mu" && s.items().size() == 3)
      return SetCode::mu(env.family(symText(s.items()[1], "a family name")),
                         evalVexpr(env, sc, s.items()[2]));
  }
  bad(s, "expected a set expression");
}

// (at P): P is _, a nullary constructor, or (CTOR BINDER*). Constructor
// patterns destructure the index payload positionally.
bool matchIndexPat(const Env& env, const Sexp& pat, const Value& i, Scope& sc) {
  if (pat.kind() == Sexp::Kind::Sym) {
    if (pat.text() == "_") return true;
    if (!env.scriptEnv.tagFamily.count(pat.text()))
      bad(pat, "index pattern names unknown constructor '" + pat.text() + "'");
    return i.isIn() && i.payload().isPair() && i.payload().first().isTag() &&
           i.payload().first().tagName() == pat.text();
  }
  if (pat.kind() == Sexp::Kind::List && !pat.items().empty() &&
      pat.items()[0].kind() == Sexp::Kind::Sym) {
    const std::string& ctor = pat.items()[0].text();
    if (!env.scriptEnv.tagFamily.count(ctor))
      bad(pat, "index pattern names unknown constructor '" + ctor + "'");
    if (!(i.isIn() && i.payload().isPair() && i.payload().first().isTag() &&
          i.payload().first().tagName() == ctor))
      return false;
    std::vector<Value> comps = flattenPayload(i.payload().second());
    if (comps.size() != pat.items().size() - 1)
      bad(pat, "index pattern arity mismatch for '" + ctor + "'");
    for (size_t k = 1; k < pat.items().size(); ++k)
      sc.vals[symText(pat.items()[k], "a pattern binder")] = comps[k - 1];
    return true;
  }
  bad(pat, "expected an index pattern");
}

// ---- alternative declarations ----------------------------------------------

struct ItemDecl {
  enum class K { Field, Insert, Delete, Rec };
  K k;
  std::string name;
  Sexp expr;  // set expression (Field / Insert), value (Delete), index (Rec)
};

struct EqDecl {
  Sexp lhs;
  Sexp rhs;
  Sexp form;
};

struct AltDecl {
  std::string ctor;
  Sexp head;
  std::vector<ItemDecl> items;  // any recursive item comes last
  std::vector<EqDecl> eqs;
  std::optional<Sexp> atPat;
  std::optional<std::string> ofTag;
};

ItemDecl parseItem(const Sexp& it, const std::string& selfName, bool ornament) {
  if (it.kind() != Sexp::Kind::List || it.items().empty())
    bad(it, "expected a field of the form (name set)");
  if (headIs(it, "insert") || headIs(it, "delete")) {
    const std::string& head = it.items()[0].text();
    if (!ornament) bad(it, "'" + head + "' only appears in ornament alternatives");
    if (it.items().size() != 3) bad(it, "expected (" + head + " NAME ARG)");
    ItemDecl d;
    d.k = head == "insert" ? ItemDecl::K::Insert : ItemDecl::K::Delete;
    d.name = symText(it.items()[1], "a field name");
    d.expr = it.items()[2];
    return d;
  }
  if (it.items().size() != 2) bad(it, "expected a field of the form (name set)");
  ItemDecl d;
  d.name = symText(it.items()[0], "a field name");
  const Sexp& se = it.items()[1];
  if (headIs(se, "mu") && se.items().size() == 3 &&
      se.items()[1].kind() == Sexp::Kind::Sym && se.items()[1].text() == selfName) {
    d.k = ItemDecl::K::Rec;
    d.expr = se.items()[2];
    return d;
  }
  d.k = ItemDecl::K::Field;
  d.expr = se;
  return d;
}

AltDecl parseAlt(const Sexp& a, const std::string& selfName, bool ornament) {
  if (a.kind() != Sexp::Kind::List || a.items().empty() ||
      a.items()[0].kind() != Sexp::Kind::List || a.items()[0].items().empty())
    bad(a, "expected an alternative ((CTOR FIELD*) CLAUSE*)");
  AltDecl alt;
  alt.head = a.items()[0];
  alt.ctor = symText(alt.head.items()[0], "a constructor name");
  for (size_t k = 1; k < alt.head.items().size(); ++k) {
    const Sexp& it = alt.head.items()[k];
    if (headIs(it, "=") && it.items().size() == 3)
      alt.eqs.push_back(EqDecl{it.items()[1], it.items()[2], it});
    else
      alt.items.push_back(parseItem(it, selfName, ornament));
  }
  for (size_t k = 0; k + 1 < alt.items.size(); ++k)
    if (alt.items[k].k == ItemDecl::K::Rec)
      bad(alt.head, "the recursive field of '" + alt.ctor + "' must come last");
  for (size_t k = 1; k < a.items().size(); ++k) {
    const Sexp& c = a.items()[k];
    if (headIs(c, "at") && c.items().size() == 2) {
      if (alt.atPat) bad(c, "'" + alt.ctor + "' has more than one (at ...) clause");
      alt.atPat = c.items()[1];
    } else if (headIs(c, "=") && c.items().size() == 3) {
      alt.eqs.push_back(EqDecl{c.items()[1], c.items()[2], c});
    } else if (headIs(c, "of") && c.items().size() == 2) {
      if (!ornament) bad(c, "(of ...) only appears in ornament alternatives");
      if (alt.ofTag) bad(c, "'" + alt.ctor + "' has more than one (of ...) clause");
      alt.ofTag = symText(c.items()[1], "a base constructor name");
    } else {
      bad(c, "expected an (at ...), (= ...) or (of ...) clause");
    }
  }
  return alt;
}

struct CaseDecl {
  std::string ivar;
  std::vector<AltDecl> alts;
};

CaseDecl parseCaseDecl(const Sexp& c, const std::string& selfName, bool ornament) {
  if (!headIs(c, "case") || c.items().size() < 2)
    bad(c, "expected (case INDEXVAR ALTERNATIVE*)");
  CaseDecl cd;
  cd.ivar = symText(c.items()[1], "an index variable");
  std::set<std::string> seen;
  for (size_t k = 2; k < c.items().size(); ++k) {
    AltDecl alt = parseAlt(c.items()[k], selfName, ornament);
    if (!seen.insert(alt.ctor).second)
      bad(c.items()[k], "duplicate constructor '" + alt.ctor + "'");
    cd.alts.push_back(std::move(alt));
  }
  return cd;
}

SetCode eqCarrier(const Scope& sc, const EqDecl& eq) {
  for (const Sexp* side : {&eq.lhs, &eq.rhs}) {
    if (side->kind() == Sexp::Kind::Sym) {
      auto it = sc.sets.find(side->text());
      if (it != sc.sets.end()) return it->second;
    }
  }
  bad(eq.form, "an equality constraint needs one side that is a variable with a known set");
}

// ---- data telescopes --------------------------------------------------------

// Fields in declaration order; constraints sit just before the recursive
// field (or at the very end), where everything they mention is in scope.
Desc dataTele(std::shared_ptr<const Env> E, AltDecl alt, size_t k, size_t eqK, Scope sc) {
  bool atRec = k < alt.items.size() && alt.items[k].k == ItemDecl::K::Rec;
  bool atEnd = k == alt.items.size();
  if ((atRec || atEnd) && eqK < alt.eqs.size()) {
    const EqDecl& eq = alt.eqs[eqK];
    Value l = evalVexpr(*E, sc, eq.lhs);
    Value r = evalVexpr(*E, sc, eq.rhs);
    SetCode es = SetCode::eq(eqCarrier(sc, eq), l, r);
    return Desc::sigma(es, [E, alt, k, eqK, sc](const Value&) {
      return dataTele(E, alt, k, eqK + 1, sc);
    });
  }
  if (atEnd) return Desc::one();
  const ItemDecl& it = alt.items[k];
  if (it.k == ItemDecl::K::Rec) return Desc::var(evalVexpr(*E, sc, it.expr));
  if (it.k != ItemDecl::K::Field)
    bad(alt.head, "'" + it.name + "': insert/delete only appear in ornaments");
  SetCode S = setOfSexp(*E, sc, it.expr);
  return Desc::sigma(S, [E, alt, k, eqK, sc, S](const Value& v) {
    Scope sc2 = sc;
    sc2.vals[alt.items[k].name] = v;
    sc2.sets[alt.items[k].name] = S;
    return dataTele(E, alt, k + 1, eqK, sc2);
  });
}

Desc dataDescAt(const std::shared_ptr<const Env>& E,
                const std::shared_ptr<const CaseDecl>& cd, const SetCode& indexSet,
                const Value& i) {
  Scope sc0;
  sc0.vals[cd->ivar] = i;
  sc0.sets[cd->ivar] = indexSet;
  std::vector<std::pair<AltDecl, Scope>> present;
  for (const AltDecl& a : cd->alts) {
    Scope sc = sc0;
    if (a.atPat && !matchIndexPat(*E, *a.atPat, i, sc)) continue;
    present.emplace_back(a, sc);
  }
  if (present.empty())
    return Desc::sigma(SetCode::emptySet(), [](const Value&) { return Desc::one(); });
  if (present.size() == 1)
    return dataTele(E, present[0].first, 0, 0, present[0].second);
  std::vector<std::string> tags;
  auto byTag = std::make_shared<std::map<std::string, std::pair<AltDecl, Scope>>>();
  for (auto& p : present) {
    tags.push_back(p.first.ctor);
    byTag->emplace(p.first.ctor, p);
  }
  return Desc::sigma(SetCode::enumSet(tags), [E, byTag](const Value& t) {
    const auto& e = byTag->at(t.tagName());
    return dataTele(E, e.first, 0, 0, e.second);
  });
}

// ---- ornament telescopes ------------------------------------------------------

OrnCode ornTele(std::shared_ptr<const Env> E, AltDecl alt, size_t k, size_t eqK,
                Scope sc, Desc db, std::function<Value(const Value&)> down) {
  bool atRec = k < alt.items.size() && alt.items[k].k == ItemDecl::K::Rec;
  bool atEnd = k == alt.items.size();
  if ((atRec || atEnd) && eqK < alt.eqs.size()) {
    const EqDecl& eq = alt.eqs[eqK];
    Value l = evalVexpr(*E, sc, eq.lhs);
    Value r = evalVexpr(*E, sc, eq.rhs);
    SetCode es = SetCode::eq(eqCarrier(sc, eq), l, r);
    return OrnCode::insert(es, [E, alt, k, eqK, sc, db, down](const Value&) {
      return ornTele(E, alt, k, eqK + 1, sc, db, down);
    });
  }
  if (atEnd) {
    if (db.kind() == Desc::Kind::One) return OrnCode::one();
    bad(alt.head, "'" + alt.ctor + "' ends before the base constructor's payload does");
  }
  const ItemDecl& it = alt.items[k];
  switch (it.k) {
    case ItemDecl::K::Field: {
      if (db.kind() != Desc::Kind::Sigma)
        bad(alt.head, "no base component to copy at field '" + it.name + "'");
      SetCode S = setOfSexp(*E, sc, it.expr);
      if (!setEqual(S, db.dom(), 1))
        bad(alt.head, "copied field '" + it.name + "' does not match the base component");
      return OrnCode::sigma([E, alt, k, eqK, sc, db, down, S](const Value& v) {
        Scope sc2 = sc;
        sc2.vals[alt.items[k].name] = v;
        sc2.sets[alt.items[k].name] = S;
        return ornTele(E, alt, k + 1, eqK, sc2, db.fam()(v), down);
      });
    }
    case ItemDecl::K::Insert: {
      SetCode S = setOfSexp(*E, sc, it.expr);
      return OrnCode::insert(S, [E, alt, k, eqK, sc, db, down, S](const Value& v) {
        Scope sc2 = sc;
        sc2.vals[alt.items[k].name] = v;
        sc2.sets[alt.items[k].name] = S;
        return ornTele(E, alt, k + 1, eqK, sc2, db, down);
      });
    }
    case ItemDecl::K::Delete: {
      if (db.kind() != Desc::Kind::Sigma)
        bad(alt.head, "no base component to delete at '" + it.name + "'");
      Value v = evalVexpr(*E, sc, it.expr);
      Scope sc2 = sc;
      sc2.vals[it.name] = v;
      sc2.sets[it.name] = db.dom();
      return OrnCode::del(v, ornTele(E, alt, k + 1, eqK, sc2, db.fam()(v), down));
    }
    case ItemDecl::K::Rec: {
      if (db.kind() != Desc::Kind::Var)
        bad(alt.head, "the base constructor does not recurse at field '" + it.name + "'");
      Value fancy = evalVexpr(*E, sc, it.expr);
      return OrnCode::var(fancy, down(fancy));
    }
  }
  bad(alt.head, "malformed alternative");
}

struct OrnParsed {
  std::string name;
  DescFun base;
  SetCode fancyIndexSet;
  std::string ivar;
  std::vector<AltDecl> alts;
  std::function<Value(const Value&)> down;
};

OrnCode ornCodeAt(const std::shared_ptr<const Env>& E,
                  const std::shared_ptr<const OrnParsed>& P, const Value& j) {
  Value i = P->down(j);
  Desc d = P->base.at(i);
  Scope sc0;
  sc0.vals[P->ivar] = j;
  sc0.sets[P->ivar] = P->fancyIndexSet;
  struct Entry {
    AltDecl alt;
    Scope sc;
    std::string baseTag;
  };
  std::vector<Entry> present;
  for (const AltDecl& a : P->alts) {
    Scope sc = sc0;
    if (a.atPat && !matchIndexPat(*E, *a.atPat, j, sc)) continue;
    present.push_back(Entry{a, sc, a.ofTag.value_or(a.ctor)});
  }
  if (present.empty())
    return OrnCode::insert(SetCode::emptySet(),
                           [d](const Value&) { return mirrorCode(d); });
  bool rootEnum = d.kind() == Desc::Kind::Sigma && d.dom().kind() == SetCode::Kind::Enum;
  if (!rootEnum) {
    // single-shape base node: alternatives refine it directly
    if (present.size() == 1)
      return ornTele(E, present[0].alt, 0, 0, present[0].sc, d, P->down);
    std::vector<std::string> tags;
    auto byName = std::make_shared<std::map<std::string, Entry>>();
    for (auto& e : present) {
      tags.push_back(e.alt.ctor);
      byName->emplace(e.alt.ctor, e);
    }
    return OrnCode::insert(SetCode::enumSet(tags), [E, byName, d, P](const Value& s) {
      const Entry& e = byName->at(s.tagName());
      return ornTele(E, e.alt, 0, 0, e.sc, d, P->down);
    });
  }
  const std::vector<std::string>& baseTags = d.dom().tags();
  for (const Entry& e : present)
    if (std::find(baseTags.begin(), baseTags.end(), e.baseTag) == baseTags.end())
      bad(e.alt.head, "'" + e.baseTag + "' is not a constructor of the base family");
  bool identity = present.size() == baseTags.size();
  if (identity) {
    std::set<std::string> names;
    for (const Entry& e : present) {
      if (e.alt.ctor != e.baseTag) identity = false;
      names.insert(e.alt.ctor);
    }
    for (const std::string& t : baseTags)
      if (!names.count(t)) identity = false;
  }
  auto byName = std::make_shared<std::map<std::string, Entry>>();
  for (auto& e : present) byName->emplace(e.alt.ctor, e);
  if (identity) {
    // same constructors, refined in place: copy the tag component
    auto fam = d.fam();
    return OrnCode::sigma([E, byName, fam, P](const Value& s) {
      const Entry& e = byName->at(s.tagName());
      return ornTele(E, e.alt, 0, 0, e.sc, fam(s), P->down);
    });
  }
  if (present.size() == 1) {
    // a single alternative detags the node: the index decides the constructor
    const Entry& e = present[0];
    Value bt = Value::tag(e.baseTag);
    return OrnCode::del(bt, ornTele(E, e.alt, 0, 0, e.sc, d.fam()(bt), P->down));
  }
  std::vector<std::string> tags;
  for (const Entry& e : present) tags.push_back(e.alt.ctor);
  auto fam = d.fam();
  return OrnCode::insert(SetCode::enumSet(tags), [E, byName, fam, P](const Value& s) {
    const Entry& e = byName->at(s.tagName());
    Value bt = Value::tag(e.baseTag);
    return OrnCode::del(bt, ornTele(E, e.alt, 0, 0, e.sc, fam(bt), P->down));
  });
}

// ---- declaration elaborators ---------------------------------------------------

void checkParams(const Env& env, const Sexp& form, size_t& k) {
  while (k < form.items().size() && headIs(form.items()[k], "param")) {
    const Sexp& p = form.items()[k];
    if (p.items().size() != 2) bad(p, "expected (param NAME)");
    std::string name = symText(p.items()[1], "a parameter name");
    if (!env.sets.count(name))
      bad(p, "set parameter '" + name + "' has no instantiation in scope");
    ++k;
  }
}

const Sexp& needClause(const Sexp& form, size_t k, const char* head) {
  if (k >= form.items().size() || !headIs(form.items()[k], head))
    bad(form, std::string("expected a (") + head + " ...) clause");
  return form.items()[k];
}

void elabData(Env& env, const Declaration& dc) {
  const Sexp& f = dc.form;
  size_t k = 2;
  checkParams(env, f, k);
  const Sexp& idx = needClause(f, k, "index");
  if (idx.items().size() != 2) bad(idx, "expected (index SET)");
  ++k;
  const Sexp& cs = needClause(f, k, "case");
  if (k + 1 != f.items().size()) bad(f, "unexpected forms after the case tree");
  SetCode indexSet = setOfSexp(env, Scope{}, idx.items()[1]);
  auto cd = std::make_shared<const CaseDecl>(parseCaseDecl(cs, dc.name, false));
  auto E = std::make_shared<const Env>(env);  // self-recursion is structural
  DescFun fam;
  fam.name = dc.name;
  fam.indexSet = indexSet;
  fam.at = [E, cd, indexSet](const Value& i) { return dataDescAt(E, cd, indexSet, i); };
  for (const Value& i : enumerate(indexSet, 1)) (void)fam.at(i);
  env.families.emplace(dc.name, fam);
  env.scriptEnv.addFamily(fam);
}

void elabOrnament(Env& env, const Declaration& dc) {
  const Sexp& f = dc.form;
  size_t k = 2;
  checkParams(env, f, k);
  const Sexp& from = needClause(f, k, "from");
  if (from.items().size() != 2) bad(from, "expected (from BASEFAMILY)");
  ++k;
  const Sexp& idx = needClause(f, k, "index");
  if (idx.items().size() != 2) bad(idx, "expected (index SET)");
  ++k;
  auto P = std::make_shared<OrnParsed>();
  P->name = dc.name;
  P->base = env.family(symText(from.items()[1], "a family name"));
  P->fancyIndexSet = setOfSexp(env, Scope{}, idx.items()[1]);
  auto E = std::make_shared<const Env>(env);
  if (k < f.items().size() && headIs(f.items()[k], "down")) {
    const Sexp& dn = f.items()[k];
    if (dn.items().size() != 3) bad(dn, "expected (down VAR EXPR)");
    std::string dv = symText(dn.items()[1], "the reindexing variable");
    Sexp dx = dn.items()[2];
    P->down = [E, dv, dx](const Value& j) {
      Scope sc;
      sc.vals[dv] = j;
      return evalVexpr(*E, sc, dx);
    };
    ++k;
  } else {
    if (P->base.indexSet.kind() != SetCode::Kind::Unit)
      bad(f, "the base family is not unit-indexed; give a (down ...) clause");
    P->down = [](const Value&) { return Value::unit(); };
  }
  const Sexp& cs = needClause(f, k, "case");
  if (k + 1 != f.items().size()) bad(f, "unexpected forms after the case tree");
  CaseDecl cd = parseCaseDecl(cs, dc.name, true);
  P->ivar = cd.ivar;
  P->alts = std::move(cd.alts);
  auto Pc = std::shared_ptr<const OrnParsed>(P);
  Ornament o;
  o.name = dc.name;
  o.base = P->base;
  o.re.fancyIndexSet = P->fancyIndexSet;
  o.re.down = P->down;
  o.at = [E, Pc](const Value& j) { return ornCodeAt(E, Pc, j); };
  wellFormedOrn(o, 2);
  env.ornaments.emplace(dc.name, o);
  DescFun fam = interpOrn(o);
  env.families.emplace(dc.name, fam);
  env.scriptEnv.addFamily(fam);
}

// ---- function and script bodies -------------------------------------------------

TypeSlot slotOf(const Env& env, const Sexp& s) {
  if (!headIs(s, "mu") || s.items().size() != 3)
    bad(s, "expected a signature slot (mu FAMILY INDEX)");
  return TypeSlot{env.family(symText(s.items()[1], "a family name")),
                  evalVexpr(env, Scope{}, s.items()[2])};
}

Expr exprOf(const Env& env, const std::set<std::string>& bound, const Sexp& s) {
  switch (s.kind()) {
    case Sexp::Kind::Sym:
      if (bound.count(s.text())) return Expr::var(s.text());
      if (env.scriptEnv.tagFamily.count(s.text())) return Expr::ctor(s.text(), {});
      return Expr::var(s.text());
    case Sexp::Kind::Nat: {
      Expr e = Expr::ctor("zero", {});
      for (long i = 0; i < s.value(); ++i) e = Expr::ctor("suc", {e});
      return e;
    }
    case Sexp::Kind::Tag:
      return Expr::tagLit(s.text());
    case Sexp::Kind::List: {
      if (s.items().empty() || s.items()[0].kind() != Sexp::Kind::Sym)
        bad(s, "expected an expression");
      const std::string& head = s.items()[0].text();
      std::vector<Expr> args;
      for (size_t k = 1; k < s.items().size(); ++k)
        args.push_back(exprOf(env, bound, s.items()[k]));
      if (head == "self") return Expr::selfCall(std::move(args));
      if (env.scriptEnv.tagFamily.count(head)) return Expr::ctor(head, std::move(args));
      bad(s, "'" + head + "' is not a constructor or (self ...)");
    }
  }
  bad(s, "expected an expression");
}

Body bodyOf(const Env& env, const std::vector<std::string>& params,
            std::set<std::string> bound, const Sexp& s, bool lift) {
  if (headIs(s, "return") && s.items().size() == 2)
    return Body::ret(exprOf(env, bound, s.items()[1]));
  for (auto [head, m] : {std::pair{"case", Body::Method::Case},
                         std::pair{"ind", Body::Method::Ind},
                         std::pair{"fold", Body::Method::Fold}}) {
    if (!headIs(s, head)) continue;
    if (s.items().size() < 2) bad(s, "expected (" + std::string(head) + " PARAM BRANCH*)");
    std::string target = symText(s.items()[1], "a parameter name");
    auto it = std::find(params.begin(), params.end(), target);
    if (it == params.end()) bad(s.items()[1], "eliminations target a parameter");
    size_t slot = static_cast<size_t>(it - params.begin());
    std::vector<Branch> branches;
    for (size_t k = 2; k < s.items().size(); ++k) {
      const Sexp& b = s.items()[k];
      if (b.kind() != Sexp::Kind::List || b.items().size() != 3 ||
          b.items()[1].kind() != Sexp::Kind::List)
        bad(b, "expected a branch (TAG (BINDER*) BODY)");
      Branch br;
      br.tag = symText(b.items()[0], "a constructor tag");
      std::set<std::string> bound2 = bound;
      for (const Sexp& bd : b.items()[1].items()) {
        br.binders.push_back(symText(bd, "a binder"));
        bound2.insert(br.binders.back());
      }
      br.body = bodyOf(env, params, bound2, b.items()[2], lift);
      branches.push_back(std::move(br));
    }
    return Body::elim(m, slot, branches);
  }
  if (lift) {
    if (headIs(s, "node")) {
      std::vector<Body::Fill> fills;
      std::vector<Body> recs;
      for (size_t k = 1; k < s.items().size(); ++k) {
        const Sexp& it = s.items()[k];
        if (headIs(it, "recs")) {
          if (k + 1 != s.items().size()) bad(it, "(recs ...) must come last in a node");
          for (size_t r = 1; r < it.items().size(); ++r)
            recs.push_back(bodyOf(env, params, bound, it.items()[r], lift));
          break;
        }
        if (headIs(it, "hole") && it.items().size() == 2)
          fills.push_back(Body::Fill::hole(symText(it.items()[1], "a hole label")));
        else
          fills.push_back(Body::Fill::lit(valueOfSexp(it)));
      }
      return Body::ctor(std::move(fills), std::move(recs));
    }
    if (headIs(s, "self")) {
      std::vector<Expr> args;
      for (size_t k = 1; k < s.items().size(); ++k)
        args.push_back(exprOf(env, bound, s.items()[k]));
      return Body::selfCall(std::move(args));
    }
    if (headIs(s, "hole") && s.items().size() == 2)
      return Body::hole(symText(s.items()[1], "a hole label"));
  }
  bad(s, lift ? "expected a script body form"
              : "expected (return ...), (case ...), (ind ...) or (fold ...)");
}

void elabFun(Env& env, const Declaration& dc) {
  const Sexp& f = dc.form;
  if (f.items().size() != 4) bad(f, "expected (fun NAME (sig ...) BODY)");
  const Sexp& sig = f.items()[2];
  if (!headIs(sig, "sig") || sig.items().size() != 3 ||
      sig.items()[1].kind() != Sexp::Kind::List)
    bad(sig, "expected (sig ((PARAM SLOT)*) RESULTSLOT)");
  FunDef def;
  def.name = dc.name;
  for (const Sexp& p : sig.items()[1].items()) {
    if (p.kind() != Sexp::Kind::List || p.items().size() != 2)
      bad(p, "expected (PARAM SLOT)");
    def.params.push_back(symText(p.items()[0], "a parameter name"));
    def.type.args.push_back(slotOf(env, p.items()[1]));
  }
  def.type.results.push_back(slotOf(env, sig.items()[2]));
  std::set<std::string> bound(def.params.begin(), def.params.end());
  def.body = bodyOf(env, def.params, bound, f.items()[3], false);
  BaseFn fn = elaborateFun(def, env.scriptEnv);
  env.defs.emplace(dc.name, std::move(def));
  env.fns.emplace(dc.name, std::move(fn));
}

void elabFunOrn(Env& env, const Declaration& dc) {
  const Sexp& f = dc.form;
  if (f.items().size() != 5)
    bad(f, "expected (funorn NAME (over FN) (args ...) (results ...))");
  const Sexp& over = f.items()[2];
  if (!headIs(over, "over") || over.items().size() != 2)
    bad(over, "expected (over FUNCTION)");
  std::string baseName = symText(over.items()[1], "a function name");
  const BaseFn& base = env.fn(baseName);
  auto itemOf = [&env](const Sexp& s) -> OrnSlot {
    if (isSym(s, "id")) return idSlot();
    if (headIs(s, "orn") && s.items().size() == 3)
      return ornSlot(env.ornament(symText(s.items()[1], "an ornament name")),
                     evalVexpr(env, Scope{}, s.items()[2]));
    bad(s, "expected id or (orn ORNAMENT INDEX)");
  };
  FunOrn fo;
  const Sexp& args = f.items()[3];
  if (!headIs(args, "args")) bad(args, "expected (args ITEM*)");
  for (size_t k = 1; k < args.items().size(); ++k) fo.args.push_back(itemOf(args.items()[k]));
  const Sexp& results = f.items()[4];
  if (!headIs(results, "results")) bad(results, "expected (results ITEM*)");
  for (size_t k = 1; k < results.items().size(); ++k)
    fo.results.push_back(itemOf(results.items()[k]));
  checkFunOrn(fo, base.type, 2);
  env.funorns.emplace(dc.name, std::move(fo));
  env.funornBase.emplace(dc.name, baseName);
}

void elabLift(Env& env, const Declaration& dc) {
  const Sexp& f = dc.form;
  if (f.items().size() != 5)
    bad(f, "expected (lift NAME (funorn FO) (params (P*)) BODY)");
  const Sexp& fof = f.items()[2];
  if (!headIs(fof, "funorn") || fof.items().size() != 2)
    bad(fof, "expected (funorn NAME)");
  std::string foName = symText(fof.items()[1], "a functional ornament name");
  const FunOrn& fo = env.funorn(foName);
  const std::string& baseName = findIn(env.funornBase, foName, "functional ornament");
  const FunDef& baseDef = env.def(baseName);
  const Sexp& ps = f.items()[3];
  if (!headIs(ps, "params") || ps.items().size() != 2 ||
      ps.items()[1].kind() != Sexp::Kind::List)
    bad(ps, "expected (params (NAME*))");
  LiftScript script;
  script.name = dc.name;
  script.base = baseName;
  for (const Sexp& p : ps.items()[1].items())
    script.params.push_back(symText(p, "a parameter name"));
  std::set<std::string> bound(script.params.begin(), script.params.end());
  script.body = bodyOf(env, script.params, bound, f.items()[4], true);
  LiftResult res = elaborateScript(script, baseDef, fo, env.scriptEnv, {});
  ScriptEntry entry{std::move(script), foName, std::move(res.report), {}, std::move(res.fn)};
  env.scripts.emplace(dc.name, std::move(entry));
}

void elabFill(Env& env, const Declaration& dc) {
  const Sexp& f = dc.form;
  ScriptEntry entry = env.script(dc.name);
  for (size_t k = 2; k < f.items().size(); ++k) {
    const Sexp& fl = f.items()[k];
    if (fl.kind() != Sexp::Kind::List || fl.items().size() != 2)
      bad(fl, "expected (LABEL EXPR)");
    entry.fills[symText(fl.items()[0], "a hole label")] =
        exprOf(env, {}, fl.items()[1]);
  }
  const FunOrn& fo = env.funorn(entry.funorn);
  const FunDef& baseDef = env.def(findIn(env.funornBase, entry.funorn, "functional ornament"));
  LiftResult res = elaborateScript(entry.script, baseDef, fo, env.scriptEnv, entry.fills);
  entry.fn = std::move(res.fn);
  env.scripts[dc.name] = std::move(entry);
}

bool nameTaken(const Env& env, const std::string& n) {
  return env.sets.count(n) || env.families.count(n) || env.ornaments.count(n) ||
         env.defs.count(n) || env.fns.count(n) || env.funorns.count(n) ||
         env.scripts.count(n) || env.lifted.count(n);
}

const char* kindWord(Declaration::Kind k) {
  switch (k) {
    case Declaration::Kind::Data: return "data";
    case Declaration::Kind::Ornament: return "ornament";
    case Declaration::Kind::Fun: return "fun";
    case Declaration::Kind::FunOrn: return "funorn";
    case Declaration::Kind::Lift: return "lift";
    case Declaration::Kind::Fill: return "fill";
  }
  return "declaration";
}

}  // namespace

Value evalValue(const Env& env, const Sexp& s) { return evalVexpr(env, Scope{}, s); }
SetCode evalSet(const Env& env, const Sexp& s) { return setOfSexp(env, Scope{}, s); }

Env elaborate(const SourceFile& file, Env env) {
  for (const Sexp& f : file) {
    Declaration d = classify(f);
    if (d.kind != Declaration::Kind::Fill && nameTaken(env, d.name))
      throw ElaborationError("name '" + d.name + "' is already declared (at " +
                             posOf(f) + ")");
    try {
      switch (d.kind) {
        case Declaration::Kind::Data: elabData(env, d); break;
        case Declaration::Kind::Ornament: elabOrnament(env, d); break;
        case Declaration::Kind::Fun: elabFun(env, d); break;
        case Declaration::Kind::FunOrn: elabFunOrn(env, d); break;
        case Declaration::Kind::Lift: elabLift(env, d); break;
        case Declaration::Kind::Fill: elabFill(env, d); break;
      }
    } catch (const ElaborationError&) {
      throw;
    } catch (const Error& e) {
      throw ElaborationError(std::string("in ") + kindWord(d.kind) + " " + d.name +
                             ": " + e.what());
    }
    env.decls.push_back(f);
  }
  return env;
}

// ===== the standard prelude ==================================================

std::string preludeSource() {
  return R"orn(; Standard prelude: naturals and booleans, their list and option refinements,
; bounded naturals two ways, height-indexed walks, vectors two ways, small
; arithmetic, the functional ornaments of its signatures, and the lifting
; scripts that patch them.

(data Nat (index unit)
  (case _
    ((zero))
    ((suc (n (mu Nat unit))))))

(data Bool (index unit)
  (case _
    ((true))
    ((false))))

(ornament List (param A) (from Nat) (index unit)
  (case _
    ((nil) (of zero))
    ((cons (insert a A) (vs (mu List unit))) (of suc))))

(ornament Maybe (param A) (from Bool) (index unit)
  (case _
    ((nothing) (of false))
    ((just (insert a A)) (of true))))

(ornament Fin (from Nat) (index (mu Nat unit))
  (case n
    ((fzero (insert m (mu Nat unit)) (= n (suc m))) (of zero))
    ((fsuc (insert m (mu Nat unit)) (= n (suc m)) (i (mu Fin m))) (of suc))))

(ornament Fin' (from Fin) (index (mu Nat unit)) (down n n)
  (case n
    ((fzero (delete m n2) (delete q refl)) (at (suc n2)))
    ((fsuc (delete m n2) (delete q refl) (i (mu Fin' n2))) (at (suc n2)))))

(data Walk (index (mu Nat unit))
  (case n
    ((up (w (mu Walk (suc n)))))
    ((stop) (at zero))
    ((down (w (mu Walk m))) (at (suc m)))))

(data VectorC (param A) (index (mu Nat unit))
  (case n
    ((vnilc (= n zero)))
    ((vconsc (m (mu Nat unit)) (a A) (vs (mu VectorC m)) (= n (suc m))))))

(data VectorD (param A) (index (mu Nat unit))
  (case n
    ((vnild) (at zero))
    ((vconsd (a A) (vs (mu VectorD m))) (at (suc m)))))

(fun lessThan (sig ((m (mu Nat unit)) (n (mu Nat unit))) (mu Bool unit))
  (case n
    (zero () (return false))
    (suc (n2)
      (case m
        (zero () (return true))
        (suc (m2) (return (self m2 n2)))))))

(fun plus (sig ((m (mu Nat unit)) (n (mu Nat unit))) (mu Nat unit))
  (ind m
    (zero () (return n))
    (suc (m2 ih) (return (suc ih)))))

(fun isSuc (sig ((m (mu Nat unit))) (mu Bool unit))
  (case m
    (zero () (return false))
    (suc (m2) (return true))))

(fun minus (sig ((m (mu Nat unit)) (n (mu Nat unit))) (mu Nat unit))
  (case m
    (zero () (return zero))
    (suc (m2)
      (case n
        (zero () (return (suc m2)))
        (suc (n2) (return (self m2 n2)))))))

(funorn typeLookup (over lessThan)
  (args id (orn List unit))
  (results (orn Maybe unit)))

(funorn type++ (over plus)
  (args (orn List unit) (orn List unit))
  (results (orn List unit)))

(funorn typeHead (over isSuc)
  (args (orn List unit))
  (results (orn Maybe unit)))

(lift ihead (funorn typeHead) (params (xs))
  (case xs
    (nil () (node nothing unit))
    (cons (a r) (node just (hole payload) unit))))

(lift ilookup (funorn typeLookup) (params (m xs))
  (case xs
    (nil () (node nothing unit))
    (cons (a r)
      (case m
        (zero () (node just (hole payload) unit))
        (suc (m2) (self m2 r))))))

(lift vappend (funorn type++) (params (xs ys))
  (ind xs
    (nil () (return ys))
    (cons (a r ih) (node cons (hole payload) unit (recs (return ih))))))

(lift iheadBroken (funorn typeHead) (params (xs))
  (case xs
    (nil () (node nothing unit))
    (cons (a r) (node nothing unit))))

(fill ihead (payload a))

(fill ilookup (payload a))

(fill vappend (payload a))
)orn";
}

namespace {

long natCount(const Value& v) {
  long k = 0;
  Value cur = v;
  while (cur.payload().first().tagName() == "suc") {
    ++k;
    cur = cur.payload().second();
  }
  return k;
}

Value boolLit(bool b) {
  return Value::in(Value::pair(Value::tag(b ? "true" : "false"), Value::unit()));
}

// m -> (m, m < n) as one fold of the naturals, n fixed in the closure.
Algebra lessPair(const DescFun& natF, const DescFun& boolF, long n) {
  SetCode natS = SetCode::mu(natF, Value::unit());
  SetCode boolS = SetCode::mu(boolF, Value::unit());
  Algebra alg;
  alg.carrierAt = [natS, boolS](const Value&) {
    return SetCode::sigma(natS, [boolS](const Value&) { return boolS; });
  };
  alg.step = [n](const Value&, const Value& payload) {
    long m = 0;
    if (payload.first().tagName() == "suc")
      m = natCount(payload.second().first()) + 1;
    return Value::pair(natLit(m), boolLit(m < n));
  };
  return alg;
}

// Bounded lookup through the index-computation adjunction: the filled lookup
// patch is a left function (it computes the bound as it runs), and feeding it
// a decorated position makes the hit/miss index an input instead.
LiftedFn vlookupFn(const Env& env) {
  DescFun natF = env.family("Nat");
  DescFun boolF = env.family("Bool");
  Ornament maybeO = env.ornament("Maybe");
  DescFun imF = env.family("IMaybe");
  PatchFn lookupP = *env.script("ilookup").fn;
  LiftedFn lf;
  lf.name = "vlookup";
  lf.run = [natF, boolF, maybeO, imF, lookupP](const std::vector<Value>& args) {
    if (args.size() != 2)
      throw IllTypedValue("vlookup takes a decorated position and a vector");
    const Value& tx = args[0];
    const Value& w = args[1];
    long m = 0;
    for (Value cur = tx; cur.payload().first().tagName() == "suc";
         cur = cur.payload().second().second().second())
      ++m;
    long n = 0;
    for (Value cur = w; cur.payload().first().isPair(); cur = cur.payload().second())
      ++n;
    Algebra alg = lessPair(natF, boolF, n);
    Value nv = natLit(n);
    Value bv = boolLit(m < n);
    DescFun resultFam;
    resultFam.name = "VLookupResult";
    resultFam.indexSet = SetCode::sigma(SetCode::unitSet(), [natF, boolF](const Value&) {
      return SetCode::sigma(SetCode::mu(natF, Value::unit()), [boolF](const Value&) {
        return SetCode::mu(boolF, Value::unit());
      });
    });
    resultFam.at = [imF](const Value& ix) {
      return imF.at(Value::pair(Value::unit(), ix.second().second()));
    };
    IndexedFnLeft left{natF, alg, resultFam,
                       [lookupP, nv, w](const Value&, const Value& t) {
                         return lookupP.run({t, nv, w}).at(0);
                       }};
    IndexedFnRight right = rlAdjoint(left);
    Value decor = runRight(right, Value::unit(), Value::pair(natLit(m), bv), tx);
    return std::vector<Value>{forgetReorn(maybeO, Value::pair(Value::unit(), bv), decor)};
  };
  return lf;
}

}  // namespace

Env prelude(const SetCode& elemParam) {
  Env env;
  env.sets.emplace("A", elemParam);
  env = elaborate(parse(preludeSource()), std::move(env));

  Ornament vec = reornament(env.ornament("List"));
  vec.name = "Vector";
  env.ornaments.emplace("Vector", vec);
  DescFun vecF = interpOrn(vec);
  env.families.emplace("Vector", vecF);
  env.scriptEnv.addFamily(vecF);

  Ornament im = reornament(env.ornament("Maybe"));
  im.name = "IMaybe";
  env.ornaments.emplace("IMaybe", im);
  DescFun imF = interpOrn(im);
  env.families.emplace("IMaybe", imF);
  env.scriptEnv.addFamily(imF);

  auto derive = [&env](const std::string& fnName, const std::string& scriptName) {
    const ScriptEntry& se = env.script(scriptName);
    if (!se.fn)
      throw UnfilledHole("script " + scriptName + " still has holes; cannot derive " +
                         fnName);
    LiftedFn lf = patch(env.fn(env.funornBase.at(se.funorn)), env.funorn(se.funorn), *se.fn);
    lf.name = fnName;
    env.lifted.emplace(fnName, std::move(lf));
  };
  derive("head", "ihead");
  derive("lookup", "ilookup");
  derive("append", "vappend");
  env.lifted.emplace("vlookup", vlookupFn(env));
  return env;
}

Env prelude() { return prelude(SetCode::enumSet({"x", "y"})); }

}  // namespace orn

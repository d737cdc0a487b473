#include "orn/cli.hpp"

#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "orn/errors.hpp"
#include "orn/surface.hpp"

namespace orn {

namespace {

using ordered_json = nlohmann::ordered_json;

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  int depth = 3;
  std::vector<std::string> params;
  bool quiet = false;
  bool json = false;
};

Env baseEnv(const Options& opt) {
  SetCode elem = SetCode::enumSet({"x", "y"});
  std::map<std::string, SetCode> extra;
  for (const std::string& p : opt.params) {
    auto eq = p.find('=');
    if (eq == std::string::npos || p.compare(eq + 1, 5, "tags:") != 0)
      throw Usage("--param expects NAME=tags:a,b,...");
    std::string name = p.substr(0, eq);
    std::vector<std::string> tags;
    std::string rest = p.substr(eq + 6);
    size_t from = 0;
    while (true) {
      size_t comma = rest.find(',', from);
      std::string tag = rest.substr(from, comma - from);
      if (tag.empty()) throw Usage("--param " + name + ": empty tag");
      tags.push_back(tag);
      if (comma == std::string::npos) break;
      from = comma + 1;
    }
    if (name == "A")
      elem = SetCode::enumSet(tags);
    else if (!extra.emplace(name, SetCode::enumSet(tags)).second)
      throw Usage("--param " + name + " given twice");
  }
  Env env = prelude(elem);
  for (const auto& [n, s] : extra)
    if (!env.sets.emplace(n, s).second) throw Usage("--param " + n + ": name already bound");
  return env;
}

Sexp oneForm(const std::string& text) {
  SourceFile f = parse(text);
  if (f.size() != 1) throw ElaborationError("expected exactly one expression");
  return f[0];
}

// Every tuple drawing one value per space, first slot slowest (enumeration
// order, hence deterministic reports).
void forEachTuple(const std::vector<std::vector<Value>>& spaces,
                  const std::function<void(const std::vector<Value>&)>& fn) {
  for (const auto& s : spaces)
    if (s.empty()) return;
  std::vector<size_t> idx(spaces.size(), 0);
  while (true) {
    std::vector<Value> tuple;
    for (size_t k = 0; k < spaces.size(); ++k) tuple.push_back(spaces[k][idx[k]]);
    fn(tuple);
    size_t k = spaces.size();
    while (k > 0) {
      if (++idx[k - 1] < spaces[k - 1].size()) break;
      idx[k - 1] = 0;
      --k;
    }
    if (k == 0) break;
  }
}

std::vector<std::string> shown(const std::vector<Value>& vs) {
  std::vector<std::string> out;
  for (const Value& v : vs) out.push_back(printValueSurface(v));
  return out;
}

// One verified tuple of a sweep, for both report styles.
struct Outcome {
  std::vector<std::string> inputs;
  std::vector<std::string> expected;
  std::vector<std::string> actual;
  bool pass;
  std::string detail;
};

struct Sweep {
  const Options& opt;
  std::ostream& out;
  std::string label;
  size_t total = 0;
  size_t failures = 0;
  ordered_json report = ordered_json::array();

  void record(Outcome o) {
    ++total;
    if (!o.pass) {
      ++failures;
      if (failures == 1 && !opt.json) {
        out << "counterexample:";
        for (const auto& s : o.inputs) out << " " << s;
        out << "\n";
        out << "  expected:";
        for (const auto& s : o.expected) out << " " << s;
        out << "\n";
        out << "  actual:";
        for (const auto& s : o.actual) out << " " << s;
        out << "\n";
        if (!o.detail.empty()) out << "  " << o.detail << "\n";
      }
    }
    if (opt.json) {
      ordered_json j{{"inputs", o.inputs},
                     {"expected", o.expected},
                     {"actual", o.actual},
                     {"pass", o.pass}};
      if (!o.pass && !o.detail.empty()) j["detail"] = o.detail;
      report.push_back(std::move(j));
    }
  }

  int finish() {
    if (opt.json) {
      out << report.dump(2) << "\n";
    } else if (failures == 0) {
      out << "ok: " << label << " holds on " << total << " tuples (depth " << opt.depth
          << ")\n";
    } else {
      out << "failures: " << failures << "/" << total << " tuples (depth " << opt.depth
          << ")\n";
    }
    return failures == 0 ? 0 : 1;
  }
};

// ---- commands -----------------------------------------------------------

int cmdCheck(const Options& opt, const std::vector<std::string>& files, std::ostream& out,
             std::ostream& err) {
  Env env = baseEnv(opt);
  ordered_json report = ordered_json::array();
  for (const std::string& path : files) {
    std::ifstream in(path);
    if (!in) {
      err << path << ": cannot open\n";
      return 2;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      SourceFile f = parse(ss.str());
      env = elaborate(f, std::move(env));
      if (opt.json)
        report.push_back(
            {{"file", path}, {"declarations", f.size()}, {"pass", true}});
      else if (!opt.quiet)
        out << path << ": ok (" << f.size()
            << (f.size() == 1 ? " declaration)" : " declarations)") << "\n";
    } catch (const Error& e) {
      err << path << ": " << e.what() << "\n";
      return 2;
    }
  }
  if (opt.json) out << report.dump(2) << "\n";
  return 0;
}

int cmdDerive(const Options& opt, const Env& env, const std::string& name,
              const std::string& indexExpr, std::ostream& out) {
  const Ornament& o = env.ornament(name);
  DescFun fam = interpOrn(o);
  std::vector<Value> indices;
  if (!indexExpr.empty())
    indices.push_back(evalValue(env, oneForm(indexExpr)));
  else
    indices = enumerate(o.re.fancyIndexSet, opt.depth);
  ordered_json report = ordered_json::array();
  for (const Value& j : indices) {
    Desc d = fam.at(j);
    std::vector<Value> vals = enumerate(SetCode::mu(fam, j), opt.depth);
    if (opt.json) {
      report.push_back({{"ornament", name},
                        {"index", printValueSurface(j)},
                        {"description", showDesc(d)},
                        {"inhabitants", shown(vals)}});
    } else {
      out << name << " at " << printValueSurface(j) << ": " << showDesc(d) << "\n";
      if (!opt.quiet) {
        out << "inhabitants (depth " << opt.depth << "): " << vals.size() << "\n";
        for (const Value& v : vals) out << "  " << printValueSurface(v) << "\n";
      }
    }
  }
  if (opt.json) out << report.dump(2) << "\n";
  return 0;
}

int cmdEnumerate(const Options& opt, const Env& env, const std::string& setExpr,
                 std::ostream& out) {
  SetCode s = evalSet(env, oneForm(setExpr));
  std::vector<Value> vals = enumerate(s, opt.depth);
  if (opt.json) {
    ordered_json report = ordered_json::array();
    report.push_back(
        {{"set", showSet(s)}, {"depth", opt.depth}, {"values", shown(vals)}});
    out << report.dump(2) << "\n";
    return 0;
  }
  out << showSet(s) << ": " << vals.size() << " inhabitants (depth " << opt.depth
      << ")\n";
  if (!opt.quiet)
    for (const Value& v : vals) out << "  " << printValueSurface(v) << "\n";
  return 0;
}

int cmdEval(const Options& opt, const Env& env, const std::string& expr,
            std::ostream& out) {
  Value v = evalValue(env, oneForm(expr));
  if (opt.json) {
    ordered_json report = ordered_json::array();
    report.push_back({{"expr", expr}, {"value", printValueSurface(v)}});
    out << report.dump(2) << "\n";
    return 0;
  }
  out << printValueSurface(v) << "\n";
  return 0;
}

int cmdForget(const Options& opt, const Env& env, const std::string& name,
              const std::string& valueExpr, const std::string& indexExpr,
              std::ostream& out) {
  const Ornament& o = env.ornament(name);
  Value j = indexExpr.empty() ? Value::unit() : evalValue(env, oneForm(indexExpr));
  Value t = evalValue(env, oneForm(valueExpr));
  Value got = ornForget(o, j, t);
  if (opt.json) {
    ordered_json report = ordered_json::array();
    report.push_back({{"ornament", name},
                      {"index", printValueSurface(j)},
                      {"input", printValueSurface(t)},
                      {"output", printValueSurface(got)}});
    out << report.dump(2) << "\n";
    return 0;
  }
  out << printValueSurface(got) << "\n";
  return 0;
}

int cmdReorn(const Options& opt, const Env& env, const std::string& name,
             std::ostream& out) {
  const Ornament& o = env.ornament(name);
  Ornament r = reornament(o);
  DescFun fam = interpOrn(r);
  if (opt.json) {
    ordered_json report = ordered_json::array();
    for (const Value& jt : enumerate(r.re.fancyIndexSet, opt.depth))
      report.push_back({{"ornament", r.name},
                        {"index", printValueSurface(jt)},
                        {"description", showDesc(fam.at(jt))}});
    out << report.dump(2) << "\n";
    return 0;
  }
  out << r.name << ": indexed by " << showSet(r.re.fancyIndexSet) << "\n";
  if (!opt.quiet)
    for (const Value& jt : enumerate(r.re.fancyIndexSet, opt.depth))
      out << "at " << printValueSurface(jt) << ": " << showDesc(fam.at(jt)) << "\n";
  return 0;
}

int cmdLift(const Options& opt, const Env& env, const std::string& name,
            std::ostream& out) {
  const ScriptEntry& se = env.script(name);
  if (opt.json) {
    ordered_json holes = ordered_json::array();
    for (const Hole& h : se.unfilled.holes)
      holes.push_back({{"path", h.path}, {"set", h.shown}, {"trivial", h.trivial}});
    ordered_json report = ordered_json::array();
    report.push_back({{"script", name},
                      {"outstanding", se.unfilled.outstanding()},
                      {"holes", holes}});
    out << report.dump(2) << "\n";
    return 0;
  }
  if (se.unfilled.holes.empty())
    out << "no holes\n";
  else
    out << se.unfilled.render();
  return 0;
}

// Forget every result slot of a lifting back to base values.
std::vector<Value> forgetResults(const FunOrn& fo, const std::vector<Value>& rs) {
  std::vector<Value> out;
  for (size_t k = 0; k < rs.size(); ++k) {
    const OrnSlot& slot = fo.results.at(k);
    out.push_back(slot.ornamented ? ornForget(slot.orn, slot.fancyIndex, rs[k]) : rs[k]);
  }
  return out;
}

int sweepCoherence(const Options& opt, const std::string& label, const BaseFn& base,
                   const FunOrn& fo, const LiftedFn& lifted, std::ostream& out) {
  std::vector<std::vector<Value>> spaces;
  for (size_t s = 0; s < base.type.args.size(); ++s)
    spaces.push_back(enumerate(fancyArgSet(base.type, fo, s), opt.depth));
  Sweep sweep{opt, out, label};
  forEachTuple(spaces, [&](const std::vector<Value>& tuple) {
    Outcome o;
    o.inputs = shown(tuple);
    o.pass = true;
    try {
      coherenceWitness(base, fo, lifted, tuple);
    } catch (const Error& e) {
      o.pass = false;
      o.detail = e.what();
    }
    std::vector<Value> baseArgs;
    for (size_t s = 0; s < tuple.size(); ++s)
      baseArgs.push_back(forgetArg(base.type, fo, s, tuple[s]));
    o.expected = shown(base.run(baseArgs));
    try {
      o.actual = shown(forgetResults(fo, lifted.run(tuple)));
    } catch (const Error& e) {
      o.actual = {"<error>"};
      if (o.detail.empty()) o.detail = e.what();
    }
    sweep.record(std::move(o));
  });
  return sweep.finish();
}

int cmdVerify(const Options& opt, const Env& env, const std::vector<std::string>& targets,
              std::ostream& out) {
  if (targets.empty()) throw Usage("verify needs a kind and targets");
  const std::string& kind = targets[0];
  std::string label = kind;
  for (size_t k = 1; k < targets.size(); ++k) label += " " + targets[k];

  if (kind == "coherence" || kind == "patch") {
    if (targets.size() != 4)
      throw Usage("verify " + kind + " needs FUNORN BASEFN " +
                  (kind == "patch" ? "SCRIPT" : "LIFTEDFN"));
    const FunOrn& fo = env.funorn(targets[1]);
    const BaseFn& base = env.fn(targets[2]);
    if (kind == "coherence")
      return sweepCoherence(opt, label, base, fo, env.liftedFn(targets[3]), out);
    const ScriptEntry& se = env.script(targets[3]);
    if (!se.fn) throw ElaborationError("script " + targets[3] + " has outstanding holes");
    LiftedFn lifted = patch(base, fo, *se.fn);
    return sweepCoherence(opt, label, base, fo, lifted, out);
  }

  if (kind == "roundtrip") {
    if (targets.size() != 2) throw Usage("verify roundtrip needs an ornament name");
    const Ornament& o = env.ornament(targets[1]);
    Ornament r = reornament(o);
    DescFun rf = interpOrn(r);
    Sweep sweep{opt, out, label};
    // Refined value -> decoration -> refined value.
    for (const Value& j : enumerate(o.re.fancyIndexSet, opt.depth))
      for (const Value& t : enumerate(fancySet(o, j), opt.depth)) {
        Outcome oc;
        oc.inputs = shown({j, t});
        oc.expected = shown({t});
        oc.pass = false;
        try {
          Value jt = Value::pair(j, ornForget(o, j, t));
          Value w = rememberReorn(o, j, t);
          Value back = forgetReorn(o, jt, w);
          oc.actual = shown({back});
          oc.pass = checkValue(SetCode::mu(rf, jt), w) && sameValue(back, t);
        } catch (const Error& e) {
          oc.actual = {"<error>"};
          oc.detail = e.what();
        }
        sweep.record(std::move(oc));
      }
    // Decoration -> refined value -> decoration.
    for (const Value& jt : enumerate(r.re.fancyIndexSet, opt.depth))
      for (const Value& w : enumerate(SetCode::mu(rf, jt), opt.depth)) {
        Outcome oc;
        oc.inputs = shown({jt, w});
        oc.expected = shown({w});
        oc.pass = false;
        try {
          Value t = forgetReorn(o, jt, w);
          Value w2 = rememberReorn(o, jt.first(), t);
          oc.actual = shown({w2});
          oc.pass = sameValue(w2, w);
        } catch (const Error& e) {
          oc.actual = {"<error>"};
          oc.detail = e.what();
        }
        sweep.record(std::move(oc));
      }
    return sweep.finish();
  }

  if (kind == "recomputation") {
    if (targets.size() != 2) throw Usage("verify recomputation needs an ornament name");
    const Ornament& o = env.ornament(targets[1]);
    DescFun refined = interpOrn(o);
    Algebra alg = forgetAlgebra(o);
    Ornament r = reornament(o);
    DescFun rf = interpOrn(r);
    Sweep sweep{opt, out, label};
    for (const Value& jt : enumerate(r.re.fancyIndexSet, opt.depth))
      for (const Value& w : enumerate(SetCode::mu(rf, jt), opt.depth)) {
        Outcome oc;
        oc.inputs = shown({jt, w});
        oc.expected = shown({jt.second()});
        oc.pass = false;
        try {
          Value t = forgetReorn(o, jt, w);
          Value decorated = remember(refined, alg, jt.first(), t);
          Value back = assertRecomputation(refined, alg, jt, decorated);
          oc.actual = shown({ornForget(o, jt.first(), back)});
          oc.pass = sameValue(back, t);
        } catch (const Error& e) {
          oc.actual = {"<error>"};
          oc.detail = e.what();
        }
        sweep.record(std::move(oc));
      }
    return sweep.finish();
  }

  throw Usage("unknown verify kind '" + kind +
              "' (expected coherence, patch, roundtrip or recomputation)");
}

}  // namespace

int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"ornamentation engine: derive, evaluate, lift and verify"};
  app.name("ornate");
  app.require_subcommand(1);
  app.add_option("--depth", opt.depth, "enumeration bound")->capture_default_str();
  app.add_option("--param", opt.params, "instantiate a set parameter, NAME=tags:a,b");
  app.add_flag("--quiet", opt.quiet, "suppress value listings");
  app.add_flag("--json", opt.json, "machine-readable report");

  std::vector<std::string> files, targets;
  std::string name, expr, indexExpr, valueExpr;

  CLI::App* check = app.add_subcommand("check", "parse and elaborate files");
  check->add_option("files", files, "input files")->required()->expected(-1);

  CLI::App* derive = app.add_subcommand("derive", "print a derived datatype");
  derive->add_option("ornament", name, "ornament name")->required();
  derive->add_option("--index", indexExpr, "refined index expression");

  CLI::App* enumerateCmd = app.add_subcommand("enumerate", "list a set's inhabitants");
  enumerateCmd->add_option("set", expr, "set expression")->required();

  CLI::App* eval = app.add_subcommand("eval", "evaluate a value expression");
  eval->add_option("expr", expr, "value expression")->required();

  CLI::App* forget = app.add_subcommand("forget", "strip an ornament from a value");
  forget->add_option("ornament", name, "ornament name")->required();
  forget->add_option("value", valueExpr, "refined value expression")->required();
  forget->add_option("--index", indexExpr, "refined index expression");

  CLI::App* reorn = app.add_subcommand("reorn", "print an ornament's reornament");
  reorn->add_option("ornament", name, "ornament name")->required();

  CLI::App* lift = app.add_subcommand("lift", "print a lifting script's holes");
  lift->add_option("script", name, "script name")->required();

  CLI::App* verify = app.add_subcommand("verify", "sweep a property to a depth");
  verify->add_option("targets", targets, "kind and target names")->required()->expected(-1);

  for (CLI::App* sub : {check, derive, enumerateCmd, eval, forget, reorn, lift, verify})
    sub->fallthrough();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(std::move(rev));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 3;
  }

  try {
    if (check->parsed()) return cmdCheck(opt, files, out, err);
    Env env = baseEnv(opt);
    if (derive->parsed()) return cmdDerive(opt, env, name, indexExpr, out);
    if (enumerateCmd->parsed()) return cmdEnumerate(opt, env, expr, out);
    if (eval->parsed()) return cmdEval(opt, env, expr, out);
    if (forget->parsed()) return cmdForget(opt, env, name, valueExpr, indexExpr, out);
    if (reorn->parsed()) return cmdReorn(opt, env, name, out);
    if (lift->parsed()) return cmdLift(opt, env, name, out);
    if (verify->parsed()) return cmdVerify(opt, env, targets, out);
    err << "error: no command\n";
    return 3;
  } catch (const Usage& e) {
    err << "usage error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace orn

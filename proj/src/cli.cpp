#include "lca/cli.hpp"

#include "lca/catalog.hpp"
#include "lca/dsl.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <thread>

namespace lca::cli {

namespace {

using json = nlohmann::ordered_json;

// Configuration problems that should end with exit status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::pair<std::string, std::string> split_assignment(const std::string& text) {
  auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw UsageError("expected name=value, got '" + text + "'");
  return {text.substr(0, eq), text.substr(eq + 1)};
}

Scalar parse_value(const std::string& name, const std::string& text) {
  try {
    return Scalar::parse(text);
  } catch (const std::exception&) {
    throw UsageError("value of " + name + " must be a rational p/q, got '" + text + "'");
  }
}

std::string poly_text(const Poly& p) { return dsl::render_poly(p); }

json cocycle_json(const std::vector<std::string>& comps, const Cocycle& c) {
  json j = json::object();
  for (std::size_t i = 0; i < comps.size(); ++i) j[comps[i]] = poly_text(c[i]);
  return j;
}

json cocycles_json(const std::vector<std::string>& comps, const std::vector<Cocycle>& cs) {
  json j = json::array();
  for (const auto& c : cs) j.push_back(cocycle_json(comps, c));
  return j;
}

std::string cocycle_plain(const std::vector<std::string>& comps, const Cocycle& c) {
  std::string s;
  for (std::size_t i = 0; i < comps.size(); ++i) s += (i ? ", " : "") + comps[i] + " = " + poly_text(c[i]);
  return s;
}

json binding_json(const Binding& b) {
  json j = json::object();
  for (const auto& [k, v] : b) j[k] = v.str();
  return j;
}

std::string binding_plain(const Binding& b) {
  std::string s;
  for (const auto& [k, v] : b) s += (s.empty() ? "" : " ") + k + "=" + v.str();
  return s;
}

json residuals_json(const AxiomReport& r) {
  json j = json::array();
  for (const auto& [tag, p] : r.residuals) j.push_back(json{{"tag", tag}, {"residual", poly_text(p)}});
  return j;
}

json header(const std::string& schema) { return json{{"schema", schema}, {"schema_version", kSchemaVersion}}; }

// Options shared by every command.
struct Common {
  std::string builtin, file, format = "plain";
  std::vector<std::string> params;

  void add(CLI::App* app, bool allow_file = true) {
    auto* b = app->add_option("--builtin", builtin, "built-in family: vir, w, tsv, tsvc");
    if (allow_file) app->add_option("--file", file, "DSL source file")->excludes(b);
    app->add_option("--param", params, "parameter binding name=value (value p/q, or sym to keep symbolic)");
    app->add_option("--format", format, "output format")->check(CLI::IsMember({"plain", "json"}));
  }
  bool as_json() const { return format == "json"; }

  Binding bindings() const {
    Binding b;
    for (const auto& p : params) {
      auto [k, v] = split_assignment(p);
      if (v == "sym") continue;
      b[k] = parse_value(k, v);
    }
    return b;
  }
};

Family family_of(const std::string& name) {
  try {
    return parse_family(name);
  } catch (const std::invalid_argument&) {
    throw UsageError("unknown built-in family '" + name + "' (expected vir, w, tsv or tsvc)");
  }
}

ExtShape shape_of(const std::string& name) {
  try {
    return parse_shape(name);
  } catch (const std::invalid_argument&) {
    throw UsageError("unknown shape '" + name + "' (expected trivial-by-module, module-by-trivial or module-by-module)");
  }
}

// Module parameters given as dedicated flags.
struct ModuleFlags {
  std::map<std::string, std::string> values;
  void add(CLI::App* app) {
    for (const char* n : {"alpha", "beta", "gamma", "alphabar", "betabar", "gammabar", "eta"})
      app->add_option(std::string("--") + n, values[n], std::string("value of ") + n);
  }
  // Set flags only; empty strings mean the flag was not given.
  std::vector<std::pair<std::string, std::string>> given() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [k, v] : values)
      if (!v.empty()) out.emplace_back(k, v);
    return out;
  }
};

// ---- check ------------------------------------------------------------------

struct CheckLine {
  std::string subject, axiom;
  AxiomReport report;
};

int cmd_check(const Common& c, const ModuleFlags& mf, std::ostream& out) {
  std::vector<CheckLine> lines;
  Binding bind = c.bindings();
  for (const auto& [k, v] : mf.given())
    if (v != "sym") bind[k] = parse_value(k, v);

  if (!c.builtin.empty()) {
    Family f = family_of(c.builtin);
    Binding fam;
    for (const auto& p : family_params(f))
      if (bind.count(p)) fam[p] = bind.at(p);
    FamilyBuild fb = build(f, fam);
    const auto& alg = fb.algebra;
    lines.push_back({alg.name(), "skew-symmetry", check_skew(alg)});
    lines.push_back({alg.name(), "jacobi", check_jacobi(alg)});
    auto val = [&](const std::string& n) { return bind.count(n) ? Poly(bind.at(n)) : Poly::param(n); };
    Poly gamma = fb.gamma_allowed() ? val("gamma") : Poly();
    ConformalModule m = fb.free_module(val("alpha"), val("beta"), gamma, "M");
    ConformalModule t = fb.trivial_module(val("eta"), "C");
    lines.push_back({m.name(), "module", check_module(alg, m)});
    lines.push_back({t.name(), "module", check_module(alg, t)});
  } else if (!c.file.empty()) {
    dsl::SourceDoc doc = dsl::parse(read_file(c.file));
    if (doc.algebras.empty()) throw UsageError(c.file + " declares no algebra");
    for (const auto& decl : doc.algebras) {
      ConformalAlgebra alg = dsl::to_algebra(decl).eval(bind);
      lines.push_back({alg.name(), "skew-symmetry", check_skew(alg)});
      lines.push_back({alg.name(), "jacobi", check_jacobi(alg)});
      for (const auto& md : doc.modules) {
        if (md.over != decl.name) continue;
        ConformalModule m = dsl::to_module(md, dsl::to_algebra(decl)).eval(bind);
        lines.push_back({m.name(), "module", check_module(alg, m)});
      }
    }
  } else {
    throw UsageError("check needs --builtin or --file");
  }

  bool ok = std::all_of(lines.begin(), lines.end(), [](const CheckLine& l) { return l.report.ok; });
  if (c.as_json()) {
    json j = header("lca.check");
    j["params"] = binding_json(bind);
    j["checks"] = json::array();
    for (const auto& l : lines)
      j["checks"].push_back(
          json{{"subject", l.subject}, {"axiom", l.axiom}, {"ok", l.report.ok}, {"residuals", residuals_json(l.report)}});
    j["ok"] = ok;
    out << j.dump(2) << "\n";
  } else {
    for (const auto& l : lines) {
      out << (l.report.ok ? "pass " : "FAIL ") << l.subject << " " << l.axiom << "\n";
      for (const auto& [tag, p] : l.report.residuals) out << "    " << tag << ": " << poly_text(p) << "\n";
    }
    out << (ok ? "all axioms hold" : "axiom check failed") << "\n";
  }
  return ok ? kOk : kFailure;
}

// ---- solve-ext ----------------------------------------------------------------

struct BoundFlags {
  unsigned bound = 0, bound_f = 0, bound_p = 0;
  void add(CLI::App* app) {
    app->add_option("--bound", bound, "degree bound for every component");
    app->add_option("--bound-f", bound_f, "degree bound for the algebra components");
    app->add_option("--bound-p", bound_p, "degree bound for the p component");
  }
  Bounds resolve(std::optional<Bounds> base = std::nullopt) const {
    Bounds b = base.value_or(Bounds{});
    if (bound) b.f = b.p = bound;
    if (bound_f) b.f = bound_f;
    if (bound_p) b.p = bound_p;
    return b;
  }
};

json ext_json(const ExtResult& r) {
  json j = json::object();
  j["components"] = r.components;
  j["bounds"] = json{{"f", r.bounds.f}, {"p", r.bounds.p}};
  j["ext_dim"] = r.ext_dim;
  j["ext_dim_next"] = r.ext_dim_next;
  j["stabilized"] = r.stabilized;
  j["unknowns"] = r.unknowns;
  j["rows"] = r.rows;
  j["cocycle_basis"] = cocycles_json(r.components, r.cocycle_basis);
  j["coboundary_basis"] = cocycles_json(r.components, r.coboundary_basis);
  j["representatives"] = cocycles_json(r.components, r.representatives);
  j["warnings"] = r.warnings;
  return j;
}

int cmd_solve_ext(const Common& c, const ModuleFlags& mf, const std::string& shape_text,
                  const std::string& problem_name, const BoundFlags& bf, std::ostream& out) {
  Binding bind = c.bindings();
  for (const auto& [k, v] : mf.given()) bind[k] = parse_value(k, v);
  ExtProblem prob;
  Bounds bounds;
  std::string family;
  if (!c.builtin.empty()) {
    if (shape_text.empty()) throw UsageError("solve-ext needs --shape");
    Family f = family_of(c.builtin);
    ExtShape s = shape_of(shape_text);
    family = family_name(f);
    bind = complete_binding(f, s, bind);
    prob = standard_problem(f, s, bind);
    bounds = bf.resolve();
  } else if (!c.file.empty()) {
    dsl::SourceDoc doc = dsl::parse(read_file(c.file));
    const dsl::ProblemDecl* decl = nullptr;
    for (const auto& p : doc.problems)
      if (problem_name.empty() ? doc.problems.size() == 1 : p.name == problem_name) decl = &p;
    if (!decl)
      throw UsageError(problem_name.empty() ? "the file must declare exactly one problem, or pass --problem"
                                            : "no problem named " + problem_name);
    Binding declared;
    prob = dsl::to_problem(doc, *decl, &declared);
    for (const auto& [k, v] : declared) bind.emplace(k, v);
    bounds = bf.resolve(decl->bounds);
  } else {
    throw UsageError("solve-ext needs --builtin or --file");
  }

  ExtResult r = ext_dim(prob, bind, bounds);
  if (c.as_json()) {
    json j = header("lca.solve-ext");
    j["algebra"] = prob.algebra.name();
    j["family"] = family.empty() ? json(nullptr) : json(family);
    j["shape"] = shape_name(prob.shape);
    j["params"] = binding_json(bind);
    j.update(ext_json(r));
    out << j.dump(2) << "\n";
  } else {
    out << "algebra " << prob.algebra.name() << ", shape " << shape_name(prob.shape) << "\n";
    out << "params " << binding_plain(bind) << "\n";
    out << "bounds f=" << r.bounds.f << " p=" << r.bounds.p << ", " << r.unknowns << " unknowns, " << r.rows
        << " rows\n";
    out << "ext_dim " << r.ext_dim << " (" << (r.stabilized ? "stabilized" : "not stabilized") << ", "
        << r.ext_dim_next << " at bound +2)\n";
    for (std::size_t i = 0; i < r.representatives.size(); ++i)
      out << "representative " << i + 1 << ": " << cocycle_plain(r.components, r.representatives[i]) << "\n";
    for (const auto& w : r.warnings) out << "warning: " << w << "\n";
  }
  return kOk;
}

// ---- verify-catalog ------------------------------------------------------------

int cmd_verify_catalog(const Common& c, const std::vector<std::string>& only, std::ostream& out) {
  Catalog loaded;
  const Catalog* cat = &Catalog::builtin();
  if (!c.file.empty()) {
    loaded = Catalog::load(read_file(c.file));
    cat = &loaded;
  }
  std::vector<const CatalogEntry*> entries;
  if (only.empty()) {
    for (const auto& e : cat->entries()) entries.push_back(&e);
  } else {
    for (const auto& id : only) {
      const auto* e = cat->find(id);
      if (!e) throw UsageError("no catalog entry " + id);
      entries.push_back(e);
    }
  }

  std::vector<AxiomReport> reports(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) reports[i] = verify_entry(*entries[i]);
  std::size_t failed = std::count_if(reports.begin(), reports.end(), [](const AxiomReport& r) { return !r.ok; });

  if (c.as_json()) {
    json j = header("lca.verify-catalog");
    j["entries"] = json::array();
    json sus = json::array();
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const auto& e = *entries[i];
      json row{{"id", e.id},
               {"family", family_name(e.family)},
               {"shape", shape_name(e.shape)},
               {"source", e.source},
               {"ok", reports[i].ok},
               {"suspicious", e.suspicious ? json(*e.suspicious) : json(nullptr)},
               {"notes", e.notes},
               {"residuals", residuals_json(reports[i])}};
      j["entries"].push_back(std::move(row));
      if (e.suspicious) sus.push_back(e.id);
    }
    j["count"] = entries.size();
    j["passed"] = entries.size() - failed;
    j["failed"] = failed;
    j["suspicious"] = sus;
    out << j.dump(2) << "\n";
  } else {
    std::vector<const CatalogEntry*> sus;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const auto& e = *entries[i];
      out << (reports[i].ok ? "pass " : "FAIL ") << e.id << "\n";
      for (const auto& [tag, p] : reports[i].residuals) out << "    " << tag << ": " << poly_text(p) << "\n";
      if (e.suspicious) sus.push_back(&e);
    }
    for (const auto* e : sus) out << "suspicious " << e->id << ": " << *e->suspicious << "\n";
    out << entries.size() << " entries, " << entries.size() - failed << " pass, " << failed << " fail, "
        << sus.size() << " suspicious\n";
  }
  return failed ? kFailure : kOk;
}

// ---- sweep ---------------------------------------------------------------------

// Values of one grid axis: "v", "v1,v2,..." or an integer range "lo..hi".
std::vector<Scalar> axis_values(const std::string& name, const std::string& text) {
  std::vector<Scalar> out;
  auto dots = text.find("..");
  if (dots != std::string::npos) {
    long lo, hi;
    try {
      std::size_t p1, p2;
      lo = std::stol(text.substr(0, dots), &p1);
      hi = std::stol(text.substr(dots + 2), &p2);
      if (p1 != dots || p2 != text.size() - dots - 2) throw std::invalid_argument("range");
    } catch (const std::exception&) {
      throw UsageError("range for " + name + " must be lo..hi with integers, got '" + text + "'");
    }
    if (hi < lo) throw UsageError("empty range for " + name);
    if (hi - lo > 100000) throw UsageError("range for " + name + " is too large");
    for (long v = lo; v <= hi; ++v) out.emplace_back(v);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_value(name, item));
  if (out.empty()) throw UsageError("no values for " + name);
  return out;
}

struct SweepRow {
  Binding bind;
  Comparison cmp;
  std::string error;
};

json sweep_row_json(std::size_t index, const SweepRow& r) {
  json j = header("lca.sweep");
  j["index"] = index;
  j["params"] = binding_json(r.bind);
  j["entries"] = r.cmp.entries;
  j["suspicious"] = r.cmp.suspicious;
  j["predicted"] = r.cmp.predicted;
  j["computed"] = r.cmp.computed;
  j["stabilized"] = r.cmp.stabilized;
  j["gens_are_cocycles"] = r.cmp.gens_are_cocycles;
  j["covered"] = r.cmp.covered;
  j["match"] = r.cmp.match;
  j["representatives"] = cocycles_json(r.cmp.result.components, r.cmp.result.representatives);
  j["warnings"] = r.cmp.warnings;
  return j;
}

struct SweepConfig {
  std::vector<std::string> lets;
  std::string shape;
  bool report_only = false;
  unsigned threads = 0;
  std::size_t random = 0;
  unsigned seed = 1;
};

int cmd_sweep(const Common& c, const ModuleFlags& mf, const SweepConfig& sc, const BoundFlags& bf,
              std::ostream& out) {
  if (c.builtin.empty()) throw UsageError("sweep needs --builtin");
  if (sc.shape.empty()) throw UsageError("sweep needs --shape");
  Family f = family_of(c.builtin);
  ExtShape s = shape_of(sc.shape);
  Bounds bounds = bf.resolve();

  // Grid axes in the order given; a later flag for the same name replaces the earlier one.
  std::vector<std::pair<std::string, std::vector<Scalar>>> axes;
  auto add_axis = [&](const std::string& k, const std::string& v) {
    auto vals = axis_values(k, v);
    for (auto& a : axes)
      if (a.first == k) {
        a.second = std::move(vals);
        return;
      }
    axes.emplace_back(k, std::move(vals));
  };
  for (const auto& p : c.params) {
    auto [k, v] = split_assignment(p);
    add_axis(k, v);
  }
  for (const auto& [k, v] : mf.given()) add_axis(k, v);
  std::vector<std::pair<std::string, Poly>> lets;
  for (const auto& l : sc.lets) {
    auto [k, v] = split_assignment(l);
    try {
      lets.emplace_back(k, dsl::parse_poly(v));
    } catch (const dsl::ParseError& e) {
      throw UsageError("--let " + k + ": " + e.what());
    }
  }

  std::size_t total = 1;
  for (const auto& a : axes) {
    if (total > 1000000 / a.second.size()) throw UsageError("grid has more than 10^6 points");
    total *= a.second.size();
  }
  std::vector<std::size_t> picks;
  if (sc.random) {
    std::mt19937_64 rng(sc.seed);
    std::uniform_int_distribution<std::size_t> u(0, total - 1);
    for (std::size_t i = 0; i < sc.random; ++i) picks.push_back(u(rng));
    std::sort(picks.begin(), picks.end());
  } else {
    for (std::size_t i = 0; i < total; ++i) picks.push_back(i);
  }

  // Point k of the grid, last axis fastest, so output order is lexicographic
  // in the grid coordinates.
  auto point = [&](std::size_t k) {
    Binding b;
    for (std::size_t a = axes.size(); a-- > 0;) {
      const auto& vals = axes[a].second;
      b[axes[a].first] = vals[k % vals.size()];
      k /= vals.size();
    }
    for (const auto& [name, poly] : lets) {
      Poly v = poly_eval_params(poly, b);
      if (!v.is_constant()) throw UsageError("--let " + name + " refers to an unbound parameter");
      b[name] = v.constant_term();
    }
    return complete_binding(f, s, b);
  };
  std::vector<SweepRow> rows(picks.size());
  for (std::size_t i = 0; i < picks.size(); ++i) rows[i].bind = point(picks[i]);

  const Catalog& cat = Catalog::builtin();
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < rows.size();) {
      try {
        rows[i].cmp = compare(cat, f, s, rows[i].bind, bounds);
      } catch (const std::exception& e) {
        rows[i].error = e.what();
      }
    }
  };
  unsigned n = std::max(1u, std::min<unsigned>(sc.threads ? sc.threads : default_threads(),
                                               static_cast<unsigned>(rows.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (const auto& r : rows)
    if (!r.error.empty()) throw UsageError("at " + binding_plain(r.bind) + ": " + r.error);

  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (!r.cmp.match) ++mismatches;
    if (c.as_json()) {
      out << sweep_row_json(picks[i], r).dump() << "\n";
    } else {
      out << binding_plain(r.bind) << "  predicted " << r.cmp.predicted << "  computed " << r.cmp.computed << "  "
          << (r.cmp.match ? "match" : "MISMATCH");
      if (!r.cmp.stabilized) out << "  (not stabilized)";
      if (!r.cmp.suspicious.empty()) out << "  (suspicious entry)";
      out << "\n";
    }
  }
  if (c.as_json()) {
    json j = header("lca.sweep.summary");
    j["family"] = family_name(f);
    j["shape"] = shape_name(s);
    j["points"] = rows.size();
    j["mismatches"] = mismatches;
    out << j.dump() << "\n";
  } else {
    out << rows.size() << " points, " << mismatches << " mismatches\n";
  }
  return mismatches && !sc.report_only ? kFailure : kOk;
}

}  // namespace

unsigned default_threads() {
  if (const char* env = std::getenv("LCA_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extensions of rank-one modules over Lie conformal algebras"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "lca schema " + std::to_string(kSchemaVersion));

  Common check_c, solve_c, verify_c, sweep_c;
  ModuleFlags check_m, solve_m, sweep_m;
  BoundFlags solve_b, sweep_b;
  std::string solve_shape, problem;
  std::vector<std::string> only;
  SweepConfig sc;

  auto* check = app.add_subcommand("check", "check skew-symmetry, Jacobi and module axioms");
  check_c.add(check);
  check_m.add(check);

  auto* solve = app.add_subcommand("solve-ext", "compute Ext for one extension problem");
  solve_c.add(solve);
  solve_m.add(solve);
  solve_b.add(solve);
  solve->add_option("--shape", solve_shape, "trivial-by-module, module-by-trivial or module-by-module");
  solve->add_option("--problem", problem, "problem name in --file");

  auto* verify = app.add_subcommand("verify-catalog", "verify every catalog row symbolically");
  verify->add_option("--only", only, "entry id to verify (repeatable)");
  verify->add_option("--file", verify_c.file, "catalog file instead of the built-in one");
  verify->add_option("--format", verify_c.format, "output format")->check(CLI::IsMember({"plain", "json"}));

  auto* sweep = app.add_subcommand("sweep", "compare catalog predictions with computed Ext over a grid");
  sweep_c.add(sweep, false);
  sweep_m.add(sweep);
  sweep_b.add(sweep);
  sweep->add_option("--shape", sc.shape, "extension shape");
  sweep->add_option("--let", sc.lets, "derived parameter name=polynomial in other parameters (repeatable)");
  sweep->add_flag("--report-only", sc.report_only, "exit 0 even when points mismatch");
  sweep->add_option("--threads", sc.threads, "worker threads (default LCA_THREADS or all cores)");
  sweep->add_option("--random", sc.random, "sample this many grid points instead of the full grid");
  sweep->add_option("--seed", sc.seed, "seed for --random");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();  // program name
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (check->parsed()) return cmd_check(check_c, check_m, out);
    if (solve->parsed()) return cmd_solve_ext(solve_c, solve_m, solve_shape, problem, solve_b, out);
    if (verify->parsed()) return cmd_verify_catalog(verify_c, only, out);
    if (sweep->parsed()) return cmd_sweep(sweep_c, sweep_m, sc, sweep_b, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const dsl::ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const UnboundParameter& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace lca::cli

// Acceptance suite: one pass/fail line per criterion. Exit status 0 only when
// every criterion passes.

#include "lca/catalog.hpp"
#include "lca/data.hpp"
#include "lca/dsl.hpp"
#include "common/catalog_points.hpp"
#include "common/point_oracle.hpp"
#include "common/random_doc.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace lca;

namespace {

// Pinned limits and sample sizes.
constexpr double kAxiomSeconds = 1.0;
constexpr double kCatalogSeconds = 30.0;
constexpr double kScanSeconds = 120.0;
constexpr int kDimOneBetas = 20;
constexpr int kDimOneAlgebras = 5;
constexpr int kShapeOnePoints = 50;
constexpr int kScanAlgebras = 25;
constexpr unsigned kScanMaxDegree = 10;
constexpr int kScanGrid = 50;
constexpr int kNegativePoints = 200;
constexpr int kOracleInstances = 30;
constexpr int kOraclePoints = 40;
constexpr int kRoundTripDocs = 500;
constexpr Bounds kBounds{8, 8};

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Scalar random_rational(std::mt19937_64& rng, long range = 9, long max_den = 5) {
  std::uniform_int_distribution<long> num(-range, range), den(1, max_den);
  return Scalar(num(rng), den(rng));
}

Scalar nonzero_rational(std::mt19937_64& rng, long range = 9, long max_den = 5) {
  for (;;) {
    Scalar s = random_rational(rng, range, max_den);
    if (!s.is_zero()) return s;
  }
}

std::string show(const Binding& b) {
  std::string s;
  for (const auto& [k, v] : b) s += (s.empty() ? "" : " ") + k + "=" + v.str();
  return s;
}

std::size_t component(const ExtResult& r, const std::string& name) {
  for (std::size_t i = 0; i < r.components.size(); ++i)
    if (r.components[i] == name) return i;
  throw std::logic_error("no component " + name);
}

// 1 ----------------------------------------------------------------------------
Outcome axiom_suite() {
  auto t0 = Clock::now();
  Outcome o;
  int checks = 0;
  auto record = [&](const std::string& what, const AxiomReport& r) {
    ++checks;
    if (!r.ok) {
      o.pass = false;
      o.detail += what + " has residual " + r.residuals.front().second.str() + "; ";
    }
  };
  Poly alpha = Poly::param("alpha"), beta = Poly::param("beta"), gamma = Poly::param("gamma"),
       eta = Poly::param("eta");
  for (Family f : {Family::Vir, Family::W, Family::TSV, Family::TSVc}) {
    FamilyBuild fb = build(f, {});
    const auto& alg = fb.algebra;
    record(alg.name() + " skew-symmetry", check_skew(alg));
    record(alg.name() + " Jacobi", check_jacobi(alg));
    record(alg.name() + " M(alpha,beta)", check_module(alg, fb.free_module(alpha, beta)));
    record(alg.name() + " C(eta)", check_module(alg, fb.trivial_module(eta)));
    if (f == Family::W || f == Family::TSV) {
      FamilyBuild one = build(f, {{"a", Scalar(1)}, {"b", Scalar(0)}});
      record(alg.name() + "(1,0) skew-symmetry", check_skew(one.algebra));
      record(alg.name() + "(1,0) Jacobi", check_jacobi(one.algebra));
      record(alg.name() + "(1,0) M(alpha,beta,gamma)", check_module(one.algebra, one.free_module(alpha, beta, gamma)));
    }
  }
  double s = seconds_since(t0);
  if (s >= kAxiomSeconds) o.pass = false;
  std::ostringstream d;
  d << checks << " symbolic checks in " << s << " s (limit " << kAxiomSeconds << " s)";
  o.detail = d.str() + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

// 2 ----------------------------------------------------------------------------
Outcome catalog_verification() {
  auto t0 = Clock::now();
  Outcome o;
  std::string failed;
  std::size_t n = 0, bad = 0;
  for (const auto& e : Catalog::builtin().entries()) {
    ++n;
    auto r = verify_entry(e);
    if (!r.ok) {
      ++bad;
      failed += " " + e.id + " (" + r.residuals.front().first + ": " + r.residuals.front().second.str() + ")";
    }
  }
  double s = seconds_since(t0);
  o.pass = bad == 0 && s < kCatalogSeconds;
  std::ostringstream d;
  d << n - bad << "/" << n << " entries verify in " << s << " s (limit " << kCatalogSeconds << " s)";
  if (bad) d << "; failing:" << failed;
  o.detail = d.str();
  return o;
}

// 3 ----------------------------------------------------------------------------
Outcome dim_one(std::mt19937_64& rng) {
  Outcome o;
  int runs = 0;
  for (int i = 0; i < kDimOneAlgebras; ++i) {
    Scalar a, b;
    do {
      a = random_rational(rng), b = random_rational(rng);
    } while (a == Scalar(1) && b.is_zero());
    for (int j = 0; j < kDimOneBetas; ++j) {
      Scalar beta = random_rational(rng);
      Binding bind{{"a", a}, {"b", b}, {"alpha", Scalar(1)}, {"beta", beta}, {"eta", -beta}};
      auto r = ext_dim(standard_problem(Family::W, ExtShape::ModuleByTrivial, complete_binding(Family::W, ExtShape::ModuleByTrivial, bind)), {}, kBounds);
      ++runs;
      if (r.ext_dim != 1 || !r.stabilized) {
        o.pass = false;
        o.detail += " ext_dim " + std::to_string(r.ext_dim) + " at " + show(bind) + ";";
      }
    }
  }
  o.detail = std::to_string(runs) + " instances, bound 8, expected exactly 1 and stabilized" + o.detail;
  return o;
}

// 4 ----------------------------------------------------------------------------
Outcome shape_one(std::mt19937_64& rng) {
  Outcome o;
  const Catalog& cat = Catalog::builtin();
  const std::vector<std::pair<std::string, std::vector<std::string>>> subcases = {
      {"i", {"thm-t33-1-i:t25-i", "thm-t33-1-i:t25-ii"}},
      {"ii", {"thm-t33-1-ii", "thm-t33-1-ii-alpha1", "thm-t33-1-ii-alpha2"}},
      {"iii", {"thm-t33-1-iii"}},
      {"iv", {"thm-t33-1-iv"}},
  };
  std::ostringstream d;
  for (const auto& [tag, ids] : subcases) {
    int ok = 0;
    for (int k = 0; k < kShapeOnePoints; ++k) {
      const CatalogEntry* e = cat.find(ids[k % ids.size()]);
      auto bind = testing::sample_point(*e, rng, 6, 4);
      if (!bind) {
        o.pass = false;
        d << " no point for " << e->id << ";";
        continue;
      }
      auto c = compare(cat, Family::W, ExtShape::TrivialByModule, *bind, kBounds);
      if (c.match && c.stabilized && c.computed == c.predicted && c.covered) {
        ++ok;
      } else {
        o.pass = false;
        d << " " << e->id << " at " << show(*bind) << ": predicted " << c.predicted << ", computed " << c.computed
          << (c.covered ? "" : ", not covered") << ";";
      }
    }
    d << " (" << tag << ") " << ok << "/" << kShapeOnePoints;
  }
  o.detail = "points agreeing per sub-case:" + d.str();
  return o;
}

// 5 ----------------------------------------------------------------------------
Outcome homogeneous_bound(std::mt19937_64& rng) {
  auto t0 = Clock::now();
  Outcome o;
  std::size_t hits = 0, scanned = 0;
  std::vector<std::size_t> by_degree(kScanMaxDegree + 1, 0);
  for (int i = 0; i < kScanAlgebras; ++i) {
    Scalar a;
    do a = random_rational(rng, 12, 7);
    while (a == Scalar(1));
    FamilyBuild fb = build(Family::W, {{"a", a}, {"b", Scalar(0)}});
    // Half the grid sits on the predicted lines alpha - alphabar = k + 1 - a,
    // plus the degree 2 point (1, a - 2); the rest is random.
    std::vector<std::pair<Scalar, Scalar>> pairs;
    for (unsigned k = 0; k <= kScanMaxDegree; ++k) {
      Scalar ab = random_rational(rng);
      pairs.emplace_back(ab + Scalar(static_cast<long>(k)) + Scalar(1) - a, ab);
    }
    pairs.emplace_back(Scalar(1), a - Scalar(2));
    while (static_cast<int>(pairs.size()) < kScanGrid / 2) {
      Scalar ab = random_rational(rng);
      std::uniform_int_distribution<long> k(0, kScanMaxDegree);
      pairs.emplace_back(ab + Scalar(k(rng)) + Scalar(1) - a, ab);
    }
    while (static_cast<int>(pairs.size()) < kScanGrid) pairs.emplace_back(random_rational(rng), random_rational(rng));
    std::vector<ScanPoint> grid;
    for (std::size_t p = 0; p < pairs.size(); ++p)
      grid.push_back({std::to_string(p), fb.free_module(Poly(pairs[p].first), Poly()),
                      fb.free_module(Poly(pairs[p].second), Poly(), Poly(), "Mbar")});
    for (unsigned m = 0; m <= kScanMaxDegree; ++m) {
      scanned += grid.size();
      for (const auto& h : homogeneous_scan(fb.algebra, ExtShape::ModuleByModule, grid, m, {1})) {
        const auto& [al, ab] = pairs[std::stoul(h.label)];
        ++hits;
        ++by_degree[m];
        if (m > 3 || al - ab != Scalar(static_cast<long>(m)) + Scalar(1) - a) {
          o.pass = false;
          o.detail += " a=" + a.str() + " m=" + std::to_string(m) + " alpha=" + al.str() + " alphabar=" + ab.str() + ";";
        }
      }
    }
  }
  double s = seconds_since(t0);
  if (s >= kScanSeconds) o.pass = false;
  // The property is vacuous without solutions of low degree.
  if (by_degree[0] == 0 || by_degree[1] == 0 || by_degree[2] == 0) {
    o.pass = false;
    o.detail += " no solutions found in degree 0, 1 or 2;";
  }
  std::ostringstream d;
  d << scanned << " scan points, " << hits << " with solutions (m=0: " << by_degree[0] << ", m=1: " << by_degree[1]
    << ", m=2: " << by_degree[2] << ", m=3: " << by_degree[3] << "), all with m <= 3 and alpha - alphabar = m + 1 - a"
    << " in " << s << " s (limit " << kScanSeconds << " s)";
  o.detail = o.pass ? d.str() : d.str() + "; violations:" + o.detail;
  return o;
}

// 6 ----------------------------------------------------------------------------
Outcome negative_control(std::mt19937_64& rng) {
  Outcome o;
  const Catalog& cat = Catalog::builtin();
  std::ostringstream d;
  for (ExtShape s : {ExtShape::TrivialByModule, ExtShape::ModuleByTrivial, ExtShape::ModuleByModule}) {
    int zero = 0, n = 0;
    std::uniform_int_distribution<int> fam(0, 3);
    while (n < kNegativePoints) {
      Family f = std::array{Family::Vir, Family::W, Family::TSV, Family::TSVc}[fam(rng)];
      Binding b;
      for (const auto& p : standard_params(f, s)) b[p] = random_rational(rng);
      if (b.count("alpha") && b["alpha"].is_zero()) continue;
      if (b.count("alphabar") && b["alphabar"].is_zero()) continue;
      // Every nontrivial case has beta + eta, or beta - betabar, in {0, -b}
      // (b = c for TSV(c)); stay off both and off +b as well.
      Scalar shift = b.count("b") ? b["b"] : b.count("c") ? b["c"] : Scalar(0);
      Scalar x = s == ExtShape::ModuleByModule ? b["beta"] - b["betabar"] : b["beta"] + b["eta"];
      if (x.is_zero() || (x + shift).is_zero() || (x - shift).is_zero()) continue;
      Binding full = complete_binding(f, s, b);
      if (!cat.entries_for(f, s, full).empty()) continue;
      ++n;
      auto r = ext_dim(standard_problem(f, s, full), {}, kBounds);
      if (r.ext_dim == 0) {
        ++zero;
      } else {
        o.pass = false;
        d << " " << family_name(f) << " " << shape_name(s) << " at " << show(full) << ": ext_dim " << r.ext_dim << ";";
      }
    }
    d << " " << shape_name(s) << " " << zero << "/" << n;
  }
  o.detail = "ext_dim = 0 at guard-violating points:" + d.str();
  return o;
}

// 7 ----------------------------------------------------------------------------
Outcome h_vanishing(std::mt19937_64& rng) {
  Outcome o;
  const Catalog& cat = Catalog::builtin();
  std::ostringstream d;
  int instances = 0, cocycles = 0;
  auto check_zero_h = [&](Family f, ExtShape s, const Binding& bind) {
    auto r = ext_dim(standard_problem(f, s, bind), {}, kBounds);
    std::size_t h = component(r, "M");
    ++instances;
    for (const auto& c : r.cocycle_basis) {
      ++cocycles;
      if (!c[h].is_zero()) {
        o.pass = false;
        d << " h = " << c[h].str() << " at " << family_name(f) << " " << shape_name(s) << " " << show(bind) << ";";
      }
    }
  };
  // Points where the tables predict extensions, where a nonzero h would show.
  for (const auto& e : cat.entries()) {
    if (e.family != Family::TSV && e.family != Family::TSVc) continue;
    if (e.minpoly) continue;
    for (int k = 0; k < 2; ++k) {
      auto b = testing::sample_point(e, rng, 5, 3);
      if (!b) continue;
      if (e.family == Family::TSV && b->at("a") == Scalar(1) && b->at("b").is_zero()) continue;
      check_zero_h(e.family, e.shape, *b);
    }
  }
  // Random points of every shape.
  for (int k = 0; k < 60; ++k) {
    Family f = k % 2 ? Family::TSV : Family::TSVc;
    ExtShape s = std::array{ExtShape::TrivialByModule, ExtShape::ModuleByTrivial, ExtShape::ModuleByModule}[k % 3];
    Binding b;
    for (const auto& p : standard_params(f, s)) b[p] = nonzero_rational(rng, 4, 2);
    if (f == Family::TSV && b["a"] == Scalar(1) && b["b"].is_zero()) continue;
    if (k % 4 == 0 && s == ExtShape::ModuleByModule) b["betabar"] = b["beta"];
    if (k % 4 == 0 && s != ExtShape::ModuleByModule) b["eta"] = -b["beta"];
    check_zero_h(f, s, complete_binding(f, s, b));
  }
  // TSV(1,0) with gamma = gammabar != 0: the h = k family with g = (k/gamma) d.
  int recovered = 0, tried = 0;
  for (int k = 0; k < 10; ++k) {
    Scalar gamma = nonzero_rational(rng, 6, 3), beta = random_rational(rng);
    Binding b{{"a", Scalar(1)}, {"b", Scalar(0)}, {"alpha", Scalar(1)}, {"alphabar", Scalar(0)}, {"beta", beta},
              {"betabar", beta},  {"gamma", gamma},   {"gammabar", gamma}};
    auto r = ext_dim(standard_problem(Family::TSV, ExtShape::ModuleByModule, b), {}, kBounds);
    ++tried;
    std::size_t h = component(r, "M"), g = component(r, "Y");
    int with_h = 0;
    bool form = false;
    for (const auto& c : r.representatives) {
      if (c[h].is_zero()) continue;
      ++with_h;
      if (c[h].is_constant()) {
        Scalar k0 = c[h].constant_term();
        form = c[g].coefficient(Monomial::of(kPartial)) == k0 * gamma.inverse();
      }
    }
    if (with_h == 1 && form) {
      ++recovered;
    } else {
      o.pass = false;
      d << " h = k family not recovered at " << show(b) << ";";
    }
  }
  std::ostringstream head;
  head << instances << " TSV(a,b) with (a,b) != (1,0) and TSV(c) instances, " << cocycles
       << " cocycles, all with h = 0; TSV(1,0) h = k with g containing (k/gamma) d recovered at " << recovered << "/"
       << tried << " points";
  o.detail = head.str() + d.str();
  return o;
}

// 8 ----------------------------------------------------------------------------
Outcome oracle_cross_check(std::mt19937_64& rng) {
  Outcome o;
  const Catalog& cat = Catalog::builtin();
  std::ostringstream d;
  int agree = 0, n = 0;
  std::size_t total_dim = 0;
  std::uniform_int_distribution<std::size_t> pick(0, cat.entries().size() - 1);
  while (n < kOracleInstances) {
    Family f;
    ExtShape s;
    Binding b;
    if (n % 2 == 0) {
      // On a classified case, so that the dimensions are usually positive.
      const auto& e = cat.entries()[pick(rng)];
      if (e.minpoly) continue;
      auto p = testing::sample_point(e, rng, 5, 3);
      if (!p) continue;
      f = e.family, s = e.shape, b = *p;
    } else {
      f = std::array{Family::Vir, Family::W, Family::TSV, Family::TSVc}[n % 4];
      s = std::array{ExtShape::TrivialByModule, ExtShape::ModuleByTrivial, ExtShape::ModuleByModule}[n % 3];
      for (const auto& p : standard_params(f, s)) b[p] = random_rational(rng, 6, 4);
      b = complete_binding(f, s, b);
    }
    ExtProblem prob = standard_problem(f, s, b);
    Bounds bounds{5, 5};
    Ansatz ansatz = Ansatz::standard(prob.algebra, s, bounds);
    std::size_t symbolic = solve_cocycles(build_cocycle_system(prob, ansatz), ansatz).size();
    std::size_t points = oracle::solution_dim(prob, ansatz, kOraclePoints, rng);
    ++n;
    total_dim += symbolic;
    if (symbolic == points) {
      ++agree;
    } else {
      o.pass = false;
      d << " " << family_name(f) << " " << shape_name(s) << " " << show(b) << ": " << symbolic << " vs " << points << ";";
    }
  }
  std::ostringstream head;
  head << agree << "/" << n << " instances agree (" << kOraclePoints << " random (l, m) pairs, total cocycle dimension "
       << total_dim << ")";
  o.detail = head.str() + d.str();
  return o;
}

// 9 ----------------------------------------------------------------------------
Outcome dsl_round_trip(std::mt19937_64& rng) {
  Outcome o;
  int same = 0;
  for (int i = 0; i < kRoundTripDocs; ++i) {
    auto doc = testing::random_doc(rng);
    std::string text = dsl::render(doc);
    auto back = dsl::parse(text);
    if (back == doc && dsl::render(back) == text) ++same;
  }
  int golden = 0;
  auto builtins = dsl::parse(std::string(data::builtins_lca));
  for (Family f : {Family::Vir, Family::W, Family::TSV, Family::TSVc}) {
    auto alg = build(f, {}).algebra;
    const auto* decl = builtins.find_algebra(alg.name());
    if (decl && dsl::to_algebra(*decl) == alg) ++golden;
  }
  std::string cat(data::catalog_lca);
  bool fixpoint = dsl::render(dsl::parse(cat)) == cat;
  o.pass = same == kRoundTripDocs && golden == 4 && fixpoint;
  o.detail = std::to_string(same) + "/" + std::to_string(kRoundTripDocs) + " random documents round-trip, " +
             std::to_string(golden) + "/4 built-ins equal the constructors, catalog file " +
             (fixpoint ? "is" : "is not") + " a render fixpoint";
  return o;
}

}  // namespace

int main() {
  std::mt19937_64 rng(20240515);
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"axiom suite", axiom_suite},
      {"catalog verification", catalog_verification},
      {"dim Ext(C c_{-beta}, M_{1,beta}) = 1", [&] { return dim_one(rng); }},
      {"trivial-by-module reproduction", [&] { return shape_one(rng); }},
      {"homogeneous degree bound", [&] { return homogeneous_bound(rng); }},
      {"negative control", [&] { return negative_control(rng); }},
      {"TSV h-vanishing", [&] { return h_vanishing(rng); }},
      {"oracle cross-check", [&] { return oracle_cross_check(rng); }},
      {"DSL round-trip and golden", [&] { return dsl_round_trip(rng); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << "criterion " << i + 1 << " " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << ": "
              << o.detail << std::endl;
  }
  std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria pass" << std::endl;
  return failed ? 1 : 0;
}

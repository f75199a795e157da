#include "lca/catalog.hpp"
#include "lca/data.hpp"
#include "common/catalog_points.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

using namespace lca;

namespace {

const Catalog& cat() { return Catalog::builtin(); }

std::vector<std::string> ids(const std::vector<const CatalogEntry*>& es) {
  std::vector<std::string> out;
  for (const auto* e : es) out.push_back(e->id);
  return out;
}

bool has(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

// The one stored row whose generator is not a cocycle (see the README).
const std::set<std::string> kRefuted = {"thm-t48-1-b-iii-b"};

Scalar q(long p, long r = 1) { return Scalar(p, r); }

}  // namespace

TEST_CASE("the data file is a render fixpoint and loads") {
  std::string text(data::catalog_lca);
  CHECK(dsl::render(dsl::parse(text)) == text);
  CHECK(cat().entries().size() == 185);
  std::set<std::string> seen;
  for (const auto& e : cat().entries()) {
    CHECK(seen.insert(e.id).second);
    CHECK_FALSE(e.gens.empty());
    CHECK_FALSE(e.source.empty());
  }
  for (const char* id : {"thm-t25-i", "thm-t2", "thm-t3-viii", "thm-t33-1-iv", "thm-t35-1", "thm-t38-6-iii",
                         "thm-t38:pro37-2-iii", "thm-t39-a-2-iv", "thm-t39-b-2-iii", "thm-t44-2-b", "thm-t46-2",
                         "thm-t48-1-b-iii-a", "thm-t48-2-iii:pro37-2-ii"})
    CHECK(cat().find(id));
}

TEST_CASE("every stored row verifies symbolically except the refuted one") {
  std::set<std::string> failing;
  for (const auto& e : cat().entries())
    if (!verify_entry(e).ok) failing.insert(e.id);
  CHECK(failing == kRefuted);

  auto rep = verify_entry(*cat().find("thm-t48-1-b-iii-b"));
  bool found = false;
  for (const auto& [tag, p] : rep.residuals)
    if (tag == "k [L Y]") found = p == Poly::param("alphabar") * Poly::var(kLambda).pow(2);
  CHECK(found);
}

TEST_CASE("named rows") {
  CHECK(verify_entry(*cat().find("thm-t3-iv")).ok);
  CHECK(verify_entry(*cat().find("thm-t39-a-2-iv")).ok);

  const auto* viii = cat().find("thm-t3-viii");
  REQUIRE(viii->minpoly);
  CHECK(viii->minpoly->first == "alphabar");
  CHECK(verify_entry(*viii).ok);
  // Without the reduction the residuals are multiples of the minimal polynomial, not zero.
  CatalogEntry raw = *viii;
  raw.minpoly.reset();
  CHECK_FALSE(verify_entry(raw).ok);

  const auto* s = cat().find("thm-t38-6-iii");
  CHECK(s->suspicious);
  CHECK(verify_entry(*s).ok);
}

TEST_CASE("the printed b2/beta coefficient is not a cocycle") {
  const char* printed = R"(
    entry "printed" {
      family w; shape module-by-module;
      set a = 1; set b = 0; set betabar = beta; set gammabar = gamma;
      set alpha = alphabar + 2;
      require gamma != 0; require beta != 0;
      shift beta;
      gen b2 { denom: beta; L: d*l^2; W: beta*l^2; }
    })";
  auto c = Catalog::load(printed);
  auto rep = verify_entry(c.entries()[0]);
  CHECK_FALSE(rep.ok);
  Poly expect = (Poly::param("beta") - Poly::param("gamma")) * Poly::var(kLambda).pow(2) * Poly::var(kMu);
  bool found = false;
  for (const auto& [tag, p] : rep.residuals) found = found || p == expect || p == -expect;
  CHECK(found);

  for (const char* id : {"thm-t39-b-2-iii", "thm-t48-1-b-ii-c"}) {
    const auto* e = cat().find(id);
    CHECK(verify_entry(*e).ok);
    REQUIRE(e->notes.size() == 1);
    CHECK(e->notes[0].rfind("erratum", 0) == 0);
  }
}

TEST_CASE("load errors") {
  auto throws = [](const char* text) { return Catalog::load(text); };
  CHECK_THROWS_WITH(throws(R"(entry "x" { family q; shape trivial-by-module; gen k { L: 1; } })"),
                    Catch::Matchers::ContainsSubstring("catalog entry x"));
  CHECK_THROWS_WITH(throws(R"(entry "x" { family w; shape trivial-by-module; gen k { denom: b; W: 1; } })"),
                    Catch::Matchers::ContainsSubstring("not guarded"));
  CHECK_THROWS_WITH(throws(R"(entry "x" { family w; shape trivial-by-module; gen k { Q: 1; } })"),
                    Catch::Matchers::ContainsSubstring("unknown component Q"));
  CHECK_THROWS_WITH(throws(R"(entry "x" { family w; shape trivial-by-module; set a = alpha; gen k { W: 1; } })"),
                    Catch::Matchers::ContainsSubstring("constant"));
  CHECK_THROWS_WITH(throws(R"(entry "x" { family vir; shape trivial-by-module; set alpha = 1; set alpha = 2; gen k { L: 1; } })"),
                    Catch::Matchers::ContainsSubstring("set twice"));
  CHECK_THROWS_WITH(throws(R"(entry "x" { family vir; shape trivial-by-module; gen k { L: 1; } }
                              entry "x" { family vir; shape trivial-by-module; gen k { L: 1; } })"),
                    Catch::Matchers::ContainsSubstring("duplicate"));
  // Guarded denominators are accepted up to a scalar.
  CHECK_NOTHROW(throws(R"(entry "x" { family w; shape trivial-by-module; require 2*b != 0; gen k { denom: b; W: 1; } })"));
}

TEST_CASE("entries_for examples") {
  auto w1 = ids(cat().entries_for(Family::W, ExtShape::TrivialByModule,
                                  {{"a", 1}, {"b", 2}, {"beta", 0}, {"eta", -2}, {"alpha", 1}}));
  CHECK(w1 == std::vector<std::string>{"thm-t33-1-iv"});
  const auto* iv = cat().find("thm-t33-1-iv");
  auto g = iv->instantiate({{"a", 1}, {"b", 2}, {"beta", 0}, {"eta", -2}, {"alpha", 1}});
  REQUIRE(g.size() == 1);
  CHECK(g[0][0].is_zero());
  CHECK(g[0][1] == Poly(1) - Poly(q(1, 2)) * Poly::var(kLambda));

  CHECK(cat().entries_for(Family::Vir, ExtShape::TrivialByModule, {{"alpha", 5}, {"beta", 1}, {"eta", -1}}).empty());

  Binding t3{{"a", 1}, {"b", 0}, {"gamma", 2}, {"gammabar", 2}, {"beta", 0}, {"betabar", 0}, {"alpha", 1}, {"alphabar", 0}};
  auto es = ids(cat().entries_for(Family::TSV, ExtShape::ModuleByModule, t3));
  CHECK(has(es, "thm-t48-1-b-iii-a"));
  for (const auto& id : es) CHECK(id.rfind("thm-t48-1-b", 0) == 0);
  auto k = cat().find("thm-t48-1-b-iii-a")->instantiate(t3);
  REQUIRE(k.size() == 2);
  CHECK(k[1][1] == Poly(q(1, 2)) * Poly::var(kPartial));
  CHECK(k[1][2] == Poly(1));

  CHECK_THROWS_AS(cat().entries_for(Family::W, ExtShape::TrivialByModule, {{"a", 1}}), UnboundParameter);
}

TEST_CASE("entries_for never returns a vanishing denominator") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> pick(-3, 3);
  int hits = 0;
  for (int t = 0; t < 400; ++t) {
    Binding b{{"a", pick(rng)}, {"b", pick(rng)}, {"beta", pick(rng)}, {"eta", pick(rng)}, {"alpha", pick(rng)}};
    if (t % 2) b["a"] = 1;
    for (auto s : {ExtShape::TrivialByModule, ExtShape::ModuleByTrivial})
      for (auto f : {Family::W, Family::TSV})
        for (const auto* e : cat().entries_for(f, s, b)) {
          ++hits;
          CHECK_NOTHROW(e->instantiate(complete_binding(f, s, b)));
        }
  }
  CHECK(hits > 0);
}

TEST_CASE("compare examples") {
  auto w2 = compare(cat(), Family::W, ExtShape::ModuleByTrivial, {{"a", 2}, {"b", 0}, {"alpha", 1}, {"beta", 1}, {"eta", -1}});
  CHECK(w2.predicted == 1);
  CHECK(w2.computed == 1);
  CHECK(w2.match);

  auto v3 = compare(cat(), Family::Vir, ExtShape::ModuleByModule, {{"alpha", 1}, {"alphabar", 1}, {"beta", 0}, {"betabar", 0}});
  CHECK(v3.predicted == 2);
  CHECK(v3.computed == 2);
  CHECK(v3.match);
  CHECK(v3.stabilized);

  // TSV(c) at c = 0 compares against the W(a,0) table at a = 3/2.
  auto tc = compare(cat(), Family::TSVc, ExtShape::ModuleByModule,
                    {{"c", 0}, {"alpha", q(3, 2)}, {"alphabar", 2}, {"beta", 0}, {"betabar", 0}});
  CHECK(tc.entries == std::vector<std::string>{"thm-t48-2-iii:pro37-2-i"});
  CHECK(tc.match);
  auto tc3 = compare(cat(), Family::TSVc, ExtShape::ModuleByModule,
                     {{"c", 0}, {"alpha", 1}, {"alphabar", q(-1, 2)}, {"beta", 0}, {"betabar", 0}});
  CHECK(has(tc3.entries, "thm-t48-2-iii:pro37-2-iii"));
  CHECK(tc3.match);

  auto sus = compare(cat(), Family::W, ExtShape::ModuleByModule,
                     {{"a", -3}, {"b", 0}, {"alpha", 1}, {"alphabar", -4}, {"beta", 0}, {"betabar", 0}});
  CHECK(sus.suspicious == std::vector<std::string>{"thm-t38-6-iii"});
  CHECK(sus.match);
}

TEST_CASE("compare reports the known disagreements") {
  // W(3,0): the a = 3 list omits the degree 0 and 1 classes that still exist.
  for (int k : {1, 2}) {
    auto c = compare(cat(), Family::W, ExtShape::ModuleByModule,
                     {{"a", 3}, {"b", 0}, {"alphabar", 5}, {"alpha", 5 + k - 3}, {"beta", 1}, {"betabar", 1}});
    CHECK(c.entries.empty());
    CHECK(c.predicted == 0);
    CHECK(c.computed == 1);
    CHECK_FALSE(c.match);
  }
  // TSV(1,0), gamma != 0, alpha - alphabar = 1, alphabar != 0: no h != 0 class exists.
  auto t = compare(cat(), Family::TSV, ExtShape::ModuleByModule,
                   {{"a", 1}, {"b", 0}, {"alpha", 4}, {"alphabar", 3}, {"beta", 0}, {"betabar", 0}, {"gamma", 2}, {"gammabar", 2}});
  CHECK(has(t.entries, "thm-t48-1-b-iii-b"));
  CHECK_FALSE(t.gens_are_cocycles);
  CHECK(t.computed == 1);
  CHECK_FALSE(t.match);
  for (const auto& r : t.result.representatives) CHECK(r[2].is_zero());
}

TEST_CASE("guard-respecting points agree with the solver") {
  std::mt19937 rng(2024);
  int checked = 0;
  for (const auto& e : cat().entries()) {
    if (kRefuted.count(e.id)) continue;
    auto b = testing::sample_point(e, rng);
    REQUIRE(b);
    auto c = compare(cat(), e.family, e.shape, *b);
    // Points that also satisfy the refuted row are covered by the test above.
    if (std::any_of(c.entries.begin(), c.entries.end(), [](const auto& id) { return kRefuted.count(id); })) continue;
    INFO(e.id);
    CHECK(c.match);
    CHECK(c.stabilized);
    ++checked;
  }
  CHECK(checked > 170);
}

TEST_CASE("points outside every guard have no extensions") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> pick(-6, 6);
  int n = 0;
  for (int t = 0; n < 40; ++t) {
    Family f = std::array{Family::Vir, Family::W, Family::TSV, Family::TSVc}[t % 4];
    ExtShape s = std::array{ExtShape::TrivialByModule, ExtShape::ModuleByTrivial, ExtShape::ModuleByModule}[(t / 4) % 3];
    Binding b;
    for (const auto& p : standard_params(f, s)) b[p] = pick(rng);
    if (b.count("alpha") && b["alpha"].is_zero()) continue;
    if (b.count("alphabar") && b["alphabar"].is_zero()) continue;
    Scalar shift = b.count("b") ? b["b"] : b.count("c") ? b["c"] : Scalar(0);
    // The nontriviality conditions all put beta + eta or beta - betabar in {0, -b}.
    Scalar x = s == ExtShape::ModuleByModule ? b["beta"] - b["betabar"] : b["beta"] + b["eta"];
    if (x.is_zero() || (x + shift).is_zero() || (x - shift).is_zero()) continue;
    REQUIRE(cat().entries_for(f, s, b).empty());
    INFO(family_name(f) << " " << shape_name(s));
    CHECK(ext_dim(standard_problem(f, s, complete_binding(f, s, b))).ext_dim == 0);
    ++n;
  }
}

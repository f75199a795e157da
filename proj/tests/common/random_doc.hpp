#pragma once

#include "lca/dsl.hpp"
#include "unit/random_poly.hpp"

#include <random>

namespace lca::testing {

// Random, well-formed source document exercising every declaration kind.
inline dsl::SourceDoc random_doc(std::mt19937_64& rng) {
  auto coin = [&](double p = 0.5) { return std::bernoulli_distribution(p)(rng); };
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  auto nonzero = [&] {
    Poly p;
    while (p.is_zero()) p = random_poly(rng);
    return p;
  };
  static const ExtShape shapes[] = {ExtShape::TrivialByModule, ExtShape::ModuleByTrivial,
                                    ExtShape::ModuleByModule};
  static const std::vector<std::string> gen_pool = {"L", "W", "Y", "M", "G1"};

  dsl::SourceDoc doc;
  if (coin()) doc.version = 1;
  if (coin()) doc.params = {"x"};

  std::size_t nalg = 1 + pick(2);
  for (std::size_t k = 0; k < nalg; ++k) {
    dsl::AlgebraDecl a;
    a.name = "A" + std::to_string(k);
    a.params = {"a"};
    for (const auto& g : gen_pool)
      if (a.gens.empty() || coin(0.4)) a.gens.push_back(g);
    for (const auto& gi : a.gens)
      for (const auto& gj : a.gens) {
        if (!coin(0.5)) continue;
        dsl::BracketLine b{gi, gj, {}, {}};
        for (const auto& g : a.gens)
          if (coin(0.4)) b.value.emplace_back(g, nonzero());
        a.brackets.push_back(std::move(b));
      }
    doc.algebras.push_back(std::move(a));
  }

  std::size_t nmod = 2 + pick(2);
  for (std::size_t k = 0; k < nmod; ++k) {
    const auto& alg = doc.algebras[pick(doc.algebras.size())];
    dsl::ModuleDecl m;
    m.name = "M" + std::to_string(k);
    m.over = alg.name;
    if (coin()) m.params = {"alpha", "beta"};
    if (coin(0.3)) {
      m.trivial = true;
      m.eta = random_poly(rng);
    } else {
      for (const auto& g : alg.gens)
        if (coin(0.7)) m.action.emplace_back(g, random_poly(rng));
    }
    doc.modules.push_back(std::move(m));
  }

  for (std::size_t k = pick(3); k > 0; --k) {
    dsl::ProblemDecl p;
    p.name = "p" + std::to_string(k);
    p.algebra = doc.algebras[pick(doc.algebras.size())].name;
    p.shape = shapes[pick(3)];
    p.top = doc.modules[pick(doc.modules.size())].name;
    p.bottom = doc.modules[pick(doc.modules.size())].name;
    if (coin()) p.bounds = Bounds{static_cast<unsigned>(pick(9)), static_cast<unsigned>(pick(9))};
    if (coin()) p.bind.emplace_back("a", random_rational(rng));
    if (coin()) p.bind.emplace_back("alpha", random_rational(rng));
    doc.problems.push_back(std::move(p));
  }

  for (std::size_t k = pick(3); k > 0; --k) {
    dsl::EntryDecl e;
    e.id = "entry-" + std::to_string(k) + (coin() ? " \"q\\" : "");
    e.family = coin() ? "w" : "tsv";
    e.shape = shapes[pick(3)];
    if (coin()) e.source = "Thm (" + std::to_string(k) + ")";
    if (coin()) e.sets.emplace_back("beta", random_poly(rng));
    for (std::size_t r = pick(3); r > 0; --r) {
      dsl::Requirement req;
      std::size_t arity = 1 + pick(2);
      for (std::size_t i = 0; i < arity; ++i) {
        req.lhs.push_back(random_poly(rng));
        req.rhs.push_back(random_poly(rng));
      }
      e.requires_.push_back(std::move(req));
    }
    if (coin(0.3)) e.minpoly.emplace("alpha", nonzero());
    if (coin(0.3)) e.shift = "beta";
    if (coin(0.2)) e.suspicious = "check this";
    if (coin()) e.notes.push_back("note " + std::to_string(k));
    for (std::size_t g = pick(3); g > 0; --g) {
      dsl::GenBlock gb;
      gb.name = "k" + std::to_string(g);
      if (coin(0.3)) gb.denom = nonzero();
      gb.comps.emplace_back("L", random_poly(rng));
      if (coin()) gb.comps.emplace_back("p", random_poly(rng));
      e.gens.push_back(std::move(gb));
    }
    doc.entries.push_back(std::move(e));
  }
  return doc;
}

}  // namespace lca::testing

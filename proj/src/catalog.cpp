#include "lca/catalog.hpp"

#include "lca/data.hpp"

#include <algorithm>
#include <stdexcept>

namespace lca {

namespace {

Poly value_of(const Substitution& sub, const std::string& name) {
  auto it = sub.find(VarId::param(name));
  return it == sub.end() ? Poly::param(name) : it->second;
}

Scalar eval_scalar(const Poly& p, const Binding& bind) {
  Poly v = poly_eval_params(p, bind);
  if (!v.is_constant()) {
    auto ps = v.parameters();
    throw UnboundParameter(ps.empty() ? "d or l" : *ps.begin());
  }
  return v.constant_term();
}

Substitution to_substitution(const Binding& bind) {
  Substitution s;
  for (const auto& [k, v] : bind) s[VarId::param(k)] = Poly(v);
  return s;
}

Poly monic(const Poly& p) {
  if (p.is_zero()) return p;
  return p * Poly(p.terms().begin()->second.inverse());
}

bool is_free_shape_component(ExtShape s, const std::string& comp) {
  return !(s != ExtShape::ModuleByTrivial && comp == "p");
}

}  // namespace

ExtProblem standard_problem(Family f, ExtShape s, const Substitution& sub) {
  Binding fam;
  for (const auto& p : family_params(f)) {
    auto it = sub.find(VarId::param(p));
    if (it == sub.end()) continue;
    if (!it->second.is_constant())
      throw std::invalid_argument("family parameter " + p + " must be set to a constant");
    fam[p] = it->second.constant_term();
  }
  FamilyBuild fb = build(f, fam);
  auto v = [&](const char* n) { return value_of(sub, n); };
  Poly gamma = fb.gamma_allowed() ? v("gamma") : Poly();
  Poly gammabar = fb.gamma_allowed() ? v("gammabar") : Poly();
  switch (s) {
    case ExtShape::TrivialByModule:
      return {fb.algebra, s, fb.free_module(v("alpha"), v("beta"), gamma, "M"), fb.trivial_module(v("eta"), "C")};
    case ExtShape::ModuleByTrivial:
      return {fb.algebra, s, fb.trivial_module(v("eta"), "C"), fb.free_module(v("alpha"), v("beta"), gamma, "M")};
    case ExtShape::ModuleByModule:
      return {fb.algebra, s, fb.free_module(v("alpha"), v("beta"), gamma, "M"),
              fb.free_module(v("alphabar"), v("betabar"), gammabar, "Mbar")};
  }
  throw std::invalid_argument("unknown shape");
}

ExtProblem standard_problem(Family f, ExtShape s, const Binding& bind) {
  return standard_problem(f, s, to_substitution(bind));
}

std::vector<std::string> standard_params(Family f, ExtShape s) {
  std::vector<std::string> out = family_params(f);
  switch (s) {
    case ExtShape::TrivialByModule:
    case ExtShape::ModuleByTrivial:
      for (const char* n : {"alpha", "beta", "eta"}) out.push_back(n);
      break;
    case ExtShape::ModuleByModule:
      for (const char* n : {"alpha", "beta", "alphabar", "betabar"}) out.push_back(n);
      break;
  }
  return out;
}

Binding complete_binding(Family f, ExtShape s, Binding bind) {
  if (f == Family::W || f == Family::TSV) {
    bind.emplace("gamma", Scalar(0));
    if (s == ExtShape::ModuleByModule) bind.emplace("gammabar", Scalar(0));
  }
  for (const auto& p : standard_params(f, s))
    if (!bind.count(p)) throw UnboundParameter(p);
  return bind;
}

// ---- entries ------------------------------------------------------------------

bool CatalogEntry::matches(const Binding& bind) const {
  for (const auto& [var, poly] : subst) {
    auto it = bind.find(var.name());
    if (it == bind.end()) throw UnboundParameter(var.name());
    if (it->second != eval_scalar(poly, bind)) return false;
  }
  if (minpoly && !eval_scalar(minpoly->second, bind).is_zero()) return false;
  for (const auto& r : requires_) {
    bool differ = false;
    for (std::size_t k = 0; k < r.lhs.size(); ++k)
      if (eval_scalar(r.lhs[k], bind) != eval_scalar(r.rhs[k], bind)) differ = true;
    if (!differ) return false;
  }
  return true;
}

std::vector<Cocycle> CatalogEntry::instantiate(const Binding& bind) const {
  std::vector<Cocycle> out;
  for (const auto& g : gens) {
    Scalar den = eval_scalar(g.denom, bind);
    if (den.is_zero()) throw std::logic_error("entry " + id + ": denominator of " + g.coeff + " vanishes");
    Cocycle c;
    for (const auto& p : g.numer) c.push_back(poly_eval_params(p, bind) * Poly(den.inverse()));
    out.push_back(std::move(c));
  }
  return out;
}

Catalog Catalog::from_doc(const dsl::SourceDoc& doc) {
  Catalog cat;
  for (const auto& d : doc.entries) {
    auto bad = [&](const std::string& why) {
      return std::invalid_argument("catalog entry " + d.id + ": " + why);
    };
    CatalogEntry e;
    e.id = d.id;
    try {
      e.family = parse_family(d.family);
    } catch (const std::invalid_argument& ex) {
      throw bad(ex.what());
    }
    e.shape = d.shape;
    e.source = d.source;
    e.suspicious = d.suspicious;
    e.notes = d.notes;
    e.shift = d.shift;

    // Compose the equalities in order: later ones are applied to earlier values.
    for (const auto& [name, poly] : d.sets) {
      VarId v = VarId::param(name);
      if (e.subst.count(v)) throw bad("parameter " + name + " set twice");
      Poly val = poly_subst(poly, e.subst);
      if (val.contains(v)) throw bad("set " + name + " refers to itself");
      for (auto& [k, p] : e.subst) p = poly_subst(p, v, val);
      e.subst[v] = val;
    }
    for (const auto& r : d.requires_) {
      dsl::Requirement q;
      for (const auto& p : r.lhs) q.lhs.push_back(poly_subst(p, e.subst));
      for (const auto& p : r.rhs) q.rhs.push_back(poly_subst(p, e.subst));
      e.requires_.push_back(std::move(q));
    }
    if (d.minpoly) {
      Poly m = poly_subst(d.minpoly->second, e.subst);
      VarId v = VarId::param(d.minpoly->first);
      if (e.subst.count(v)) throw bad("minpoly variable is also set");
      e.minpoly.emplace(d.minpoly->first, m);
    }

    try {
      e.components = component_names(e.problem().algebra, e.shape);
    } catch (const std::invalid_argument& ex) {
      throw bad(ex.what());
    }
    Substitution shift;
    if (e.shift) shift[kPartial] = Poly::var(kPartial) + value_of(e.subst, *e.shift);

    for (const auto& g : d.gens) {
      CatalogGen cg;
      cg.coeff = g.name;
      cg.denom = poly_subst(g.denom, e.subst);
      if (cg.denom.is_zero()) throw bad("zero denominator for " + g.name);
      cg.numer.assign(e.components.size(), Poly());
      for (const auto& [comp, poly] : g.comps) {
        auto it = std::find(e.components.begin(), e.components.end(), comp);
        if (it == e.components.end() || !is_free_shape_component(e.shape, comp))
          throw bad("unknown component " + comp);
        Poly p = poly_subst(poly, e.subst);
        if (e.shift) p = poly_subst(p, shift);
        cg.numer[static_cast<std::size_t>(it - e.components.begin())] = p;
      }
      // A non-constant denominator must be excluded by an inequality guard.
      if (!cg.denom.is_constant()) {
        bool guarded = false;
        for (const auto& r : e.requires_) {
          if (r.lhs.size() != 1) continue;
          if (monic(r.lhs[0] - r.rhs[0]) == monic(cg.denom)) {
            guarded = true;
            break;
          }
        }
        if (!guarded) throw bad("denominator " + cg.denom.str() + " of " + g.name + " is not guarded");
      }
      e.gens.push_back(std::move(cg));
    }
    if (cat.find(e.id)) throw bad("duplicate id");
    cat.entries_.push_back(std::move(e));
  }
  return cat;
}

const Catalog& Catalog::builtin() {
  static const Catalog cat = load(std::string(data::catalog_lca));
  return cat;
}

const CatalogEntry* Catalog::find(const std::string& id) const {
  for (const auto& e : entries_)
    if (e.id == id) return &e;
  return nullptr;
}

std::vector<const CatalogEntry*> Catalog::entries_for(Family f, ExtShape s, const Binding& bind) const {
  Binding full = complete_binding(f, s, bind);
  std::vector<const CatalogEntry*> out;
  for (const auto& e : entries_)
    if (e.family == f && e.shape == s && e.matches(full)) out.push_back(&e);
  return out;
}

// ---- verification -------------------------------------------------------------

AxiomReport verify_entry(const CatalogEntry& e) {
  AxiomReport rep;
  CocycleEquations eqs(e.problem());
  for (const auto& g : e.gens) {
    // Shape constraints: trivial-bottom cocycles depend on l only, p on d only.
    for (std::size_t k = 0; k < g.numer.size(); ++k) {
      const Poly& p = g.numer[k];
      bool is_p = e.components[k] == "p";
      if ((e.shape == ExtShape::TrivialByModule && p.contains(kPartial)) || (is_p && p.contains(kLambda)))
        rep.add(g.coeff + " form of " + e.components[k], p);
    }
    auto res = eqs.residuals(g.numer);
    for (std::size_t t = 0; t < res.size(); ++t) {
      Poly r = res[t];
      if (e.minpoly) r = poly_reduce_mod(r, VarId::param(e.minpoly->first), e.minpoly->second);
      rep.add(g.coeff + " " + eqs.tags()[t], std::move(r));
    }
  }
  return rep;
}

Comparison compare(const Catalog& cat, Family f, ExtShape s, const Binding& bind, Bounds bounds) {
  Comparison cmp;
  Binding full = complete_binding(f, s, bind);
  ExtProblem prob = standard_problem(f, s, full);
  cmp.result = ext_dim(prob, {}, bounds);
  cmp.computed = cmp.result.ext_dim;
  cmp.stabilized = cmp.result.stabilized;
  cmp.warnings = cmp.result.warnings;

  unsigned top = bounds.f;
  CocycleEquations eqs(prob);
  for (const auto* e : cat.entries_for(f, s, full)) {
    cmp.entries.push_back(e->id);
    if (e->suspicious) cmp.suspicious.push_back(e->id);
    for (auto& c : e->instantiate(full)) {
      if (!eqs.check(c).ok) cmp.gens_are_cocycles = false;
      for (const auto& p : c) top = std::max(top, p.structural_degree());
      cmp.predicted_gens.push_back(std::move(c));
    }
  }
  // Coboundaries up to the highest degree that occurs, so that every listed
  // generator can be reduced.
  std::vector<Cocycle> cob = coboundary_space(prob, top + 1);
  std::vector<Cocycle> with_gens = cob;
  with_gens.insert(with_gens.end(), cmp.predicted_gens.begin(), cmp.predicted_gens.end());
  std::size_t rb = span_rank(cob), rg = span_rank(with_gens);
  cmp.predicted = rg - rb;
  std::vector<Cocycle> all = with_gens;
  all.insert(all.end(), cmp.result.representatives.begin(), cmp.result.representatives.end());
  cmp.covered = span_rank(all) == rg;
  cmp.match = cmp.predicted == cmp.computed && cmp.covered && cmp.gens_are_cocycles;
  if (!cmp.gens_are_cocycles) cmp.warnings.push_back("a listed generator is not a cocycle at this point");
  return cmp;
}

}  // namespace lca

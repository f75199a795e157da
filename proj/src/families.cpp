#include "lca/families.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace lca {

namespace {

Poly d() { return Poly::var(kPartial); }
Poly l() { return Poly::var(kLambda); }
Poly P(const char* name) { return Poly::param(name); }

std::vector<Poly> along(std::size_t n, std::size_t k, Poly value) {
  std::vector<Poly> v(n);
  v[k] = std::move(value);
  return v;
}

ConformalAlgebra make_algebra(Family f) {
  switch (f) {
    case Family::Vir: {
      ConformalAlgebra a("Vir", {"L"});
      a.set_bracket(0, 0, {d() + 2 * l()});
      return a;
    }
    case Family::W: {
      ConformalAlgebra a("W", {"L", "W"}, {"a", "b"});
      a.set_bracket_skew(0, 0, along(2, 0, d() + 2 * l()));
      a.set_bracket_skew(0, 1, along(2, 1, d() + P("a") * l() + P("b")));
      return a;
    }
    case Family::TSV: {
      ConformalAlgebra a("TSV", {"L", "Y", "M"}, {"a", "b"});
      a.set_bracket_skew(0, 0, along(3, 0, d() + 2 * l()));
      a.set_bracket_skew(0, 1, along(3, 1, d() + P("a") * l() + P("b")));
      a.set_bracket_skew(0, 2, along(3, 2, d() + 2 * (P("a") - 1) * l() + 2 * P("b")));
      a.set_bracket_skew(1, 1, along(3, 2, d() + 2 * l()));
      return a;
    }
    case Family::TSVc: {
      ConformalAlgebra a("TSVc", {"L", "Y", "M"}, {"c"});
      a.set_bracket_skew(0, 0, along(3, 0, d() + 2 * l()));
      a.set_bracket_skew(0, 1, along(3, 1, d() + Scalar(3, 2) * l() + P("c")));
      a.set_bracket_skew(0, 2, along(3, 2, d() + 2 * P("c")));
      a.set_bracket_skew(1, 1, along(3, 2, (d() + 2 * l()) * (-d() - 2 * P("c"))));
      return a;
    }
  }
  throw std::invalid_argument("unknown family");
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::Vir: return "vir";
    case Family::W: return "w";
    case Family::TSV: return "tsv";
    case Family::TSVc: return "tsvc";
  }
  return "?";
}

Family parse_family(const std::string& name) {
  if (name == "vir") return Family::Vir;
  if (name == "w") return Family::W;
  if (name == "tsv") return Family::TSV;
  if (name == "tsvc") return Family::TSVc;
  throw std::invalid_argument("unknown family '" + name + "' (expected vir, w, tsv or tsvc)");
}

std::vector<std::string> family_params(Family f) {
  switch (f) {
    case Family::Vir: return {};
    case Family::W:
    case Family::TSV: return {"a", "b"};
    case Family::TSVc: return {"c"};
  }
  return {};
}

bool FamilyBuild::gamma_allowed() const {
  if (family != Family::W && family != Family::TSV) return false;
  auto a = bind.find("a"), b = bind.find("b");
  return a != bind.end() && b != bind.end() && a->second == Scalar(1) && b->second.is_zero();
}

ConformalModule FamilyBuild::free_module(const Poly& alpha, const Poly& beta, const Poly& gamma,
                                         const std::string& name) const {
  if (!gamma.is_zero() && !gamma_allowed())
    throw std::invalid_argument("a nonzero gamma is only defined over W(1,0) and TSV(1,0)");
  std::vector<Poly> act(algebra.size());
  act[0] = d() + alpha * l() + beta;
  if (algebra.size() > 1) act[1] = gamma;
  std::set<std::string> params;
  for (const Poly* p : {&alpha, &beta, &gamma})
    for (const auto& s : p->parameters()) params.insert(s);
  return ConformalModule::free(name, std::move(act), {params.begin(), params.end()});
}

ConformalModule FamilyBuild::trivial_module(const Poly& eta, const std::string& name) const {
  auto ps = eta.parameters();
  return ConformalModule::trivial(name, algebra.size(), eta, {ps.begin(), ps.end()});
}

FamilyBuild build(Family f, const Binding& bind) {
  for (const auto& [k, v] : bind) {
    auto ps = family_params(f);
    if (std::find(ps.begin(), ps.end(), k) == ps.end())
      throw std::invalid_argument("family " + family_name(f) + " has no parameter '" + k + "'");
  }
  return FamilyBuild{f, bind, make_algebra(f).eval(bind)};
}

}  // namespace lca

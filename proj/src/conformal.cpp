#include "lca/conformal.hpp"

#include <stdexcept>

namespace lca {

Poly at(const Poly& p, const Poly& dexpr, const Poly& lexpr) {
  return poly_subst(p, Substitution{{kPartial, dexpr}, {kLambda, lexpr}});
}

ConformalAlgebra::ConformalAlgebra(std::string name, std::vector<std::string> gens,
                                   std::vector<std::string> params)
    : name_(std::move(name)), gens_(std::move(gens)), params_(std::move(params)) {
  const std::size_t n = gens_.size();
  bracket_.assign(n, std::vector<std::vector<Poly>>(n, std::vector<Poly>(n)));
}

std::size_t ConformalAlgebra::index(const std::string& gen) const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i] == gen) return i;
  throw std::out_of_range("unknown generator " + gen + " of " + name_);
}

void ConformalAlgebra::set_bracket(std::size_t i, std::size_t j, std::vector<Poly> value) {
  if (value.size() != gens_.size())
    throw std::invalid_argument("bracket value must have one entry per generator");
  bracket_.at(i).at(j) = std::move(value);
}

void ConformalAlgebra::set_bracket_skew(std::size_t i, std::size_t j, std::vector<Poly> value) {
  // [b _l a] = -[a _{-l-d} b]
  std::vector<Poly> mirror;
  const Poly d = Poly::var(kPartial), l = Poly::var(kLambda);
  for (const auto& c : value) mirror.push_back(-at(c, d, -l - d));
  set_bracket(i, j, std::move(value));
  if (i != j) set_bracket(j, i, std::move(mirror));
}

ConformalAlgebra ConformalAlgebra::eval(const Binding& bind) const {
  ConformalAlgebra out = *this;
  for (auto& row : out.bracket_)
    for (auto& cell : row)
      for (auto& c : cell) c = poly_eval_params(c, bind);
  return out;
}

ConformalModule ConformalModule::free(std::string name, std::vector<Poly> action,
                                      std::vector<std::string> params) {
  ConformalModule m;
  m.kind_ = Kind::FreeRankOne;
  m.name_ = std::move(name);
  m.action_ = std::move(action);
  m.params_ = std::move(params);
  return m;
}

ConformalModule ConformalModule::trivial(std::string name, std::size_t num_gens, Poly eta,
                                         std::vector<std::string> params) {
  ConformalModule m;
  m.kind_ = Kind::TrivialOneDim;
  m.name_ = std::move(name);
  m.action_.assign(num_gens, Poly());
  m.eta_ = std::move(eta);
  m.params_ = std::move(params);
  return m;
}

ConformalModule ConformalModule::eval(const Binding& bind) const {
  ConformalModule out = *this;
  for (auto& a : out.action_) a = poly_eval_params(a, bind);
  out.eta_ = poly_eval_params(out.eta_, bind);
  return out;
}

ConformalModule& ConformalModule::set_action(std::size_t i, Poly a) {
  action_.at(i) = std::move(a);
  return *this;
}

void AxiomReport::add(std::string tag, Poly residual) {
  if (residual.is_zero()) return;
  ok = false;
  residuals.emplace_back(std::move(tag), std::move(residual));
}

namespace {

Poly d() { return Poly::var(kPartial); }
Poly l() { return Poly::var(kLambda); }
Poly m() { return Poly::var(kMu); }

std::string tag(const ConformalAlgebra& a, std::size_t i, std::size_t j) {
  return "[" + a.gens()[i] + " " + a.gens()[j] + "]";
}

}  // namespace

AxiomReport check_skew(const ConformalAlgebra& alg) {
  AxiomReport rep;
  const std::size_t n = alg.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        rep.add("skew " + tag(alg, i, j) + " -> " + alg.gens()[k],
                alg.coeff(i, j, k) + at(alg.coeff(j, i, k), d(), -l() - d()));
  return rep;
}

AxiomReport check_jacobi(const ConformalAlgebra& alg) {
  // [g_i _l [g_j _m g_k]] - [[g_i _l g_j] _{l+m} g_k] - [g_j _m [g_i _l g_k]]
  AxiomReport rep;
  const std::size_t n = alg.size();
  // Precompute the substituted structure polynomials used below.
  std::vector<std::vector<std::vector<Poly>>> shift_l(n), shift_m(n), left(n), sum(n), at_m(n);
  for (std::size_t i = 0; i < n; ++i) {
    shift_l[i].resize(n), shift_m[i].resize(n), left[i].resize(n), sum[i].resize(n), at_m[i].resize(n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Poly& c = alg.coeff(i, j, k);
        shift_l[i][j].push_back(at(c, d() + l(), m()));  // C(d+l, m)
        shift_m[i][j].push_back(at(c, d() + m(), l()));  // C(d+m, l)
        left[i][j].push_back(at(c, -l() - m(), l()));    // C(-l-m, l)
        sum[i][j].push_back(at(c, d(), l() + m()));      // C(d, l+m)
        at_m[i][j].push_back(at(c, d(), m()));           // C(d, m)
      }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t t = 0; t < n; ++t) {
          Poly r;
          for (std::size_t s = 0; s < n; ++s) {
            r += shift_l[j][k][s] * alg.coeff(i, s, t);
            r -= left[i][j][s] * sum[s][k][t];
            r -= shift_m[i][k][s] * at_m[j][s][t];
          }
          rep.add("jacobi " + alg.gens()[i] + "," + alg.gens()[j] + "," + alg.gens()[k] + " -> " +
                      alg.gens()[t],
                  std::move(r));
        }
  return rep;
}

AxiomReport check_module(const ConformalAlgebra& alg, const ConformalModule& mod) {
  AxiomReport rep;
  const std::size_t n = alg.size();
  if (mod.action().size() != n)
    throw std::invalid_argument("module " + mod.name() + " does not match algebra " + alg.name());
  if (mod.is_trivial()) {
    for (std::size_t i = 0; i < n; ++i) rep.add("trivial action " + alg.gens()[i], mod.action(i));
    return rep;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Poly& ai = mod.action(i);
      const Poly& aj = mod.action(j);
      Poly r = at(aj, d() + l(), m()) * ai - at(ai, d() + m(), l()) * at(aj, d(), m());
      for (std::size_t k = 0; k < n; ++k)
        r -= at(alg.coeff(i, j, k), -l() - m(), l()) * at(mod.action(k), d(), l() + m());
      rep.add("module " + tag(alg, i, j), std::move(r));
    }
  return rep;
}

}  // namespace lca

#pragma once

#include "lca/poly.hpp"

#include <string>
#include <utility>
#include <vector>

namespace lca {

/// P(d -> dexpr, l -> lexpr), substituted simultaneously.
Poly at(const Poly& p, const Poly& dexpr, const Poly& lexpr);

/// Finite Lie conformal algebra, free over C[d] on named generators, given
/// by structure polynomials: [g_i _l g_j] = sum_k C_ij^k(d, l) g_k.
class ConformalAlgebra {
public:
  ConformalAlgebra() = default;
  ConformalAlgebra(std::string name, std::vector<std::string> gens,
                   std::vector<std::string> params = {});

  const std::string& name() const { return name_; }
  const std::vector<std::string>& gens() const { return gens_; }
  const std::vector<std::string>& params() const { return params_; }
  std::size_t size() const { return gens_.size(); }
  /// Throws std::out_of_range for an unknown generator.
  std::size_t index(const std::string& gen) const;

  const Poly& coeff(std::size_t i, std::size_t j, std::size_t k) const { return bracket_[i][j][k]; }
  const std::vector<Poly>& bracket(std::size_t i, std::size_t j) const { return bracket_[i][j]; }
  void set_bracket(std::size_t i, std::size_t j, std::vector<Poly> value);
  /// Fills [g_j g_i] from [g_i g_j] by skew-symmetry.
  void set_bracket_skew(std::size_t i, std::size_t j, std::vector<Poly> value);

  ConformalAlgebra eval(const Binding& bind) const;

  friend bool operator==(const ConformalAlgebra&, const ConformalAlgebra&) = default;

private:
  std::string name_;
  std::vector<std::string> gens_;
  std::vector<std::string> params_;
  std::vector<std::vector<std::vector<Poly>>> bracket_;
};

/// Rank-one conformal module: free C[d]v with g_i _l v = A_i(d, l) v, or the
/// one-dimensional C c with d c = eta c and every generator acting by zero.
class ConformalModule {
public:
  enum class Kind { FreeRankOne, TrivialOneDim };

  ConformalModule() = default;
  static ConformalModule free(std::string name, std::vector<Poly> action,
                              std::vector<std::string> params = {});
  static ConformalModule trivial(std::string name, std::size_t num_gens, Poly eta,
                                 std::vector<std::string> params = {});

  Kind kind() const { return kind_; }
  bool is_trivial() const { return kind_ == Kind::TrivialOneDim; }
  const std::string& name() const { return name_; }
  const std::vector<std::string>& params() const { return params_; }
  const std::vector<Poly>& action() const { return action_; }
  const Poly& action(std::size_t i) const { return action_[i]; }
  const Poly& eta() const { return eta_; }

  ConformalModule eval(const Binding& bind) const;
  ConformalModule& set_action(std::size_t i, Poly a);

  friend bool operator==(const ConformalModule&, const ConformalModule&) = default;

private:
  Kind kind_ = Kind::FreeRankOne;
  std::string name_;
  std::vector<std::string> params_;
  std::vector<Poly> action_;
  Poly eta_;
};

struct AxiomReport {
  bool ok = true;
  std::vector<std::pair<std::string, Poly>> residuals;

  void add(std::string tag, Poly residual);
};

AxiomReport check_skew(const ConformalAlgebra& alg);
AxiomReport check_jacobi(const ConformalAlgebra& alg);
AxiomReport check_module(const ConformalAlgebra& alg, const ConformalModule& mod);

}  // namespace lca

#pragma once

#include "lca/conformal.hpp"

#include <string>

namespace lca {

enum class Family { Vir, W, TSV, TSVc };

std::string family_name(Family f);  // "vir", "w", "tsv", "tsvc"
/// Accepts the lower-case names above; throws std::invalid_argument otherwise.
Family parse_family(const std::string& name);
/// Structure parameters of the family: {}, {a,b}, {a,b}, {c}.
std::vector<std::string> family_params(Family f);

/// An algebra of one of the built-in families plus its rank-one modules.
/// Unbound structure parameters stay symbolic.
struct FamilyBuild {
  Family family;
  Binding bind;
  ConformalAlgebra algebra;

  /// M_{alpha,beta} or, for W(1,0) and TSV(1,0), M_{alpha,beta,gamma}:
  /// L acts by d + alpha*l + beta, W (or Y) by gamma, M by 0. Throws
  /// std::invalid_argument when gamma != 0 is requested elsewhere.
  ConformalModule free_module(const Poly& alpha, const Poly& beta, const Poly& gamma = Poly(),
                              const std::string& name = "M") const;
  ConformalModule trivial_module(const Poly& eta, const std::string& name = "C") const;
  /// True when (a,b) is bound to (1,0) for W or TSV.
  bool gamma_allowed() const;
};

FamilyBuild build(Family f, const Binding& bind = {});

}  // namespace lca

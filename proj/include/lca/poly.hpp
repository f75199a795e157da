#pragma once

#include "lca/scalar.hpp"

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lca {

/// A polynomial variable: the derivation symbol, one of three lambda slots,
/// or a named parameter. Ordered Partial < Lambda(0) < Lambda(1) < Lambda(2)
/// < Param (parameters by name).
class VarId {
public:
  enum class Kind : std::uint8_t { Partial = 0, Lambda = 1, Param = 2 };

  static VarId partial() { return VarId(Kind::Partial, 0, nullptr); }
  static VarId lambda(int slot);
  static VarId param(std::string_view name);

  Kind kind() const { return kind_; }
  int slot() const { return slot_; }
  bool is_param() const { return kind_ == Kind::Param; }
  /// Parameter name, or the DSL spelling d / l / m / n for the others.
  const std::string& name() const;

  friend bool operator==(const VarId& a, const VarId& b) {
    return a.kind_ == b.kind_ && a.slot_ == b.slot_ && a.name_ == b.name_;
  }
  friend std::strong_ordering operator<=>(const VarId& a, const VarId& b);

private:
  VarId(Kind k, std::uint8_t slot, const std::string* name) : kind_(k), slot_(slot), name_(name) {}

  Kind kind_;
  std::uint8_t slot_;
  const std::string* name_;  // interned, stable for the process lifetime
};

inline const VarId kPartial = VarId::partial();
inline const VarId kLambda = VarId::lambda(0);
inline const VarId kMu = VarId::lambda(1);
inline const VarId kNu = VarId::lambda(2);

/// Power product, kept as (variable, exponent > 0) pairs sorted by variable.
class Monomial {
public:
  using Factor = std::pair<VarId, std::uint32_t>;

  Monomial() = default;
  Monomial(std::initializer_list<Factor> factors);
  static Monomial of(VarId v, std::uint32_t e = 1);

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  std::uint32_t degree() const;
  std::uint32_t exponent(const VarId& v) const;
  /// Degree restricted to the non-parameter variables (d and lambdas).
  std::uint32_t structural_degree() const;
  Monomial without(const VarId& v) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) = default;

private:
  std::vector<Factor> factors_;
};

/// Graded lexicographic order, greatest first.
struct GrlexDesc {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Canonical multivariate polynomial over Scalar: no zero coefficients, terms
/// kept in descending graded-lex order, so equal polynomials compare equal
/// term by term.
class Poly {
public:
  using TermMap = std::map<Monomial, Scalar, GrlexDesc>;

  Poly() = default;
  Poly(const Scalar& c);
  Poly(long c) : Poly(Scalar(c)) {}
  Poly(int c) : Poly(Scalar(c)) {}
  static Poly var(const VarId& v);
  static Poly term(const Scalar& c, Monomial m);
  static Poly param(std::string_view name) { return var(VarId::param(name)); }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (zero when absent).
  Scalar constant_term() const;
  Scalar coefficient(const Monomial& m) const;
  std::size_t size() const { return terms_.size(); }
  std::uint32_t degree() const;
  std::uint32_t degree(const VarId& v) const;
  std::uint32_t structural_degree() const;
  bool contains(const VarId& v) const;
  std::set<VarId> variables() const;
  std::set<std::string> parameters() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Scalar& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly pow(unsigned e) const;

  /// Adds c*m in place.
  void add_term(const Monomial& m, const Scalar& c);

  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  /// Coefficient of v^e as a polynomial in the remaining variables.
  Poly coefficient_of(const VarId& v, std::uint32_t e) const;

  /// DSL spelling, e.g. "d^2*l - 3/2*alpha*l + 1".
  std::string str() const;

private:
  TermMap terms_;
};

std::ostream& operator<<(std::ostream& os, const Poly& p);

using Substitution = std::map<VarId, Poly>;
using Binding = std::map<std::string, Scalar>;

enum class PolyOp { Add, Sub, Mul };

/// Exact ring operation; throws ContextError when coefficients live in
/// different quadratic fields.
Poly poly_arith(const Poly& p, const Poly& q, PolyOp op);
Poly poly_scale(const Poly& p, const Scalar& c);

/// Replaces every occurrence of v by r.
Poly poly_subst(const Poly& p, const VarId& v, const Poly& r);
/// Replaces all listed variables at once (each by its image in the original).
Poly poly_subst(const Poly& p, const Substitution& s);
/// Substitutes bound parameters by their values; other variables stay.
Poly poly_eval_params(const Poly& p, const Binding& bind);
/// Remainder of p modulo m, where m is univariate in v with scalar
/// coefficients. Throws std::invalid_argument otherwise.
Poly poly_reduce_mod(const Poly& p, const VarId& v, const Poly& m);

/// P(d + shift, ...): shorthand for the derivation shift used everywhere.
Poly shift_partial(const Poly& p, const Poly& shift);

}  // namespace lca

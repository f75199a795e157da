#pragma once

#include "lca/conformal.hpp"
#include "lca/linsys.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lca {

/// The three extension shapes 0 -> bottom -> E -> top -> 0:
///   TrivialByModule  0 -> C c_eta -> E -> M -> 0        unknowns f_i(l)
///   ModuleByTrivial  0 -> M -> E -> C c_eta -> 0        unknowns f_i(d,l), p(d)
///   ModuleByModule   0 -> Mbar -> E -> M -> 0           unknowns f_i(d,l)
enum class ExtShape { TrivialByModule, ModuleByTrivial, ModuleByModule };

std::string shape_name(ExtShape s);  // "trivial-by-module", ...
/// Accepts the names above and the aliases V1..V3, W1..W3, T1..T3.
ExtShape parse_shape(const std::string& name);

/// Raised when a concrete solve meets a parameter without a value.
class UnboundParameter : public std::runtime_error {
public:
  explicit UnboundParameter(const std::string& name)
      : std::runtime_error("free parameter remains: " + name), name_(name) {}
  const std::string& name() const { return name_; }

private:
  std::string name_;
};

struct ExtProblem {
  ConformalAlgebra algebra;
  ExtShape shape;
  ConformalModule top;
  ConformalModule bottom;

  /// Throws std::invalid_argument when the modules do not fit the shape.
  void validate() const;
  ExtProblem eval(const Binding& bind) const;
  /// Names of parameters still symbolic anywhere in the problem.
  std::set<std::string> free_parameters() const;
};

/// One polynomial per generator, plus p(d) last for ModuleByTrivial.
using Cocycle = std::vector<Poly>;

std::vector<std::string> component_names(const ConformalAlgebra& alg, ExtShape shape);

struct Bounds {
  unsigned f = 8;
  unsigned p = 8;
};

/// Unknown polynomials expanded over explicit monomial lists; every monomial
/// coefficient is one unknown. An empty list pins the component to zero.
class Ansatz {
public:
  struct Component {
    std::string name;
    std::vector<Monomial> monomials;  // descending graded-lex
  };

  static Ansatz standard(const ConformalAlgebra& alg, ExtShape shape, Bounds bounds);
  /// Components in `active` are homogeneous of degree m in (d, l); the rest
  /// are zero.
  static Ansatz homogeneous(const ConformalAlgebra& alg, ExtShape shape, unsigned m,
                            const std::vector<std::size_t>& active);

  ExtShape shape() const { return shape_; }
  const std::vector<Component>& components() const { return comps_; }
  std::size_t size() const { return offsets_.back(); }
  std::size_t offset(std::size_t comp) const { return offsets_[comp]; }
  std::vector<std::string> unknown_names() const;

  Cocycle assemble(const Vector& v) const;
  /// Unit cocycle for one unknown.
  Cocycle unit(std::size_t unknown) const;
  /// Coordinates of a cocycle; nullopt if it uses a monomial outside the ansatz.
  std::optional<Vector> flatten(const Cocycle& c) const;

private:
  void finish();

  ExtShape shape_ = ExtShape::ModuleByModule;
  std::vector<Component> comps_;
  std::vector<std::size_t> offsets_{0};
};

/// Residual polynomials of the extension identities for a given cocycle; all
/// vanish exactly when the cocycle defines a module structure on E. Works with
/// symbolic parameters.
class CocycleEquations {
public:
  explicit CocycleEquations(const ExtProblem& prob);

  std::size_t size() const { return tags_.size(); }
  const std::vector<std::string>& tags() const { return tags_; }
  /// One residual per tag (zero polynomials included).
  std::vector<Poly> residuals(const Cocycle& c) const;
  AxiomReport check(const Cocycle& c) const;

private:
  struct Pair {
    std::size_t i, j;
    Poly aj_shift_l;  // A_j(d+l, m)
    Poly ai_shift_m;  // A_i(d+m, l)
    Poly bi;          // Abar_i(d, l)
    Poly bj_m;        // Abar_j(d, m)
    std::vector<Poly> left;  // C_ij^k(-l-m, l)
  };

  ExtProblem prob_;
  std::vector<Pair> pairs_;
  std::vector<std::string> tags_;
};

LinSystem build_cocycle_system(const ExtProblem& prob, const Ansatz& ansatz,
                               const Binding& bind = {});
std::vector<Cocycle> solve_cocycles(const LinSystem& sys, const Ansatz& ansatz);
/// Coboundary images, phi ranging over d^e for e <= bound (one generator for
/// TrivialByModule). Each is checked against the cocycle equations.
std::vector<Cocycle> coboundary_space(const ExtProblem& prob, unsigned bound,
                                      const Binding& bind = {});

struct ExtResult {
  std::vector<std::string> components;
  std::vector<Cocycle> cocycle_basis;
  std::vector<Cocycle> coboundary_basis;
  std::vector<Cocycle> representatives;
  std::size_t ext_dim = 0;
  std::size_t ext_dim_next = 0;  // at bound + 2
  bool stabilized = false;
  Bounds bounds;
  std::size_t unknowns = 0;
  std::size_t rows = 0;
  std::vector<std::string> warnings;
};

ExtResult ext_dim(const ExtProblem& prob, const Binding& bind = {}, Bounds bounds = {});

/// Dimension of the span of concrete cocycles (all of one shape).
std::size_t span_rank(const std::vector<Cocycle>& cs);

struct ScanPoint {
  std::string label;
  ConformalModule top;
  ConformalModule bottom;
};

struct ScanResult {
  std::string label;
  std::vector<Cocycle> solutions;
};

/// Solves the ModuleByModule (or other) system with a homogeneous ansatz of
/// degree m on the `active` components at each grid point; returns only the
/// points with nonzero solutions.
std::vector<ScanResult> homogeneous_scan(const ConformalAlgebra& alg, ExtShape shape,
                                         const std::vector<ScanPoint>& grid, unsigned m,
                                         const std::vector<std::size_t>& active);

}  // namespace lca

#pragma once

#include "lca/dsl.hpp"
#include "lca/extsolver.hpp"
#include "lca/families.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lca {

/// The standard problem of a family and shape. Module parameters are named
/// alpha, beta, gamma (top free module), alphabar, betabar, gammabar (bottom
/// free module) and eta (trivial module); `sub` replaces any of them and the
/// family parameters. Family parameters may only be replaced by constants.
/// gamma and gammabar enter only over W(1,0) and TSV(1,0).
ExtProblem standard_problem(Family f, ExtShape s, const Substitution& sub = {});
ExtProblem standard_problem(Family f, ExtShape s, const Binding& bind);

/// Parameter names a concrete standard problem needs.
std::vector<std::string> standard_params(Family f, ExtShape s);

/// One free coefficient of an entry: numer / denom, denom a guarded polynomial.
struct CatalogGen {
  std::string coeff;
  Poly denom{1};
  Cocycle numer;
};

struct CatalogEntry {
  std::string id;
  Family family = Family::Vir;
  ExtShape shape = ExtShape::ModuleByModule;
  std::string source;
  Substitution subst;  // every equality guard, composed
  std::vector<dsl::Requirement> requires_;  // inequality guards, subst applied
  std::optional<std::pair<std::string, Poly>> minpoly;
  std::optional<std::string> shift;
  std::optional<std::string> suspicious;
  std::vector<std::string> notes;
  std::vector<CatalogGen> gens;  // subst and shift applied
  std::vector<std::string> components;

  ExtProblem problem() const { return standard_problem(family, shape, subst); }
  /// Guards hold at a concrete binding (which must cover standard_params).
  bool matches(const Binding& bind) const;
  /// Generators evaluated at a binding where the entry matches.
  std::vector<Cocycle> instantiate(const Binding& bind) const;
};

class Catalog {
public:
  /// Builds entries from a parsed document; throws std::invalid_argument on
  /// malformed or unguarded entries.
  static Catalog from_doc(const dsl::SourceDoc& doc);
  static Catalog load(const std::string& text) { return from_doc(dsl::parse(text)); }
  /// The compiled-in data file, loaded once.
  static const Catalog& builtin();

  const std::vector<CatalogEntry>& entries() const { return entries_; }
  const CatalogEntry* find(const std::string& id) const;
  std::vector<const CatalogEntry*> entries_for(Family f, ExtShape s, const Binding& bind) const;

private:
  std::vector<CatalogEntry> entries_;
};

/// Fills defaults (gamma = gammabar = 0) and checks every needed parameter is
/// bound; throws UnboundParameter otherwise.
Binding complete_binding(Family f, ExtShape s, Binding bind);

/// Substitutes each generator numerator into the symbolic cocycle equations.
/// Residuals are reduced modulo the entry's minimal polynomial when present.
AxiomReport verify_entry(const CatalogEntry& e);

struct Comparison {
  std::size_t predicted = 0;
  std::size_t computed = 0;
  bool stabilized = false;
  bool gens_are_cocycles = true;  // every instantiated generator solves the system
  bool covered = true;            // computed classes lie in span(generators) mod coboundaries
  bool match = false;             // predicted == computed and covered
  std::vector<std::string> entries;
  std::vector<std::string> suspicious;
  std::vector<Cocycle> predicted_gens;
  ExtResult result;
  std::vector<std::string> warnings;
};

Comparison compare(const Catalog& cat, Family f, ExtShape s, const Binding& bind, Bounds bounds = {});

}  // namespace lca

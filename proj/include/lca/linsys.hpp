#pragma once

#include "lca/scalar.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace lca {

using Vector = std::vector<Scalar>;

/// Sparse row: (column, value) pairs with strictly increasing columns and no
/// zero values.
struct SparseRow {
  std::vector<std::pair<std::size_t, Scalar>> entries;
  Scalar rhs;

  bool empty() const { return entries.empty(); }
};

/// Linear system over named unknowns. Cocycle systems are homogeneous.
class LinSystem {
public:
  LinSystem() = default;
  explicit LinSystem(std::vector<std::string> unknowns) : unknowns_(std::move(unknowns)) {}

  std::size_t add_unknown(std::string name);
  /// Adds a row, sorting and merging its entries. Rows referencing an
  /// undeclared unknown throw std::out_of_range. Zero rows are dropped.
  void add_row(std::vector<std::pair<std::size_t, Scalar>> entries, Scalar rhs = Scalar());

  const std::vector<std::string>& unknowns() const { return unknowns_; }
  const std::vector<SparseRow>& rows() const { return rows_; }
  std::size_t num_unknowns() const { return unknowns_.size(); }
  bool homogeneous() const;

private:
  std::vector<std::string> unknowns_;
  std::vector<SparseRow> rows_;
};

/// Exact basis of the solution space of a homogeneous system. Each vector is
/// scaled so its first nonzero entry is 1; the basis is the reduced one (one
/// vector per free column). Throws std::invalid_argument for a nonzero rhs.
std::vector<Vector> nullspace(const LinSystem& sys);
std::size_t rank(const LinSystem& sys);

/// Reduced row echelon form of a dense matrix (rows are vectors); zero rows
/// are removed. pivots receives the pivot column of each returned row.
std::vector<Vector> rref(std::vector<Vector> rows, std::vector<std::size_t>* pivots = nullptr);
std::size_t rank(const std::vector<Vector>& rows);

/// Reduces v against a matrix already in reduced row echelon form.
Vector reduce_against(Vector v, const std::vector<Vector>& echelon,
                      const std::vector<std::size_t>& pivots);

/// Row-vector dot product.
Scalar dot(const SparseRow& row, const Vector& v);

}  // namespace lca

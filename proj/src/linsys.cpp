#include "lca/linsys.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>

namespace lca {

std::size_t LinSystem::add_unknown(std::string name) {
  unknowns_.push_back(std::move(name));
  return unknowns_.size() - 1;
}

void LinSystem::add_row(std::vector<std::pair<std::size_t, Scalar>> entries, Scalar rhs) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  SparseRow row;
  row.rhs = std::move(rhs);
  for (auto& [col, val] : entries) {
    if (col >= unknowns_.size())
      throw std::out_of_range("row references undeclared unknown #" + std::to_string(col));
    if (!row.entries.empty() && row.entries.back().first == col)
      row.entries.back().second += val;
    else
      row.entries.emplace_back(col, std::move(val));
    if (row.entries.back().second.is_zero()) row.entries.pop_back();
  }
  if (row.entries.empty() && row.rhs.is_zero()) return;
  rows_.push_back(std::move(row));
}

bool LinSystem::homogeneous() const {
  return std::all_of(rows_.begin(), rows_.end(), [](const SparseRow& r) { return r.rhs.is_zero(); });
}

Scalar dot(const SparseRow& row, const Vector& v) {
  Scalar s;
  for (const auto& [col, val] : row.entries)
    if (!v[col].is_zero()) s += val * v[col];
  return s;
}

namespace {

// ---- arithmetic modulo the Mersenne prime 2^61 - 1 ---------------------------

constexpr std::uint64_t kP = (std::uint64_t{1} << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 x = static_cast<unsigned __int128>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(x & kP);
  std::uint64_t hi = static_cast<std::uint64_t>(x >> 61);
  std::uint64_t s = lo + hi;
  return s >= kP ? s - kP : s;
}

std::uint64_t submod(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kP - b; }

std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a) { return powmod(a, kP - 2); }

std::uint64_t mpz_mod_p(const Integer& z) {
  Integer r = z % Integer(static_cast<unsigned long>(kP));
  if (r < 0) r += static_cast<unsigned long>(kP);
  return r.get_ui();
}

std::optional<std::uint64_t> to_mod(const Rational& q) {
  std::uint64_t den = mpz_mod_p(q.get_den());
  if (den == 0) return std::nullopt;
  return mulmod(mpz_mod_p(q.get_num()), invmod(den));
}

// Wang's rational reconstruction: a/b == u (mod p) with |a|, b < sqrt(p/2).
std::optional<Rational> reconstruct(std::uint64_t u) {
  const __int128 bound = 1073741823;  // floor(sqrt((2^61-1)/2))
  __int128 r0 = kP, r1 = u, t0 = 0, t1 = 1;
  while (r1 > bound) {
    __int128 q = r0 / r1;
    __int128 r2 = r0 - q * r1, t2 = t0 - q * t1;
    r0 = r1, r1 = r2, t0 = t1, t1 = t2;
  }
  if (t1 == 0 || (t1 < 0 ? -t1 : t1) > bound) return std::nullopt;
  if (t1 < 0) r1 = -r1, t1 = -t1;
  Rational out(Integer(static_cast<long>(r1)), Integer(static_cast<long>(t1)));
  out.canonicalize();
  // gcd(a, b) must be 1 for a unique answer
  if (out.get_den() != Integer(static_cast<long>(t1))) return std::nullopt;
  return out;
}

struct ModRref {
  std::vector<std::vector<std::uint64_t>> rows;  // reduced, pivot entries 1
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> source;  // originating row of each pivot row
};

// Incremental elimination modulo p. Returns nullopt if some entry has a
// denominator divisible by p.
std::optional<ModRref> mod_rref(const std::vector<SparseRow>& rows, std::size_t n) {
  ModRref m;
  std::vector<std::uint64_t> v(n);
  for (std::size_t ri = 0; ri < rows.size(); ++ri) {
    std::fill(v.begin(), v.end(), 0);
    for (const auto& [col, val] : rows[ri].entries) {
      auto x = to_mod(val.re());
      if (!x) return std::nullopt;
      v[col] = *x;
    }
    for (std::size_t k = 0; k < m.rows.size(); ++k) {
      std::uint64_t f = v[m.pivots[k]];
      if (f == 0) continue;
      const auto& pr = m.rows[k];
      for (std::size_t c = m.pivots[k]; c < n; ++c)
        if (pr[c]) v[c] = submod(v[c], mulmod(f, pr[c]));
    }
    auto it = std::find_if(v.begin(), v.end(), [](std::uint64_t x) { return x != 0; });
    if (it == v.end()) continue;
    std::size_t piv = static_cast<std::size_t>(it - v.begin());
    std::uint64_t inv = invmod(v[piv]);
    for (std::size_t c = piv; c < n; ++c)
      if (v[c]) v[c] = mulmod(v[c], inv);
    // keep the pivot list sorted by column
    auto pos = std::upper_bound(m.pivots.begin(), m.pivots.end(), piv) - m.pivots.begin();
    m.rows.insert(m.rows.begin() + pos, v);
    m.pivots.insert(m.pivots.begin() + pos, piv);
    m.source.insert(m.source.begin() + pos, ri);
  }
  // back-substitution to reduced form
  for (std::size_t k = m.rows.size(); k-- > 0;) {
    for (std::size_t j = 0; j < k; ++j) {
      std::uint64_t f = m.rows[j][m.pivots[k]];
      if (f == 0) continue;
      for (std::size_t c = m.pivots[k]; c < n; ++c)
        if (m.rows[k][c]) m.rows[j][c] = submod(m.rows[j][c], mulmod(f, m.rows[k][c]));
    }
  }
  return m;
}

std::vector<std::size_t> free_columns(const std::vector<std::size_t>& pivots, std::size_t n) {
  std::vector<std::size_t> out;
  std::size_t k = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (k < pivots.size() && pivots[k] == c)
      ++k;
    else
      out.push_back(c);
  }
  return out;
}

bool satisfies_all(const std::vector<SparseRow>& rows, const std::vector<Vector>& basis) {
  for (const auto& row : rows)
    for (const auto& v : basis)
      if (!dot(row, v).is_zero()) return false;
  return true;
}

void normalize_first(Vector& v) {
  for (const auto& x : v) {
    if (x.is_zero()) continue;
    if (!x.is_one()) {
      Scalar inv = x.inverse();
      for (auto& y : v) y *= inv;
    }
    return;
  }
}

// Reconstructs the reduced nullspace basis from the modular RREF.
std::optional<std::vector<Vector>> lift_basis(const ModRref& m, std::size_t n) {
  std::vector<Vector> basis;
  for (std::size_t f : free_columns(m.pivots, n)) {
    Vector v(n);
    v[f] = Scalar(1);
    for (std::size_t k = 0; k < m.rows.size(); ++k) {
      if (m.pivots[k] > f) break;
      std::uint64_t x = m.rows[k][f];
      if (x == 0) continue;
      auto q = reconstruct(submod(0, x));
      if (!q) return std::nullopt;
      v[m.pivots[k]] = Scalar(*q);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

// ---- exact fraction-free elimination over Z ----------------------------------

using IntRow = std::vector<Integer>;

IntRow to_int_row(const SparseRow& row, std::size_t n) {
  Integer l = 1;
  for (const auto& [c, v] : row.entries) l = lcm(l, v.re().get_den());
  IntRow out(n);
  for (const auto& [c, v] : row.entries) out[c] = v.re().get_num() * (l / v.re().get_den());
  return out;
}

void make_primitive(IntRow& r) {
  Integer g = 0;
  for (const auto& x : r)
    if (x != 0) {
      g = gcd(g, x);
      if (g == 1) return;
    }
  if (g > 1)
    for (auto& x : r)
      if (x != 0) x /= g;
}

std::vector<Vector> exact_nullspace_rational(const std::vector<SparseRow>& rows, std::size_t n) {
  std::vector<IntRow> m;
  m.reserve(rows.size());
  for (const auto& r : rows) m.push_back(to_int_row(r, n));
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m.size(); ++c) {
    std::size_t best = m.size();
    for (std::size_t i = r; i < m.size(); ++i)
      if (m[i][c] != 0 && (best == m.size() || abs(m[i][c]) < abs(m[best][c]))) best = i;
    if (best == m.size()) continue;
    std::swap(m[r], m[best]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      if (m[i][c] == 0) continue;
      Integer g = gcd(m[r][c], m[i][c]);
      Integer a = m[r][c] / g, b = m[i][c] / g;
      for (std::size_t j = c; j < n; ++j) m[i][j] = a * m[i][j] - b * m[r][j];
      make_primitive(m[i]);
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<Vector> basis;
  for (std::size_t f : free_columns(pivots, n)) {
    std::vector<Rational> x(n);
    x[f] = 1;
    for (std::size_t k = pivots.size(); k-- > 0;) {
      std::size_t pc = pivots[k];
      Rational s = 0;
      for (std::size_t j = pc + 1; j < n; ++j)
        if (m[k][j] != 0 && x[j] != 0) s += Rational(m[k][j]) * x[j];
      x[pc] = -s / Rational(m[k][pc]);
    }
    Vector v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = Scalar(x[j]);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Vector> dense_rows(const std::vector<SparseRow>& rows, std::size_t n) {
  std::vector<Vector> out;
  for (const auto& r : rows) {
    Vector v(n);
    for (const auto& [c, x] : r.entries) v[c] = x;
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Vector> nullspace_from_rref(const std::vector<Vector>& e,
                                        const std::vector<std::size_t>& pivots, std::size_t n) {
  std::vector<Vector> basis;
  for (std::size_t f : free_columns(pivots, n)) {
    Vector v(n);
    v[f] = Scalar(1);
    for (std::size_t k = 0; k < e.size(); ++k)
      if (!e[k][f].is_zero()) v[pivots[k]] = -e[k][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

std::vector<Vector> nullspace(const LinSystem& sys) {
  if (!sys.homogeneous()) throw std::invalid_argument("nullspace needs a homogeneous system");
  const std::size_t n = sys.num_unknowns();
  const auto& rows = sys.rows();
  bool rational = std::all_of(rows.begin(), rows.end(), [](const SparseRow& r) {
    return std::all_of(r.entries.begin(), r.entries.end(),
                       [](const auto& e) { return e.second.is_rational(); });
  });

  std::vector<Vector> basis;
  if (!rational) {
    std::vector<std::size_t> piv;
    auto e = rref(dense_rows(rows, n), &piv);
    basis = nullspace_from_rref(e, piv, n);
  } else {
    auto mod = mod_rref(rows, n);
    std::optional<std::vector<Vector>> lifted;
    if (mod) lifted = lift_basis(*mod, n);
    if (lifted && satisfies_all(rows, *lifted)) {
      basis = std::move(*lifted);
    } else {
      // Exact path on the independent subset found modulo p, enlarged until
      // every original row is satisfied.
      std::vector<SparseRow> subset;
      std::vector<bool> used(rows.size(), false);
      if (mod)
        for (auto s : mod->source) used[s] = true;
      else
        std::fill(used.begin(), used.end(), true);
      for (;;) {
        subset.clear();
        for (std::size_t i = 0; i < rows.size(); ++i)
          if (used[i]) subset.push_back(rows[i]);
        basis = exact_nullspace_rational(subset, n);
        bool added = false;
        for (std::size_t i = 0; i < rows.size(); ++i) {
          if (used[i]) continue;
          for (const auto& v : basis)
            if (!dot(rows[i], v).is_zero()) {
              used[i] = true, added = true;
              break;
            }
        }
        if (!added) break;
      }
    }
  }
  for (auto& v : basis) normalize_first(v);
  return basis;
}

std::size_t rank(const LinSystem& sys) { return sys.num_unknowns() - nullspace(sys).size(); }

std::vector<Vector> rref(std::vector<Vector> rows, std::vector<std::size_t>* pivots) {
  std::vector<std::size_t> piv;
  if (rows.empty()) {
    if (pivots) pivots->clear();
    return rows;
  }
  const std::size_t n = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    Scalar inv = rows[r][c].inverse();
    for (std::size_t j = c; j < n; ++j)
      if (!rows[r][j].is_zero()) rows[r][j] *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      Scalar f = rows[i][c];
      for (std::size_t j = c; j < n; ++j)
        if (!rows[r][j].is_zero()) rows[i][j] -= f * rows[r][j];
    }
    piv.push_back(c);
    ++r;
  }
  rows.resize(r);
  if (pivots) *pivots = std::move(piv);
  return rows;
}

std::size_t rank(const std::vector<Vector>& rows) { return rref(rows).size(); }

Vector reduce_against(Vector v, const std::vector<Vector>& echelon,
                      const std::vector<std::size_t>& pivots) {
  for (std::size_t k = 0; k < echelon.size(); ++k) {
    Scalar f = v[pivots[k]];
    if (f.is_zero()) continue;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (!echelon[k][j].is_zero()) v[j] -= f * echelon[k][j];
  }
  return v;
}

}  // namespace lca

#include "lca/extsolver.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace lca {

namespace {

Poly d() { return Poly::var(kPartial); }
Poly l() { return Poly::var(kLambda); }
Poly m() { return Poly::var(kMu); }

bool bottom_trivial(ExtShape s) { return s == ExtShape::TrivialByModule; }
bool top_trivial(ExtShape s) { return s == ExtShape::ModuleByTrivial; }

// Monomials d^a l^b with a + b <= n (or == n when exact), descending grlex.
std::vector<Monomial> dl_monomials(unsigned n, bool exact) {
  std::vector<Monomial> out;
  for (unsigned deg = exact ? n : 0; deg <= n; ++deg)
    for (unsigned a = 0; a <= deg; ++a)
      out.push_back(Monomial::of(kPartial, a) * Monomial::of(kLambda, deg - a));
  std::sort(out.begin(), out.end(), GrlexDesc());
  return out;
}

std::vector<Monomial> powers(const VarId& v, unsigned lo, unsigned hi) {
  std::vector<Monomial> out;
  for (unsigned e = hi + 1; e-- > lo;) out.push_back(Monomial::of(v, e));
  return out;
}

}  // namespace

std::string shape_name(ExtShape s) {
  switch (s) {
    case ExtShape::TrivialByModule: return "trivial-by-module";
    case ExtShape::ModuleByTrivial: return "module-by-trivial";
    case ExtShape::ModuleByModule: return "module-by-module";
  }
  return "?";
}

ExtShape parse_shape(const std::string& name) {
  std::string s;
  for (char c : name) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "trivial-by-module" || s == "v1" || s == "w1" || s == "t1") return ExtShape::TrivialByModule;
  if (s == "module-by-trivial" || s == "v2" || s == "w2" || s == "t2") return ExtShape::ModuleByTrivial;
  if (s == "module-by-module" || s == "v3" || s == "w3" || s == "t3") return ExtShape::ModuleByModule;
  throw std::invalid_argument("unknown shape '" + name +
                              "' (expected trivial-by-module, module-by-trivial or module-by-module)");
}

// ---- problem ------------------------------------------------------------------

void ExtProblem::validate() const {
  const std::size_t n = algebra.size();
  if (top.action().size() != n || bottom.action().size() != n)
    throw std::invalid_argument("modules do not match algebra " + algebra.name());
  bool want_top_trivial = top_trivial(shape), want_bottom_trivial = bottom_trivial(shape);
  if (top.is_trivial() != want_top_trivial)
    throw std::invalid_argument("shape " + shape_name(shape) + " needs a " +
                                (want_top_trivial ? "trivial" : "free rank-one") + " top module");
  if (bottom.is_trivial() != want_bottom_trivial)
    throw std::invalid_argument("shape " + shape_name(shape) + " needs a " +
                                (want_bottom_trivial ? "trivial" : "free rank-one") +
                                " bottom module");
}

ExtProblem ExtProblem::eval(const Binding& bind) const {
  return ExtProblem{algebra.eval(bind), shape, top.eval(bind), bottom.eval(bind)};
}

std::set<std::string> ExtProblem::free_parameters() const {
  std::set<std::string> out;
  auto take = [&](const Poly& p) {
    for (const auto& s : p.parameters()) out.insert(s);
  };
  for (std::size_t i = 0; i < algebra.size(); ++i)
    for (std::size_t j = 0; j < algebra.size(); ++j)
      for (const auto& c : algebra.bracket(i, j)) take(c);
  for (const auto* mod : {&top, &bottom}) {
    for (const auto& a : mod->action()) take(a);
    take(mod->eta());
  }
  return out;
}

std::vector<std::string> component_names(const ConformalAlgebra& alg, ExtShape shape) {
  std::vector<std::string> out = alg.gens();
  if (shape == ExtShape::ModuleByTrivial) out.push_back("p");
  return out;
}

// ---- ansatz -------------------------------------------------------------------

void Ansatz::finish() {
  offsets_.assign(1, 0);
  for (const auto& c : comps_) offsets_.push_back(offsets_.back() + c.monomials.size());
}

Ansatz Ansatz::standard(const ConformalAlgebra& alg, ExtShape shape, Bounds bounds) {
  Ansatz a;
  a.shape_ = shape;
  for (const auto& name : component_names(alg, shape)) {
    Component c{name, {}};
    if (shape == ExtShape::TrivialByModule)
      c.monomials = powers(kLambda, 0, bounds.f);
    else if (name == "p" && a.comps_.size() == alg.size())
      c.monomials = powers(kPartial, 0, bounds.p);
    else
      c.monomials = dl_monomials(bounds.f, false);
    a.comps_.push_back(std::move(c));
  }
  a.finish();
  return a;
}

Ansatz Ansatz::homogeneous(const ConformalAlgebra& alg, ExtShape shape, unsigned deg,
                           const std::vector<std::size_t>& active) {
  Ansatz a;
  a.shape_ = shape;
  auto names = component_names(alg, shape);
  for (std::size_t k = 0; k < names.size(); ++k) {
    Component c{names[k], {}};
    if (std::find(active.begin(), active.end(), k) != active.end()) {
      if (shape == ExtShape::TrivialByModule)
        c.monomials = {Monomial::of(kLambda, deg)};
      else if (k == alg.size())
        c.monomials = {Monomial::of(kPartial, deg)};
      else
        c.monomials = dl_monomials(deg, true);
    }
    a.comps_.push_back(std::move(c));
  }
  a.finish();
  return a;
}

std::vector<std::string> Ansatz::unknown_names() const {
  std::vector<std::string> out;
  for (const auto& c : comps_)
    for (const auto& mono : c.monomials) out.push_back(c.name + "[" + Poly::term(1, mono).str() + "]");
  return out;
}

Cocycle Ansatz::assemble(const Vector& v) const {
  Cocycle out(comps_.size());
  for (std::size_t k = 0; k < comps_.size(); ++k)
    for (std::size_t t = 0; t < comps_[k].monomials.size(); ++t)
      out[k].add_term(comps_[k].monomials[t], v[offsets_[k] + t]);
  return out;
}

Cocycle Ansatz::unit(std::size_t u) const {
  Cocycle out(comps_.size());
  std::size_t k = static_cast<std::size_t>(
      std::upper_bound(offsets_.begin(), offsets_.end(), u) - offsets_.begin() - 1);
  out[k] = Poly::term(1, comps_[k].monomials[u - offsets_[k]]);
  return out;
}

std::optional<Vector> Ansatz::flatten(const Cocycle& c) const {
  if (c.size() != comps_.size()) return std::nullopt;
  Vector v(size());
  for (std::size_t k = 0; k < comps_.size(); ++k)
    for (const auto& [mono, coef] : c[k].terms()) {
      const auto& ms = comps_[k].monomials;
      auto it = std::find(ms.begin(), ms.end(), mono);
      if (it == ms.end()) return std::nullopt;
      v[offsets_[k] + static_cast<std::size_t>(it - ms.begin())] = coef;
    }
  return v;
}

// ---- equations ----------------------------------------------------------------

CocycleEquations::CocycleEquations(const ExtProblem& prob) : prob_(prob) {
  prob.validate();
  const auto& alg = prob.algebra;
  const std::size_t n = alg.size();
  // With skew-symmetry the (j,i) identity is the (i,j) one with l and m
  // swapped, so unordered pairs suffice.
  bool skew = check_skew(alg).ok;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = skew ? i : 0; j < n; ++j) {
      Pair p;
      p.i = i, p.j = j;
      p.aj_shift_l = at(prob.top.action(j), d() + l(), m());
      p.ai_shift_m = at(prob.top.action(i), d() + m(), l());
      p.bi = prob.bottom.action(i);
      p.bj_m = at(prob.bottom.action(j), d(), m());
      for (std::size_t k = 0; k < n; ++k) p.left.push_back(at(alg.coeff(i, j, k), -l() - m(), l()));
      pairs_.push_back(std::move(p));
      tags_.push_back("[" + alg.gens()[i] + " " + alg.gens()[j] + "]");
    }
  if (prob.shape == ExtShape::ModuleByTrivial)
    for (std::size_t i = 0; i < n; ++i) tags_.push_back("d-relation " + alg.gens()[i]);
}

std::vector<Poly> CocycleEquations::residuals(const Cocycle& c) const {
  const auto& prob = prob_;
  const std::size_t n = prob.algebra.size();
  if (c.size() != component_names(prob.algebra, prob.shape).size())
    throw std::invalid_argument("cocycle has the wrong number of components");

  struct Images {
    Poly shift_l, shift_m, at_m, sum;
  };
  std::vector<Images> img(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (c[k].is_zero()) continue;
    img[k].shift_l = at(c[k], d() + l(), m());  // F(d+l, m)
    img[k].shift_m = at(c[k], d() + m(), l());  // F(d+m, l)
    img[k].at_m = at(c[k], d(), m());           // F(d, m)
    img[k].sum = at(c[k], d(), l() + m());      // F(d, l+m)
  }

  std::vector<Poly> out;
  out.reserve(tags_.size());
  for (const auto& p : pairs_) {
    // g_i _l g_j _m x - g_j _m g_i _l x - [g_i _l g_j]_{l+m} x, component along y
    Poly r;
    if (!c[p.i].is_zero()) {
      r += p.aj_shift_l * c[p.i];
      r -= img[p.i].shift_m * p.bj_m;
    }
    if (!c[p.j].is_zero()) {
      r += img[p.j].shift_l * p.bi;
      r -= p.ai_shift_m * img[p.j].at_m;
    }
    for (std::size_t k = 0; k < n; ++k)
      if (!c[k].is_zero() && !p.left[k].is_zero()) r -= p.left[k] * img[k].sum;
    // On C c_eta the derivation acts by eta.
    if (prob.bottom.is_trivial()) r = poly_subst(r, kPartial, prob.bottom.eta());
    out.push_back(std::move(r));
  }
  if (prob.shape == ExtShape::ModuleByTrivial) {
    // [d, g_i _l] = -l g_i _l on c_eta, with d c = eta c + p(d) v
    const Poly& pp = c[n];
    Poly p_shift = pp.is_zero() ? Poly() : poly_subst(pp, kPartial, d() + l());
    for (std::size_t i = 0; i < n; ++i)
      out.push_back((d() + l() - prob.top.eta()) * c[i] - p_shift * prob.bottom.action(i));
  }
  return out;
}

AxiomReport CocycleEquations::check(const Cocycle& c) const {
  AxiomReport rep;
  auto res = residuals(c);
  for (std::size_t e = 0; e < res.size(); ++e) rep.add(tags_[e], std::move(res[e]));
  return rep;
}

// ---- solving ------------------------------------------------------------------

namespace {

ExtProblem concrete(const ExtProblem& prob, const Binding& bind) {
  ExtProblem out = prob.eval(bind);
  out.validate();
  auto free = out.free_parameters();
  if (!free.empty()) throw UnboundParameter(*free.begin());
  return out;
}

LinSystem system_for(const ExtProblem& prob, const Ansatz& ansatz) {
  CocycleEquations eqs(prob);
  using RowMap = std::map<Monomial, std::vector<std::pair<std::size_t, Scalar>>, GrlexDesc>;
  std::vector<RowMap> rows(eqs.size());
  for (std::size_t u = 0; u < ansatz.size(); ++u) {
    auto res = eqs.residuals(ansatz.unit(u));
    for (std::size_t e = 0; e < res.size(); ++e)
      for (const auto& [mono, c] : res[e].terms()) rows[e][mono].emplace_back(u, c);
  }
  LinSystem sys(ansatz.unknown_names());
  for (auto& eq : rows)
    for (auto& [mono, entries] : eq) sys.add_row(std::move(entries));
  return sys;
}

std::vector<Cocycle> coboundaries_concrete(const ExtProblem& prob, unsigned bound) {
  const std::size_t n = prob.algebra.size();
  std::vector<Cocycle> out;
  auto push = [&](Cocycle c) {
    if (std::any_of(c.begin(), c.end(), [](const Poly& p) { return !p.is_zero(); }))
      out.push_back(std::move(c));
  };
  switch (prob.shape) {
    case ExtShape::TrivialByModule: {
      Cocycle c(n);
      for (std::size_t i = 0; i < n; ++i) c[i] = at(prob.top.action(i), prob.bottom.eta(), l());
      push(std::move(c));
      break;
    }
    case ExtShape::ModuleByTrivial:
      for (unsigned e = 0; e <= bound; ++e) {
        Cocycle c(n + 1);
        Poly phi_shift = (d() + l()).pow(e);
        for (std::size_t i = 0; i < n; ++i) c[i] = prob.bottom.action(i) * phi_shift;
        c[n] = (d() - prob.top.eta()) * d().pow(e);
        push(std::move(c));
      }
      break;
    case ExtShape::ModuleByModule:
      for (unsigned e = 0; e <= bound; ++e) {
        Cocycle c(n);
        Poly phi = d().pow(e), phi_shift = (d() + l()).pow(e);
        for (std::size_t i = 0; i < n; ++i)
          c[i] = prob.top.action(i) * phi - prob.bottom.action(i) * phi_shift;
        push(std::move(c));
      }
      break;
  }
  CocycleEquations eqs(prob);
  for (const auto& c : out)
    if (!eqs.check(c).ok) throw std::logic_error("coboundary image fails the cocycle equations");
  return out;
}

// Joint coordinates over (component, monomial), ordered by component and then
// by descending graded-lex monomial.
class Coordinates {
public:
  void add(const Cocycle& c) {
    if (index_.size() < c.size()) index_.resize(c.size());
    for (std::size_t k = 0; k < c.size(); ++k)
      for (const auto& [mono, coef] : c[k].terms()) index_[k].emplace(mono, 0);
  }
  void add(const Ansatz& a) {
    if (index_.size() < a.components().size()) index_.resize(a.components().size());
    for (std::size_t k = 0; k < a.components().size(); ++k)
      for (const auto& mono : a.components()[k].monomials) index_[k].emplace(mono, 0);
  }
  void freeze() {
    std::size_t pos = 0;
    for (auto& comp : index_)
      for (auto& [mono, idx] : comp) idx = pos++;
    size_ = pos;
  }
  Vector vec(const Cocycle& c) const {
    Vector v(size_);
    for (std::size_t k = 0; k < c.size(); ++k)
      for (const auto& [mono, coef] : c[k].terms()) v[index_[k].at(mono)] = coef;
    return v;
  }
  Cocycle cocycle(const Vector& v) const {
    Cocycle c(index_.size());
    for (std::size_t k = 0; k < index_.size(); ++k)
      for (const auto& [mono, idx] : index_[k]) c[k].add_term(mono, v[idx]);
    return c;
  }

private:
  std::vector<std::map<Monomial, std::size_t, GrlexDesc>> index_;
  std::size_t size_ = 0;
};

struct Level {
  std::vector<Cocycle> cocycles, coboundaries, reps;
  std::size_t rows = 0, unknowns = 0;
};

Level solve_level(const ExtProblem& prob, Bounds bounds) {
  Level lv;
  Ansatz ansatz = Ansatz::standard(prob.algebra, prob.shape, bounds);
  LinSystem sys = system_for(prob, ansatz);
  lv.rows = sys.rows().size();
  lv.unknowns = sys.num_unknowns();
  lv.cocycles = solve_cocycles(sys, ansatz);
  lv.coboundaries = coboundaries_concrete(prob, bounds.f);

  Coordinates coords;
  coords.add(ansatz);
  for (const auto& b : lv.coboundaries) coords.add(b);
  coords.freeze();
  std::vector<Vector> bvecs;
  for (const auto& b : lv.coboundaries) bvecs.push_back(coords.vec(b));
  std::vector<std::size_t> piv;
  auto eb = rref(bvecs, &piv);
  std::vector<Vector> reduced;
  for (const auto& z : lv.cocycles) reduced.push_back(reduce_against(coords.vec(z), eb, piv));
  for (const auto& row : rref(reduced)) lv.reps.push_back(coords.cocycle(row));
  return lv;
}

bool degenerate(const ConformalModule& mod) {
  if (mod.is_trivial()) return false;
  if (mod.action(0).contains(kLambda)) return false;
  for (std::size_t i = 1; i < mod.action().size(); ++i)
    if (!mod.action(i).is_zero()) return false;
  return true;
}

}  // namespace

LinSystem build_cocycle_system(const ExtProblem& prob, const Ansatz& ansatz, const Binding& bind) {
  return system_for(concrete(prob, bind), ansatz);
}

std::vector<Cocycle> solve_cocycles(const LinSystem& sys, const Ansatz& ansatz) {
  std::vector<Cocycle> out;
  for (const auto& v : nullspace(sys)) out.push_back(ansatz.assemble(v));
  return out;
}

std::vector<Cocycle> coboundary_space(const ExtProblem& prob, unsigned bound, const Binding& bind) {
  return coboundaries_concrete(concrete(prob, bind), bound);
}

ExtResult ext_dim(const ExtProblem& prob, const Binding& bind, Bounds bounds) {
  ExtProblem cp = concrete(prob, bind);
  ExtResult res;
  res.components = component_names(cp.algebra, cp.shape);
  res.bounds = bounds;
  Level lv = solve_level(cp, bounds);
  res.cocycle_basis = std::move(lv.cocycles);
  res.coboundary_basis = std::move(lv.coboundaries);
  res.representatives = std::move(lv.reps);
  res.ext_dim = res.representatives.size();
  res.rows = lv.rows;
  res.unknowns = lv.unknowns;
  res.ext_dim_next = solve_level(cp, Bounds{bounds.f + 2, bounds.p + 2}).reps.size();
  res.stabilized = res.ext_dim == res.ext_dim_next;
  if (!res.stabilized)
    res.warnings.push_back("not stabilized: ext_dim " + std::to_string(res.ext_dim) + " at bound " +
                           std::to_string(bounds.f) + ", " + std::to_string(res.ext_dim_next) +
                           " at bound " + std::to_string(bounds.f + 2));
  for (const auto* mod : {&cp.top, &cp.bottom})
    if (degenerate(*mod))
      res.warnings.push_back("module " + mod->name() + " has alpha = 0 and is not irreducible");
  return res;
}

std::size_t span_rank(const std::vector<Cocycle>& cs) {
  Coordinates coords;
  for (const auto& c : cs) coords.add(c);
  coords.freeze();
  std::vector<Vector> vs;
  for (const auto& c : cs) vs.push_back(coords.vec(c));
  return rank(vs);
}

std::vector<ScanResult> homogeneous_scan(const ConformalAlgebra& alg, ExtShape shape,
                                         const std::vector<ScanPoint>& grid, unsigned deg,
                                         const std::vector<std::size_t>& active) {
  Ansatz ansatz = Ansatz::homogeneous(alg, shape, deg, active);
  std::vector<ScanResult> out;
  for (const auto& pt : grid) {
    ExtProblem prob{alg, shape, pt.top, pt.bottom};
    auto sols = solve_cocycles(build_cocycle_system(prob, ansatz), ansatz);
    if (!sols.empty()) out.push_back({pt.label, std::move(sols)});
  }
  return out;
}

}  // namespace lca

#include "lca/poly.hpp"

#include <algorithm>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace lca {

namespace {

const std::string* intern(std::string_view name) {
  static std::mutex mu;
  static std::set<std::string, std::less<>> pool;
  std::lock_guard lock(mu);
  auto it = pool.find(name);
  if (it == pool.end()) it = pool.emplace(name).first;
  return &*it;
}

const std::string kSlotNames[] = {"l", "m", "n"};
const std::string kPartialName = "d";

}  // namespace

VarId VarId::lambda(int slot) {
  if (slot < 0 || slot > 2) throw std::out_of_range("lambda slot must be 0, 1 or 2");
  return VarId(Kind::Lambda, static_cast<std::uint8_t>(slot), nullptr);
}

VarId VarId::param(std::string_view name) {
  if (name.empty()) throw std::invalid_argument("empty parameter name");
  return VarId(Kind::Param, 0, intern(name));
}

const std::string& VarId::name() const {
  switch (kind_) {
    case Kind::Partial: return kPartialName;
    case Kind::Lambda: return kSlotNames[slot_];
    case Kind::Param: break;
  }
  return *name_;
}

std::strong_ordering operator<=>(const VarId& a, const VarId& b) {
  if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
  if (a.slot_ != b.slot_) return a.slot_ <=> b.slot_;
  if (a.name_ == b.name_) return std::strong_ordering::equal;
  int c = a.name_->compare(*b.name_);
  return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

// ---- Monomial ---------------------------------------------------------------

Monomial::Monomial(std::initializer_list<Factor> factors) {
  for (const auto& [v, e] : factors) *this = *this * of(v, e);
}

Monomial Monomial::of(VarId v, std::uint32_t e) {
  Monomial m;
  if (e > 0) m.factors_.emplace_back(v, e);
  return m;
}

std::uint32_t Monomial::degree() const {
  std::uint32_t d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

std::uint32_t Monomial::structural_degree() const {
  std::uint32_t d = 0;
  for (const auto& f : factors_)
    if (!f.first.is_param()) d += f.second;
  return d;
}

std::uint32_t Monomial::exponent(const VarId& v) const {
  for (const auto& f : factors_)
    if (f.first == v) return f.second;
  return 0;
}

Monomial Monomial::without(const VarId& v) const {
  Monomial m;
  m.factors_.reserve(factors_.size());
  for (const auto& f : factors_)
    if (!(f.first == v)) m.factors_.push_back(f);
  return m;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.factors_.reserve(a.factors_.size() + b.factors_.size());
  auto i = a.factors_.begin(), j = b.factors_.begin();
  while (i != a.factors_.end() && j != b.factors_.end()) {
    auto c = i->first <=> j->first;
    if (c < 0) {
      r.factors_.push_back(*i++);
    } else if (c > 0) {
      r.factors_.push_back(*j++);
    } else {
      r.factors_.emplace_back(i->first, i->second + j->second);
      ++i, ++j;
    }
  }
  r.factors_.insert(r.factors_.end(), i, a.factors_.end());
  r.factors_.insert(r.factors_.end(), j, b.factors_.end());
  return r;
}

bool GrlexDesc::operator()(const Monomial& a, const Monomial& b) const {
  auto da = a.degree(), db = b.degree();
  if (da != db) return da > db;
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  std::size_t n = std::min(fa.size(), fb.size());
  for (std::size_t k = 0; k < n; ++k) {
    auto c = fa[k].first <=> fb[k].first;
    // The side holding the earlier variable has the larger exponent there.
    if (c != 0) return c < 0;
    if (fa[k].second != fb[k].second) return fa[k].second > fb[k].second;
  }
  return fa.size() > fb.size();
}

// ---- Poly -------------------------------------------------------------------

Poly::Poly(const Scalar& c) {
  if (!c.is_zero()) terms_.emplace(Monomial(), c);
}

Poly Poly::var(const VarId& v) { return term(Scalar(1), Monomial::of(v)); }

Poly Poly::term(const Scalar& c, Monomial m) {
  Poly p;
  if (!c.is_zero()) p.terms_.emplace(std::move(m), c);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Scalar Poly::constant_term() const { return coefficient(Monomial()); }

Scalar Poly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar() : it->second;
}

std::uint32_t Poly::degree() const {
  return terms_.empty() ? 0 : terms_.begin()->first.degree();
}

std::uint32_t Poly::degree(const VarId& v) const {
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(v));
  return d;
}

std::uint32_t Poly::structural_degree() const {
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.structural_degree());
  return d;
}

bool Poly::contains(const VarId& v) const {
  for (const auto& [m, c] : terms_)
    if (m.exponent(v) > 0) return true;
  return false;
}

std::set<VarId> Poly::variables() const {
  std::set<VarId> out;
  for (const auto& [m, c] : terms_)
    for (const auto& f : m.factors()) out.insert(f.first);
  return out;
}

std::set<std::string> Poly::parameters() const {
  std::set<std::string> out;
  for (const auto& v : variables())
    if (v.is_param()) out.insert(v.name());
  return out;
}

void Poly::add_term(const Monomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly& Poly::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (b.is_constant()) return Poly(a) *= b.terms_.begin()->second;
  if (a.is_constant()) return Poly(b) *= a.terms_.begin()->second;
  Poly r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly Poly::pow(unsigned e) const {
  Poly result(1), base = *this;
  while (e > 0) {
    if (e & 1u) result *= base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

Poly Poly::coefficient_of(const VarId& v, std::uint32_t e) const {
  Poly r;
  for (const auto& [m, c] : terms_)
    if (m.exponent(v) == e) r.terms_.emplace(m.without(v), c);
  return r;
}

namespace {

// Parameters are printed before d, l, m ("alpha*l"), which reads better
// than the storage order.
std::string monomial_str(const Monomial& m) {
  std::string s;
  auto emit = [&](const VarId& v, std::uint32_t e) {
    if (!s.empty()) s += '*';
    s += v.name();
    if (e > 1) s += '^' + std::to_string(e);
  };
  for (const auto& [v, e] : m.factors())
    if (v.is_param()) emit(v, e);
  for (const auto& [v, e] : m.factors())
    if (!v.is_param()) emit(v, e);
  return s;
}

}  // namespace

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Scalar mag = c;
    bool neg = c.is_rational() && c.sign() < 0;
    if (neg) mag = -c;
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    first = false;
    std::string ms = monomial_str(m);
    if (ms.empty()) {
      out += mag.str();
    } else if (mag.is_one()) {
      out += ms;
    } else {
      out += mag.str() + "*" + ms;
    }
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.str(); }

// ---- free operations ---------------------------------------------------------

Poly poly_arith(const Poly& p, const Poly& q, PolyOp op) {
  switch (op) {
    case PolyOp::Add: return p + q;
    case PolyOp::Sub: return p - q;
    case PolyOp::Mul: return p * q;
  }
  throw std::invalid_argument("unknown polynomial operation");
}

Poly poly_scale(const Poly& p, const Scalar& c) { return Poly(p) *= c; }

Poly poly_subst(const Poly& p, const VarId& v, const Poly& r) {
  return poly_subst(p, Substitution{{v, r}});
}

Poly poly_subst(const Poly& p, const Substitution& s) {
  if (s.empty()) return p;
  // powers[v][e] = image(v)^e, filled on demand
  std::map<VarId, std::vector<Poly>> powers;
  auto power = [&](const VarId& v, std::uint32_t e) -> const Poly& {
    auto& vec = powers[v];
    if (vec.empty()) vec.emplace_back(1);
    while (vec.size() <= e) vec.push_back(vec.back() * s.at(v));
    return vec[e];
  };
  Poly out;
  for (const auto& [m, c] : p.terms()) {
    Monomial keep;
    Poly factor(c);
    for (const auto& [v, e] : m.factors()) {
      if (s.count(v))
        factor = factor * power(v, e);
      else
        keep = keep * Monomial::of(v, e);
    }
    if (keep.is_one()) {
      out += factor;
    } else {
      for (const auto& [fm, fc] : factor.terms()) out.add_term(fm * keep, fc);
    }
  }
  return out;
}

Poly poly_eval_params(const Poly& p, const Binding& bind) {
  if (bind.empty()) return p;
  Poly out;
  for (const auto& [m, c] : p.terms()) {
    Scalar coef = c;
    Monomial keep;
    for (const auto& [v, e] : m.factors()) {
      auto it = v.is_param() ? bind.find(v.name()) : bind.end();
      if (it == bind.end()) {
        keep = keep * Monomial::of(v, e);
      } else {
        for (std::uint32_t k = 0; k < e; ++k) coef *= it->second;
      }
    }
    out.add_term(keep, coef);
  }
  return out;
}

Poly poly_reduce_mod(const Poly& p, const VarId& v, const Poly& m) {
  for (const auto& [mm, c] : m.terms())
    for (const auto& f : mm.factors())
      if (!(f.first == v))
        throw std::invalid_argument("modulus is not univariate in " + v.name());
  std::uint32_t n = m.degree(v);
  if (m.is_zero() || n == 0) throw std::invalid_argument("modulus must have positive degree");
  Scalar lead_inv = m.coefficient(Monomial::of(v, n)).inverse();
  Poly tail = m - Poly::term(m.coefficient(Monomial::of(v, n)), Monomial::of(v, n));
  tail *= -lead_inv;  // v^n == tail  (mod m)
  Poly r = p;
  for (std::uint32_t e = r.degree(v); e >= n; e = r.degree(v)) {
    Poly top = r.coefficient_of(v, e);
    Poly top_full = top * Poly::term(Scalar(1), Monomial::of(v, e));
    r -= top_full;
    r += top * Poly::term(Scalar(1), Monomial::of(v, e - n)) * tail;
  }
  return r;
}

Poly shift_partial(const Poly& p, const Poly& shift) {
  return poly_subst(p, kPartial, Poly::var(kPartial) + shift);
}

}  // namespace lca

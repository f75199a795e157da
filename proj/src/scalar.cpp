#include "lca/scalar.hpp"

#include <ostream>
#include <sstream>

namespace lca {

bool is_square_free(long d) {
  if (d < 2) return false;
  for (long p = 2; p * p <= d; ++p) {
    if (d % (p * p) == 0) return false;
  }
  return true;
}

Scalar::Scalar(long num, long den) {
  if (den == 0) throw std::domain_error("zero denominator");
  re_ = Rational(num, den);
  re_.canonicalize();
}

Scalar Scalar::quadratic(const Rational& re, const Rational& ir, long d) {
  if (!is_square_free(d)) {
    throw ContextError("quadratic field parameter must be square-free and > 1, got " +
                       std::to_string(d));
  }
  Scalar s;
  s.re_ = re;
  s.ir_ = ir;
  s.d_ = d;
  s.normalize();
  return s;
}

Scalar Scalar::parse(const std::string& text) {
  const auto slash = text.find('/');
  Rational r;
  try {
    if (slash == std::string::npos) {
      r = Rational(Integer(text));
    } else {
      Integer den(text.substr(slash + 1));
      if (den == 0) throw std::domain_error("zero denominator in '" + text + "'");
      r = Rational(Integer(text.substr(0, slash)), den);
      r.canonicalize();
    }
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("not a rational literal: '" + text + "'");
  }
  return Scalar(r);
}

int Scalar::sign() const {
  if (d_ != 0) throw ContextError("sign of a quadratic irrational is not defined here");
  return sgn(re_);
}

long Scalar::merge_field(const Scalar& o) const {
  if (d_ == 0) return o.d_;
  if (o.d_ == 0 || o.d_ == d_) return d_;
  throw ContextError("incompatible quadratic fields sqrt(" + std::to_string(d_) + ") and sqrt(" +
                     std::to_string(o.d_) + ")");
}

void Scalar::normalize() {
  if (sgn(ir_) == 0) d_ = 0;
}

Scalar Scalar::operator-() const {
  Scalar r(*this);
  r.re_ = -r.re_;
  r.ir_ = -r.ir_;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (d_ == 0 && o.d_ == 0) {
    re_ += o.re_;
    return *this;
  }
  d_ = merge_field(o);
  re_ += o.re_;
  ir_ += o.ir_;
  normalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (d_ == 0 && o.d_ == 0) {
    re_ -= o.re_;
    return *this;
  }
  d_ = merge_field(o);
  re_ -= o.re_;
  ir_ -= o.ir_;
  normalize();
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (d_ == 0 && o.d_ == 0) {
    re_ *= o.re_;
    return *this;
  }
  const long d = merge_field(o);
  // (a + b r)(a' + b' r) = (aa' + bb'd) + (ab' + a'b) r
  Rational re = re_ * o.re_ + ir_ * o.ir_ * d;
  Rational ir = re_ * o.ir_ + o.re_ * ir_;
  re_ = std::move(re);
  ir_ = std::move(ir);
  d_ = d;
  normalize();
  return *this;
}

Scalar Scalar::conjugate() const {
  Scalar r(*this);
  r.ir_ = -r.ir_;
  return r;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  if (d_ == 0) {
    Scalar r;
    r.re_ = 1 / re_;
    return r;
  }
  // 1/(a + b r) = (a - b r)/(a^2 - b^2 d); the norm is nonzero since d is not a square
  Rational norm = re_ * re_ - ir_ * ir_ * d_;
  Scalar r = conjugate();
  r.re_ /= norm;
  r.ir_ /= norm;
  return r;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (d_ == 0 && o.d_ == 0) {
    if (sgn(o.re_) == 0) throw std::domain_error("division by zero");
    re_ /= o.re_;
    return *this;
  }
  return *this *= o.inverse();
}

std::string Scalar::str() const {
  if (d_ == 0) return re_.get_str();
  std::ostringstream os;
  os << '(';
  if (sgn(re_) != 0) os << re_.get_str() << (sgn(ir_) < 0 ? " - " : " + ");
  else if (sgn(ir_) < 0) os << '-';
  Rational mag = abs(ir_);
  if (mag != 1) os << mag.get_str() << '*';
  os << "sqrt(" << d_ << "))";
  return os.str();
}

std::size_t Scalar::hash() const {
  std::size_t h = std::hash<std::string>{}(re_.get_str());
  if (d_ != 0) h ^= std::hash<std::string>{}(ir_.get_str()) * 31u + static_cast<std::size_t>(d_);
  return h;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace lca

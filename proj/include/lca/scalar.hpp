#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace lca {

using Rational = mpq_class;
using Integer = mpz_class;

/// Raised when two values from different quadratic fields Q(sqrt d) meet.
class ContextError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Exact scalar: a rational, or an element re + ir*sqrt(d) of a quadratic
/// field Q(sqrt d) with d square-free and > 1.
///
/// A value whose irrational part is zero is always stored as a plain
/// rational (d == 0), so rationals combine freely with any field.
class Scalar {
public:
  Scalar() = default;
  Scalar(long v) : re_(v) {}
  Scalar(int v) : re_(v) {}
  Scalar(const Rational& v) : re_(v) {}
  Scalar(long num, long den);

  static Scalar quadratic(const Rational& re, const Rational& ir, long d);
  /// Parses "p", "-p" or "p/q".
  static Scalar parse(const std::string& text);

  const Rational& re() const { return re_; }
  const Rational& ir() const { return ir_; }
  long field() const { return d_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(ir_) == 0; }
  bool is_one() const { return d_ == 0 && re_ == 1; }
  bool is_rational() const { return d_ == 0; }
  bool is_integer() const { return d_ == 0 && re_.get_den() == 1; }
  /// Sign of a rational value; throws for quadratic values.
  int sign() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  Scalar inverse() const;
  /// Galois conjugate re - ir*sqrt(d).
  Scalar conjugate() const;

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.d_ == b.d_ && a.re_ == b.re_ && a.ir_ == b.ir_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Plain text: "3/2", "-5", or "(1/2 + 3/2*sqrt(19))".
  std::string str() const;
  std::size_t hash() const;

private:
  long merge_field(const Scalar& o) const;
  void normalize();

  Rational re_{0};
  Rational ir_{0};
  long d_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

bool is_square_free(long d);

}  // namespace lca

template <>
struct std::hash<lca::Scalar> {
  std::size_t operator()(const lca::Scalar& s) const { return s.hash(); }
};

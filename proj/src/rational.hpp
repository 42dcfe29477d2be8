#pragma once

#include <gmpxx.h>

#include <compare>
#include <stdexcept>
#include <string>

namespace ntu {

/// Error hierarchy shared across the solver core. The CLI maps these to
/// distinct exit codes.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvariantViolation : std::logic_error {
  using std::logic_error::logic_error;
};

/// Exact arbitrary-precision rational number. Always stored in canonical
/// form: gcd(|num|, den) = 1 and den >= 1.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long long n) : v_(static_cast<long>(n)) {}
  Rational(long long num, long long den);
  explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

  /// Parses "p", "-p" or "p/q".
  static Rational fromString(const std::string& s);

  const mpq_class& raw() const { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational operator+(const Rational& o) const { return Rational(mpq_class(v_ + o.v_)); }
  Rational operator-(const Rational& o) const { return Rational(mpq_class(v_ - o.v_)); }
  Rational operator*(const Rational& o) const { return Rational(mpq_class(v_ * o.v_)); }
  Rational operator/(const Rational& o) const;
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  bool operator==(const Rational& o) const { return v_ == o.v_; }
  bool operator!=(const Rational& o) const { return v_ != o.v_; }
  bool operator<(const Rational& o) const { return v_ < o.v_; }
  bool operator<=(const Rational& o) const { return v_ <= o.v_; }
  bool operator>(const Rational& o) const { return v_ > o.v_; }
  bool operator>=(const Rational& o) const { return v_ >= o.v_; }

  int sgn() const { return ::sgn(v_); }
  bool isZero() const { return ::sgn(v_) == 0; }
  bool isInteger() const { return v_.get_den() == 1; }
  Rational abs() const { return Rational(mpq_class(::abs(v_))); }

  /// Largest integer <= value / smallest integer >= value, as rationals.
  Rational floor() const;
  Rational ceil() const;

  /// Requires an integer value that fits in long long.
  long long toLongLong() const;

  std::string str() const;

 private:
  mpq_class v_;
};

inline Rational operator*(long long a, const Rational& b) { return Rational(a) * b; }

/// A bound that may be -inf, finite, or +inf. Comparisons against finite
/// rationals are total.
class ExtendedBound {
 public:
  enum class Kind { NegInf, Finite, PosInf };

  ExtendedBound() : kind_(Kind::Finite), value_() {}
  static ExtendedBound of(const Rational& v) { return ExtendedBound(Kind::Finite, v); }
  static ExtendedBound of(long long v) { return ExtendedBound(Kind::Finite, Rational(v)); }
  static ExtendedBound minusInf() { return ExtendedBound(Kind::NegInf, Rational()); }
  static ExtendedBound plusInf() { return ExtendedBound(Kind::PosInf, Rational()); }

  Kind kind() const { return kind_; }
  bool isFinite() const { return kind_ == Kind::Finite; }
  bool isNegInf() const { return kind_ == Kind::NegInf; }
  bool isPosInf() const { return kind_ == Kind::PosInf; }

  /// Finite value; throws if infinite.
  const Rational& value() const;

  bool operator==(const ExtendedBound& o) const;
  /// Total order: -inf < finite < +inf.
  bool operator<(const ExtendedBound& o) const;
  bool operator<=(const ExtendedBound& o) const { return *this == o || *this < o; }

  bool lessEq(const Rational& r) const;   // this <= r
  bool greaterEq(const Rational& r) const;  // this >= r

  std::string str() const;

 private:
  ExtendedBound(Kind k, const Rational& v) : kind_(k), value_(v) {}
  Kind kind_;
  Rational value_;
};

}  // namespace ntu

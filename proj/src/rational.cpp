#include "rational.hpp"

namespace ntu {

Rational::Rational(long long num, long long den) {
  if (den == 0) throw std::invalid_argument("Rational: zero denominator");
  v_ = mpq_class(static_cast<long>(num), static_cast<long>(den));
  v_.canonicalize();
}

Rational Rational::fromString(const std::string& s) {
  if (s.empty()) throw ValidationError("Rational: empty string");
  try {
    mpq_class v(s);
    if (v.get_den() == 0) throw ValidationError("Rational: zero denominator in '" + s + "'");
    v.canonicalize();
    return Rational(v);
  } catch (const std::invalid_argument&) {
    throw ValidationError("Rational: cannot parse '" + s + "'");
  }
}

Rational Rational::operator/(const Rational& o) const {
  if (o.isZero()) throw std::invalid_argument("Rational: division by zero");
  return Rational(mpq_class(v_ / o.v_));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.isZero()) throw std::invalid_argument("Rational: division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
  return Rational(mpq_class(q));
}

Rational Rational::ceil() const {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
  return Rational(mpq_class(q));
}

long long Rational::toLongLong() const {
  if (!isInteger()) throw InvariantViolation("Rational: toLongLong on non-integer " + str());
  mpz_class n = v_.get_num();
  if (!n.fits_slong_p()) throw InvariantViolation("Rational: value out of long range " + str());
  return n.get_si();
}

std::string Rational::str() const {
  if (isInteger()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

const Rational& ExtendedBound::value() const {
  if (kind_ != Kind::Finite) throw InvariantViolation("ExtendedBound: value() on infinite bound");
  return value_;
}

bool ExtendedBound::operator==(const ExtendedBound& o) const {
  if (kind_ != o.kind_) return false;
  if (kind_ != Kind::Finite) return true;
  return value_ == o.value_;
}

bool ExtendedBound::operator<(const ExtendedBound& o) const {
  if (kind_ == Kind::NegInf) return o.kind_ != Kind::NegInf;
  if (kind_ == Kind::PosInf) return false;
  if (o.kind_ == Kind::PosInf) return true;
  if (o.kind_ == Kind::NegInf) return false;
  return value_ < o.value_;
}

bool ExtendedBound::lessEq(const Rational& r) const {
  switch (kind_) {
    case Kind::NegInf: return true;
    case Kind::PosInf: return false;
    default: return value_ <= r;
  }
}

bool ExtendedBound::greaterEq(const Rational& r) const {
  switch (kind_) {
    case Kind::NegInf: return false;
    case Kind::PosInf: return true;
    default: return value_ >= r;
  }
}

std::string ExtendedBound::str() const {
  switch (kind_) {
    case Kind::NegInf: return "-inf";
    case Kind::PosInf: return "+inf";
    default: return value_.str();
  }
}

}  // namespace ntu

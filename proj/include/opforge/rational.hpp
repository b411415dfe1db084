#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace opforge {

/// Arbitrary-precision rational scalar. Always canonical: lowest terms,
/// positive denominator. All arithmetic in the library goes through this
/// type; there is no floating-point mode.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(static_cast<long>(n)) {}
  Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    v_.canonicalize();
  }
  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  // Parses exact integer strings "num" and "den" (no decimal points).
  static Rational from_strings(const std::string& num, const std::string& den) {
    mpz_class n(num, 10), d(den, 10);
    if (d == 0) throw std::invalid_argument("Rational: zero denominator");
    mpq_class q(n, d);
    q.canonicalize();
    return Rational(q);
  }

  bool is_zero() const { return v_ == 0; }
  int sign() const { return sgn(v_); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  std::string num_string() const { return v_.get_num().get_str(); }
  std::string den_string() const { return v_.get_den().get_str(); }
  std::string str() const {
    return v_.get_den() == 1 ? v_.get_num().get_str() : v_.get_str();
  }

  const mpq_class& raw() const { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  // Exact integer extraction; throws if not an integer.
  long to_long() const {
    if (v_.get_den() != 1 || !v_.get_num().fits_slong_p())
      throw std::domain_error("Rational: not a small integer");
    return v_.get_num().get_si();
  }

 private:
  mpq_class v_;
};

inline Rational rat(long n) { return Rational(n); }
inline Rational rat(long n, long d) { return Rational(n, d); }

}  // namespace opforge

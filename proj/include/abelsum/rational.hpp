#pragma once

#include <gmp.h>

#include <compare>
#include <cstdlib>
#include <numeric>
#include <string>
#include <utility>

#include "abelsum/errors.hpp"

namespace abelsum {

// Exact fraction of arbitrary-precision integers. Always canonical:
// denominator > 0 and gcd(|num|, den) = 1.
class Rational {
 public:
  Rational() { mpq_init(q_); }

  Rational(long n) {  // NOLINT: implicit by design, coefficients read naturally
    mpq_init(q_);
    mpq_set_si(q_, n, 1);
  }

  Rational(long num, long den) {
    if (den == 0) throw domain_error("Rational: zero denominator");
    mpq_init(q_);
    if (den < 0) {
      num = -num;
      den = -den;
    }
    mpq_set_si(q_, num, static_cast<unsigned long>(den));
    mpq_canonicalize(q_);
  }

  Rational(const Rational& o) {
    mpq_init(q_);
    mpq_set(q_, o.q_);
  }

  Rational(Rational&& o) noexcept {
    mpq_init(q_);
    mpq_swap(q_, o.q_);
  }

  Rational& operator=(const Rational& o) {
    if (this != &o) mpq_set(q_, o.q_);
    return *this;
  }

  Rational& operator=(Rational&& o) noexcept {
    mpq_swap(q_, o.q_);
    return *this;
  }

  ~Rational() { mpq_clear(q_); }

  // Accepts "num", "num/den", optional leading '-'. Canonicalizes.
  static Rational parse(const std::string& s) {
    Rational r;
    if (s.empty() || mpq_set_str(r.q_, s.c_str(), 10) != 0)
      throw domain_error("Rational: cannot parse '" + s + "'");
    if (mpz_sgn(mpq_denref(r.q_)) == 0)
      throw domain_error("Rational: zero denominator in '" + s + "'");
    if (mpz_sgn(mpq_denref(r.q_)) < 0) {
      mpz_neg(mpq_numref(r.q_), mpq_numref(r.q_));
      mpz_neg(mpq_denref(r.q_), mpq_denref(r.q_));
    }
    mpq_canonicalize(r.q_);
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    Rational r;
    mpq_add(r.q_, a.q_, b.q_);
    return r;
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    Rational r;
    mpq_sub(r.q_, a.q_, b.q_);
    return r;
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    Rational r;
    mpq_mul(r.q_, a.q_, b.q_);
    return r;
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw domain_error("Rational: division by zero");
    Rational r;
    mpq_div(r.q_, a.q_, b.q_);
    return r;
  }
  friend Rational operator-(const Rational& a) {
    Rational r;
    mpq_neg(r.q_, a.q_);
    return r;
  }

  Rational& operator+=(const Rational& o) {
    mpq_add(q_, q_, o.q_);
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    mpq_sub(q_, q_, o.q_);
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    mpq_mul(q_, q_, o.q_);
    return *this;
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return mpq_equal(a.q_, b.q_) != 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = mpq_cmp(a.q_, b.q_);
    return c <=> 0;
  }

  bool is_zero() const { return mpq_sgn(q_) == 0; }
  int sign() const { return mpq_sgn(q_); }
  bool is_integer() const { return mpz_cmp_ui(mpq_denref(q_), 1) == 0; }

  Rational abs() const {
    Rational r;
    mpq_abs(r.q_, q_);
    return r;
  }

  // floor(num/den) as a long; throws if it does not fit.
  long floor_long() const {
    mpz_t f;
    mpz_init(f);
    mpz_fdiv_q(f, mpq_numref(q_), mpq_denref(q_));
    if (!mpz_fits_slong_p(f)) {
      mpz_clear(f);
      throw arg_out_of_range("Rational: floor does not fit in long");
    }
    const long v = mpz_get_si(f);
    mpz_clear(f);
    return v;
  }

  long num_long() const {
    if (!mpz_fits_slong_p(mpq_numref(q_)))
      throw arg_out_of_range("Rational: numerator does not fit in long");
    return mpz_get_si(mpq_numref(q_));
  }
  long den_long() const {
    if (!mpz_fits_slong_p(mpq_denref(q_)))
      throw arg_out_of_range("Rational: denominator does not fit in long");
    return mpz_get_si(mpq_denref(q_));
  }

  std::string num_str() const { return mpz_str(mpq_numref(q_)); }
  std::string den_str() const { return mpz_str(mpq_denref(q_)); }

  // Human form: "3", "-2/5".
  std::string str() const {
    char* s = mpq_get_str(nullptr, 10, q_);
    std::string out(s);
    std::free(s);
    return out;
  }

  // Serialized form, always "num/den" ("0/1", "3/1", "-2/5").
  std::string str_num_den() const { return num_str() + "/" + den_str(); }

  double to_double() const { return mpq_get_d(q_); }

  mpq_srcptr raw() const { return q_; }

 private:
  static std::string mpz_str(mpz_srcptr z) {
    char* s = mpz_get_str(nullptr, 10, z);
    std::string out(s);
    std::free(s);
    return out;
  }

  mpq_t q_;
};

}  // namespace abelsum

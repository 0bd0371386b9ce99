#pragma once

#include <mpfr.h>

#include <algorithm>
#include <cstdlib>
#include <string>
#include <utility>

#include "abelsum/errors.hpp"
#include "abelsum/rational.hpp"

namespace abelsum {

using prec_t = mpfr_prec_t;

inline constexpr prec_t kMinPrec = 64;
inline constexpr prec_t kMaxPrec = 1L << 20;

inline prec_t clamp_prec(prec_t p) { return std::max(kMinPrec, std::min(p, kMaxPrec)); }

// Arbitrary-precision float with explicit per-value precision in bits.
// All operations round to nearest; binary operations produce a result at the
// larger of the operand precisions. Immutable-style use is the norm; the
// in-place operators exist for hot summation loops.
class Real {
 public:
  Real() {
    mpfr_init2(v_, kMinPrec);
    mpfr_set_zero(v_, 1);
  }
  explicit Real(prec_t prec) {
    mpfr_init2(v_, clamp_prec(prec));
    mpfr_set_zero(v_, 1);
  }
  Real(long n, prec_t prec) {
    mpfr_init2(v_, clamp_prec(prec));
    mpfr_set_si(v_, n, MPFR_RNDN);
  }
  Real(int n, prec_t prec) : Real(static_cast<long>(n), prec) {}
  Real(unsigned long n, prec_t prec) {
    mpfr_init2(v_, clamp_prec(prec));
    mpfr_set_ui(v_, n, MPFR_RNDN);
  }
  Real(const Rational& r, prec_t prec) {
    mpfr_init2(v_, clamp_prec(prec));
    mpfr_set_q(v_, r.raw(), MPFR_RNDN);
  }

  static Real from_double(double d, prec_t prec) {
    Real r(prec);
    mpfr_set_d(r.v_, d, MPFR_RNDN);
    return r;
  }

  static Real from_string(const std::string& s, prec_t prec) {
    Real r(prec);
    if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0 && !s.empty() && s != "nan")
      throw domain_error("Real: cannot parse '" + s + "'");
    return r;
  }

  // 2^e, exactly representable.
  static Real pow2(long e, prec_t prec) {
    Real r(prec);
    mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
    return r;
  }

  static Real nan(prec_t prec) {
    Real r(prec);
    mpfr_set_nan(r.v_);
    return r;
  }

  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, kMinPrec);
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  prec_t prec() const { return mpfr_get_prec(v_); }

  // Copy rounded/extended to a different precision.
  Real at_prec(prec_t p) const {
    Real r(p);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  // --- constants ---
  static Real pi(prec_t prec) {
    Real r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }
  static Real euler_gamma(prec_t prec) {
    Real r(prec);
    mpfr_const_euler(r.v_, MPFR_RNDN);
    return r;
  }
  static Real ln2(prec_t prec) {
    Real r(prec);
    mpfr_const_log2(r.v_, MPFR_RNDN);
    return r;
  }

  // --- arithmetic ---
  friend Real operator+(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec()));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator-(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec()));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator*(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec()));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator/(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec()));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator-(const Real& a) {
    Real r(a.prec());
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator+(const Real& a, long b) { return a + Real(b, a.prec()); }
  friend Real operator-(const Real& a, long b) { return a - Real(b, a.prec()); }
  friend Real operator*(const Real& a, long b) {
    Real r(a.prec());
    mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator/(const Real& a, long b) {
    Real r(a.prec());
    mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator*(long a, const Real& b) { return b * a; }

  Real& operator+=(const Real& o) {
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator-=(const Real& o) {
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator*=(const Real& o) {
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator/=(const Real& o) {
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }

  // --- comparisons (NaN-safe via mpfr semantics) ---
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }

  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  // Decimal string with `digits` significant digits. Values of moderate
  // magnitude render positionally ("0.60459...", "-1.9635..."); extremes fall
  // back to "d.ddd...e±k".
  std::string to_string(std::size_t digits = 30) const {
    if (!is_finite()) return mpfr_nan_p(v_) ? "nan" : (sign() > 0 ? "inf" : "-inf");
    if (is_zero()) return "0";
    mpfr_exp_t e = 0;
    char* s = mpfr_get_str(nullptr, &e, 10, digits, v_, MPFR_RNDN);
    std::string m(s);
    mpfr_free_str(s);
    std::string sgn;
    if (!m.empty() && m[0] == '-') {
      sgn = "-";
      m = m.substr(1);
    }
    const long dec_exp = static_cast<long>(e) - 1;  // value = 0.m * 10^e
    if (dec_exp >= -6 && dec_exp < static_cast<long>(digits) + 6) {
      if (dec_exp < 0) {
        return sgn + "0." + std::string(static_cast<std::size_t>(-dec_exp - 1), '0') + m;
      }
      if (static_cast<std::size_t>(dec_exp) + 1 >= m.size())
        return sgn + m + std::string(static_cast<std::size_t>(dec_exp) + 1 - m.size(), '0');
      return sgn + m.substr(0, static_cast<std::size_t>(dec_exp) + 1) + "." +
             m.substr(static_cast<std::size_t>(dec_exp) + 1);
    }
    std::string out = sgn + m.substr(0, 1);
    if (m.size() > 1) out += "." + m.substr(1);
    if (dec_exp != 0) out += "e" + std::to_string(dec_exp);
    return out;
  }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

 private:
  mpfr_t v_;
};

// --- elementary functions; result carries the argument's precision ---

#define ABELSUM_REAL_UNARY(name, mpfr_fn)      \
  inline Real name(const Real& x) {            \
    Real r(x.prec());                          \
    mpfr_fn(r.raw(), x.raw(), MPFR_RNDN);      \
    return r;                                  \
  }

ABELSUM_REAL_UNARY(abs, mpfr_abs)
ABELSUM_REAL_UNARY(sqrt, mpfr_sqrt)
ABELSUM_REAL_UNARY(log, mpfr_log)
ABELSUM_REAL_UNARY(log1p, mpfr_log1p)
ABELSUM_REAL_UNARY(exp, mpfr_exp)
ABELSUM_REAL_UNARY(expm1, mpfr_expm1)
ABELSUM_REAL_UNARY(sin, mpfr_sin)
ABELSUM_REAL_UNARY(cos, mpfr_cos)
ABELSUM_REAL_UNARY(tan, mpfr_tan)
ABELSUM_REAL_UNARY(cot, mpfr_cot)
ABELSUM_REAL_UNARY(atan, mpfr_atan)

#undef ABELSUM_REAL_UNARY

inline Real floor_r(const Real& x) {
  Real r(x.prec());
  mpfr_rint(r.raw(), x.raw(), MPFR_RNDD);
  return r;
}

inline Real pow(const Real& x, const Real& y) {
  Real r(std::max(x.prec(), y.prec()));
  mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}

inline Real atan2(const Real& y, const Real& x) {
  Real r(std::max(x.prec(), y.prec()));
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}

inline Real min(const Real& a, const Real& b) { return a <= b ? a : b; }
inline Real max(const Real& a, const Real& b) { return a >= b ? a : b; }

// sin(pi * q) and cos(pi * q) for rational q, evaluated with guard bits so the
// final rounding is clean even for q near an integer.
inline Real sin_pi(const Rational& q, prec_t prec) {
  const prec_t w = clamp_prec(prec) + 32;
  Real angle = Real::pi(w) * Real(q, w);
  Real r(clamp_prec(prec));
  mpfr_sin(r.raw(), angle.raw(), MPFR_RNDN);
  return r;
}
inline Real cos_pi(const Rational& q, prec_t prec) {
  const prec_t w = clamp_prec(prec) + 32;
  Real angle = Real::pi(w) * Real(q, w);
  Real r(clamp_prec(prec));
  mpfr_cos(r.raw(), angle.raw(), MPFR_RNDN);
  return r;
}
inline Real cot_pi(const Rational& q, prec_t prec) {
  const prec_t w = clamp_prec(prec) + 32;
  Real angle = Real::pi(w) * Real(q, w);
  Real r(clamp_prec(prec));
  mpfr_cot(r.raw(), angle.raw(), MPFR_RNDN);
  return r;
}

// Complex value as a pair of Reals. Just enough surface for the oracle and the
// finite-Fourier identities; not a general complex type.
struct Complex {
  Real re, im;

  Complex() = default;
  explicit Complex(prec_t prec) : re(prec), im(prec) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(long r, prec_t prec) : re(r, prec), im(prec) {}

  prec_t prec() const { return std::max(re.prec(), im.prec()); }

  friend Complex operator+(const Complex& a, const Complex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend Complex operator-(const Complex& a, const Complex& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator*(const Complex& a, const Real& s) { return {a.re * s, a.im * s}; }
  friend Complex operator/(const Complex& a, const Real& s) { return {a.re / s, a.im / s}; }
  friend Complex operator/(const Complex& a, const Complex& b) {
    const Real d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }

  Complex conj() const { return {re, -im}; }

  bool is_finite() const { return re.is_finite() && im.is_finite(); }
};

inline Real abs(const Complex& z) {
  Real r(std::max(z.re.prec(), z.im.prec()));
  mpfr_hypot(r.raw(), z.re.raw(), z.im.raw(), MPFR_RNDN);
  return r;
}

// e^{i*pi*q} for rational q.
inline Complex exp_i_pi(const Rational& q, prec_t prec) {
  return {cos_pi(q, prec), sin_pi(q, prec)};
}

// exp(z) for complex z.
inline Complex exp(const Complex& z) {
  const Real m = exp(z.re);
  return {m * cos(z.im), m * sin(z.im)};
}

}  // namespace abelsum

#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "abelsum/errors.hpp"
#include "abelsum/oracle.hpp"
#include "abelsum/rational.hpp"
#include "abelsum/real.hpp"
#include "abelsum/symbolic.hpp"

namespace abelsum {

// ---------------------------------------------------------------------------
// Dilogarithm Li_2(x) = sum x^n/n^2 on [-1,1]. Near x=1 the series tail
// degenerates, so the reflection Li_2(x) + Li_2(1-x) = pi^2/6 - ln x ln(1-x)
// takes over; near -1 the duplication Li_2(x) = Li_2(x^2)/2 - Li_2(-x) routes
// both pieces back into fast regions.
// ---------------------------------------------------------------------------
namespace detail {

inline Real zeta2(prec_t w) {
  const Real pi = Real::pi(w);
  return pi * pi / Real(6L, w);
}

inline Real li2_series(const Real& x, prec_t w) {
  // |x| <= 0.9 + eps expected; tail bound |x|^{N+1}/((N+1)^2 (1-|x|))
  const Real ax = abs(x);
  const Real thresh = Real::pow2(-(static_cast<long>(w) - 16), w) * (Real(1L, w) - ax);
  Real sum(w), term(1L, w);
  for (long n = 1;; ++n) {
    term *= x;
    sum += term / Real(n * n, w);
    if (abs(term) < thresh) break;
    if (n > 1000000) throw non_convergence("li2: series budget exhausted");
  }
  return sum;
}

}  // namespace detail

inline Real li2_numeric(const Real& x, prec_t precision_bits) {
  const prec_t p = clamp_prec(precision_bits);
  const prec_t w = p + 32;
  const Real one(1L, w);
  const Real ax = abs(x);
  if (ax > one) throw domain_error("li2: requires |x| <= 1");
  if (x == one) return detail::zeta2(w).at_prec(p);
  if (x == -one) return (-detail::zeta2(w) / 2L).at_prec(p);

  const Real nine_tenths = Real(9L, w) / Real(10L, w);
  Real out(w);
  if (x > nine_tenths) {
    const Real y = one - x.at_prec(w);
    out = detail::zeta2(w) - log(x.at_prec(w)) * log(y) - detail::li2_series(y, w);
  } else if (x < -nine_tenths) {
    const Real x2 = x.at_prec(w) * x.at_prec(w);
    out = li2_numeric(x2, w).at_prec(w) / 2L - li2_numeric(-x.at_prec(w), w).at_prec(w);
  } else {
    out = detail::li2_series(x.at_prec(w), w);
  }
  return out.at_prec(p);
}

// lhs = Li_2(x) + Li_2(1-x) + ln(x) ln(1-x), rhs = pi^2/6, for x in (0,1).
inline std::pair<Real, Real> li2_identity_check(const Real& x, prec_t precision_bits) {
  const prec_t p = clamp_prec(precision_bits);
  const prec_t w = p + 32;
  const Real one(1L, w);
  if (!(x > Real(w)) || !(x < one))
    throw domain_error("li2_identity_check: requires 0 < x < 1");
  const Real xx = x.at_prec(w);
  const Real lhs = li2_numeric(xx, w) + li2_numeric(one - xx, w) + log(xx) * log(one - xx);
  return {lhs.at_prec(p), detail::zeta2(w).at_prec(p)};
}

// Euler's 1731 scheme: zeta(2) ~ (ln 2)^2 + sum_{n=1}^{N} 1/(2^{n-1} n^2).
inline Real euler_zeta2_approx(long N, prec_t precision_bits = 256) {
  if (N < 1) throw arg_out_of_range("euler_zeta2_approx: N must be >= 1");
  const prec_t w = clamp_prec(precision_bits) + 32;
  const Real l2 = Real::ln2(w);
  Real sum = l2 * l2;
  for (long n = 1; n <= N; ++n)
    sum += Real::pow2(1 - n, w) / Real(n * n, w);
  return sum.at_prec(clamp_prec(precision_bits));
}

// ---------------------------------------------------------------------------
// Fourier log sums, theta = (num/den) pi:
//   sum cos(n theta)/n = -ln 2 - ln sin(|theta|/2)       (0 < |theta| <= pi)
//   sum sin(n theta)/n = -arg(1 - e^{i theta})
//                      = (pi - theta)/2 for theta in (0,pi), -(pi+theta)/2 on (-pi,0).
// Rational multiples of pi stay exact; the numeric overload covers the rest.
// ---------------------------------------------------------------------------
struct FourierLogSums {
  SymbolicValue cos_sum;
  Rational sin_sum_pi;  // sin sum = coeff * pi
};

inline FourierLogSums fourier_log_sums(const Rational& theta_over_pi) {
  const Rational r = theta_over_pi;
  if (r.is_zero()) throw domain_error("fourier_log_sums: theta = 0");
  if (r.abs() > Rational(1)) throw domain_error("fourier_log_sums: requires |theta| <= pi");
  FourierLogSums out;
  out.cos_sum = scale(ln_integer(2), Rational(-1));
  const Rational half = r.abs() / Rational(2);
  out.cos_sum += scale(normalize_atom(AtomKind::LnSin, half.num_long(), half.den_long()),
                       Rational(-1));
  out.sin_sum_pi = r.sign() > 0 ? (Rational(1) - r) / Rational(2)
                                : -(Rational(1) + r) / Rational(2);
  return out;
}

inline std::pair<Real, Real> fourier_log_sums_numeric(const Real& theta, prec_t precision_bits) {
  const prec_t p = clamp_prec(precision_bits);
  const prec_t w = p + 32;
  const Real pi = Real::pi(w);
  const Real th = theta.at_prec(w);
  const Real ath = abs(th);
  if (th.is_zero() || ath > pi)
    throw domain_error("fourier_log_sums: requires 0 < |theta| <= pi");
  const Real cos_sum = -Real::ln2(w) - log(sin(ath / 2L));
  const Real sin_sum = th.sign() > 0 ? (pi - th) / 2L : -(pi + th) / 2L;
  return {cos_sum.at_prec(p), sin_sum.at_prec(p)};
}

// Alternating variants on |theta| < pi (the sin identity genuinely breaks at
// theta = pi, which is a domain error here):
//   sum (-1)^{n+1} cos(n theta)/n = ln(2 cos(theta/2)),
//   sum (-1)^{n+1} sin(n theta)/n = theta/2.
struct AltFourierSums {
  SymbolicValue cos_sum;
  Rational sin_sum_pi;
};

inline AltFourierSums alt_fourier_sums(const Rational& theta_over_pi) {
  const Rational r = theta_over_pi;
  if (r.abs() >= Rational(1))
    throw domain_error("alt_fourier_sums: requires |theta| < pi (series jumps at pi)");
  AltFourierSums out;
  out.cos_sum = ln_integer(2);
  const Rational arg = (Rational(1) - r) / Rational(2);  // 2cos(theta/2) = 2 sin(pi(1-r)/2)
  out.cos_sum += normalize_atom(AtomKind::LnSin, arg.num_long(), arg.den_long());
  out.sin_sum_pi = r / Rational(2);
  return out;
}

inline std::pair<Real, Real> alt_fourier_sums_numeric(const Real& theta, prec_t precision_bits) {
  const prec_t p = clamp_prec(precision_bits);
  const prec_t w = p + 32;
  const Real th = theta.at_prec(w);
  if (!(abs(th) < Real::pi(w)))
    throw domain_error("alt_fourier_sums: requires |theta| < pi (series jumps at pi)");
  return {log(Real(2L, w) * cos(th / 2L)).at_prec(p), (th / 2L).at_prec(p)};
}

// ---------------------------------------------------------------------------
// Binomial Fourier series: sum_n C(alpha,n) e^{in theta} = (2cos(theta/2))^alpha
// e^{i alpha theta/2} for Re(alpha) > -1 and |theta| < pi; theta = pi needs
// Re(alpha) > 0 (where both sides are 0). Returns (accelerated series, closed
// form).
// ---------------------------------------------------------------------------
inline std::pair<Complex, Complex> binomial_fourier_check(const Complex& alpha, const Real& theta,
                                                          prec_t precision_bits) {
  const prec_t p = clamp_prec(precision_bits);
  const prec_t w = p + 32;
  const Real pi = Real::pi(w);
  const Real th = theta.at_prec(w);
  const Real ath = abs(th);
  const bool at_pi = ath == pi;
  if (ath > pi || (at_pi && !(alpha.re > Real(w))) ||
      !(alpha.re > Real(-1L, w)))
    throw domain_error("binomial_fourier_check: outside Re(a)>-1, |theta|<pi (or =pi with Re(a)>0)");

  Complex closed(w);
  if (!at_pi) {
    const Complex log_base{log(Real(2L, w) * cos(th / 2L)), th / 2L};
    closed = exp(alpha * log_base);
  }

  // term recurrence t_{n+1} = t_n e^{i theta} (alpha - n)/(n + 1), cached per
  // working precision (the stride probe runs at its own precision)
  struct TermCache {
    Complex alpha;
    Real theta;
    std::map<prec_t, std::vector<Complex>> terms;
  };
  auto cache = std::make_shared<TermCache>(TermCache{alpha, th, {}});
  CoefficientStream s{[cache](std::size_t n, prec_t ww) -> Complex {
                        auto& v = cache->terms[ww];
                        if (v.empty()) v.push_back(Complex(1L, ww));
                        const Real t = cache->theta.at_prec(ww);
                        const Complex rot{cos(t), sin(t)};
                        while (v.size() <= n) {
                          const long m = static_cast<long>(v.size()) - 1;
                          const Complex amn = cache->alpha - Complex(m, ww);
                          v.push_back(v.back() * rot * amn / Real(m + 1, ww));
                        }
                        return v[n];
                      },
                      std::nullopt};
  ComplexOracleResult series = accelerated_sum_complex(s, 1L << 18, p);
  return {series.value, closed};
}

// ---------------------------------------------------------------------------
// Gauss hypergeometric series 2F1(a,b;c;z) = sum (a)_n (b)_n / ((c)_n n!) z^n
// for |z| < 1, c not a nonpositive integer. Terms are built by the ratio
// recurrence; the tail is bounded geometrically once the ratio passes below
// (1+|z|)/2.
// ---------------------------------------------------------------------------
inline Complex hyp2f1_series(const Complex& a, const Complex& b, const Complex& c,
                             const Complex& z, prec_t precision_bits) {
  const auto bad_c = [&]() {
    return c.im.is_zero() && c.re.sign() <= 0 && mpfr_integer_p(c.re.raw()) != 0;
  };
  if (bad_c()) throw pole_error("hyp2f1: c must not be a nonpositive integer");
  const prec_t p = clamp_prec(precision_bits);
  const prec_t w = p + 32;
  if (!(abs(z) < Real(1L, w))) throw domain_error("hyp2f1: requires |z| < 1");

  const Real rho = (Real(1L, w) + abs(z)) / 2L;
  const Real thresh = Real::pow2(-(static_cast<long>(p) + 8), w) * (Real(1L, w) - rho);
  Complex sum(1L, w), term(1L, w);
  for (long n = 0;; ++n) {
    const Complex nn(n, w);
    const Complex next =
        term * (a + nn) * (b + nn) * z / ((c + nn) * Complex(n + 1, w));
    sum += next;
    const Real mag = abs(next);
    if (mag.is_zero()) break;  // polynomial case terminated exactly
    if (mag < thresh && abs(next) < rho * abs(term)) break;
    term = next;
    if (n > 4000000) throw non_convergence("hyp2f1: series budget exhausted");
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Block rearrangements of the alternating harmonic series: p positive terms
// (odd denominators in order) alternating with q negative terms (even
// denominators in order) sums to ln 2 + (1/2) ln(p/q).
// ---------------------------------------------------------------------------
struct RearrangementSpec {
  long pos_block = 1;
  long neg_block = 1;
};

namespace detail {

// value of the i-th term of the rearranged series
inline Rational rearranged_term(const RearrangementSpec& spec, std::size_t i) {
  const long p = spec.pos_block, q = spec.neg_block;
  const long round = static_cast<long>(i) / (p + q);
  const long pos = static_cast<long>(i) % (p + q);
  if (pos < p) {
    const long idx = round * p + pos;      // 0-based odd index
    return Rational(1, 2 * idx + 1);
  }
  const long idx = round * q + (pos - p);  // 0-based even index
  return Rational(-1, 2 * (idx + 1));
}

}  // namespace detail

inline SymbolicValue rearranged_sum(const RearrangementSpec& spec) {
  if (spec.pos_block < 1 || spec.neg_block < 1)
    throw arg_out_of_range("rearranged_sum: blocks must be >= 1");
  SymbolicValue v = ln_integer(2);
  v += scale(ln_integer(spec.pos_block), Rational(1, 2));
  v += scale(ln_integer(spec.neg_block), Rational(-1, 2));
  return v;
}

inline Real rearranged_partial(const RearrangementSpec& spec, long N,
                               prec_t precision_bits = 256) {
  if (spec.pos_block < 1 || spec.neg_block < 1 || N < 1)
    throw arg_out_of_range("rearranged_partial: blocks and N must be >= 1");
  const prec_t w = clamp_prec(precision_bits) + 32;
  Real sum(w), term(w);
  for (long i = 0; i < N; ++i) {
    const Rational t = detail::rearranged_term(spec, static_cast<std::size_t>(i));
    mpfr_set_q(term.raw(), t.raw(), MPFR_RNDN);
    sum += term;
  }
  return sum;
}

// The rearranged series as a stream (period hint = one block round), for
// accelerated summation.
inline CoefficientStream rearranged_stream(const RearrangementSpec& spec) {
  if (spec.pos_block < 1 || spec.neg_block < 1)
    throw arg_out_of_range("rearranged_stream: blocks must be >= 1");
  return rational_stream([spec](std::size_t i) { return detail::rearranged_term(spec, i); },
                         spec.pos_block + spec.neg_block);
}

// ---------------------------------------------------------------------------
// Generating function of the zero-padded rearrangement:
//   (1/2) ln[(1+x^q)(1-x^{2p})/(1-x^q)],  0 < x < 1.
// The value is checked against the truncated rearranged power series (positive
// term 1/d at x^{qd}, negative term 1/(2m) at x^{2pm}) within the provable
// geometric tail bound before being returned.
// ---------------------------------------------------------------------------
inline Real rearranged_generating(const RearrangementSpec& spec, const Real& x,
                                  prec_t precision_bits = 256) {
  const long p = spec.pos_block, q = spec.neg_block;
  if (p < 1 || q < 1) throw arg_out_of_range("rearranged_generating: blocks must be >= 1");
  const prec_t pb = clamp_prec(precision_bits);
  const prec_t w = pb + 32;
  const Real one(1L, w);
  const Real xx = x.at_prec(w);
  if (!(xx > Real(w)) || !(xx < one))
    throw arg_out_of_range("rearranged_generating: requires 0 < x < 1");

  Real xq(w), x2p(w);
  mpfr_pow_si(xq.raw(), xx.raw(), q, MPFR_RNDN);
  mpfr_pow_si(x2p.raw(), xx.raw(), 2 * p, MPFR_RNDN);
  const Real closed = log((one + xq) * (one - x2p) / (one - xq)) / 2L;

  // truncated power series of the same function
  const Real thresh = Real::pow2(-(static_cast<long>(pb) + 8), w);
  Real series(w);
  Real pos_pow = xq;             // x^{q d}, d odd, starts at d=1
  const Real pos_step = xq * xq; // advance d -> d+2
  long d = 1;
  Real neg_pow = x2p;            // x^{2 p m}, starts at m=1
  long m = 1;
  const long cap = 20000;
  while (true) {
    const Real pos_tail = pos_pow / ((one - pos_step) * Real(d, w));
    const Real neg_tail = neg_pow / ((one - x2p) * Real(2 * m, w));
    if ((pos_tail < thresh && neg_tail < thresh) || d + m > cap) {
      // remaining-terms bound, dominated by the two geometric tails
      const Real bound = pos_tail + neg_tail;
      if (!(abs(closed - series) < bound + thresh * 4L))
        throw non_convergence("rearranged_generating: series check failed");
      break;
    }
    if (pos_tail >= neg_tail) {
      series += pos_pow / Real(d, w);
      pos_pow *= pos_step;
      d += 2;
    } else {
      series -= neg_pow / Real(2 * m, w);
      neg_pow *= x2p;
      ++m;
    }
  }
  return closed.at_prec(pb);
}

}  // namespace abelsum

#pragma once

#include <cstddef>
#include <numeric>
#include <utility>

#include "abelsum/errors.hpp"
#include "abelsum/ntheory.hpp"
#include "abelsum/oracle.hpp"
#include "abelsum/rational.hpp"
#include "abelsum/real.hpp"
#include "abelsum/symbolic.hpp"

namespace abelsum {

// ---------------------------------------------------------------------------
// Gauss's closed form at rationals:
//   psi(q/p) = -gamma - ln(2p) - (pi/2) cot(pi q/p)
//              + 2 sum_{j=1}^{floor((p+1)/2)-1} cos(2 pi j q/p) ln sin(pi j/p).
// Terms whose cosine is rational (angle denominator 1,2,3,4,6) land in the
// atom basis; the rest are folded into a numeric remainder at the given
// precision, and the result is tagged non-symbolic.
// ---------------------------------------------------------------------------
inline ClosedForm digamma_rational(long q, long p, prec_t precision_bits = 256) {
  if (p < 1 || q <= 0 || q >= p)
    throw arg_out_of_range("digamma_rational: need 0 < q < p");
  const long g = std::gcd(q, p);
  q /= g;
  p /= g;

  const prec_t w = clamp_prec(precision_bits) + 32;
  ClosedForm cf;
  cf.add_exact(scale(normalize_atom(AtomKind::EulerGamma), Rational(-1)));
  cf.add_exact(scale(ln_integer(2 * p), Rational(-1)));
  if (2 * q != p)  // cot(pi/2) = 0
    cf.add_exact(scale(normalize_atom(AtomKind::PiCot, q, p), Rational(-1, 2)));

  const long jmax = (p + 1) / 2 - 1;
  for (long j = 1; j <= jmax; ++j) {
    const long k = (j * q) % p;  // cos(2 pi k / p)
    if (auto c = exact_cos_2pi(k, p)) {
      cf.add_exact(scale(normalize_atom(AtomKind::LnSin, j, p), Rational(2) * *c));
    } else {
      const Real term =
          Real(2L, w) * cos_pi(Rational(2 * k, p), w) * log(sin_pi(Rational(j, p), w));
      cf.add_numeric(term);
    }
  }
  return cf;
}

// ---------------------------------------------------------------------------
// Series definition psi(z) = -gamma + sum_{k>=0} (1/(k+1) - 1/(z+k)).
// The terms are (z-1)/((k+1)(z+k)) with the proof's tail bound 2(|z|+1)/K, so
// raw truncation is hopeless at high precision; partial sums are sampled at
// geometric indices and iterated Aitken collapses the 1/K tail expansion.
// ---------------------------------------------------------------------------
// psi(z) for complex z off the poles {0, -1, -2, ...}.
inline Complex digamma_series_numeric(const Complex& z, prec_t precision_bits) {
  if (z.im.is_zero() && z.re <= Real(0L, 64) && mpfr_integer_p(z.re.raw()))
    throw pole_error("digamma: pole at nonpositive integer");
  const prec_t p = clamp_prec(precision_bits);
  const prec_t w = p + 48;

  const Complex zm1 = z - Complex(1L, w);
  const Real stop = Real::pow2(-(static_cast<long>(p) + 8), w);
  Complex sum(w);
  std::vector<Complex> samples;
  std::size_t consumed = 0;
  detail::Extrapolation<Complex> best{Complex(w), Real(w), 0};
  bool have = false;
  int stalls = 0;

  constexpr long k0 = 32;
  constexpr int j_max = 14;
  for (int j = 0; j <= j_max; ++j) {
    const std::size_t target = static_cast<std::size_t>(k0) << j;
    for (; consumed < target; ++consumed) {
      const long k = static_cast<long>(consumed);
      sum += zm1 / ((z + Complex(k, w)) * Real(k + 1, w));
    }
    samples.push_back(sum);
    if (samples.size() >= 4) {
      const Real prev_spread = have ? best.spread : Real(w);
      best = detail::iterated_aitken(samples, w);
      if (best.spread < stop) break;
      if (have && j >= 9) {  // extrapolation floor reached, stop burning terms
        stalls = best.spread * 2L > prev_spread ? stalls + 1 : 0;
        if (stalls >= 2) break;
      }
      have = true;
    }
  }
  const Complex tail = have ? best.value : sum;
  return {tail.re - Real::euler_gamma(w), tail.im};
}

// Fast real-argument path (same sampling scheme, scalar arithmetic).
inline Real digamma_series_numeric(const Real& z, prec_t precision_bits) {
  if (z <= Real(0L, 64) && mpfr_integer_p(z.raw()))
    throw pole_error("digamma: pole at nonpositive integer");
  const prec_t p = clamp_prec(precision_bits);
  const prec_t w = p + 48;

  const Real stop = Real::pow2(-(static_cast<long>(p) + 8), w);
  Real zm1 = z - Real(1L, w);
  Real sum(w), zk(w), term(w);
  std::vector<Real> samples;
  std::size_t consumed = 0;
  detail::Extrapolation<Real> best{Real(w), Real(w), 0};
  bool have = false;
  int stalls = 0;

  constexpr long k0 = 32;
  constexpr int j_max = 14;
  for (int j = 0; j <= j_max; ++j) {
    const std::size_t target = static_cast<std::size_t>(k0) << j;
    for (; consumed < target; ++consumed) {
      const long k = static_cast<long>(consumed);
      mpfr_add_si(zk.raw(), z.raw(), k, MPFR_RNDN);
      mpfr_mul_si(zk.raw(), zk.raw(), k + 1, MPFR_RNDN);
      mpfr_div(term.raw(), zm1.raw(), zk.raw(), MPFR_RNDN);
      mpfr_add(sum.raw(), sum.raw(), term.raw(), MPFR_RNDN);
    }
    samples.push_back(sum);
    if (samples.size() >= 4) {
      const Real prev_spread = have ? best.spread : Real(w);
      best = detail::iterated_aitken(samples, w);
      if (best.spread < stop) break;
      if (have && j >= 9) {
        stalls = best.spread * 2L > prev_spread ? stalls + 1 : 0;
        if (stalls >= 2) break;
      }
      have = true;
    }
  }
  return (have ? best.value : sum) - Real::euler_gamma(w);
}

inline Real digamma_series_numeric(const Rational& r, prec_t precision_bits) {
  return digamma_series_numeric(Real(r, clamp_prec(precision_bits) + 48), precision_bits);
}

// ---------------------------------------------------------------------------
// Integral representation psi(z) = -gamma + int_0^1 (1 - t^{z-1})/(1-t) dt,
// Re z > 0. The integrand extends continuously with value z-1 at t = 1; the
// quadrature never places nodes on the endpoints, and 1-t is exact there by
// Sterbenz, so no special casing is required.
// ---------------------------------------------------------------------------
inline Complex digamma_integral_numeric(const Complex& z, prec_t precision_bits) {
  if (!(z.re > Real(0L, 64))) throw domain_error("digamma integral: requires Re z > 0");
  const prec_t p = clamp_prec(precision_bits);
  const prec_t w = p + 32;
  const Complex zm1 = z - Complex(1L, w);

  ComplexIntegrand f = [&zm1](const Real& t, prec_t ww) -> Complex {
    const Real lt = log(t);                          // < 0 on (0,1)
    const Complex a{zm1.re * lt, zm1.im * lt};       // (z-1) log t
    const Complex tz = exp(a);                       // t^{z-1}
    const Real denom = Real(1L, ww) - t;
    return {(Real(1L, ww) - tz.re) / denom, -tz.im / denom};
  };
  auto res = quadrature_complex(f, Real(w), Real(1L, w), p);
  const Real g = Real::euler_gamma(w);
  return {res.value.re - g, res.value.im};
}

inline Real digamma_integral_numeric(const Real& z, prec_t precision_bits) {
  return digamma_integral_numeric(Complex{z, Real(z.prec())}, precision_bits).re;
}

// ---------------------------------------------------------------------------
// psi at any positive rational via the recurrence psi(z+1) = psi(z) + 1/z:
// r = q/p + m reduces to the Gauss value plus exact harmonic corrections;
// integer r gives psi(m) = -gamma + H_{m-1}.
// ---------------------------------------------------------------------------
inline ClosedForm digamma_shift(const Rational& r, prec_t precision_bits = 256) {
  if (r.sign() <= 0) throw arg_out_of_range("digamma_shift: requires r > 0");
  const long m = r.floor_long();
  const Rational frac = r - Rational(m);

  ClosedForm cf;
  if (frac.is_zero()) {
    cf.add_exact(scale(normalize_atom(AtomKind::EulerGamma), Rational(-1)));
    Rational h(0);
    for (long k = 1; k <= m - 1; ++k) h += Rational(1, k);
    cf.add_exact(SymbolicValue::single(Atom::unit(), h));
    return cf;
  }
  cf = digamma_rational(frac.num_long(), frac.den_long(), precision_bits);
  Rational h(0);
  for (long k = 0; k < m; ++k) h += Rational(1) / (frac + Rational(k));
  cf.add_exact(SymbolicValue::single(Atom::unit(), h));
  return cf;
}

// ---------------------------------------------------------------------------
// Gauss's finite-Fourier identity
//   sum_{j=1}^{q-1} psi(j/q) e^{2 pi i jk/q}
//     = gamma + q ln(2 sin(pi k/q)) + i (2k - q) pi/2,   q !| k.
// The right side as printed holds for 0 < k < q (the left side is k mod q
// periodic), so k is reduced first. Returns (lhs, rhs) for the caller to
// compare.
// ---------------------------------------------------------------------------
inline std::pair<Complex, Complex> gauss_fourier_check(long q, long k, prec_t precision_bits) {
  if (q < 2) throw domain_error("gauss_fourier_check: requires q >= 2");
  long r = k % q;
  if (r < 0) r += q;
  if (r == 0) throw domain_error("gauss_fourier_check: q divides k");

  const prec_t p = clamp_prec(precision_bits);
  const prec_t w = p + 32;

  Complex lhs(w);
  for (long j = 1; j <= q - 1; ++j) {
    const Real psi = digamma_rational(j, q, p).eval(w);
    const Complex root = exp_i_pi(Rational(2 * ((j * r) % q), q), w);
    lhs += root * psi;
  }

  const Real g = Real::euler_gamma(w);
  const Real ln_term = log(Real(2L, w) * sin_pi(Rational(r, q), w)) * Real(q, w);
  const Real im = Real(2 * r - q, w) * Real::pi(w) / 2L;
  return {lhs, Complex{g + ln_term, im}};
}

}  // namespace abelsum

#pragma once

#include <optional>
#include <utility>

#include "abelsum/digamma.hpp"
#include "abelsum/errors.hpp"
#include "abelsum/oracle.hpp"
#include "abelsum/periodic.hpp"
#include "abelsum/rational.hpp"
#include "abelsum/real.hpp"
#include "abelsum/symbolic.hpp"

namespace abelsum {

// I(lambda) = sum_{n>=0} (-1)^n/(lambda n + 1) = int_0^1 dt/(1+t^lambda) for
// lambda > 0; I(0) = 1/2 is the Abel sum of Grandi's series.

inline OracleResult I_numeric(const Real& lambda, prec_t precision_bits) {
  const prec_t p = clamp_prec(precision_bits);
  const prec_t w = p + 32;
  if (lambda.sign() < 0)
    throw domain_error("I_numeric: lambda < 0 (use I_via_digamma)");
  if (lambda.is_zero()) {
    OracleResult r{Real(Rational(1, 2), p), Real(p), 0, true};
    return r;
  }
  const Real lam = lambda.at_prec(w);
  RealIntegrand f = [&lam](const Real& t, prec_t ww) -> Real {
    Real tp(ww);
    mpfr_pow(tp.raw(), t.raw(), lam.raw(), MPFR_RNDN);
    return Real(1L, ww) / (Real(1L, ww) + tp);
  };
  return quadrature(f, Real(w), std::optional<Real>(Real(1L, w)), p);
}

inline OracleResult I_numeric(const Rational& lambda, prec_t precision_bits) {
  return I_numeric(Real(lambda, clamp_prec(precision_bits) + 32), precision_bits);
}

// ---------------------------------------------------------------------------
// Closed form (0 < q < p):
//   I(p/q) = (q pi/p)/(2 sin(q pi/p))
//            - (2q/p) sum_{j=0}^{floor(p/2)-1} cos((2j+1) q pi/p) ln sin((2j+1) pi/(2p)).
// The cosecant prefactor lives in the atom basis through
// cot x + tan x = 2/sin 2x:  pi/sin(q pi/p) = (1/2)[pi cot(q pi/(2p)) + pi cot((p-q) pi/(2p))].
// ---------------------------------------------------------------------------
inline ClosedForm I_closed(long p, long q, prec_t precision_bits = 256) {
  if (q <= 0 || p <= q) throw arg_out_of_range("I_closed: requires 0 < q < p");
  const prec_t w = clamp_prec(precision_bits) + 32;

  ClosedForm cf;
  SymbolicValue pref = normalize_atom(AtomKind::PiCot, q, 2 * p);
  pref += normalize_atom(AtomKind::PiCot, p - q, 2 * p);
  cf.add_exact(scale(pref, Rational(q, 4 * p)));

  const Rational weight(-2 * q, p);
  for (long j = 0; j <= p / 2 - 1; ++j) {
    const long idx = 2 * j + 1;                     // ln sin(idx pi/(2p))
    const long k = (idx * q) % (2 * p);             // cos(2 pi k/(2p)) = cos(idx q pi/p)
    if (auto cv = exact_cos_2pi(k, 2 * p)) {
      cf.add_exact(scale(normalize_atom(AtomKind::LnSin, idx, 2 * p), weight * *cv));
    } else {
      cf.add_numeric(Real(weight, w) * cos_pi(Rational(k, p), w) *
                     log(sin_pi(Rational(idx, 2 * p), w)));
    }
  }
  return cf;
}

// ---------------------------------------------------------------------------
// sum_{n>=0} (-1)^n/(pn+q) = I(p/q)/q. For q < p the exact part goes through
// the period-2p closed form (so it cross-checks I_closed structurally); q = p
// is ln(2)/p; q > p runs through the digamma recurrence:
//   sum = (1/2p) [ psi((p+q)/2p) - psi(q/2p) ].
// ---------------------------------------------------------------------------
struct SeriesPQ {
  ClosedForm closed;
  OracleResult oracle;
};

inline SeriesPQ series_pq(long p, long q, prec_t precision_bits) {
  if (p <= 0 || q <= 0) throw arg_out_of_range("series_pq: requires p, q > 0");
  const prec_t pb = clamp_prec(precision_bits);

  SeriesPQ out;
  if (q < p) {
    std::vector<Rational> a(static_cast<std::size_t>(2 * p), Rational(0));
    a[static_cast<std::size_t>(q - 1)] = Rational(1);
    a[static_cast<std::size_t>(p + q - 1)] = Rational(-1);
    out.closed = closed_form_sum(PeriodicCoefficients(2 * p, std::move(a)), pb);
  } else if (q == p) {
    out.closed.add_exact(scale(ln_integer(2), Rational(1, p)));
  } else {
    ClosedForm hi = digamma_shift(Rational(p + q, 2 * p), pb);
    ClosedForm lo = digamma_shift(Rational(q, 2 * p), pb);
    hi.add(lo.scaled(Rational(-1)));
    out.closed = hi.scaled(Rational(1, 2 * p));
  }

  CoefficientStream s = rational_stream(
      [p, q](std::size_t n) {
        return Rational(n % 2 ? -1 : 1, p * static_cast<long>(n) + q);
      },
      2);
  out.oracle = accelerated_sum(s, 1L << 18, pb);
  return out;
}

// ---------------------------------------------------------------------------
// 2 lambda I(lambda) = psi(1/2 + 1/(2 lambda)) - psi(1/(2 lambda)); extends I
// to negative lambda off the singular set {0} U {-1/k : k >= 1}.
// ---------------------------------------------------------------------------
inline Real I_via_digamma(const Real& lambda, prec_t precision_bits) {
  const prec_t p = clamp_prec(precision_bits);
  const prec_t w = p + 48;
  if (lambda.is_zero()) throw pole_error("I_via_digamma: lambda = 0");
  const Real a = Real(1L, w) / (lambda.at_prec(w) * 2L);
  const Real b = a + Real(Rational(1, 2), w);
  const auto at_pole = [&](const Real& x) {
    return x.sign() <= 0 && mpfr_integer_p(x.raw()) != 0;
  };
  if (at_pole(a) || at_pole(b))
    throw pole_error("I_via_digamma: lambda on the singular set {-1/k}");
  const Real va = digamma_series_numeric(a, p);
  const Real vb = digamma_series_numeric(b, p);
  return (vb - va) / (lambda.at_prec(w) * 2L);
}

inline Real I_via_digamma(const Rational& lambda, prec_t precision_bits) {
  if (lambda.is_zero()) throw pole_error("I_via_digamma: lambda = 0");
  const Rational a = Rational(1) / (lambda * Rational(2));
  const Rational b = a + Rational(1, 2);
  if ((a.is_integer() && a.sign() <= 0) || (b.is_integer() && b.sign() <= 0))
    throw pole_error("I_via_digamma: lambda on the singular set {-1/k}");
  return I_via_digamma(Real(lambda, clamp_prec(precision_bits) + 48), precision_bits);
}

// ---------------------------------------------------------------------------
// Functional equation (1 - lambda) I(lambda) + I(lambda/(1-lambda)) = 1.
// Returns (lhs, 1). Nonnegative lambda goes through the integral, negative
// through the digamma extension.
// ---------------------------------------------------------------------------
inline std::pair<Real, Real> I_functional_check(const Real& lambda, prec_t precision_bits) {
  const prec_t p = clamp_prec(precision_bits);
  const prec_t w = p + 32;
  const Real one(1L, w);
  const Real lam = lambda.at_prec(w);
  if (lam == one) throw domain_error("I_functional_check: lambda = 1");

  const auto I_of = [p](const Real& x) {
    return x.sign() < 0 ? I_via_digamma(x, p) : I_numeric(x, p).value;
  };
  const Real mu = lam / (one - lam);
  const Real lhs = (one - lam) * I_of(lam) + I_of(mu);
  return {lhs, Real(1L, p)};
}

// ---------------------------------------------------------------------------
// Euler's integrals (0 < q < p):
//   int_0^1 (t^{q-1} - t^{p-q-1})/(1-t^p) dt = (pi/p) cot(q pi/p)
//   int_0^infty t^{q-1}/(1+t^p) dt = (pi/p)/sin(q pi/p)
// Quadrature on the left, atoms on the right; the infinite range is folded by
// t -> 1/s inside quadrature().
// ---------------------------------------------------------------------------
struct CotCscIntegrals {
  Real cot_integral;
  SymbolicValue cot_closed;
  Real csc_integral;
  SymbolicValue csc_closed;
};

inline CotCscIntegrals cot_csc_integrals(long p, long q, prec_t precision_bits) {
  if (q <= 0 || p <= q) throw arg_out_of_range("cot_csc_integrals: requires 0 < q < p");
  const prec_t pb = clamp_prec(precision_bits);
  const prec_t w = pb + 32;

  std::vector<Rational> num(static_cast<std::size_t>(p), Rational(0));
  num[static_cast<std::size_t>(q - 1)] += Rational(1);
  num[static_cast<std::size_t>(p - q - 1)] += Rational(-1);
  const auto r_coef = detail::to_reals(detail::divide_by_one_minus_t(num), w);
  RealIntegrand cot_f = [&r_coef, p](const Real& t, prec_t ww) -> Real {
    Real den(1L, ww);
    for (long i = 1; i < p; ++i) den = den * t + Real(1L, ww);
    return detail::horner(r_coef, t, ww) / den;
  };
  const Real cot_val = quadrature(cot_f, Real(w), std::optional<Real>(Real(1L, w)), pb).value;

  RealIntegrand csc_f = [p, q](const Real& t, prec_t ww) -> Real {
    Real tq(ww), tp(ww);
    mpfr_pow_si(tq.raw(), t.raw(), q - 1, MPFR_RNDN);
    mpfr_pow_si(tp.raw(), t.raw(), p, MPFR_RNDN);
    return tq / (Real(1L, ww) + tp);
  };
  const Real csc_val = quadrature(csc_f, Real(w), std::nullopt, pb).value;

  SymbolicValue cot_closed = scale(normalize_atom(AtomKind::PiCot, q, p), Rational(1, p));
  SymbolicValue csc_closed = normalize_atom(AtomKind::PiCot, q, 2 * p);
  csc_closed += normalize_atom(AtomKind::PiCot, p - q, 2 * p);
  csc_closed = scale(csc_closed, Rational(1, 2 * p));

  return {cot_val, std::move(cot_closed), csc_val, std::move(csc_closed)};
}

}  // namespace abelsum

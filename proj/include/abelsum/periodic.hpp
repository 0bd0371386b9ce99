#pragma once

#include <map>
#include <numeric>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "abelsum/errors.hpp"
#include "abelsum/ntheory.hpp"
#include "abelsum/oracle.hpp"
#include "abelsum/rational.hpp"
#include "abelsum/real.hpp"
#include "abelsum/symbolic.hpp"

namespace abelsum {

// p-periodic rational coefficient block a_0..a_{p-1}. The closed-form
// operations additionally require P(1) = sum a_j = 0.
struct PeriodicCoefficients {
  long period = 1;
  std::vector<Rational> coeffs;

  PeriodicCoefficients(long p, std::vector<Rational> c) : period(p), coeffs(std::move(c)) {
    if (period < 1) throw arg_out_of_range("PeriodicCoefficients: period must be >= 1");
    if (static_cast<long>(coeffs.size()) != period)
      throw not_periodic_input("PeriodicCoefficients: coefficient count != period");
  }

  Rational sum() const {
    Rational s(0);
    for (const auto& c : coeffs) s += c;
    return s;
  }

  const Rational& at(std::size_t n) const { return coeffs[n % coeffs.size()]; }
};

struct ResidueTerm {
  Complex root;     // a p-th root of unity (never 1); -1 iff p even
  Complex residue;  // -omega^j P(omega^j) / p
};

namespace detail {

// exact synthetic division P(t) = (1-t) R(t); requires P(1) = 0
inline std::vector<Rational> divide_by_one_minus_t(const std::vector<Rational>& a) {
  std::vector<Rational> r;
  if (a.size() <= 1) return r;
  r.reserve(a.size() - 1);
  Rational acc(0);
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    acc += a[i];
    r.push_back(acc);
  }
  return r;
}

inline std::vector<Real> to_reals(const std::vector<Rational>& c, prec_t w) {
  std::vector<Real> out;
  out.reserve(c.size());
  for (const auto& q : c) out.emplace_back(q, w);
  return out;
}

inline Real horner(const std::vector<Real>& c, const Real& t, prec_t w) {
  Real acc(w);
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * t + c[i];
  return acc;
}

inline Complex horner(const std::vector<Real>& c, const Complex& t, prec_t w) {
  Complex acc(w);
  for (std::size_t i = c.size(); i-- > 0;) {
    acc = acc * t;
    acc.re += c[i];
  }
  return acc;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Closed form for int_0^1 P(t)/(1-t^p) dt = sum a_n/(n+1):
//   sum_{l=1}^{p-1} (a_{l-1}/p) [ ln(2p) + (pi/2) cot(pi l/p)
//       - 2 sum_{j=1}^{floor((p+1)/2)-1} cos(2 pi l j/p) ln sin(pi j/p) ].
// Cosines with angle denominator in {1,2,3,4,6} stay exact; the others are
// grouped by (canonical cosine angle, j) with exact rational weights -- so
// algebraically canceling contributions vanish before anything numeric
// happens -- and only nonzero groups are folded into the remainder.
// ---------------------------------------------------------------------------
inline ClosedForm closed_form_sum(const PeriodicCoefficients& c, prec_t precision_bits = 256) {
  if (!c.sum().is_zero())
    throw nonzero_sum("closed_form_sum: coefficients must sum to zero over one period");
  const long p = c.period;
  const prec_t w = clamp_prec(precision_bits) + 32;

  ClosedForm cf;
  std::map<std::tuple<long, long, long>, Rational> irrational;  // (num, den, j) -> weight

  const long jmax = (p + 1) / 2 - 1;
  for (long l = 1; l <= p - 1; ++l) {
    const Rational& a = c.coeffs[static_cast<std::size_t>(l - 1)];
    if (a.is_zero()) continue;
    const Rational r = a / Rational(p);
    cf.add_exact(scale(ln_integer(2 * p), r));
    if (2 * l != p) cf.add_exact(scale(normalize_atom(AtomKind::PiCot, l, p), r / Rational(2)));
    for (long j = 1; j <= jmax; ++j) {
      long k = (l * j) % p;  // cos(2 pi k/p)
      const Rational weight = Rational(-2) * r;
      if (auto cv = exact_cos_2pi(k, p)) {
        cf.add_exact(scale(normalize_atom(AtomKind::LnSin, j, p), weight * *cv));
      } else {
        if (2 * k > p) k = p - k;  // cos(2pi(p-k)/p) = cos(2pi k/p)
        const long g = std::gcd(k, p);
        irrational[{k / g, p / g, j}] += weight;
      }
    }
  }
  for (const auto& [key, weight] : irrational) {
    if (weight.is_zero()) continue;
    const auto& [num, den, j] = key;
    cf.add_numeric(Real(weight, w) * cos_pi(Rational(2 * num, den), w) *
                   log(sin_pi(Rational(j, p), w)));
  }
  return cf;
}

// ---------------------------------------------------------------------------
// Numeric value of sum a_n/(n+1): accelerated summation and quadrature of
// int_0^1 P(t)/(1-t^p) dt with the t=1 singularity removed by exact synthetic
// division (P = (1-t) R, integrand R/(1+t+...+t^{p-1})). Returns the
// quadrature result after asserting the two paths agree.
// ---------------------------------------------------------------------------
inline OracleResult series_numeric(const PeriodicCoefficients& c, prec_t precision_bits) {
  if (!c.sum().is_zero())
    throw nonzero_sum("series_numeric: coefficients must sum to zero over one period");
  const prec_t p = clamp_prec(precision_bits);
  const prec_t w = p + 32;
  const long period = c.period;

  const auto r_coef = detail::to_reals(detail::divide_by_one_minus_t(c.coeffs), w);
  RealIntegrand f = [&r_coef, period](const Real& t, prec_t ww) -> Real {
    Real num = detail::horner(r_coef, t, ww);
    Real den(1L, ww);
    for (long i = 1; i < period; ++i) den = den * t + Real(1L, ww);
    return num / den;
  };
  OracleResult quad = quadrature(f, Real(w), std::optional<Real>(Real(1L, w)), p);

  // independent sanity path at modest precision
  CoefficientStream s = rational_stream(
      [c](std::size_t n) { return c.at(n) / Rational(static_cast<long>(n) + 1); }, period);
  OracleResult acc = accelerated_sum(s, 1L << 18, 64);

  const Real gap = abs(quad.value - acc.value);
  const Real tol =
      (quad.error_estimate + acc.error_estimate) * 1024L + Real::pow2(-30, w);
  if (!(gap < tol))
    throw non_convergence("series_numeric: quadrature and accelerated sum disagree");

  quad.terms_used += acc.terms_used;
  quad.converged = quad.converged && acc.converged;
  return quad;
}

// ---------------------------------------------------------------------------
// Partial fractions of P(t)/(1-t^p) over the roots of Q = 1+t+...+t^{p-1}
// (all p-th roots of unity except 1): residue -omega^j P(omega^j)/p at
// omega^j. Roots come from cos/sin of exact rational angles; -1 (p even) is
// exact.
// ---------------------------------------------------------------------------
inline std::vector<ResidueTerm> partial_fraction(const std::vector<Rational>& p_coeffs, long p,
                                                 prec_t precision_bits = 256) {
  if (p < 1) throw arg_out_of_range("partial_fraction: p must be >= 1");
  for (std::size_t i = static_cast<std::size_t>(p); i < p_coeffs.size(); ++i)
    if (!p_coeffs[i].is_zero()) throw degree_error("partial_fraction: deg P must be < p");
  bool all_zero = true;
  Rational s(0);
  for (const auto& q : p_coeffs) {
    if (!q.is_zero()) all_zero = false;
    s += q;
  }
  if (all_zero) return {};
  if (!s.is_zero()) throw nonzero_sum("partial_fraction: requires P(1) = 0");

  const prec_t w = clamp_prec(precision_bits) + 32;
  const auto coef = detail::to_reals(p_coeffs, w);
  std::vector<ResidueTerm> out;
  out.reserve(static_cast<std::size_t>(p - 1));
  for (long j = 1; j <= p - 1; ++j) {
    Complex root(w);
    if (2 * j == p) {
      root.re = Real(-1L, w);
    } else {
      root = exp_i_pi(Rational(2 * j, p), w);
    }
    const Complex pw = detail::horner(coef, root, w);
    const Complex residue = -(root * pw) / Real(p, w);
    out.push_back({root, residue});
  }
  return out;
}

// ---------------------------------------------------------------------------
// int_0^1 dt/(t - e^{i theta}) = ln 2 + ln sin(|theta|/2) + i arg(1-e^{-i theta})
// for 0 < |theta| < pi, theta = (num/den) pi. The argument is (pi-theta)/2
// for theta > 0 and -(pi+theta)/2 for theta < 0 (isosceles-triangle value).
// ---------------------------------------------------------------------------
struct RootIntegralParts {
  SymbolicValue real_part;
  Rational imag_pi_coeff;  // imaginary part = coeff * pi
};

inline RootIntegralParts root_integral(const Rational& theta_over_pi) {
  const Rational r = theta_over_pi;
  if (r.is_zero() || r.abs() >= Rational(1))
    throw domain_error("root_integral: requires 0 < |theta| < pi");
  RootIntegralParts out;
  out.real_part = ln_integer(2);
  const Rational half = r.abs() / Rational(2);  // |theta|/(2 pi)
  out.real_part += normalize_atom(AtomKind::LnSin, half.num_long(), half.den_long());
  out.imag_pi_coeff = r.sign() > 0 ? (Rational(1) - r) / Rational(2)
                                   : -(Rational(1) + r) / Rational(2);
  return out;
}

inline Complex root_integral_value(const Rational& theta_over_pi, prec_t precision_bits) {
  const prec_t w = clamp_prec(precision_bits) + 32;
  const RootIntegralParts parts = root_integral(theta_over_pi);
  return {eval_numeric(parts.real_part, w), Real(parts.imag_pi_coeff, w) * Real::pi(w)};
}

// ---------------------------------------------------------------------------
// Proof-path evaluation of int_0^1 P(t)/(1-t^p) dt: partial fractions plus
// the closed root integrals (ln 2 for the root at -1). Independent of the
// Theorem-3 trigonometric rearrangements.
// ---------------------------------------------------------------------------
inline Real alt_path_sum(const PeriodicCoefficients& c, prec_t precision_bits) {
  if (!c.sum().is_zero())
    throw nonzero_sum("alt_path_sum: coefficients must sum to zero over one period");
  const prec_t p = clamp_prec(precision_bits);
  const prec_t w = p + 32;
  const long period = c.period;

  const auto residues = partial_fraction(c.coeffs, period, w);
  if (residues.empty()) return Real(p);  // zero polynomial
  Complex total(w);
  for (long j = 1; j <= period - 1; ++j) {
    const ResidueTerm& rt = residues[static_cast<std::size_t>(j - 1)];
    if (2 * j == period) {
      total += rt.residue * Real::ln2(w);  // int_0^1 dt/(t+1)
      continue;
    }
    // theta_j = 2 pi j / period mapped into (-pi, pi)
    const Rational theta =
        2 * j < period ? Rational(2 * j, period) : Rational(2 * j - 2 * period, period);
    total += rt.residue * root_integral_value(theta, w);
  }
  if (!(abs(total.im) < Real::pow2(-(static_cast<long>(p) / 2), w) *
                            max(Real(1L, w), abs(total.re))))
    throw non_convergence("alt_path_sum: imaginary part failed to cancel");
  return total.re;
}

// ---------------------------------------------------------------------------
// Finite trigonometric kernels from the proof of the main closed form.
// ---------------------------------------------------------------------------

// sum_{j=1}^{k} cos(j theta) = sin(k theta/2) cos((k+1) theta/2) / sin(theta/2)
inline Real cos_kernel_sum(long k, const Real& theta, prec_t precision_bits) {
  if (k < 1) throw arg_out_of_range("cos_kernel_sum: k must be >= 1");
  const prec_t w = clamp_prec(precision_bits) + 32;
  const Real half = theta.at_prec(w) / 2L;
  const Real sh = sin(half);
  if (sh.is_zero()) throw domain_error("cos_kernel_sum: theta is a multiple of 2 pi");
  return sin(half * Real(k, w)) * cos(half * Real(k + 1, w)) / sh;
}

inline Real cos_kernel_sum(long k, const Rational& theta_over_pi, prec_t precision_bits) {
  Rational r = theta_over_pi;
  if ((r / Rational(2)).is_integer())
    throw domain_error("cos_kernel_sum: theta is a multiple of 2 pi");
  const prec_t w = clamp_prec(precision_bits) + 32;
  return cos_kernel_sum(k, Real(r, w) * Real::pi(w), precision_bits);
}

// sum_{j=1}^{k} e^{i j theta} = (sin(k theta/2)/sin(theta/2)) e^{i(k+1)theta/2},
// bounded by 1/|sin(theta/2)| (Dirichlet-test bound).
inline Complex exp_kernel_sum(long k, const Real& theta, prec_t precision_bits) {
  if (k < 1) throw arg_out_of_range("exp_kernel_sum: k must be >= 1");
  const prec_t w = clamp_prec(precision_bits) + 32;
  const Real half = theta.at_prec(w) / 2L;
  const Real sh = sin(half);
  if (sh.is_zero()) throw domain_error("exp_kernel_sum: theta is a multiple of 2 pi");
  const Real m = sin(half * Real(k, w)) / sh;
  const Real phase = half * Real(k + 1, w);
  return {m * cos(phase), m * sin(phase)};
}

// ---------------------------------------------------------------------------
// sin products: prod_{j=1}^{N-1} sin(pi j/N) = N/2^{N-1}; for N = 2m also the
// half product prod_{j=1}^{m-1} sin(pi j/2m) = sqrt(m)/2^{m-1}.
// ---------------------------------------------------------------------------
struct SineProduct {
  Real product;
  SymbolicValue claim;  // N / 2^{N-1}, a rational
  std::optional<std::pair<Real, Real>> half;  // (half product, sqrt(m)/2^{m-1})
};

inline SineProduct sine_product(long N, prec_t precision_bits = 256) {
  if (N < 2) throw arg_out_of_range("sine_product: N must be >= 2");
  const prec_t w = clamp_prec(precision_bits) + 32;

  SineProduct out{Real(1L, w), SymbolicValue::zero(), std::nullopt};
  for (long j = 1; j <= N - 1; ++j) out.product *= sin_pi(Rational(j, N), w);

  Rational claim(N);
  for (long i = 0; i < N - 1; ++i) claim = claim / Rational(2);
  out.claim = SymbolicValue::single(Atom::unit(), claim);

  if (N % 2 == 0) {
    const long m = N / 2;
    Real hp(1L, w);
    for (long j = 1; j <= m - 1; ++j) hp *= sin_pi(Rational(j, 2 * m), w);
    Real hc = sqrt(Real(m, w));
    for (long i = 0; i < m - 1; ++i) hc /= Real(2L, w);
    out.half = std::make_pair(std::move(hp), std::move(hc));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Step-3 weighted sine sum: 2 (-1)^{l+1} sum_{j=1}^{m-1} j sin(pi l j/m)
// equals m cot(pi l/(2m)) for l < 2m and 0 for l = 2m (also 0 at l = m).
// ---------------------------------------------------------------------------
inline Real weighted_sine_sum(long l, long m, prec_t precision_bits = 256) {
  if (m < 1 || l < 1 || l > 2 * m)
    throw arg_out_of_range("weighted_sine_sum: requires 1 <= l <= 2m");
  const prec_t w = clamp_prec(precision_bits) + 32;
  if (l == 2 * m || l == m) return Real(w);
  return Real(m, w) * cot_pi(Rational(l, 2 * m), w);
}

inline Real weighted_sine_sum_direct(long l, long m, prec_t precision_bits = 256) {
  if (m < 1 || l < 1 || l > 2 * m)
    throw arg_out_of_range("weighted_sine_sum_direct: requires 1 <= l <= 2m");
  const prec_t w = clamp_prec(precision_bits) + 32;
  Real s(w);
  for (long j = 1; j <= m - 1; ++j) s += Real(j, w) * sin_pi(Rational(l * j, m), w);
  s *= Real(2L, w);
  if (l % 2 == 0) s = -s;  // the (-1)^{l+1} normalization
  return s;
}

}  // namespace abelsum

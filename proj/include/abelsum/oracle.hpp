#pragma once

#include <algorithm>
#include <array>
#include <climits>
#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "abelsum/errors.hpp"
#include "abelsum/rational.hpp"
#include "abelsum/real.hpp"

namespace abelsum {

// Deterministic coefficient generator: index n -> a_n at the requested
// precision. The optional hint declares the period of the coefficient pattern
// and steers the accelerated summation's sampling stride.
struct CoefficientStream {
  std::function<Complex(std::size_t n, prec_t prec)> coeff;
  std::optional<long> period_hint;
};

inline CoefficientStream rational_stream(std::function<Rational(std::size_t)> f,
                                         std::optional<long> hint = std::nullopt) {
  return {[f = std::move(f)](std::size_t n, prec_t w) -> Complex {
            return {Real(f(n), w), Real(w)};
          },
          hint};
}

struct OracleResult {
  Real value;
  Real error_estimate;
  long terms_used = 0;
  bool converged = false;
};

struct ComplexOracleResult {
  Complex value;
  Real error_estimate;
  long terms_used = 0;
  bool converged = false;
};

namespace detail {

inline Real norm_of(const Real& x) { return abs(x); }
inline Real norm_of(const Complex& z) { return abs(z); }

template <typename T>
T zero_like(prec_t w) {
  return T(w);
}

constexpr long kExpFloor = LONG_MIN / 8;

inline long mag_exp(const Real& x) {
  if (x.is_zero() || !x.is_finite()) return x.is_finite() ? kExpFloor : LONG_MAX / 8;
  return static_cast<long>(mpfr_get_exp(x.raw()));
}

// upper bound on log2|z|, cheap
inline long mag_exp(const Complex& z) {
  return std::max(mag_exp(z.re), mag_exp(z.im)) + 1;
}

// Richardson ladder for sequences with error expansion in h, h halving per
// row: T_k^{(j)} = T_k^{(j-1)} + (T_k^{(j-1)} - T_{k-1}^{(j-1)})/(2^{m(j)} - 1).
// With repeated_orders, each order is eliminated twice (m = 1,1,2,2,...),
// which also annihilates h^m log h pairs as they arise in log-endpoint series.
template <typename T>
class RichardsonLadder {
 public:
  explicit RichardsonLadder(prec_t w, bool repeated_orders = false, int max_depth = 30)
      : w_(w), repeated_(repeated_orders), depth_(max_depth) {}

  // Adds f(h_k) and returns the new diagonal entry.
  const T& push(T f) {
    std::vector<T> row;
    row.reserve(rows_.empty() ? 1 : rows_.back().size() + 1);
    row.push_back(std::move(f));
    if (!rows_.empty()) {
      const auto& prev = rows_.back();
      const std::size_t jmax = std::min(prev.size(), static_cast<std::size_t>(depth_));
      for (std::size_t j = 1; j <= jmax; ++j) {
        const long order = repeated_ ? static_cast<long>((j + 1) / 2) : static_cast<long>(j);
        const Real denom = Real::pow2(order, w_) - Real(1L, w_);
        row.push_back(row[j - 1] + (row[j - 1] - prev[j - 1]) / denom);
      }
    }
    rows_.push_back(std::move(row));
    return rows_.back().back();
  }

  std::size_t size() const { return rows_.size(); }
  const T& diagonal() const { return rows_.back().back(); }
  const T& diagonal_prev() const { return rows_[rows_.size() - 2].back(); }

 private:
  prec_t w_;
  bool repeated_;
  int depth_;
  std::vector<std::vector<T>> rows_;
};

template <typename T>
struct Extrapolation {
  T value;
  Real spread;  // spread of the last (up to 3) corner extrapolants
  int levels = 0;
};

// Iterated Aitken delta-squared. Each pass annihilates the dominant geometric
// transient of the sequence; iteration walks down the table until the second
// differences fall into rounding noise.
template <typename T>
Extrapolation<T> iterated_aitken(std::vector<T> u, prec_t w) {
  Extrapolation<T> out{u.back(), Real(w), 0};
  if (u.size() < 3) {
    if (u.size() == 2) out.spread = norm_of(u[1] - u[0]);
    return out;
  }
  std::vector<T> corners;
  corners.push_back(u.back());
  const Real eps_floor = Real::pow2(-(static_cast<long>(w) - 6), w);
  while (u.size() >= 3) {
    std::vector<T> v;
    v.reserve(u.size() - 2);
    bool degenerate = false;
    for (std::size_t i = 0; i + 2 < u.size(); ++i) {
      const T d1 = u[i + 1] - u[i];
      const T d2 = u[i + 2] - u[i + 1];
      const T dd = d2 - d1;
      const Real scale = max(Real(1L, w), norm_of(u[i + 2]));
      if (!(norm_of(dd) > eps_floor * scale)) {
        degenerate = true;  // second differences are rounding noise
        break;
      }
      v.push_back(u[i + 2] - (d2 * d2) / dd);
    }
    if (degenerate || v.empty()) break;
    u = std::move(v);
    corners.push_back(u.back());
    ++out.levels;
  }
  out.value = corners.back();
  Real spread(w);
  const std::size_t n = corners.size();
  if (n >= 2) spread = norm_of(corners[n - 1] - corners[n - 2]);
  if (n >= 3) spread = max(spread, norm_of(corners[n - 2] - corners[n - 3]));
  out.spread = spread;
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Abel-limit evaluation: f(x_k) = sum a_n x_k^n on the schedule x_k = 1-2^-k,
// k = 4..k_max, Richardson-extrapolated in 2^-k. Each f(x_k) is truncated
// once the geometric tail bound x^n/(1-x) * sup|a_n| (sup over the trailing
// 64-term window) drops below 2^-(P/2+16); the extrapolation is converged
// when two successive diagonal entries differ by less than 2^-(P/2).
// ---------------------------------------------------------------------------
inline ComplexOracleResult abel_limit_complex(const CoefficientStream& a, prec_t precision_bits,
                                              int k_max = 40) {
  const prec_t p = clamp_prec(precision_bits);
  const prec_t w = p + 32;
  const long tau_bits = static_cast<long>(p) / 2 + 16;
  const Real tau = Real::pow2(-tau_bits, w);
  const Real stop = Real::pow2(-(static_cast<long>(p) / 2), w);
  constexpr std::size_t n_cap = std::size_t(1) << 22;

  // two extrapolation tables over the same Abel means: the plain power ladder
  // (optimal for analytic f) and the repeated-order ladder (for h^m log h
  // expansions); whichever stabilizes first wins
  detail::RichardsonLadder<Complex> ladder(w);
  detail::RichardsonLadder<Complex> log_ladder(w, true);
  ComplexOracleResult res{Complex(w), Real(w), 0, false};
  std::vector<Real> fmags;

  for (int k = 4; k <= k_max; ++k) {
    const Real x = Real(1L, w) - Real::pow2(-k, w);
    const double lx_step = std::log1p(-std::ldexp(1.0, -k)) / std::log(2.0);

    Complex sum(w);
    Real xn(1L, w);
    std::array<long, 64> wexp{};
    wexp.fill(detail::kExpFloor);
    bool budget_out = false;
    std::size_t n = 0;
    for (;; ++n) {
      if (n >= n_cap) {  // convergent but too slow at this x_k: keep best so far
        budget_out = true;
        break;
      }
      const Complex an = a.coeff(n, w);
      if (!an.is_finite()) throw non_convergence("abel_limit: non-finite coefficient");
      sum += an * xn;
      xn *= x;
      wexp[n % 64] = detail::mag_exp(an);
      if ((n & 63) == 0 && detail::mag_exp(sum) > 128)
        throw non_convergence("abel_limit: partial sums blow up");
      if (n + 1 >= 64) {
        const long emax = *std::max_element(wexp.begin(), wexp.end());
        if (emax <= detail::kExpFloor) break;  // trailing window all zero
        const double bound_bits =
            static_cast<double>(n + 1) * lx_step + static_cast<double>(emax) + k + 2.0;
        if (bound_bits < -static_cast<double>(tau_bits)) break;
      }
    }
    res.terms_used += static_cast<long>(n + 1);
    if (budget_out) break;

    // divergence heuristic: |f(x_k)| doubling over 3 consecutive k
    fmags.push_back(abs(sum));
    const std::size_t m = fmags.size();
    if (m >= 4 && fmags[m - 1] > Real(1L, w)) {
      bool doubling = true;
      for (std::size_t i = m - 3; i < m; ++i)
        if (!(fmags[i] >= fmags[i - 1] * 2L)) doubling = false;
      if (doubling) throw non_convergence("abel_limit: Abel means grow without bound");
    }

    log_ladder.push(sum);
    ladder.push(std::move(sum));
    if (ladder.size() >= 2) {
      const Real diff = abs(ladder.diagonal() - ladder.diagonal_prev());
      const Real log_diff = abs(log_ladder.diagonal() - log_ladder.diagonal_prev());
      if (diff <= log_diff) {
        res.value = ladder.diagonal();
        res.error_estimate = diff + tau * 8L;
      } else {
        res.value = log_ladder.diagonal();
        res.error_estimate = log_diff + tau * 8L;
      }
      if (min(diff, log_diff) < stop) {
        res.converged = true;
        break;
      }
    } else {
      res.value = ladder.diagonal();
    }
  }
  return res;
}

inline OracleResult abel_limit(const CoefficientStream& a, prec_t precision_bits, int k_max = 40) {
  ComplexOracleResult c = abel_limit_complex(a, precision_bits, k_max);
  return {c.value.re.at_prec(clamp_prec(precision_bits)), c.error_estimate.at_prec(64),
          c.terms_used, c.converged};
}

// ---------------------------------------------------------------------------
// Accelerated direct summation: iterated Aitken delta-squared applied to the
// partial-sum sequence. Partial sums are sampled at geometrically spaced
// indices (stride = declared period hint, else a detected sign anti-period);
// that turns the 1/N tails of zero-sum periodic series into a mixture of
// geometric transients, which is exactly what Aitken annihilates. Streams
// with no usable stride (genuinely complex patterns) get windowed Aitken on
// consecutive partial sums instead.
// ---------------------------------------------------------------------------
namespace detail {

inline long detect_stride(const CoefficientStream& a, std::size_t probe = 96) {
  // smallest s <= 32 with sign(a_{n+s}) == -sign(a_n) over the probe prefix
  std::vector<int> sgn(probe + 64);
  bool any_nonzero = false;
  for (std::size_t n = 0; n < probe + 64; ++n) {
    const Complex v = a.coeff(n, 128);
    if (!v.im.is_zero()) return 0;  // genuinely complex: no stride trick
    sgn[n] = v.re.sign();
    if (sgn[n] != 0) any_nonzero = true;
  }
  if (!any_nonzero) return 1;
  for (long s = 1; s <= 32; ++s) {
    bool ok = true;
    for (std::size_t n = 0; n + s < probe + 64; ++n)
      if (sgn[n + s] != -sgn[n]) {
        ok = false;
        break;
      }
    if (ok) return 2 * s;
  }
  return 0;
}

}  // namespace detail

inline ComplexOracleResult accelerated_sum_complex(const CoefficientStream& a, long n_max,
                                                   prec_t precision_bits) {
  const prec_t p = clamp_prec(precision_bits);
  const prec_t w = p + 32;
  const Real stop = Real::pow2(-(static_cast<long>(p) / 2), w);

  long stride = a.period_hint.value_or(0);
  if (stride <= 0) stride = detail::detect_stride(a);

  ComplexOracleResult res{Complex(w), Real(w), 0, false};

  if (stride >= 1) {
    const long n0 = 16;
    Complex sum(w);
    std::size_t consumed = 0;
    std::vector<Complex> samples;
    detail::Extrapolation<Complex> best{Complex(w), Real(w), 0};
    bool have = false;
    for (int j = 0;; ++j) {
      const std::size_t target = (static_cast<std::size_t>(stride) * n0) << j;
      if (static_cast<long>(target) > n_max) break;
      for (; consumed < target; ++consumed) {
        sum += a.coeff(consumed, w);
        if ((consumed & 63) == 0 && detail::mag_exp(sum) > 128)
          throw non_convergence("accelerated_sum: partial sums blow up");
      }
      samples.push_back(sum);
      if (samples.size() >= 3) {
        best = detail::iterated_aitken(samples, w);
        have = true;
        if (best.spread < stop && samples.size() >= 4) {
          res.value = best.value;
          res.error_estimate = best.spread;
          res.terms_used = static_cast<long>(consumed);
          res.converged = true;
          return res;
        }
      }
    }
    res.terms_used = static_cast<long>(consumed);
    if (have) {
      res.value = best.value;
      res.error_estimate = best.spread;
    } else if (!samples.empty()) {
      res.value = samples.back();
      res.error_estimate = samples.size() >= 2 ? abs(samples.back() - samples.front()) : Real(w);
    }
    if (samples.size() >= 2) {  // constant partial sums (e.g. the zero stream)
      bool constant = true;
      for (std::size_t i = 1; i < samples.size(); ++i)
        if (!abs(samples[i] - samples[0]).is_zero()) constant = false;
      if (constant) {
        res.value = samples.back();
        res.error_estimate = Real(w);
        res.converged = true;
      }
    }
    return res;
  }

  // windowed iterated Aitken on consecutive partial sums
  constexpr std::size_t window = 129;
  Complex sum(w);
  std::size_t consumed = 0;
  std::size_t target = 256;
  detail::Extrapolation<Complex> best{Complex(w), Real(w), 0};
  bool have = false;
  while (true) {
    if (static_cast<long>(target) > n_max) target = static_cast<std::size_t>(n_max);
    std::vector<Complex> tail;
    tail.reserve(window);
    for (; consumed < target; ++consumed) {
      sum += a.coeff(consumed, w);
      if ((consumed & 63) == 0 && detail::mag_exp(sum) > 128)
        throw non_convergence("accelerated_sum: partial sums blow up");
      if (target - consumed <= window) tail.push_back(sum);
    }
    if (tail.size() >= 3) {
      best = detail::iterated_aitken(tail, w);
      have = true;
      if (best.spread < stop) {
        res.value = best.value;
        res.error_estimate = best.spread;
        res.terms_used = static_cast<long>(consumed);
        res.converged = true;
        return res;
      }
    }
    if (static_cast<long>(target) >= n_max) break;
    target *= 2;
  }
  res.terms_used = static_cast<long>(consumed);
  res.value = have ? best.value : sum;
  res.error_estimate = have ? best.spread : detail::norm_of(sum);
  return res;
}

inline OracleResult accelerated_sum(const CoefficientStream& a, long n_max, prec_t precision_bits) {
  ComplexOracleResult c = accelerated_sum_complex(a, n_max, precision_bits);
  return {c.value.re.at_prec(clamp_prec(precision_bits)), c.error_estimate.at_prec(64),
          c.terms_used, c.converged};
}

// ---------------------------------------------------------------------------
// Tanh-sinh (double-exponential) quadrature on a finite interval; endpoint
// singularities up to logarithmic/algebraic are fine. The step is halved
// until the change drops below 2^-(P-8).
// ---------------------------------------------------------------------------
namespace detail {

template <typename T>
struct QuadResult {
  T value;
  Real error_estimate;
  long evals = 0;
  bool converged = false;
};

template <typename T, typename F>
QuadResult<T> tanh_sinh(F&& f, const Real& a, const Real& b, prec_t precision_bits,
                        int max_level = 12) {
  const prec_t p = clamp_prec(precision_bits);
  const prec_t w = p + 32;
  const Real half_pi = Real::pi(w) / 2L;
  const Real d = (b - a) / 2L;
  const Real one(1L, w), two(2L, w);
  const Real thresh = Real::pow2(-(static_cast<long>(p) - 8), w);
  const Real node_cut = Real::pow2(-(static_cast<long>(p) + 24), w);
  // hard depth cap: abscissa offsets reach e^{-2z}, enough for algebraic
  // endpoint singularities with exponent down to ~1/64
  const Real z_hard = Real(static_cast<long>(p) + 48, w) * Real::ln2(w) * 32L;

  QuadResult<T> out{zero_like<T>(w), Real(w), 0, false};
  T total = zero_like<T>(w);  // sum of all weighted node values so far
  Real scale(1L, w);

  // adds the node at abscissa sign*u (u >= 0); returns whether it still
  // matters. The abscissa is formed as an offset d*(1-|g|) from the endpoint,
  // which stays exact however deep the node sits.
  auto node = [&](const Real& u, int sign) -> bool {
    Real sh(w), ch(w);
    mpfr_sinh_cosh(sh.raw(), ch.raw(), u.raw(), MPFR_RNDN);
    const Real z = half_pi * sh;
    if (z > z_hard) return false;
    Real e2z(w);  // e^{-2z}, tiny but never flushed: mpfr exponents reach 2^62
    {
      const Real m2z = z * Real(-2L, w);
      mpfr_exp(e2z.raw(), m2z.raw(), MPFR_RNDN);
    }
    const Real omg = two * e2z / (one + e2z);              // 1 - tanh(z), no cancellation
    const Real weight = half_pi * ch * (omg * (two - omg));  // (pi/2) cosh(u) sech^2(z)
    const Real x = sign < 0 ? a + d * omg : b - d * omg;
    if (!(x > a && x < b)) return false;  // rounded onto an endpoint
    const T fx = f(x, w);
    if (!fx.is_finite())
      throw singular_integrand("quadrature: integrand not finite at interior node");
    const T contrib = fx * (weight * d);
    total += contrib;
    ++out.evals;
    const Real m = norm_of(contrib);
    if (m > scale) scale = m;
    return m > node_cut * scale;
  };

  T prev_s = zero_like<T>(w);
  bool have_prev = false;
  for (int level = 0; level <= max_level; ++level) {
    const Real h = Real::pow2(-level, w);
    if (level == 0) {
      node(Real(w), -1);  // the midpoint
      for (long k = 1;; ++k) {
        const Real uk(k, w);
        const bool lp = node(uk, +1);
        const bool ln = node(uk, -1);
        if (!lp && !ln && k >= 3) break;
      }
    } else {
      long misses = 0;
      for (long k = 1;; k += 2) {
        const Real uk = Real(k, w) * h;
        const bool lp = node(uk, +1);
        const bool ln = node(uk, -1);
        if (!lp && !ln) {
          if (++misses >= 2) break;
        } else {
          misses = 0;
        }
      }
    }
    T s = total * h;
    if (have_prev) {
      const Real diff = norm_of(s - prev_s);
      out.value = s;
      out.error_estimate = diff;
      if (diff < thresh) {
        out.converged = true;
        return out;
      }
    } else {
      out.value = s;
    }
    prev_s = std::move(s);
    have_prev = true;
  }
  return out;
}

}  // namespace detail

using RealIntegrand = std::function<Real(const Real& t, prec_t prec)>;
using ComplexIntegrand = std::function<Complex(const Real& t, prec_t prec)>;

// Finite interval (a,b), or b = +inf (a must be 0), folded onto (0,1] twice
// via t -> 1/s.
inline OracleResult quadrature(const RealIntegrand& f, const Real& a, std::optional<Real> b,
                               prec_t precision_bits) {
  const prec_t p = clamp_prec(precision_bits);
  if (!b.has_value()) {
    if (!a.is_zero()) throw domain_error("quadrature: infinite range requires a = 0");
    const Real zero(p + 32), one(1L, p + 32);
    auto res1 = detail::tanh_sinh<Real>(f, zero, one, p);
    auto folded = [&f](const Real& s, prec_t ww) {
      const Real inv = Real(1L, ww) / s;
      return f(inv, ww) * inv * inv;
    };
    auto res2 = detail::tanh_sinh<Real>(folded, zero, one, p);
    return {(res1.value + res2.value).at_prec(p),
            (res1.error_estimate + res2.error_estimate).at_prec(64), res1.evals + res2.evals,
            res1.converged && res2.converged};
  }
  auto res = detail::tanh_sinh<Real>(f, a, *b, p);
  return {res.value.at_prec(p), res.error_estimate.at_prec(64), res.evals, res.converged};
}

inline ComplexOracleResult quadrature_complex(const ComplexIntegrand& f, const Real& a,
                                              const Real& b, prec_t precision_bits) {
  auto res = detail::tanh_sinh<Complex>(f, a, b, clamp_prec(precision_bits));
  return {std::move(res.value), std::move(res.error_estimate), res.evals, res.converged};
}

// ---------------------------------------------------------------------------
// Euler-Mascheroni estimator: H_N - ln N - 1/(2N) (midpoint-corrected limit).
// ---------------------------------------------------------------------------
inline Real euler_gamma_estimate(long N, prec_t precision_bits = 256) {
  if (N < 2) throw arg_out_of_range("euler_gamma_estimate: N must be >= 2");
  const prec_t p = clamp_prec(precision_bits);
  const prec_t w = p + 32;
  Real h(w);
  Real term(w);
  for (long k = 1; k <= N; ++k) {
    mpfr_set_si(term.raw(), k, MPFR_RNDN);
    mpfr_si_div(term.raw(), 1, term.raw(), MPFR_RNDN);
    h += term;
  }
  const Real out = h - log(Real(N, w)) - Real(Rational(1, 2 * N), w);
  Real rounded(p);
  mpfr_set(rounded.raw(), out.raw(), MPFR_RNDN);
  return rounded;
}

// ---------------------------------------------------------------------------
// Cauchy-product check: A, B are the Abel limits of the factor series, C the
// Abel limit of the convolved coefficients c_n = sum_{k<=n} a_k b_{n-k}. The
// convolution is accumulated in 80-bit extended doubles behind a memoized
// stream (the O(N^2) convolution is the cost hotspot); the resulting noise
// bound terms * 2^-62 is folded into C's error estimate.
// ---------------------------------------------------------------------------
struct CauchyProduct {
  OracleResult a, b, c;
};

namespace detail {

struct ConvolutionCache {
  CoefficientStream a, b;
  std::vector<long double> are, aim, bre, bim, cre, cim;
  std::size_t cap = 60000;

  void extend(std::size_t n) {
    if (n < cre.size()) return;
    if (n >= cap) throw non_convergence("cauchy_product_check: convolution budget exhausted");
    for (std::size_t i = cre.size(); i <= n; ++i) {
      const Complex av = a.coeff(i, 64);
      const Complex bv = b.coeff(i, 64);
      are.push_back(mpfr_get_ld(av.re.raw(), MPFR_RNDN));
      aim.push_back(mpfr_get_ld(av.im.raw(), MPFR_RNDN));
      bre.push_back(mpfr_get_ld(bv.re.raw(), MPFR_RNDN));
      bim.push_back(mpfr_get_ld(bv.im.raw(), MPFR_RNDN));
      long double sr = 0, si = 0;
      for (std::size_t k = 0; k <= i; ++k) {
        const long double xr = are[k], xi = aim[k];
        const long double yr = bre[i - k], yi = bim[i - k];
        sr += xr * yr - xi * yi;
        si += xr * yi + xi * yr;
      }
      cre.push_back(sr);
      cim.push_back(si);
    }
  }
};

}  // namespace detail

inline CauchyProduct cauchy_product_check(const CoefficientStream& a, const CoefficientStream& b,
                                          prec_t precision_bits) {
  const prec_t p = clamp_prec(precision_bits);
  OracleResult ra = abel_limit(a, p);
  OracleResult rb = abel_limit(b, p);

  auto cache = std::make_shared<detail::ConvolutionCache>();
  cache->a = a;
  cache->b = b;
  CoefficientStream cs{[cache](std::size_t n, prec_t w) -> Complex {
                         cache->extend(n);
                         Complex out(w);
                         mpfr_set_ld(out.re.raw(), cache->cre[n], MPFR_RNDN);
                         mpfr_set_ld(out.im.raw(), cache->cim[n], MPFR_RNDN);
                         return out;
                       },
                       std::nullopt};
  OracleResult rc = abel_limit(cs, p);
  rc.error_estimate += Real(static_cast<long>(cache->cre.size()), 64) * Real::pow2(-62, 64);
  return {std::move(ra), std::move(rb), std::move(rc)};
}

}  // namespace abelsum

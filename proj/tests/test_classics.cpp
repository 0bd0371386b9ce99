#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "helpers.hpp"

using namespace abelsum;
using ts::close;
using ts::close_bits;
using ts::lit;

TEST_CASE("dilogarithm special values and domain") {
  const prec_t W = 320;
  CHECK(close(li2_numeric(Real(Rational(1, 2), W), 256),
              lit("0.582240526465012505902656320159680108744198475"), 1e-40));
  CHECK(li2_numeric(Real(W), 128).is_zero());
  CHECK(close(li2_numeric(Real(1L, W), 256), Real::pi(W) * Real::pi(W) / 6L, 1e-40));
  CHECK(close(li2_numeric(Real(-1L, W), 256), -Real::pi(W) * Real::pi(W) / 12L, 1e-40));
  CHECK_THROWS_AS(li2_numeric(Real(Rational(11, 10), 128), 96), domain_error);
  CHECK_THROWS_AS(li2_numeric(Real(Rational(-11, 10), 128), 96), domain_error);
  // reflection region x > 0.9 and duplication region x < -0.9 stay accurate:
  // check against the identity directly
  const Real x(Rational(97, 100), W);
  const Real lhs =
      li2_numeric(x, 192) + li2_numeric(Real(1L, W) - x, 192) + log(x) * log(Real(1L, W) - x);
  CHECK(close(lhs, Real::pi(W) * Real::pi(W) / 6L, 1e-40));
}

TEST_CASE("Euler's reflection identity for Li2 on (0,1)") {
  const auto [lhs, rhs] = li2_identity_check(Real(Rational(1, 2), 256), 160);
  CHECK(close(lhs, rhs, 1e-40));
  // x <-> 1-x symmetry
  const auto a = li2_identity_check(Real(Rational(1, 10), 256), 160);
  const auto b = li2_identity_check(Real(Rational(9, 10), 256), 160);
  CHECK(close(a.first, b.first, 1e-40));
  const auto c = li2_identity_check(Real(Rational(1, 3), 256), 160);
  CHECK(close(c.first, lit("1.6449340668482264364724151666460251892189499"), 1e-40));
  CHECK_THROWS_AS(li2_identity_check(Real(256), 128), domain_error);
  CHECK_THROWS_AS(li2_identity_check(Real(1L, 256), 128), domain_error);
  std::mt19937_64 rng(0x11d2u);
  std::uniform_int_distribution<long> xd(2, 998);
  for (int i = 0; i < 20; ++i) {
    const auto [l, r] = li2_identity_check(Real(Rational(xd(rng), 1000), 256), 160);
    CHECK(close(l, r, 1e-20));
  }
}

TEST_CASE("Euler's 1731 zeta(2) approximation") {
  const prec_t W = 320;
  const Real z2 = Real::pi(W) * Real::pi(W) / 6L;
  CHECK(close(euler_zeta2_approx(30), z2, 1e-6));  // "correct to 6 decimal places"
  CHECK(close(euler_zeta2_approx(1), lit("1.48045301391820142466710252632666497173055295"),
              1e-40));
  Real prev = euler_zeta2_approx(1);
  for (long n : {2L, 3L, 5L, 10L, 20L}) {
    const Real cur = euler_zeta2_approx(n);
    CHECK(cur > prev);  // positive terms
    prev = cur;
  }
}

TEST_CASE("Fourier log sums at rational multiples of pi") {
  const prec_t W = 320;
  {  // theta = pi/2: (-ln2/2, pi/4)
    const auto f = fourier_log_sums(Rational(1, 2));
    CHECK(f.cos_sum == SymbolicValue::single(Atom::ln_prime(2), Rational(-1, 2)));
    CHECK(f.sin_sum_pi == Rational(1, 4));
  }
  {  // theta = pi: cos side gives the alternating harmonic series
    const auto f = fourier_log_sums(Rational(1));
    CHECK(f.cos_sum == SymbolicValue::single(Atom::ln_prime(2), Rational(-1)));
    CHECK(f.sin_sum_pi == Rational(0));
  }
  {  // theta = 2pi/3 against the accelerated oracle
    const auto f = fourier_log_sums(Rational(2, 3));
    CHECK(eval_numeric(f.cos_sum, W) ==
          eval_numeric(SymbolicValue::single(Atom::ln_prime(3), Rational(-1, 2)), W));
    CHECK(f.sin_sum_pi == Rational(1, 6));
    // cos(2 pi n/3)/n is periodic with rational values 1, -1/2
    auto s = rational_stream(
        [](std::size_t i) {
          const long n = static_cast<long>(i) + 1;
          return (n % 3 == 0 ? Rational(1) : Rational(-1, 2)) / Rational(n);
        },
        3);
    const auto orc = accelerated_sum(s, 300000, 96);
    CHECK(close(eval_numeric(f.cos_sum, W), orc.value, 1e-8));
    // sin side oracle (irrational coefficients; stream built numerically)
    CoefficientStream ss{[](std::size_t i, prec_t w) -> Complex {
                           const long n = static_cast<long>(i) + 1;
                           return {sin_pi(Rational(2 * n, 3), w) / Real(n, w), Real(w)};
                         },
                         3};
    const auto orcs = accelerated_sum(ss, 300000, 96);
    CHECK(close(Real(f.sin_sum_pi, W) * Real::pi(W), orcs.value, 1e-8));
  }
  CHECK_THROWS_AS(fourier_log_sums(Rational(0)), domain_error);
  CHECK_THROWS_AS(fourier_log_sums(Rational(3, 2)), domain_error);
  // numeric overload
  const auto [cs, ss] = fourier_log_sums_numeric(Real::pi(256) / 2L, 128);
  CHECK(close(cs, -Real::ln2(W) / 2L, 1e-30));
  CHECK(close(ss, Real::pi(W) / 4L, 1e-30));
}

TEST_CASE("alternating Fourier sums and the theta = pi breakdown") {
  const prec_t W = 320;
  {  // theta = 0: (ln 2, 0)
    const auto f = alt_fourier_sums(Rational(0));
    CHECK(f.cos_sum == ln_integer(2));
    CHECK(f.sin_sum_pi == Rational(0));
  }
  {  // theta = pi/2: ((1/2) ln 2, pi/4), checked against the oracle
    const auto f = alt_fourier_sums(Rational(1, 2));
    CHECK(eval_numeric(f.cos_sum, W) ==
          eval_numeric(SymbolicValue::single(Atom::ln_prime(2), Rational(1, 2)), W));
    CHECK(f.sin_sum_pi == Rational(1, 4));
    // (-1)^{n+1} cos(n pi/2)/n has period 4 with values from {0, -1, 0, 1}
    auto t = rational_stream(
        [](std::size_t i) {
          const long n = static_cast<long>(i) + 1;
          long c = 0;
          switch (n % 4) {
            case 0: c = 1; break;
            case 2: c = -1; break;
            default: c = 0;
          }
          const long sign = (n % 2 == 1) ? 1 : -1;  // (-1)^{n+1}
          return Rational(sign * c, n);
        },
        4);
    const auto orc = accelerated_sum(t, 300000, 96);
    CHECK(close(eval_numeric(f.cos_sum, W), orc.value, 1e-8));
  }
  // the sin identity breaks at theta = pi: domain error, never a wrong number
  CHECK_THROWS_AS(alt_fourier_sums(Rational(1)), domain_error);
  CHECK_THROWS_AS(alt_fourier_sums(Rational(-1)), domain_error);
  CHECK_THROWS_AS(alt_fourier_sums_numeric(Real::pi(256), 128), domain_error);
  // approaching pi the closed form tends to pi/2 (the jump the paper flags)
  const auto near = alt_fourier_sums(Rational(99, 100));
  CHECK(close(Real(near.sin_sum_pi, W) * Real::pi(W), Real::pi(W) * Real(Rational(99, 200), W),
              1e-30));
}

TEST_CASE("binomial Fourier series vs closed form") {
  const prec_t W = 256;
  {  // alpha = 1: both sides are 1 + e^{i theta}
    const Real th = Real::pi(W) / 3L;
    const auto [series, closed] = binomial_fourier_check(Complex(1L, W), th, 96);
    const Complex expect{Real(1L, W) + cos(th), sin(th)};
    CHECK(abs(series - expect) < Real::from_double(1e-20, 64));
    CHECK(abs(closed - expect) < Real::from_double(1e-30, 64));
  }
  {  // alpha = 1/2 at theta = pi/2
    const auto [series, closed] =
        binomial_fourier_check(Complex{Real(Rational(1, 2), W), Real(W)}, Real::pi(W) / 2L, 96);
    CHECK(abs(series - closed) < Real::from_double(1e-10, 64));
  }
  {  // alpha = -1/2 at theta = 2pi/3: slow boundary-adjacent convergence
    const auto [series, closed] = binomial_fourier_check(
        Complex{Real(Rational(-1, 2), W), Real(W)}, Real::pi(W) * 2L / 3L, 96);
    CHECK(abs(series - closed) < Real::from_double(1e-8, 64));
  }
  {  // theta = 0: sum C(alpha, n) = 2^alpha for Re alpha > -1
    for (const Rational a : {Rational(1, 2), Rational(1, 3), Rational(5, 2)}) {
      const auto [series, closed] =
          binomial_fourier_check(Complex{Real(a, W), Real(W)}, Real(W), 96);
      const Real expect = pow(Real(2L, W), Real(a, W));
      CHECK(abs(series - Complex{expect, Real(W)}) < Real::from_double(1e-10, 64));
      CHECK(abs(closed - Complex{expect, Real(W)}) < Real::from_double(1e-25, 64));
    }
  }
  // domain: at theta = pi only Re(alpha) > 0 is allowed, and the limit is 0
  const auto [sp, cp] =
      binomial_fourier_check(Complex{Real(Rational(1, 2), W), Real(W)}, Real::pi(W), 64);
  CHECK(abs(cp).is_zero());
  CHECK_THROWS_AS(binomial_fourier_check(Complex{Real(Rational(-1, 2), W), Real(W)},
                                         Real::pi(W), 64),
                  domain_error);
  CHECK_THROWS_AS(binomial_fourier_check(Complex(-1L, W), Real(1L, W), 64), domain_error);
  CHECK_THROWS_AS(
      binomial_fourier_check(Complex(1L, W), Real::pi(W) * Real(Rational(3, 2), W), 64),
      domain_error);
}

TEST_CASE("hypergeometric series") {
  const prec_t W = 256;
  auto cx = [&](const Rational& r) { return Complex{Real(r, W), Real(W)}; };
  // z = 0 gives 1 for any parameters
  CHECK(abs(hyp2f1_series(cx(Rational(3, 7)), cx(Rational(-5, 2)), cx(Rational(9, 4)),
                          Complex(W), 128) -
            Complex(1L, W)) < Real::from_double(1e-35, 64));
  {  // 2F1(a,1;a+1;z) = a sum z^n/(n+a) at a = 1/4, z = 0.7
    const Complex h = hyp2f1_series(cx(Rational(1, 4)), cx(Rational(1)), cx(Rational(5, 4)),
                                    cx(Rational(7, 10)), 160);
    Real direct(W), zn(1L, W);
    for (long n = 0; n < 1200; ++n) {
      direct += zn / (Real(n, W) + Real(Rational(1, 4), W));
      zn *= Real(Rational(7, 10), W);
    }
    direct *= Real(Rational(1, 4), W);
    CHECK(close(h.re, direct, 1e-20));
    CHECK(h.im.is_zero());
  }
  {  // polynomial case: 2F1(-2,1;3;1/2) = 1 - 1/3 + 1/24 = 17/24
    const Complex h = hyp2f1_series(cx(Rational(-2)), cx(Rational(1)), cx(Rational(3)),
                                    cx(Rational(1, 2)), 160);
    CHECK(close(h.re, Real(Rational(17, 24), W), 1e-40));
  }
  CHECK_THROWS_AS(hyp2f1_series(cx(Rational(1)), cx(Rational(1)), cx(Rational(0)),
                                cx(Rational(1, 2)), 96),
                  pole_error);
  CHECK_THROWS_AS(hyp2f1_series(cx(Rational(1)), cx(Rational(1)), cx(Rational(-3)),
                                cx(Rational(1, 2)), 96),
                  pole_error);
  CHECK_THROWS_AS(hyp2f1_series(cx(Rational(1)), cx(Rational(1)), cx(Rational(2)),
                                cx(Rational(1)), 96),
                  domain_error);
}

TEST_CASE("block rearrangements: closed value, enumeration, generating function") {
  const prec_t W = 320;
  {  // (2,1) -> (3/2) ln 2 and the paper's term order
    const SymbolicValue v = rearranged_sum({2, 1});
    CHECK(v == SymbolicValue::single(Atom::ln_prime(2), Rational(3, 2)));
    CHECK(close(eval_numeric(v, W), lit("1.0397207708399179641258481821872648521132502"),
                1e-40));
    // 1 + 1/3 - 1/2 + 1/5 + 1/7 - 1/4: frozen exact partial sum
    const Rational expect = Rational(1) + Rational(1, 3) - Rational(1, 2) + Rational(1, 5) +
                            Rational(1, 7) - Rational(1, 4);
    CHECK(close_bits(rearranged_partial({2, 1}, 6, 160), Real(expect, W), 150));
  }
  CHECK(rearranged_sum({1, 1}) == ln_integer(2));  // identity rearrangement
  // (1,4): ln 2 + (1/2) ln(1/4) = 0, structurally zero
  CHECK(rearranged_sum({1, 4}).is_zero());
  {  // accelerated enumeration approaches the closed value
    const auto r = accelerated_sum(rearranged_stream({1, 4}), 1000000, 96);
    CHECK(abs(r.value) < Real::from_double(1e-4, 64));
    const auto r2 = accelerated_sum(rearranged_stream({3, 2}), 1000000, 96);
    CHECK(close(r2.value, eval_numeric(rearranged_sum({3, 2}), W), 1e-4));
  }
  {  // generating function value matches the paper's (2,1) display
    const Real x(Rational(1, 2), W);
    const Real g = rearranged_generating({2, 1}, x, 192);
    const Real display = log((Real(1L, W) + x) * (Real(1L, W) + x) * (Real(1L, W) + x * x)) / 2L;
    CHECK(close(g, display, 1e-40));
  }
  {  // Abel's theorem in action: Richardson on x_k = 1 - 2^-k
    detail::RichardsonLadder<Real> ladder(256);
    Real diag(256);
    for (int k = 4; k <= 20; ++k) {
      const Real x = Real(1L, 256) - Real::pow2(-k, 256);
      diag = ladder.push(rearranged_generating({2, 1}, x, 192));
    }
    CHECK(close(diag, eval_numeric(rearranged_sum({2, 1}), W), 1e-10));
  }
  CHECK_THROWS_AS(rearranged_sum({0, 1}), arg_out_of_range);
  CHECK_THROWS_AS(rearranged_partial({1, 1}, 0, 128), arg_out_of_range);
  CHECK_THROWS_AS(rearranged_generating({1, 1}, Real(1L, 128), 96), arg_out_of_range);
}

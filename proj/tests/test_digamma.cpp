#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include "helpers.hpp"

using namespace abelsum;
using ts::close;
using ts::close_bits;
using ts::lit;

TEST_CASE("Gauss closed forms at the classical rationals") {
  const prec_t W = 320;
  const Real g = Real::euler_gamma(W);
  const Real ln2 = Real::ln2(W);

  {  // psi(1/2) = -gamma - 2 ln 2, fully symbolic
    const ClosedForm cf = digamma_rational(1, 2);
    CHECK(cf.symbolic);
    SymbolicValue expect = SymbolicValue::single(Atom::euler_gamma(), Rational(-1));
    expect.add_term(Atom::ln_prime(2), Rational(-2));
    CHECK(cf.exact == expect);
    // independent oracle: accelerated summation of the defining series
    // (smooth monotone tail, so the sampling stride hint is 1)
    auto s = rational_stream(
        [](std::size_t k) {
          const long kk = static_cast<long>(k);
          return Rational(1, kk + 1) - Rational(2, 2 * kk + 1);
        },
        1);
    const auto orc = accelerated_sum(s, 1000000, 128);
    CHECK(close(cf.eval(W) + g, orc.value, 1e-15));
  }
  {  // psi(1/4) = -gamma - 3 ln 2 - pi/2
    const ClosedForm cf = digamma_rational(1, 4);
    CHECK(cf.symbolic);
    CHECK(close_bits(cf.eval(W), -g - 3L * ln2 - Real::pi(W) / 2L, 300));
  }
  {  // psi(1/3) = -gamma - (3/2) ln 3 - (1/2) pi cot(pi/3)
    const ClosedForm cf = digamma_rational(1, 3);
    CHECK(cf.symbolic);
    SymbolicValue expect = SymbolicValue::single(Atom::euler_gamma(), Rational(-1));
    expect.add_term(Atom::ln_prime(3), Rational(-3, 2));
    expect.add_term(Atom::pi_cot(1, 3), Rational(-1, 2));
    CHECK(cf.exact == expect);
  }
  CHECK_FALSE(digamma_rational(2, 5).symbolic);  // irrational cosines: hybrid
}

TEST_CASE("digamma_rational rejects out-of-range arguments") {
  CHECK_THROWS_AS(digamma_rational(3, 3), arg_out_of_range);
  CHECK_THROWS_AS(digamma_rational(5, 3), arg_out_of_range);
  CHECK_THROWS_AS(digamma_rational(0, 3), arg_out_of_range);
  CHECK_THROWS_AS(digamma_rational(-1, 3), arg_out_of_range);
}

TEST_CASE("series evaluation: integers, halves, poles") {
  const prec_t W = 320;
  const Real g = Real::euler_gamma(W);
  CHECK(close_bits(digamma_series_numeric(Real(1L, W), 96), -g, 90));
  CHECK(close_bits(digamma_series_numeric(Real(2L, W), 96), Real(1L, W) - g, 90));
  CHECK(close(digamma_series_numeric(Rational(1, 2), 128),
              lit("-1.9635100260214234794409763329987555671931596"), 1e-30));
  CHECK_THROWS_AS(digamma_series_numeric(Real(0L, 64), 96), pole_error);
  CHECK_THROWS_AS(digamma_series_numeric(Real(-3L, 64), 96), pole_error);
  CHECK_THROWS_AS(digamma_series_numeric(Complex(-1L, 64), 96), pole_error);
  // complex argument: psi(1 + i/2) against the integral path
  const prec_t w = 160;
  const Complex z{Real(1L, w), Real(Rational(1, 2), w)};
  const Complex via_series = digamma_series_numeric(z, 96);
  const Complex via_integral = digamma_integral_numeric(z, 96);
  CHECK(abs(via_series - via_integral) < Real::from_double(1e-24, 64));
}

TEST_CASE("integral representation matches the other paths") {
  const prec_t W = 320;
  const Real g = Real::euler_gamma(W);
  // z = 1: integrand vanishes identically
  CHECK(close_bits(digamma_integral_numeric(Real(1L, W), 128), -g, 120));
  CHECK(close(digamma_integral_numeric(Real(Rational(1, 2), W), 128),
              -g - 2L * Real::ln2(W), 1e-33));
  CHECK(close(digamma_integral_numeric(Real(Rational(3, 4), W), 128),
              digamma_rational(3, 4, 256).eval(W), 1e-33));
  CHECK_THROWS_AS(digamma_integral_numeric(Real(Rational(-1, 2), 64), 96), domain_error);
  CHECK_THROWS_AS(digamma_integral_numeric(Real(0L, 64), 96), domain_error);
}

TEST_CASE("series and integral agree at scattered arguments") {
  std::mt19937_64 rng(0xd16a33au);
  std::uniform_int_distribution<long> num(1, 60);
  std::uniform_int_distribution<long> den(17, 23);
  std::vector<Real> points = {Real(Rational(1, 10), 200), Real(Rational(37, 100), 200),
                              Real(Rational(3, 2), 200), Real(2L, 200)};
  for (int i = 0; i < 5; ++i)
    points.emplace_back(Rational(num(rng), den(rng) * 10), 200);
  for (const Real& z : points) {
    const Real a = digamma_series_numeric(z, 96);
    const Real b = digamma_integral_numeric(z, 96);
    CHECK(close(a, b, 1e-24));
  }
}

TEST_CASE("digamma_shift handles integers, shifts, and errors") {
  const prec_t W = 320;
  const Real g = Real::euler_gamma(W);
  {  // psi(5) = -gamma + 1 + 1/2 + 1/3 + 1/4
    const ClosedForm cf = digamma_shift(Rational(5));
    CHECK(cf.symbolic);
    SymbolicValue expect = SymbolicValue::single(Atom::euler_gamma(), Rational(-1));
    expect.add_term(Atom::unit(), Rational(25, 12));
    CHECK(cf.exact == expect);
  }
  {  // psi(3/2) = psi(1/2) + 2 = -gamma - 2 ln 2 + 2
    const ClosedForm cf = digamma_shift(Rational(3, 2));
    CHECK(cf.symbolic);
    CHECK(close_bits(cf.eval(W), -g - 2L * Real::ln2(W) + Real(2L, W), 300));
  }
  CHECK(digamma_shift(Rational(1)).exact ==
        SymbolicValue::single(Atom::euler_gamma(), Rational(-1)));
  CHECK_THROWS_AS(digamma_shift(Rational(0)), arg_out_of_range);
  CHECK_THROWS_AS(digamma_shift(Rational(-3, 2)), arg_out_of_range);
}

TEST_CASE("recurrence psi(r+1) - psi(r) = 1/r on random rationals") {
  std::mt19937_64 rng(0x5e1f7u);
  std::uniform_int_distribution<long> num(1, 199);
  std::uniform_int_distribution<long> den(1, 20);
  const prec_t W = 320;
  for (int i = 0; i < 50; ++i) {
    Rational r(num(rng), den(rng));
    if (r >= Rational(10)) r = r - Rational(r.floor_long() - 5);
    const Real lhs = digamma_shift(r + Rational(1), 256).eval(W) -
                     digamma_shift(r, 256).eval(W);
    CHECK(close(lhs, Real(Rational(1) / r, W), 1e-20));
  }
}

TEST_CASE("closed form vs series for all reduced q/p, p <= 12") {
  for (long p = 2; p <= 12; ++p)
    for (long q = 1; q < p; ++q) {
      if (std::gcd(q, p) != 1) continue;
      const Real gauss = digamma_rational(q, p, 192).eval(256);
      const Real series = digamma_series_numeric(Rational(q, p), 96);
      CHECK(close(gauss, series, 1e-24));
    }
}

TEST_CASE("Gauss finite-Fourier identity") {
  const prec_t W = 320;
  const Real g = Real::euler_gamma(W);
  const Real ln2 = Real::ln2(W);
  {  // q=4, k=1: gamma + 2 ln 2 - i pi
    const auto [lhs, rhs] = gauss_fourier_check(4, 1, 128);
    const Complex expect{g + 2L * ln2, -Real::pi(W)};
    CHECK(abs(lhs - expect) < Real::from_double(1e-30, 64));
    CHECK(abs(rhs - expect) < Real::from_double(1e-30, 64));
  }
  {  // q=3, k=1: gamma + (3/2) ln 3 - i pi/2
    const auto [lhs, rhs] = gauss_fourier_check(3, 1, 128);
    const Complex expect{g + Real(Rational(3, 2), W) * log(Real(3L, W)), -Real::pi(W) / 2L};
    CHECK(abs(lhs - expect) < Real::from_double(1e-30, 64));
    CHECK(abs(rhs - expect) < Real::from_double(1e-30, 64));
  }
  {  // q=2, k=1: single-term sum, gamma + 2 ln 2
    const auto [lhs, rhs] = gauss_fourier_check(2, 1, 128);
    CHECK(abs(lhs - Complex{g + 2L * ln2, Real(W)}) < Real::from_double(1e-30, 64));
    CHECK(abs(lhs - rhs) < Real::from_double(1e-30, 64));
  }
  // q | k rejected
  CHECK_THROWS_AS(gauss_fourier_check(4, 8, 96), domain_error);
  CHECK_THROWS_AS(gauss_fourier_check(1, 1, 96), domain_error);
  // subset of the full grid (acceptance covers q <= 12)
  for (long q = 2; q <= 7; ++q)
    for (long k = 1; k < q; ++k) {
      const auto [lhs, rhs] = gauss_fourier_check(q, k, 128);
      CHECK(abs(lhs - rhs) < Real::from_double(1e-24, 64));
    }
}

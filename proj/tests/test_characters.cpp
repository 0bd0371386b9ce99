#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include "helpers.hpp"

using namespace abelsum;
using ts::close;
using ts::lit;

namespace {

std::vector<Rational> rl(std::vector<long> v) {
  std::vector<Rational> out;
  out.reserve(v.size());
  for (long x : v) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("validate accepts the paper's characters and flags the principal one") {
  const auto chi3 = validate(rl({1, -1, 0}), 3);
  CHECK_FALSE(chi3.principal);
  CHECK(chi3.at(2) == Rational(-1));
  CHECK(chi3.at(5) == Rational(-1));  // periodicity
  CHECK(chi3.at(6) == Rational(0));

  const auto chi8 = validate(rl({1, 0, 1, 0, -1, 0, -1, 0}), 8);
  CHECK_FALSE(chi8.principal);

  const auto triv = validate(rl({1, 1, 0}), 3);
  CHECK(triv.principal);
}

TEST_CASE("validate rejects malformed tables") {
  // chi(2) != 0 although gcd(2,4) = 2
  CHECK_THROWS_AS(validate(rl({1, 1, 1, 0}), 4), wrong_support);
  // wrong length
  CHECK_THROWS_AS(validate(rl({1, -1}), 3), not_periodic_input);
  // multiplicativity broken: chi(2)^2 = 1 but chi(4) = -1 mod 5
  CHECK_THROWS_AS(validate(rl({1, 1, -1, -1, 0}), 5), not_multiplicative);
  CHECK_THROWS_AS(validate(rl({1}), 1), bad_modulus);
}

TEST_CASE("nontrivial characters sum to zero over a period") {
  for (long p = 3; p <= 12; ++p) {
    for (const auto& chi : ts::real_nontrivial_characters(p)) {
      Rational s(0);
      for (long j = 1; j <= p - 1; ++j) s += chi.at(j);
      CHECK(s.is_zero());
    }
  }
}

TEST_CASE("L(1,chi) three-path values for the worked characters") {
  const prec_t W = 320;
  {  // mod 3: pi/(3 sqrt 3)
    const auto r = L1(validate(rl({1, -1, 0}), 3), 128);
    const Real expect = lit("0.604599788078072616864692752547385244094688749");
    CHECK(close(r.via_digamma.eval(W), expect, 1e-40));
    CHECK(close(r.via_theorem.eval(W), expect, 1e-40));
    CHECK(close(r.oracle.value, expect, 1e-18));
  }
  {  // mod 8: pi/(2 sqrt 2)
    const auto r = L1(validate(rl({1, 0, 1, 0, -1, 0, -1, 0}), 8), 128);
    const Real expect = lit("1.11072073453959156175397024751517342465365542");
    CHECK(close(r.via_digamma.eval(W), expect, 1e-40));
    CHECK(close(r.via_theorem.eval(W), expect, 1e-40));
    CHECK(close(r.oracle.value, expect, 1e-18));
  }
  {  // mod 4: Leibniz pi/4, also -(1/4)(psi(1/4) - psi(3/4))
    const auto r = L1(validate(rl({1, 0, -1, 0}), 4), 128);
    const Real expect = Real::pi(W) / 4L;
    CHECK(close(r.via_digamma.eval(W), expect, 1e-40));
    CHECK(r.via_theorem.symbolic);
    const Real via_psi = (digamma_rational(3, 4, 192).eval(W) -
                          digamma_rational(1, 4, 192).eval(W)) / 4L;
    CHECK(close(r.via_digamma.eval(W), via_psi, 1e-40));
  }
  CHECK_THROWS_AS(L1(validate(rl({1, 1, 0}), 3), 96), trivial_character);
}

TEST_CASE("three-path agreement over all real nontrivial characters, mod <= 8") {
  for (long p = 3; p <= 8; ++p) {
    for (const auto& chi : ts::real_nontrivial_characters(p)) {
      const auto r = L1(chi, 128);
      const Real a = r.via_digamma.eval(256);
      const Real b = r.via_theorem.eval(256);
      CHECK(close(a, b, 1e-30));
      CHECK(close(a, r.oracle.value, 1e-15));
    }
  }
}

TEST_CASE("legendre_symbol via Euler's criterion") {
  CHECK(legendre_symbol(1, 7) == 1);
  CHECK(legendre_symbol(2, 7) == 1);
  CHECK(legendre_symbol(4, 7) == 1);
  CHECK(legendre_symbol(3, 7) == -1);
  CHECK(legendre_symbol(5, 7) == -1);
  CHECK(legendre_symbol(6, 7) == -1);
  CHECK(legendre_symbol(7, 7) == 0);
  CHECK(legendre_symbol(-1, 7) == legendre_symbol(6, 7));
  CHECK_THROWS_AS(legendre_symbol(2, 9), not_odd_prime);
  CHECK_THROWS_AS(legendre_symbol(2, 2), not_odd_prime);
}

TEST_CASE("legendre_symbol is completely multiplicative in n") {
  std::mt19937_64 rng(0x1e9u);
  std::uniform_int_distribution<long> nd(1, 500);
  for (long p : {3L, 5L, 7L, 11L, 13L}) {
    for (int i = 0; i < 40; ++i) {
      const long m = nd(rng), n = nd(rng);
      CHECK(legendre_symbol(m * n, p) == legendre_symbol(m, p) * legendre_symbol(n, p));
    }
  }
}

TEST_CASE("legendre_L1_check: Dirichlet's closed form") {
  const prec_t W = 320;
  {  // p=7: pi/sqrt 7
    const auto r = legendre_L1_check(7, 128);
    const Real expect = lit("1.18741041172372594878462529794936302999233469");
    CHECK(close(r.lhs, expect, 1e-15));
    CHECK(close(r.rhs.re, expect, 1e-40));
    CHECK(abs(r.rhs.im) < Real::from_double(1e-20, 64));
  }
  {  // p=3 reduces to the mod-3 character value
    const auto r = legendre_L1_check(3, 128);
    CHECK(close(r.rhs.re, lit("0.604599788078072616864692752547385244094688749"), 1e-40));
  }
  {  // p=5: the golden-ratio logarithm (the paper's p=5 worked integral)
    const auto r = legendre_L1_check(5, 128);
    const Real expect = lit("0.430408940964004038889433232950605425424570683");
    CHECK(close(r.lhs, expect, 1e-15));
    CHECK(close(r.rhs.re, expect, 1e-40));
  }
  {  // composite squarefree modulus via the Jacobi symbol
    const auto r = legendre_L1_check(15, 128);
    CHECK(close(r.lhs, r.rhs.re, 1e-12));
    CHECK(abs(r.rhs.im) < Real::from_double(1e-20, 64));
  }
  CHECK_THROWS_AS(legendre_L1_check(9, 96), bad_modulus);
  CHECK_THROWS_AS(legendre_L1_check(4, 96), bad_modulus);
  CHECK_THROWS_AS(legendre_L1_check(1, 96), bad_modulus);
}

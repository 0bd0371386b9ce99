#pragma once

#include <numeric>
#include <utility>
#include <vector>

#include "abelsum/digamma.hpp"
#include "abelsum/errors.hpp"
#include "abelsum/ntheory.hpp"
#include "abelsum/oracle.hpp"
#include "abelsum/periodic.hpp"
#include "abelsum/rational.hpp"
#include "abelsum/symbolic.hpp"

namespace abelsum {

// Real-valued Dirichlet character mod p, stored as values at residues 1..p
// (the paper's convention: chi and the CLI list the values (chi(1),...,chi(p))).
struct DirichletCharacter {
  long modulus = 0;
  std::vector<Rational> values;  // values[i] = chi(i+1)
  bool principal = false;

  // chi(n) for any integer n >= 0
  const Rational& at(long n) const {
    long r = n % modulus;
    if (r < 0) r += modulus;
    return r == 0 ? values[static_cast<std::size_t>(modulus - 1)]
                  : values[static_cast<std::size_t>(r - 1)];
  }
};

// Checks periodic support on units, complete multiplicativity, and flags the
// principal character.
inline DirichletCharacter validate(const std::vector<Rational>& values, long p) {
  if (p < 2) throw bad_modulus("validate: modulus must be >= 2");
  if (static_cast<long>(values.size()) != p)
    throw not_periodic_input("validate: need exactly p values (chi(1)..chi(p))");

  DirichletCharacter chi{p, values, false};
  for (long r = 1; r <= p; ++r) {
    const bool unit = std::gcd(r, p) == 1;
    if (unit == chi.at(r).is_zero())
      throw wrong_support("validate: chi(n) must be nonzero exactly on gcd(n,p)=1");
  }
  for (long m = 1; m < p; ++m)
    for (long n = m; n < p; ++n)
      if (!(chi.at(m * n) == chi.at(m) * chi.at(n)))
        throw not_multiplicative("validate: chi(mn) != chi(m)chi(n)");

  chi.principal = true;
  for (long r = 1; r < p; ++r)
    if (std::gcd(r, p) == 1 && !(chi.at(r) == Rational(1))) chi.principal = false;
  return chi;
}

// ---------------------------------------------------------------------------
// L(1, chi) three ways:
//   (a) -(1/p) sum_j chi(j) psi(j/p)            [digamma route]
//   (b) closed form on the periodic block chi(1), chi(2), ..., chi(p)=0
//   (c) accelerated summation of sum chi(n)/n   [oracle]
// ---------------------------------------------------------------------------
struct L1Result {
  ClosedForm via_digamma;
  ClosedForm via_theorem;
  OracleResult oracle;
};

inline L1Result L1(const DirichletCharacter& chi, prec_t precision_bits) {
  if (chi.principal) throw trivial_character("L1: principal character has no finite L(1)");
  const prec_t pb = clamp_prec(precision_bits);
  const long p = chi.modulus;

  L1Result out;
  for (long j = 1; j <= p - 1; ++j) {
    const Rational& cj = chi.at(j);
    if (cj.is_zero()) continue;
    out.via_digamma.add(digamma_rational(j, p, pb).scaled(cj * Rational(-1, p)));
  }

  out.via_theorem = closed_form_sum(PeriodicCoefficients(p, chi.values), pb);

  CoefficientStream s = rational_stream(
      [chi](std::size_t n) {
        return chi.at(static_cast<long>(n) + 1) / Rational(static_cast<long>(n) + 1);
      },
      p);
  out.oracle = accelerated_sum(s, 1L << 18, pb);
  return out;
}

// ---------------------------------------------------------------------------
// Legendre symbol by Euler's criterion; Jacobi symbol (internal) extends it
// multiplicatively to odd squarefree moduli for the Dirichlet L(1) check.
// ---------------------------------------------------------------------------
namespace detail {

inline long pow_mod(long base, long e, long m) {
  unsigned __int128 acc = 1;
  unsigned __int128 b = static_cast<unsigned long>(((base % m) + m) % m);
  while (e > 0) {
    if (e & 1) acc = acc * b % static_cast<unsigned long>(m);
    b = b * b % static_cast<unsigned long>(m);
    e >>= 1;
  }
  return static_cast<long>(acc);
}

}  // namespace detail

inline int legendre_symbol(long n, long p) {
  if (p < 3 || p % 2 == 0 || !is_prime(p))
    throw not_odd_prime("legendre_symbol: modulus must be an odd prime");
  const long r = detail::pow_mod(n, (p - 1) / 2, p);
  if (r == 0) return 0;
  return r == 1 ? 1 : -1;
}

namespace detail {

inline int jacobi_symbol(long n, long p) {
  int out = 1;
  for (const auto& [f, e] : factorize(p)) {
    const int l = legendre_symbol(n, f);
    if (l == 0) return 0;
    if (e % 2 == 1) out *= l;
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Dirichlet's closed form for the Legendre-symbol series (odd squarefree p):
//   sum_n (n/p)/n = -(i^{(p-1)^2/4}/sqrt(p))
//                   * sum_{j=1}^{p-1} (j/p) (ln sin(j pi/p) - (pi j/p) i).
// i^{(p-1)^2/4} is an exact element of {1,i,-1,-i}; the right side must come
// out real, so rhs is returned as a complex value for the caller to inspect.
// ---------------------------------------------------------------------------
struct LegendreL1 {
  Real lhs;     // accelerated sum of the series
  Complex rhs;  // closed form; imaginary part should vanish
  OracleResult oracle;
};

inline LegendreL1 legendre_L1_check(long p, prec_t precision_bits) {
  if (p <= 1 || p % 2 == 0 || !is_squarefree(p))
    throw bad_modulus("legendre_L1_check: modulus must be odd, squarefree, > 1");
  const prec_t pb = clamp_prec(precision_bits);
  const prec_t w = pb + 32;

  CoefficientStream s = rational_stream(
      [p](std::size_t n) {
        const long m = static_cast<long>(n) + 1;
        return Rational(detail::jacobi_symbol(m, p), m);
      },
      p);
  OracleResult lhs = accelerated_sum(s, 1L << 18, pb);

  Complex sum(w);
  for (long j = 1; j <= p - 1; ++j) {
    const int cj = detail::jacobi_symbol(j, p);
    if (cj == 0) continue;
    const Real re = log(sin_pi(Rational(j, p), w));
    const Real im = -Real::pi(w) * Real(j, w) / Real(p, w);
    const Real cjr(static_cast<long>(cj), w);
    sum += Complex{re * cjr, im * cjr};
  }
  // i^{(p-1)^2/4} from ((p-1)/2)^2 mod 4
  const long half = (p - 1) / 2;
  const long e = (half % 4) * (half % 4) % 4;
  Complex ipow(w);
  switch (e) {
    case 0: ipow.re = Real(1L, w); break;
    case 1: ipow.im = Real(1L, w); break;
    case 2: ipow.re = Real(-1L, w); break;
    default: ipow.im = Real(-1L, w); break;
  }
  const Complex rhs = -(ipow * sum) / sqrt(Real(p, w));
  return {lhs.value, rhs, std::move(lhs)};
}

}  // namespace abelsum

#pragma once

#include <random>
#include <string>
#include <vector>

#include "abelsum/abelsum.hpp"

namespace ts {

using namespace abelsum;

inline Real lit(const std::string& s, prec_t w = 320) { return Real::from_string(s, w); }

inline bool close(const Real& a, const Real& b, double tol) {
  return abs(a - b) < Real::from_double(tol, 64);
}

inline bool close_bits(const Real& a, const Real& b, long bits) {
  return abs(a - b) < Real::pow2(-bits, 64);
}

inline PeriodicCoefficients coeffs(std::vector<long> v) {
  std::vector<Rational> r;
  r.reserve(v.size());
  for (long x : v) r.emplace_back(x);
  return PeriodicCoefficients(static_cast<long>(v.size()), std::move(r));
}

// random zero-sum periodic block, entries in {-2..2}, period in [1, max_p]
inline PeriodicCoefficients random_zero_sum(std::mt19937_64& rng, long max_p) {
  std::uniform_int_distribution<long> pd(2, max_p);
  std::uniform_int_distribution<long> cd(-2, 2);
  while (true) {
    const long p = pd(rng);
    std::vector<Rational> c;
    long total = 0;
    for (long i = 0; i + 1 < p; ++i) {
      const long x = cd(rng);
      total += x;
      c.emplace_back(x);
    }
    if (total < -2 || total > 2) continue;
    c.emplace_back(-total);
    return PeriodicCoefficients(p, std::move(c));
  }
}

// all real nontrivial Dirichlet characters mod p, by brute force over sign
// assignments on the unit residues filtered by complete multiplicativity
inline std::vector<DirichletCharacter> real_nontrivial_characters(long p) {
  std::vector<long> units;
  for (long r = 1; r < p; ++r)
    if (std::gcd(r, p) == 1) units.push_back(r);
  std::vector<DirichletCharacter> out;
  const std::size_t n = units.size();
  for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
    std::vector<Rational> values(static_cast<std::size_t>(p), Rational(0));
    for (std::size_t i = 0; i < n; ++i)
      values[static_cast<std::size_t>(units[i] - 1)] = Rational(mask & (1ull << i) ? -1 : 1);
    try {
      DirichletCharacter chi = validate(values, p);
      if (!chi.principal) out.push_back(std::move(chi));
    } catch (const error&) {
      continue;
    }
  }
  return out;
}

}  // namespace ts

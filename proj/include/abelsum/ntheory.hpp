#pragma once

#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "abelsum/errors.hpp"
#include "abelsum/rational.hpp"

namespace abelsum {

inline bool is_prime(long n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (long d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

// Prime factorization by trial division; desk scale inputs.
inline std::vector<std::pair<long, int>> factorize(long n) {
  if (n < 1) throw domain_error("factorize: argument must be positive");
  std::vector<std::pair<long, int>> out;
  for (long d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    if (n % d == 0) {
      int e = 0;
      while (n % d == 0) {
        n /= d;
        ++e;
      }
      out.emplace_back(d, e);
    }
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline bool is_squarefree(long n) {
  if (n < 1) return false;
  for (const auto& [p, e] : factorize(n))
    if (e > 1) return false;
  return true;
}

// cos(2*pi*k/n) when it is rational (Niven: value in {0, ±1/2, ±1}), else nullopt.
inline std::optional<Rational> exact_cos_2pi(long k, long n) {
  if (n <= 0) throw domain_error("exact_cos_2pi: modulus must be positive");
  k %= n;
  if (k < 0) k += n;
  if (k == 0) return Rational(1);
  const long g = std::gcd(k, n);
  const long kk = k / g, nn = n / g;
  switch (nn) {
    case 1:
      return Rational(1);
    case 2:
      return Rational(-1);
    case 3:
      return Rational(-1, 2);
    case 4:
      return Rational(0);
    case 6:
      return Rational(1, 2);
    default:
      (void)kk;
      return std::nullopt;
  }
}

// cos(pi*k/n) when rational.
inline std::optional<Rational> exact_cos_pi(long k, long n) { return exact_cos_2pi(k, 2 * n); }

}  // namespace abelsum

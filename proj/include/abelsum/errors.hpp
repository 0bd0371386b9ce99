#pragma once

#include <stdexcept>
#include <string>

namespace abelsum {

// Base class for every error raised by the library.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct domain_error : error {
  using error::error;
};

struct arg_out_of_range : error {
  using error::error;
};

struct pole_error : error {
  using error::error;
};

// A series/extrapolation that grows without bound or cannot stabilize.
struct non_convergence : error {
  using error::error;
};

// Integrand evaluated to NaN/Inf at an interior quadrature node.
struct singular_integrand : error {
  using error::error;
};

// Periodic coefficient block whose one-period sum is nonzero.
struct nonzero_sum : error {
  using error::error;
};

struct degree_error : error {
  using error::error;
};

// Dirichlet character validation failures.
struct not_multiplicative : error {
  using error::error;
};
struct wrong_support : error {
  using error::error;
};
struct not_periodic_input : error {
  using error::error;
};
struct trivial_character : error {
  using error::error;
};
struct not_odd_prime : error {
  using error::error;
};
struct bad_modulus : error {
  using error::error;
};

}  // namespace abelsum

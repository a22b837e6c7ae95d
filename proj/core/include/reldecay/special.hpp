#pragma once

/// Quadrature rules and special-function sequences used by the integrators.

#include <cstddef>
#include <span>
#include <vector>

namespace reldecay::special {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1], nodes ascending.
QuadratureRule gauss_legendre(std::size_t n);

/// n-point Gauss-Hermite rule for weight exp(-x^2) on the real line, nodes
/// ascending. Weights sum to sqrt(pi).
QuadratureRule gauss_hermite(std::size_t n);

/// Legendre polynomials P_0..P_{n-1} at x, written into out (size n).
void legendre_values(double x, std::span<double> out);

/// Spherical Bessel functions j_0(x)..j_{n-1}(x) for x >= 0, written into out.
/// Uses upward recurrence when x exceeds the order range and Miller's
/// normalized downward recurrence otherwise.
void spherical_bessel_sequence(double x, std::span<double> out);

}  // namespace reldecay::special

#pragma once

// Test-side reference values, computed independently of the library code
// they check.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

namespace testing {

inline bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

/// E[q^gamma] for q uniform on the sphere in R^d, via
/// Gamma(d/2) / Gamma((d + |gamma|)/2) prod_i Gamma((gamma_i + 1)/2) / Gamma(1/2).
inline double sphere_moment_ref(const std::vector<unsigned>& gamma) {
  const double d = static_cast<double>(gamma.size());
  double w = 0.0, acc = 0.0;
  for (unsigned g : gamma) {
    if (g % 2) return 0.0;
    w += g;
    acc += std::lgamma((g + 1.0) / 2.0) - 0.5 * std::log(std::numbers::pi);
  }
  return std::exp(acc + std::lgamma(d / 2.0) - std::lgamma((d + w) / 2.0));
}

/// Probability of |Z| > 3 for a standard normal Z.
inline constexpr double kThreeSigmaTail = 0.0026997960632601866;

/// Allowed number of 3-sigma exceedances among n independent comparisons.
inline double allowed_exceedances(std::size_t n) {
  const double N = static_cast<double>(n);
  return N * kThreeSigmaTail + 3.0 * std::sqrt(N * kThreeSigmaTail * (1.0 - kThreeSigmaTail));
}

}  // namespace testing

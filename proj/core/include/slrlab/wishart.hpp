#pragma once

#include <cstddef>

namespace slrlab {

/// Arguments (s, t) of the Wishart normalizing constant
///   omega(s, t) = [pi^{t(t-1)/4} 2^{st/2} prod_{j=1}^{t} Gamma((s - j + 1)/2)]^{-1}.
struct WishartConstantQuery {
  long long s = 1;
  long long t = 1;

  /// Throws std::invalid_argument unless s >= t >= 1.
  void validate() const;
};

/// log omega(s, t), evaluated with lgamma.
double log_wishart_constant(const WishartConstantQuery& q);
inline double log_wishart_constant(long long s, long long t) {
  return log_wishart_constant(WishartConstantQuery{s, t});
}

/// 2^{k^2} prod_{j=1}^{k} prod_{i=1}^{k} ((d - j + 1)/2 - i), which equals
/// omega(d - 2k, k) / omega(d, k) and grows like d^{k^2}. Throws
/// std::invalid_argument if a factor is nonpositive (d < 3k).
double wishart_ratio_exact(std::size_t d, std::size_t k);

/// Logarithm of wishart_ratio_exact.
double log_wishart_ratio_exact(std::size_t d, std::size_t k);

}  // namespace slrlab

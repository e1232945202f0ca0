#include "slrlab/wishart.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace slrlab {

void WishartConstantQuery::validate() const {
  if (t < 1 || s < t) {
    throw std::invalid_argument("wishart constant: need s >= t >= 1, got (s=" + std::to_string(s) +
                                ", t=" + std::to_string(t) + ")");
  }
}

double log_wishart_constant(const WishartConstantQuery& q) {
  q.validate();
  const double s = static_cast<double>(q.s);
  const double t = static_cast<double>(q.t);
  double acc = t * (t - 1.0) / 4.0 * std::log(std::numbers::pi) + s * t / 2.0 * std::numbers::ln2;
  for (long long j = 1; j <= q.t; ++j) acc += std::lgamma((s - static_cast<double>(j) + 1.0) / 2.0);
  return -acc;
}

double log_wishart_ratio_exact(std::size_t d, std::size_t k) {
  if (k == 0) return 0.0;
  const double kd = static_cast<double>(k);
  double acc = kd * kd * std::numbers::ln2;
  for (std::size_t j = 1; j <= k; ++j) {
    for (std::size_t i = 1; i <= k; ++i) {
      const double f = (static_cast<double>(d) - static_cast<double>(j) + 1.0) / 2.0 -
                       static_cast<double>(i);
      if (f <= 0.0) {
        throw std::invalid_argument("wishart_ratio_exact: nonpositive factor at d=" +
                                    std::to_string(d) + ", k=" + std::to_string(k));
      }
      acc += std::log(f);
    }
  }
  return acc;
}

double wishart_ratio_exact(std::size_t d, std::size_t k) {
  return std::exp(log_wishart_ratio_exact(d, k));
}

}  // namespace slrlab

#include "slrlab/gaussian_moments.hpp"

#include <cmath>
#include <stdexcept>

namespace slrlab {

double gaussian_exp_moment(double lambda, const Matrix& a) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("gaussian_exp_moment: lambda must be positive");
  }
  const double c = 1.0 + 2.0 * lambda;
  const double entries = static_cast<double>(a.size());
  return std::exp(-0.5 * entries * std::log(c) + a.squaredNorm() / (2.0 * c));
}

double gaussian_quadform_moment(const Matrix& a, std::size_t k) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw std::invalid_argument("gaussian_quadform_moment: A must be square and nonempty");
  }
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw std::invalid_argument("gaussian_quadform_moment: A is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(a, Eigen::EigenvaluesOnly);
  const auto& ev = eig.eigenvalues();
  if (ev.minCoeff() < -1e-10 * std::max(0.0, ev.maxCoeff())) {
    throw std::invalid_argument("gaussian_quadform_moment: A is not positive semidefinite");
  }
  double logdet = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) logdet += std::log1p(2.0 * ev(i));
  return std::exp(-0.5 * static_cast<double>(k) * logdet);
}

}  // namespace slrlab

#include "slrlab/randmat.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace slrlab {

namespace {

void require_positive(std::size_t v, const char* what) {
  if (v == 0) throw std::invalid_argument(std::string(what) + " must be at least 1");
}

// Orthonormal factor of a tall Gaussian with sign(diag R) = +1. The sign
// correction makes the law exactly Haar (Mezzadri's construction).
Matrix orthonormal_factor(const Matrix& g) {
  Eigen::HouseholderQR<Matrix> qr(g);
  const Eigen::Index rows = g.rows();
  const Eigen::Index cols = g.cols();
  Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
  const auto& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < cols; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

}  // namespace

Matrix gaussian_matrix(std::size_t rows, std::size_t cols, RandomStream& rng) {
  require_positive(rows, "rows");
  require_positive(cols, "cols");
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rng.normal();
  }
  return m;
}

Matrix haar_orthogonal(std::size_t d, RandomStream& rng) {
  require_positive(d, "d");
  return orthonormal_factor(gaussian_matrix(d, d, rng));
}

StiefelMatrix stiefel(std::size_t d, std::size_t m, RandomStream& rng) {
  require_positive(d, "d");
  require_positive(m, "m");
  if (m > d) throw std::invalid_argument("stiefel: m must not exceed d");
  // The first m columns of a Haar matrix are the orthonormal factor of the
  // first m Gaussian columns, so draw the full square and keep those columns.
  const Matrix g = gaussian_matrix(d, d, rng);
  return StiefelMatrix(orthonormal_factor(g.leftCols(static_cast<Eigen::Index>(m))));
}

Permutation uniform_permutation(std::size_t n, RandomStream& rng) {
  require_positive(n, "n");
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  for (std::size_t i = n - 1; i > 0; --i) {
    const std::size_t j = rng.uniform_index(i + 1);
    std::swap(p[i], p[j]);
  }
  return Permutation(std::move(p));
}

Matrix uniform_sphere(std::size_t d, RandomStream& rng) {
  require_positive(d, "d");
  Matrix v = gaussian_matrix(d, 1, rng);
  double norm = v.norm();
  while (norm == 0.0) {
    v = gaussian_matrix(d, 1, rng);
    norm = v.norm();
  }
  return v / norm;
}

}  // namespace slrlab

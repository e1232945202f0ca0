#pragma once

#include "slrlab/matrix.hpp"
#include "slrlab/random.hpp"

#include <cstddef>

namespace slrlab {

// Samplers for the random-matrix priors. Each draws from the given stream and
// advances it; zero dimensions throw std::invalid_argument.

/// rows x cols matrix of i.i.d. N(0, 1) entries, filled row by row.
Matrix gaussian_matrix(std::size_t rows, std::size_t cols, RandomStream& rng);

/// Haar-distributed element of O(d): QR of a square Gaussian with the
/// triangular factor's diagonal normalized to be positive.
Matrix haar_orthogonal(std::size_t d, RandomStream& rng);

/// Uniform d x m matrix with orthonormal columns (1 <= m <= d). Consumes the
/// same Gaussian draws as haar_orthogonal, so stiefel(d, d) == haar_orthogonal(d)
/// from identical streams.
StiefelMatrix stiefel(std::size_t d, std::size_t m, RandomStream& rng);

/// Uniform permutation of [0, n) by Fisher-Yates.
Permutation uniform_permutation(std::size_t n, RandomStream& rng);

/// Uniform point on the unit sphere in R^d, returned as a d x 1 matrix.
Matrix uniform_sphere(std::size_t d, RandomStream& rng);

}  // namespace slrlab

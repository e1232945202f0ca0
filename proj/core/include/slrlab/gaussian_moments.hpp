#pragma once

#include "slrlab/matrix.hpp"

#include <cstddef>

namespace slrlab {

/// E[exp(-lambda |Z|_F^2 + <A, Z>)] for Z with i.i.d. N(0, 1) entries, shaped
/// like A: (1 + 2 lambda)^{-dm/2} exp(|A|_F^2 / (2 (1 + 2 lambda))).
/// Throws std::invalid_argument unless lambda > 0.
double gaussian_exp_moment(double lambda, const Matrix& a);

/// E[exp(-tr(Z^T A Z))] for Z ~ N(0, I) of shape d x k: det(I_d + 2A)^{-k/2}.
/// Throws std::invalid_argument unless A is symmetric and positive
/// semidefinite (smallest eigenvalue >= -1e-10 * largest).
double gaussian_quadform_moment(const Matrix& a, std::size_t k);

}  // namespace slrlab

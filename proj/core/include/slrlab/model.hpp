#pragma once

#include "slrlab/matrix.hpp"
#include "slrlab/random.hpp"

#include <cstddef>
#include <optional>
#include <string_view>

namespace slrlab {

enum class Hypothesis { null, planted };

std::string_view to_string(Hypothesis h);
/// Parses "null" / "planted"; throws std::invalid_argument otherwise.
Hypothesis parse_hypothesis(std::string_view s);

/// Problem size (n rows, predictor dimension d, response dimension m) and
/// noise level sigma.
struct ModelParams {
  std::size_t n = 1;
  std::size_t d = 1;
  std::size_t m = 1;
  double sigma = 0.0;

  /// Throws std::invalid_argument unless n >= 1, 1 <= m <= d, sigma >= 0.
  void validate() const;
};

/// Parameters of the k-row permutation-free model.
struct ReducedParams {
  std::size_t k = 1;
  std::size_t d = 1;
  std::size_t m = 1;
  double sigma = 0.0;

  void validate() const;
};

struct Latent {
  Permutation perm;
  StiefelMatrix q;
  Matrix z;
};

/// One observation (X, Y). Planted draws may carry their latent variables.
struct Instance {
  Matrix x;
  Matrix y;
  Hypothesis hypothesis = Hypothesis::null;
  std::optional<Latent> latent;
};

/// 1 / sqrt(1 + sigma^2).
double noise_scale(double sigma);

/// Y = (perm(X) Q + sigma Z) / sqrt(1 + sigma^2), with the permutation applied
/// as a row gather.
Matrix planted_response(const Matrix& x, const Permutation& perm, const Matrix& q,
                        const Matrix& z, double sigma);

/// X and Y independent standard Gaussian matrices.
Instance sample_null(const ModelParams& params, RandomStream& rng);

/// Draws X, then the permutation, Q ~ stiefel(d, m) and Z, in that order.
Instance sample_planted(const ModelParams& params, RandomStream& rng, bool keep_latent = false);

/// Reduced model: under the planted hypothesis Y = (XQ + sigma Z)/sqrt(1+sigma^2)
/// with no permutation. The latent (identity permutation) is always kept.
Instance sample_reduced(const ReducedParams& params, Hypothesis hypothesis, RandomStream& rng);

}  // namespace slrlab

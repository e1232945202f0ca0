#include "slrlab/model.hpp"

#include "slrlab/randmat.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace slrlab {

std::string_view to_string(Hypothesis h) {
  return h == Hypothesis::null ? "null" : "planted";
}

Hypothesis parse_hypothesis(std::string_view s) {
  if (s == "null") return Hypothesis::null;
  if (s == "planted") return Hypothesis::planted;
  throw std::invalid_argument("unknown hypothesis '" + std::string(s) + "'");
}

namespace {

void validate_common(std::size_t rows, std::size_t d, std::size_t m, double sigma,
                     const char* rows_name) {
  if (rows == 0) throw std::invalid_argument(std::string(rows_name) + " must be at least 1");
  if (m == 0 || d == 0) throw std::invalid_argument("d and m must be at least 1");
  if (m > d) {
    throw std::invalid_argument("m (" + std::to_string(m) + ") must not exceed d (" +
                                std::to_string(d) + ")");
  }
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("sigma must be finite and nonnegative");
  }
}

}  // namespace

void ModelParams::validate() const { validate_common(n, d, m, sigma, "n"); }
void ReducedParams::validate() const { validate_common(k, d, m, sigma, "k"); }

double noise_scale(double sigma) { return 1.0 / std::sqrt(1.0 + sigma * sigma); }

Matrix planted_response(const Matrix& x, const Permutation& perm, const Matrix& q,
                        const Matrix& z, double sigma) {
  Matrix y = perm.apply_rows(x) * q;
  if (sigma != 0.0) y += sigma * z;
  return noise_scale(sigma) * y;
}

Instance sample_null(const ModelParams& params, RandomStream& rng) {
  params.validate();
  Instance inst;
  inst.x = gaussian_matrix(params.n, params.d, rng);
  inst.y = gaussian_matrix(params.n, params.m, rng);
  inst.hypothesis = Hypothesis::null;
  return inst;
}

Instance sample_planted(const ModelParams& params, RandomStream& rng, bool keep_latent) {
  params.validate();
  Instance inst;
  inst.x = gaussian_matrix(params.n, params.d, rng);
  Permutation perm = uniform_permutation(params.n, rng);
  StiefelMatrix q = stiefel(params.d, params.m, rng);
  Matrix z = gaussian_matrix(params.n, params.m, rng);
  inst.y = planted_response(inst.x, perm, q.base(), z, params.sigma);
  inst.hypothesis = Hypothesis::planted;
  if (keep_latent) inst.latent = Latent{std::move(perm), std::move(q), std::move(z)};
  return inst;
}

Instance sample_reduced(const ReducedParams& params, Hypothesis hypothesis, RandomStream& rng) {
  params.validate();
  Instance inst;
  inst.hypothesis = hypothesis;
  inst.x = gaussian_matrix(params.k, params.d, rng);
  if (hypothesis == Hypothesis::null) {
    inst.y = gaussian_matrix(params.k, params.m, rng);
    return inst;
  }
  StiefelMatrix q = stiefel(params.d, params.m, rng);
  Matrix z = gaussian_matrix(params.k, params.m, rng);
  Permutation id = Permutation::identity(params.k);
  inst.y = planted_response(inst.x, id, q.base(), z, params.sigma);
  inst.latent = Latent{std::move(id), std::move(q), std::move(z)};
  return inst;
}

}  // namespace slrlab

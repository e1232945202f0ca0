#pragma once

#include "slrlab/chisq.hpp"
#include "slrlab/hermite.hpp"
#include "slrlab/model.hpp"
#include "slrlab/random.hpp"
#include "slrlab/stats.hpp"

#include <cstddef>
#include <vector>

namespace slrlab {

/// Estimate of Adv_{<=D}^2 = sum over patterns with |A| + |B| <= D of E_P[phi_{A,B}]^2.
struct AdvantageEstimate {
  unsigned degree = 0;
  double value_sq = 1.0;
  double std_error = 0.0;
  std::size_t pattern_count = 1;
  std::size_t samples = 0;
};

/// Largest n for which the planted permutation can be averaged out exactly.
inline constexpr std::size_t kMaxExactPermutationRows = 7;

/// Planted mean E_P[phi_{A,B}] by direct sampling. With exact_permutation,
/// each (X, Q, Z) draw averages phi over all n! row permutations (n <= 7,
/// otherwise std::invalid_argument). The zero pattern returns exactly 1.
MomentEstimate estimate_phi_mean_planted(const PatternPair& pattern, const ModelParams& params,
                                         std::size_t samples, const RandomStream& rng,
                                         bool exact_permutation = false);

struct AdvantageOptions {
  double pattern_cap = 1e6;
  bool exact_permutation = false;
};

/// One row of the per-pattern breakdown.
struct PatternContribution {
  std::size_t pattern_id = 0;
  unsigned degree = 0;
  double mean = 0.0;
  double std_error = 0.0;
  double squared_contribution = 0.0;  // mean^2 - variance/samples
};

/// Sum of squared planted means over every pattern of total degree <= D,
/// enumerated in graded lexicographic order of the flattened index over
/// N^{n(d+m)}. Each term is debiased (mean^2 - variance/samples) and all
/// patterns share the same draws; std_error is a 10-group jackknife. Throws
/// CapacityError when the pattern count exceeds options.pattern_cap. When
/// `rows` is non-null it receives one entry per pattern.
AdvantageEstimate estimate_advantage_sq(const ModelParams& params, unsigned D, std::size_t samples,
                                        const RandomStream& rng,
                                        const AdvantageOptions& options = {},
                                        std::vector<PatternContribution>* rows = nullptr);

/// The single-response (m = 1), noiseless upper bound
///   1 + sum_{k=1}^{D} sum_{(alpha_1..alpha_k), 0 < |alpha_i| <= D}
///       prod_i M(alpha_i)^2 E[q^{alpha_1 + ... + alpha_k}]^2,
/// q uniform on the sphere in R^d, M(alpha)^2 = |alpha|!/alpha!. Evaluated
/// exactly; throws CapacityError when the number of even multi-indices of
/// weight <= D^2 exceeds `cap`.
double advantage_bound_m1(std::size_t d, unsigned D, double cap = 1e7);

/// 1 + sum_{k=1}^{D} (chi^2(P_k || Q_k) - 1).
struct ChiSquareBound {
  double value = 1.0;
  double std_error = 0.0;
  bool monte_carlo = false;
  std::vector<ChiSquareReport> terms;
};

/// Uses the noiseless closed forms when sigma = 0 and the Haar determinant
/// integral (Monte Carlo, `samples` draws, stream rng.child(k)) when m = d and
/// sigma > 0. Throws UnsupportedRegime otherwise, or when some k <= D falls
/// outside the closed-form regime.
ChiSquareBound advantage_bound_via_chisq(std::size_t d, std::size_t m, double sigma, unsigned D,
                                         std::size_t samples, const RandomStream& rng);

}  // namespace slrlab

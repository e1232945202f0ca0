#pragma once

#include "slrlab/model.hpp"
#include "slrlab/random.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace slrlab {

/// f(X, Y) = (|Y|_F^2 - |X|_F^2)^2.
double statistic_f(const Instance& inst);

/// E_null[f] = 4nd.
double null_mean_f(const ModelParams& params);
/// E_planted[f] = 4nd sigma^2 / (1 + sigma^2) (for m = d).
double planted_mean_f(const ModelParams& params);
/// Midpoint of the two means, 2nd (1 + sigma^2/(1 + sigma^2)).
double default_threshold(const ModelParams& params);

/// Empirical misclassification rates of the rule "planted iff f < threshold".
struct ErrorRates {
  double type1 = 0.0;  // null declared planted
  double type2 = 0.0;  // planted declared null
  double threshold = 0.0;
  std::size_t trials_per_hypothesis = 0;
  bool warning = false;  // m < d
};

/// Empirical moments of f under both hypotheses and the ratio
/// sqrt(max(var_null, var_planted)) / |mean_null - mean_planted|.
struct SeparationReport {
  double mean_null = 0.0;
  double var_null = 0.0;
  double mean_planted = 0.0;
  double var_planted = 0.0;
  double separation_ratio = 0.0;
  std::size_t trials = 0;
  bool warning = false;
};

/// f on `trials` null and `trials` planted draws. Null draws come from block
/// streams under rng.child(0), planted draws from rng.child(1).
struct DetectionSamples {
  std::vector<double> f_null;
  std::vector<double> f_planted;
};
DetectionSamples sample_statistic(const ModelParams& params, std::size_t trials,
                                  const RandomStream& rng);

ErrorRates error_rates(const ModelParams& params, const DetectionSamples& samples,
                       std::optional<double> threshold = std::nullopt);
SeparationReport separation(const ModelParams& params, const DetectionSamples& samples);

/// Throws std::invalid_argument when trials == 0.
ErrorRates run_test(const ModelParams& params, std::optional<double> threshold,
                    std::size_t trials, const RandomStream& rng);

/// Throws std::invalid_argument when trials < 2.
SeparationReport separation_report(const ModelParams& params, std::size_t trials,
                                   const RandomStream& rng);

}  // namespace slrlab

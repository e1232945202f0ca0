#include "slrlab/detect.hpp"

#include "slrlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace slrlab {

double statistic_f(const Instance& inst) {
  if (inst.x.rows() != inst.y.rows()) {
    throw std::invalid_argument("statistic_f: X and Y must have the same number of rows");
  }
  const double gap = inst.y.squaredNorm() - inst.x.squaredNorm();
  return gap * gap;
}

double null_mean_f(const ModelParams& params) {
  return 4.0 * static_cast<double>(params.n) * static_cast<double>(params.d);
}

double planted_mean_f(const ModelParams& params) {
  const double s2 = params.sigma * params.sigma;
  return null_mean_f(params) * s2 / (1.0 + s2);
}

double default_threshold(const ModelParams& params) {
  return 0.5 * (null_mean_f(params) + planted_mean_f(params));
}

DetectionSamples sample_statistic(const ModelParams& params, std::size_t trials,
                                  const RandomStream& rng) {
  params.validate();
  DetectionSamples out{std::vector<double>(trials), std::vector<double>(trials)};
  constexpr std::size_t block = 64;
  for_each_block(trials, block, rng.child(0),
                 [&](std::size_t, std::size_t begin, std::size_t end, RandomStream& s) {
                   for (std::size_t i = begin; i < end; ++i) {
                     out.f_null[i] = statistic_f(sample_null(params, s));
                   }
                 });
  for_each_block(trials, block, rng.child(1),
                 [&](std::size_t, std::size_t begin, std::size_t end, RandomStream& s) {
                   for (std::size_t i = begin; i < end; ++i) {
                     out.f_planted[i] = statistic_f(sample_planted(params, s));
                   }
                 });
  return out;
}

ErrorRates error_rates(const ModelParams& params, const DetectionSamples& samples,
                       std::optional<double> threshold) {
  const std::size_t trials = samples.f_null.size();
  if (trials == 0 || samples.f_planted.size() != trials) {
    throw std::invalid_argument("error_rates: need matching nonempty trial sets");
  }
  ErrorRates r;
  r.threshold = threshold.value_or(default_threshold(params));
  r.trials_per_hypothesis = trials;
  r.warning = params.m < params.d;
  const auto planted_calls = [&](double f) { return f < r.threshold; };
  const auto false_alarms =
      std::count_if(samples.f_null.begin(), samples.f_null.end(), planted_calls);
  const auto misses = std::count_if(samples.f_planted.begin(), samples.f_planted.end(),
                                    [&](double f) { return !planted_calls(f); });
  r.type1 = static_cast<double>(false_alarms) / static_cast<double>(trials);
  r.type2 = static_cast<double>(misses) / static_cast<double>(trials);
  return r;
}

SeparationReport separation(const ModelParams& params, const DetectionSamples& samples) {
  const std::size_t trials = samples.f_null.size();
  if (trials < 2 || samples.f_planted.size() != trials) {
    throw std::invalid_argument("separation: need at least 2 trials per hypothesis");
  }
  RunningMoments null_m, planted_m;
  for (double f : samples.f_null) null_m.add(f);
  for (double f : samples.f_planted) planted_m.add(f);
  SeparationReport r;
  r.mean_null = null_m.mean();
  r.var_null = null_m.variance();
  r.mean_planted = planted_m.mean();
  r.var_planted = planted_m.variance();
  const double gap = std::abs(r.mean_null - r.mean_planted);
  const double spread = std::sqrt(std::max(r.var_null, r.var_planted));
  r.separation_ratio = gap > 0.0 ? spread / gap : INFINITY;
  r.trials = trials;
  r.warning = params.m < params.d;
  return r;
}

ErrorRates run_test(const ModelParams& params, std::optional<double> threshold,
                    std::size_t trials, const RandomStream& rng) {
  if (trials == 0) throw std::invalid_argument("run_test: trials must be at least 1");
  return error_rates(params, sample_statistic(params, trials, rng), threshold);
}

SeparationReport separation_report(const ModelParams& params, std::size_t trials,
                                   const RandomStream& rng) {
  if (trials < 2) throw std::invalid_argument("separation_report: trials must be at least 2");
  return separation(params, sample_statistic(params, trials, rng));
}

}  // namespace slrlab

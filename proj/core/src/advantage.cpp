#include "slrlab/advantage.hpp"

#include "slrlab/errors.hpp"
#include "slrlab/multi_index.hpp"
#include "slrlab/randmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace slrlab {

namespace {

// Per-pattern sums of phi and phi^2 over a group of draws.
struct PowerSums {
  std::size_t count = 0;
  std::vector<double> s1;
  std::vector<double> s2;

  explicit PowerSums(std::size_t patterns) : s1(patterns, 0.0), s2(patterns, 0.0) {}

  void add(const PowerSums& o) {
    count += o.count;
    for (std::size_t p = 0; p < s1.size(); ++p) {
      s1[p] += o.s1[p];
      s2[p] += o.s2[p];
    }
  }
};

std::size_t factorial(std::size_t n) {
  std::size_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

// Draws one planted (X, Q, Z) and adds phi (averaged over all row
// permutations when `exact`) for every pattern into `acc`.
class PlantedDraw {
 public:
  PlantedDraw(const ModelParams& params, unsigned max_degree, bool exact)
      : params_(params), exact_(exact), cache_(params.n, params.d, params.m, max_degree),
        values_() {}

  void run(RandomStream& s, const std::vector<SparsePattern>& patterns, PowerSums& acc) {
    values_.assign(patterns.size(), 0.0);
    if (!exact_) {
      const Instance inst = sample_planted(params_, s);
      cache_.load(inst.x, inst.y);
      for (std::size_t p = 0; p < patterns.size(); ++p) values_[p] = cache_.evaluate(patterns[p]);
    } else {
      const Matrix x = gaussian_matrix(params_.n, params_.d, s);
      const StiefelMatrix q = stiefel(params_.d, params_.m, s);
      const Matrix z = gaussian_matrix(params_.n, params_.m, s);
      const Matrix xq = x * q.base();
      const double scale = noise_scale(params_.sigma);
      std::vector<std::size_t> mapping(params_.n);
      std::iota(mapping.begin(), mapping.end(), std::size_t{0});
      Matrix y(static_cast<Eigen::Index>(params_.n), static_cast<Eigen::Index>(params_.m));
      const double weight = 1.0 / static_cast<double>(factorial(params_.n));
      do {
        for (std::size_t i = 0; i < params_.n; ++i) {
          const auto r = static_cast<Eigen::Index>(i);
          y.row(r) = (xq.row(static_cast<Eigen::Index>(mapping[i])) + params_.sigma * z.row(r)) * scale;
        }
        cache_.load(x, y);
        for (std::size_t p = 0; p < patterns.size(); ++p) {
          values_[p] += weight * cache_.evaluate(patterns[p]);
        }
      } while (std::next_permutation(mapping.begin(), mapping.end()));
    }
    ++acc.count;
    for (std::size_t p = 0; p < patterns.size(); ++p) {
      acc.s1[p] += values_[p];
      acc.s2[p] += values_[p] * values_[p];
    }
  }

 private:
  ModelParams params_;
  bool exact_;
  HermiteCache cache_;
  std::vector<double> values_;
};

// Splits `samples` draws into `groups` contiguous groups; group g uses the
// stream rng.child(g) and is itself processed in parallel blocks.
std::vector<PowerSums> sample_groups(const ModelParams& params,
                                     const std::vector<SparsePattern>& patterns,
                                     unsigned max_degree, std::size_t samples, std::size_t groups,
                                     const RandomStream& rng, bool exact) {
  std::vector<PowerSums> out;
  out.reserve(groups);
  for (std::size_t g = 0; g < groups; ++g) {
    const std::size_t begin = g * samples / groups;
    const std::size_t size = (g + 1) * samples / groups - begin;
    const std::size_t blocks = (size + kMonteCarloBlock - 1) / kMonteCarloBlock;
    std::vector<PowerSums> partial(blocks, PowerSums(patterns.size()));
    for_each_block(size, kMonteCarloBlock, rng.child(g),
                   [&](std::size_t b, std::size_t lo, std::size_t hi, RandomStream& s) {
                     PlantedDraw draw(params, max_degree, exact);
                     for (std::size_t i = lo; i < hi; ++i) draw.run(s, patterns, partial[b]);
                   });
    PowerSums total(patterns.size());
    for (const auto& part : partial) total.add(part);
    out.push_back(std::move(total));
  }
  return out;
}

void check_exact_permutation(const ModelParams& params, bool exact) {
  if (exact && params.n > kMaxExactPermutationRows) {
    throw std::invalid_argument("exact permutation averaging supports n <= " +
                                std::to_string(kMaxExactPermutationRows) + ", got n=" +
                                std::to_string(params.n));
  }
}

std::size_t group_count(std::size_t samples) {
  return std::clamp<std::size_t>(samples / 2, 2, 10);
}

// Unbiased estimate of mu^2 from power sums of n draws.
double debiased_square(double s1, double s2, double n) { return (s1 * s1 - s2) / (n * (n - 1.0)); }

}  // namespace

MomentEstimate estimate_phi_mean_planted(const PatternPair& pattern, const ModelParams& params,
                                         std::size_t samples, const RandomStream& rng,
                                         bool exact_permutation) {
  params.validate();
  pattern.validate(params.n, params.d, params.m);
  check_exact_permutation(params, exact_permutation);
  if (pattern.is_zero()) return MomentEstimate::exact(1.0, rng.master_seed());
  if (samples < 2) throw std::invalid_argument("estimate_phi_mean_planted: samples must be >= 2");
  const std::vector<SparsePattern> patterns{SparsePattern(pattern)};
  const auto groups = sample_groups(params, patterns, pattern.degree(), samples,
                                    group_count(samples), rng, exact_permutation);
  PowerSums total(1);
  for (const auto& g : groups) total.add(g);
  const double n = static_cast<double>(total.count);
  const double mean = total.s1[0] / n;
  const double var = std::max(0.0, (total.s2[0] - total.s1[0] * mean) / (n - 1.0));
  return MomentEstimate{mean, std::sqrt(var / n), samples, rng.master_seed()};
}

AdvantageEstimate estimate_advantage_sq(const ModelParams& params, unsigned D, std::size_t samples,
                                        const RandomStream& rng, const AdvantageOptions& options,
                                        std::vector<PatternContribution>* rows) {
  params.validate();
  check_exact_permutation(params, options.exact_permutation);
  const std::size_t dim = params.n * (params.d + params.m);
  const double count = count_multiindices(dim, D);
  if (count > options.pattern_cap) {
    throw CapacityError("advantage enumeration needs " + format_double(count) +
                            " patterns, cap is " + format_double(options.pattern_cap),
                        count, options.pattern_cap);
  }
  AdvantageEstimate est;
  est.degree = D;
  if (rows) rows->clear();
  if (D == 0) {
    if (rows) rows->push_back({0, 0, 1.0, 0.0, 1.0});
    return est;
  }
  if (samples < 4) throw std::invalid_argument("estimate_advantage_sq: samples must be >= 4");

  const auto flats = multiindex_enumerate(dim, D);
  std::vector<SparsePattern> patterns;
  patterns.reserve(flats.size());
  for (const auto& f : flats) {
    patterns.emplace_back(PatternPair::from_flat(f, params.n, params.d, params.m));
  }
  const std::size_t G = group_count(samples);
  const auto groups =
      sample_groups(params, patterns, D, samples, G, rng, options.exact_permutation);
  PowerSums total(patterns.size());
  for (const auto& g : groups) total.add(g);

  // The zero pattern is identically 1 and contributes exactly 1.
  const auto sum_squares = [&](const PowerSums& s) {
    const double n = static_cast<double>(s.count);
    double acc = 1.0;
    for (std::size_t p = 1; p < patterns.size(); ++p) acc += debiased_square(s.s1[p], s.s2[p], n);
    return acc;
  };

  est.value_sq = sum_squares(total);
  est.pattern_count = patterns.size();
  est.samples = samples;

  std::vector<double> leave_out(G);
  for (std::size_t g = 0; g < G; ++g) {
    PowerSums rest(patterns.size());
    rest.count = total.count - groups[g].count;
    for (std::size_t p = 0; p < patterns.size(); ++p) {
      rest.s1[p] = total.s1[p] - groups[g].s1[p];
      rest.s2[p] = total.s2[p] - groups[g].s2[p];
    }
    leave_out[g] = sum_squares(rest);
  }
  const double mean_lo = std::accumulate(leave_out.begin(), leave_out.end(), 0.0) / static_cast<double>(G);
  double ss = 0.0;
  for (double v : leave_out) ss += (v - mean_lo) * (v - mean_lo);
  est.std_error = std::sqrt(ss * static_cast<double>(G - 1) / static_cast<double>(G));

  if (rows) {
    const double n = static_cast<double>(total.count);
    rows->reserve(patterns.size());
    for (std::size_t p = 0; p < patterns.size(); ++p) {
      PatternContribution row;
      row.pattern_id = p;
      row.degree = patterns[p].degree();
      if (p == 0) {
        row.mean = 1.0;
        row.squared_contribution = 1.0;
      } else {
        row.mean = total.s1[p] / n;
        const double var = std::max(0.0, (total.s2[p] - total.s1[p] * row.mean) / (n - 1.0));
        row.std_error = std::sqrt(var / n);
        row.squared_contribution = debiased_square(total.s1[p], total.s2[p], n);
      }
      rows->push_back(row);
    }
  }
  return est;
}

double advantage_bound_m1(std::size_t d, unsigned D, double cap) {
  if (d == 0) throw std::invalid_argument("advantage_bound_m1: d must be at least 1");
  if (D == 0) return 1.0;
  const unsigned T = D * D;
  const double needed = count_multiindices(d, T / 2);
  if (needed > cap) {
    throw CapacityError("advantage_bound_m1 needs " + format_double(needed) +
                            " sphere moments, cap is " + format_double(cap),
                        needed, cap);
  }
  // Summing prod_i |alpha_i|!/alpha_i! x^{alpha_i} over tuples gives P(s)^k with
  // s = x_1 + ... + x_d and P(s) = s + ... + s^D, and [x^gamma] s^t = t!/gamma!.
  // So the bound is 1 + sum_k sum_t [s^t] P(s)^k * h(t) with
  // h(t) = sum_{|gamma| = t} (t!/gamma!) E[q^gamma]^2 (only even gamma contribute).
  std::vector<double> h(T + 1, 0.0);
  for (unsigned u = 1; 2 * u <= T; ++u) {
    const unsigned t = 2 * u;
    double acc = 0.0;
    for (const auto& delta : multiindices_of_weight(d, u)) {
      std::vector<unsigned> parts(delta.parts());
      for (auto& v : parts) v *= 2;
      const MultiIndex gamma(std::move(parts));
      acc += std::exp(log_factorial(t) - gamma.log_factorial() + 2.0 * log_sphere_moment(gamma, d));
    }
    h[t] = acc;
  }
  std::vector<double> power(T + 1, 0.0);
  power[0] = 1.0;
  double total = 1.0;
  for (unsigned k = 1; k <= D; ++k) {
    std::vector<double> next(T + 1, 0.0);
    for (unsigned t = 0; t <= T; ++t) {
      if (power[t] == 0.0) continue;
      for (unsigned j = 1; j <= D && t + j <= T; ++j) next[t + j] += power[t];
    }
    power = std::move(next);
    for (unsigned t = 0; t <= T; ++t) total += power[t] * h[t];
  }
  return total;
}

ChiSquareBound advantage_bound_via_chisq(std::size_t d, std::size_t m, double sigma, unsigned D,
                                         std::size_t samples, const RandomStream& rng) {
  if (m == 0 || m > d) throw std::invalid_argument("advantage_bound_via_chisq: need 1 <= m <= d");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("advantage_bound_via_chisq: sigma must be finite and nonnegative");
  }
  const auto unsupported = [&](const std::string& why) {
    return UnsupportedRegime("no chi-square oracle for (d=" + std::to_string(d) + ", m=" +
                             std::to_string(m) + ", sigma=" + format_double(sigma) + "): " + why);
  };
  ChiSquareBound out;
  double var = 0.0;
  for (unsigned k = 1; k <= D; ++k) {
    ChiSquareReport r;
    if (sigma == 0.0) {
      if (!sigma0_closed_form_applies(d, m, k)) {
        throw unsupported("noiseless closed form needs d >= 2k + m + 1 for k=" + std::to_string(k));
      }
      r = chisq_sigma0_closed(d, m, k);
    } else if (m == d) {
      r = chisq_m_eq_d_mc(d, k, sigma, samples, rng.child(k));
      out.monte_carlo = true;
      var += *r.std_error * *r.std_error;
    } else {
      throw unsupported("noisy chi-square is only available for m = d");
    }
    out.value += r.value - 1.0;
    out.terms.push_back(r);
  }
  out.std_error = std::sqrt(var);
  return out;
}

}  // namespace slrlab

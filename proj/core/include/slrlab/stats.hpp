#pragma once

#include "slrlab/random.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>

namespace slrlab {

/// A Monte Carlo estimate of an expectation.
struct MomentEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
  std::uint64_t master_seed = 0;

  /// |value - target| in units of std_error; 0 when both agree exactly.
  double z_score(double target) const {
    const double gap = std::abs(value - target);
    if (gap == 0.0) return 0.0;
    return std_error > 0.0 ? gap / std_error : INFINITY;
  }
  bool within(double target, double n_sigma) const { return z_score(target) <= n_sigma; }

  static MomentEstimate exact(double v, std::uint64_t seed = 0) { return {v, 0.0, 0, seed}; }
};

/// Streaming mean/variance (Welford), mergeable in a fixed order.
class RunningMoments {
 public:
  void add(double x) {
    ++count_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
  }
  void merge(const RunningMoments& other);

  std::size_t count() const noexcept { return count_; }
  double mean() const noexcept { return mean_; }
  /// Unbiased sample variance (0 for fewer than two samples).
  double variance() const noexcept {
    return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0;
  }
  double std_error() const noexcept {
    return count_ > 0 ? std::sqrt(variance() / static_cast<double>(count_)) : 0.0;
  }
  MomentEstimate estimate(std::uint64_t master_seed) const {
    return {mean(), std_error(), count(), master_seed};
  }

 private:
  std::size_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// Worker threads used by block-parallel estimators. Defaults to the
/// SLRLAB_THREADS environment variable, else hardware concurrency.
unsigned thread_count();
void set_thread_count(unsigned n);

/// Samples per block in block-parallel estimators. Fixed so that results
/// are identical for any thread count.
inline constexpr std::size_t kMonteCarloBlock = 1024;

/// Runs `body(block_index, begin, end, stream)` over [0, total) in blocks of
/// `block` items; block b receives `root.child(b)`. Blocks are distributed
/// over threads; callers must merge per-block results in block order.
void for_each_block(std::size_t total, std::size_t block, const RandomStream& root,
                    const std::function<void(std::size_t, std::size_t, std::size_t,
                                             RandomStream&)>& body);

/// Mean of `draw(stream)` over `samples` draws, block-parallel and
/// reproducible for a fixed root stream.
MomentEstimate monte_carlo_mean(std::size_t samples, const RandomStream& root,
                                const std::function<double(RandomStream&)>& draw);

}  // namespace slrlab

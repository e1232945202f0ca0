#pragma once

#include <cstdint>
#include <random>

namespace slrlab {

/// Identifies one reproducible random stream.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;
};

/// splitmix64 finalizer; bijective on 64-bit words.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Stream seed as a pure function of (master_seed, stream_index).
std::uint64_t derive_stream_seed(const SeedSpec& spec) noexcept;

/// A seeded pseudo-random stream (mt19937_64 behind a splitmix64 seed mixer).
///
/// Streams are cheap to create. Parallel work never shares a stream: each
/// block of work takes `child(block_index)`, which depends only on this
/// stream's seed and the index, so results do not depend on scheduling.
class RandomStream {
 public:
  explicit RandomStream(const SeedSpec& spec);
  RandomStream(std::uint64_t master_seed, std::uint64_t stream_index)
      : RandomStream(SeedSpec{master_seed, stream_index}) {}

  double normal() { return normal_(engine_); }
  /// Uniform on [0, 1).
  double uniform() { return std::generate_canonical<double, 64>(engine_); }
  /// Uniform integer on [0, bound); bound must be positive.
  std::uint64_t uniform_index(std::uint64_t bound);

  RandomStream child(std::uint64_t index) const;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t master_seed() const noexcept { return master_seed_; }

 private:
  RandomStream(std::uint64_t derived_seed, std::uint64_t master_seed, int);

  std::uint64_t seed_;
  std::uint64_t master_seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace slrlab

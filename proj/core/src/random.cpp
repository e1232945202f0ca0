#include "slrlab/random.hpp"

#include <stdexcept>

namespace slrlab {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_stream_seed(const SeedSpec& spec) noexcept {
  return mix64(mix64(spec.master_seed) ^ mix64(spec.stream_index + 0x632be59bd9b4e019ULL));
}

RandomStream::RandomStream(const SeedSpec& spec)
    : RandomStream(derive_stream_seed(spec), spec.master_seed, 0) {}

RandomStream::RandomStream(std::uint64_t derived_seed, std::uint64_t master_seed, int)
    : seed_(derived_seed), master_seed_(master_seed), engine_(derived_seed) {}

std::uint64_t RandomStream::uniform_index(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_index: bound must be positive");
  std::uniform_int_distribution<std::uint64_t> dist(0, bound - 1);
  return dist(engine_);
}

RandomStream RandomStream::child(std::uint64_t index) const {
  return RandomStream(derive_stream_seed(SeedSpec{seed_, index}), master_seed_, 0);
}

}  // namespace slrlab

#include "slrlab/multi_index.hpp"

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace slrlab {

MultiIndex MultiIndex::unit(std::size_t dimension, std::size_t axis, unsigned power) {
  if (axis >= dimension) throw std::invalid_argument("MultiIndex::unit: axis out of range");
  MultiIndex a(dimension);
  a.parts_[axis] = power;
  return a;
}

unsigned MultiIndex::weight() const noexcept {
  return std::accumulate(parts_.begin(), parts_.end(), 0u);
}

bool MultiIndex::all_even() const noexcept {
  for (unsigned p : parts_) {
    if (p % 2 != 0) return false;
  }
  return true;
}

double MultiIndex::log_factorial() const {
  double s = 0.0;
  for (unsigned p : parts_) s += slrlab::log_factorial(p);
  return s;
}

std::string MultiIndex::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(parts_[i]);
  }
  return s;
}

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
  if (a.dimension() != b.dimension()) {
    throw std::invalid_argument("MultiIndex addition: dimension mismatch");
  }
  MultiIndex out(a.dimension());
  for (std::size_t i = 0; i < a.dimension(); ++i) out[i] = a[i] + b[i];
  return out;
}

double log_factorial(unsigned n) { return std::lgamma(static_cast<double>(n) + 1.0); }

double multinomial(const MultiIndex& alpha) {
  const unsigned total = alpha.weight();
  if (total <= 20) {
    // Build |alpha|!/alpha! as a product of binomials; each step stays exact.
    std::uint64_t result = 1;
    unsigned running = 0;
    for (unsigned p : alpha.parts()) {
      for (unsigned i = 1; i <= p; ++i) {
        ++running;
        result = result * running / i;
      }
    }
    return static_cast<double>(result);
  }
  return std::exp(log_factorial(total) - alpha.log_factorial());
}

double binomial(unsigned long long n, unsigned long long k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (unsigned long long i = 1; i <= k; ++i) {
    r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return std::round(r);
}

double count_multiindices(std::size_t dimension, unsigned max_weight) {
  return binomial(dimension + max_weight, max_weight);
}

namespace {

void fill_weight(std::vector<unsigned>& parts, std::size_t pos, unsigned remaining,
                 std::vector<MultiIndex>& out) {
  if (pos + 1 == parts.size()) {
    parts[pos] = remaining;
    out.emplace_back(parts);
    return;
  }
  for (unsigned v = 0; v <= remaining; ++v) {
    parts[pos] = v;
    fill_weight(parts, pos + 1, remaining - v, out);
  }
}

}  // namespace

std::vector<MultiIndex> multiindices_of_weight(std::size_t dimension, unsigned weight) {
  if (dimension == 0) throw std::invalid_argument("multi-index dimension must be at least 1");
  std::vector<MultiIndex> out;
  std::vector<unsigned> parts(dimension, 0);
  fill_weight(parts, 0, weight, out);
  return out;
}

std::vector<MultiIndex> multiindex_enumerate(std::size_t dimension, unsigned max_weight) {
  if (dimension == 0) throw std::invalid_argument("multi-index dimension must be at least 1");
  std::vector<MultiIndex> out;
  out.reserve(static_cast<std::size_t>(count_multiindices(dimension, max_weight)));
  for (unsigned w = 0; w <= max_weight; ++w) {
    auto layer = multiindices_of_weight(dimension, w);
    out.insert(out.end(), std::make_move_iterator(layer.begin()),
               std::make_move_iterator(layer.end()));
  }
  return out;
}

}  // namespace slrlab

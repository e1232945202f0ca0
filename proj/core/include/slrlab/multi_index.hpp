#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace slrlab {

/// alpha in N^d. Ordered lexicographically by parts (for use as a map key);
/// graded order is imposed by multiindex_enumerate.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t dimension) : parts_(dimension, 0) {}
  MultiIndex(std::initializer_list<unsigned> parts) : parts_(parts) {}
  explicit MultiIndex(std::vector<unsigned> parts) : parts_(std::move(parts)) {}

  static MultiIndex unit(std::size_t dimension, std::size_t axis, unsigned power = 1);

  std::size_t dimension() const noexcept { return parts_.size(); }
  unsigned operator[](std::size_t i) const { return parts_[i]; }
  unsigned& operator[](std::size_t i) { return parts_[i]; }
  const std::vector<unsigned>& parts() const noexcept { return parts_; }

  /// |alpha|.
  unsigned weight() const noexcept;
  bool is_zero() const noexcept { return weight() == 0; }
  bool all_even() const noexcept;

  /// log(alpha!) = sum_i log(alpha_i!).
  double log_factorial() const;

  /// Space-separated parts, e.g. "2 0 1".
  std::string to_string() const;

  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<unsigned> parts_;
};

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);

/// log(n!).
double log_factorial(unsigned n);

/// binomial(|alpha|, alpha) = |alpha|! / alpha!, exact for |alpha| <= 20.
double multinomial(const MultiIndex& alpha);

/// binomial(n + k, k) as a double (exact while representable).
double binomial(unsigned long long n, unsigned long long k);

/// Number of alpha in N^dimension with |alpha| <= max_weight, i.e.
/// binomial(dimension + max_weight, max_weight).
double count_multiindices(std::size_t dimension, unsigned max_weight);

/// All alpha in N^dimension with |alpha| <= max_weight in graded
/// lexicographic order: by weight, then lexicographically by parts.
std::vector<MultiIndex> multiindex_enumerate(std::size_t dimension, unsigned max_weight);

/// All alpha with |alpha| == weight, lexicographic by parts.
std::vector<MultiIndex> multiindices_of_weight(std::size_t dimension, unsigned weight);

}  // namespace slrlab

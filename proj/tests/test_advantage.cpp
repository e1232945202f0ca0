#include <doctest.h>

#include "support.hpp"

#include "slrlab/advantage.hpp"
#include "slrlab/errors.hpp"

#include <functional>

using namespace slrlab;

namespace {

double factorial(unsigned n) { return std::tgamma(n + 1.0); }

// All alpha in N^d with 0 < |alpha| <= D.
std::vector<std::vector<unsigned>> nonzero_indices(std::size_t d, unsigned D) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur(d, 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
    if (i == d) {
      if (left < D) out.push_back(cur);
      return;
    }
    for (unsigned v = 0; v <= left; ++v) {
      cur[i] = v;
      rec(i + 1, left - v);
    }
    cur[i] = 0;
  };
  rec(0, D);
  return out;
}

double m_squared(const std::vector<unsigned>& alpha) {
  unsigned w = 0;
  double denom = 1.0;
  for (unsigned a : alpha) {
    w += a;
    denom *= factorial(a);
  }
  return factorial(w) / denom;
}

// The m = 1 noiseless bound by literal enumeration of ordered k-tuples.
double bound_m1_bruteforce(std::size_t d, unsigned D) {
  const auto singles = nonzero_indices(d, D);
  double total = 1.0;
  std::vector<unsigned> sum(d, 0);
  std::function<void(unsigned, unsigned, double)> rec = [&](unsigned depth, unsigned k, double weight) {
    if (depth == k) {
      const double e = testing::sphere_moment_ref(sum);
      total += weight * e * e;
      return;
    }
    for (const auto& a : singles) {
      for (std::size_t i = 0; i < d; ++i) sum[i] += a[i];
      rec(depth + 1, k, weight * m_squared(a));
      for (std::size_t i = 0; i < d; ++i) sum[i] -= a[i];
    }
  };
  for (unsigned k = 1; k <= D; ++k) rec(0, k, 1.0);
  return total;
}

// Exact Adv^2 at n = 1, m = 1, sigma = 0:
// sum over (alpha, beta) with |alpha| + beta <= D of (1{|alpha| = beta} sqrt(beta!/alpha!) E[q^alpha])^2.
double advantage_n1_m1_exact(std::size_t d, unsigned D) {
  double total = 1.0;
  for (const auto& alpha : nonzero_indices(d, D)) {
    unsigned w = 0;
    for (unsigned a : alpha) w += a;
    if (2 * w > D) continue;
    const double mean = std::sqrt(m_squared(alpha)) * testing::sphere_moment_ref(alpha);
    total += mean * mean;
  }
  return total;
}

double lw(double s, double t) {
  double acc = t * (t - 1) / 4 * std::log(M_PI) + s * t / 2 * std::log(2.0);
  for (int j = 1; j <= t; ++j) acc += std::lgamma((s - j + 1) / 2);
  return -acc;
}

}  // namespace

TEST_CASE("estimate_phi_mean_planted") {
  const ModelParams params{1, 2, 1, 0.0};
  const RandomStream rng(1, 0);
  const MomentEstimate empty = estimate_phi_mean_planted(PatternPair::zero(1, 2, 1), params, 10, rng);
  CHECK(empty.value == 1.0);
  CHECK(empty.std_error == 0.0);

  PatternPair odd = PatternPair::zero(1, 2, 1);
  odd.a[0] = MultiIndex{1, 0};
  CHECK(estimate_phi_mean_planted(odd, params, 100000, rng).within(0.0, 3.0));

  PatternPair sq = PatternPair::zero(1, 2, 1);
  sq.a[0] = MultiIndex{2, 0};
  sq.b[0] = MultiIndex{2};
  CHECK(estimate_phi_mean_planted(sq, params, 200000, rng).within(0.5, 3.0));

  CHECK_THROWS_AS(estimate_phi_mean_planted(PatternPair::zero(2, 2, 1), params, 10, rng), std::invalid_argument);
  CHECK_THROWS_AS(estimate_phi_mean_planted(odd, params, 1, rng), std::invalid_argument);
  CHECK_THROWS_AS(estimate_phi_mean_planted(PatternPair::zero(8, 2, 1), {8, 2, 1, 0.0}, 100, rng, true),
                  std::invalid_argument);
}

TEST_CASE("exact permutation averaging and row symmetry") {
  const ModelParams params{3, 2, 2, 0.3};
  const RandomStream rng(2, 0);
  PatternPair p = PatternPair::zero(3, 2, 2);
  p.a[0] = MultiIndex{1, 0};
  p.b[1] = MultiIndex{1, 0};
  PatternPair swapped = PatternPair::zero(3, 2, 2);
  swapped.a[2] = MultiIndex{1, 0};
  swapped.b[0] = MultiIndex{1, 0};

  const MomentEstimate plain = estimate_phi_mean_planted(p, params, 100000, rng);
  const MomentEstimate exact = estimate_phi_mean_planted(p, params, 100000, rng.child(1), true);
  const MomentEstimate other = estimate_phi_mean_planted(swapped, params, 100000, rng.child(2));
  // E[X_11 Y_21] = P(pi(2) = 1) E[Q_11] / sqrt(1 + sigma^2) = 0
  const auto agree = [](const MomentEstimate& a, const MomentEstimate& b) {
    return std::abs(a.value - b.value) <= 3.0 * std::hypot(a.std_error, b.std_error);
  };
  CHECK(agree(plain, exact));
  CHECK(agree(plain, other));
  CHECK(exact.std_error < plain.std_error);

  // a pattern with nonzero mean: E[X_11^2 ... ] coupling through |Q|
  PatternPair even = PatternPair::zero(3, 2, 2);
  even.a[0] = MultiIndex{2, 0};
  even.b[0] = MultiIndex{2, 0};
  PatternPair even_swapped = PatternPair::zero(3, 2, 2);
  even_swapped.a[1] = MultiIndex{2, 0};
  even_swapped.b[1] = MultiIndex{2, 0};
  const MomentEstimate e1 = estimate_phi_mean_planted(even, params, 200000, rng.child(3), true);
  const MomentEstimate e2 = estimate_phi_mean_planted(even_swapped, params, 200000, rng.child(4), true);
  CHECK(agree(e1, e2));
  CHECK(e1.value > 5.0 * e1.std_error);
}

TEST_CASE("estimate_advantage_sq at toy scale") {
  const ModelParams params{1, 2, 1, 0.0};
  const RandomStream rng(3, 0);

  const AdvantageEstimate d0 = estimate_advantage_sq(params, 0, 100, rng);
  CHECK(d0.value_sq == 1.0);
  CHECK(d0.pattern_count == 1);

  const AdvantageEstimate d3 = estimate_advantage_sq(params, 3, 200000, rng);
  CHECK(d3.pattern_count == 20);
  CHECK(std::abs(d3.value_sq - 1.0) <= 3.0 * d3.std_error);
  CHECK(d3.std_error > 0.0);

  std::vector<PatternContribution> rows;
  const AdvantageEstimate d4 = estimate_advantage_sq(params, 4, 200000, rng, {}, &rows);
  CHECK(d4.pattern_count == 35);
  CHECK(std::abs(d4.value_sq - 1.5) <= 3.0 * d4.std_error);
  CHECK(d4.value_sq >= d3.value_sq - 3.0 * d4.std_error);
  REQUIRE(rows.size() == 35);
  double sum = 0.0;
  for (const auto& r : rows) sum += r.squared_contribution;
  CHECK(sum == doctest::Approx(d4.value_sq).epsilon(1e-12));
  CHECK(rows[0].mean == 1.0);
  CHECK(rows.back().degree == 4);
}

TEST_CASE("estimate_advantage_sq matches exact enumeration for m = 1, sigma = 0") {
  for (std::size_t d : {1, 2, 3}) {
    for (unsigned D : {2u, 4u}) {
      const AdvantageEstimate est = estimate_advantage_sq({1, d, 1, 0.0}, D, 100000, RandomStream(4, d * 10 + D));
      const double exact = advantage_n1_m1_exact(d, D);
      CHECK(std::abs(est.value_sq - exact) <= 3.0 * est.std_error + 1e-12);
    }
  }
}

TEST_CASE("advantage pattern cap") {
  AdvantageOptions small;
  small.pattern_cap = 30;
  try {
    estimate_advantage_sq({1, 2, 1, 0.0}, 4, 100, RandomStream(5, 0), small);
    FAIL("expected a capacity error");
  } catch (const CapacityError& e) {
    CHECK(e.requested() == 35.0);
    CHECK(std::string(e.what()).find("35") != std::string::npos);
  }
  CHECK_THROWS_AS(estimate_advantage_sq({4, 10, 10, 0.0}, 5, 100, RandomStream(5, 0)), CapacityError);
}

TEST_CASE("advantage_bound_m1") {
  CHECK(advantage_bound_m1(2, 1) == 1.0);
  CHECK(advantage_bound_m1(5, 1) == 1.0);
  CHECK(advantage_bound_m1(3, 0) == 1.0);
  for (std::size_t d : {1, 2, 3}) {
    for (unsigned D = 1; D <= 3; ++D) {
      CHECK(advantage_bound_m1(d, D) == doctest::Approx(bound_m1_bruteforce(d, D)).epsilon(1e-12));
    }
  }
  CHECK(advantage_bound_m1(2, 4) == doctest::Approx(bound_m1_bruteforce(2, 4)).epsilon(1e-12));
  double prev = 1.0;
  for (unsigned D = 1; D <= 6; ++D) {
    const double v = advantage_bound_m1(4, D);
    CHECK(v >= prev);
    prev = v;
  }
  CHECK(std::isfinite(advantage_bound_m1(6, 8)));
  CHECK_THROWS_AS(advantage_bound_m1(10, 20), CapacityError);

  const AdvantageEstimate est = estimate_advantage_sq({1, 2, 1, 0.0}, 4, 100000, RandomStream(6, 0));
  CHECK(advantage_bound_m1(2, 4) >= est.value_sq - 3.0 * est.std_error);
}

TEST_CASE("advantage_bound_via_chisq") {
  const RandomStream rng(7, 0);
  const ChiSquareBound zero = advantage_bound_via_chisq(50, 2, 0.0, 0, 100, rng);
  CHECK(zero.value == 1.0);
  CHECK(zero.terms.empty());

  const ChiSquareBound b = advantage_bound_via_chisq(50, 2, 0.0, 2, 100, rng);
  REQUIRE(b.terms.size() == 2);
  CHECK(b.terms[0].value == doctest::Approx(24.0 / 23.0).epsilon(1e-12));
  const double chi2 = std::exp(lw(48, 2) + lw(47, 2) - lw(50, 2) - lw(45, 2));
  CHECK(b.terms[1].value == doctest::Approx(chi2).epsilon(1e-12));
  CHECK(b.value == doctest::Approx(1.0 + (24.0 / 23.0 - 1.0) + (chi2 - 1.0)).epsilon(1e-12));
  CHECK_FALSE(b.monte_carlo);

  const ChiSquareBound noisy = advantage_bound_via_chisq(40, 40, 10.0, 2, 20000, rng);
  CHECK(noisy.monte_carlo);
  CHECK(noisy.value >= 1.0);
  CHECK(noisy.value <= 1.2);

  CHECK_THROWS_AS(advantage_bound_via_chisq(50, 2, 0.5, 2, 100, rng), UnsupportedRegime);
  CHECK_THROWS_AS(advantage_bound_via_chisq(10, 2, 0.0, 4, 100, rng), UnsupportedRegime);
  CHECK_THROWS_AS(advantage_bound_via_chisq(10, 10, 0.0, 1, 100, rng), UnsupportedRegime);
}

TEST_CASE("the chi-square bound dominates the advantage estimate") {
  const ChiSquareBound b = advantage_bound_via_chisq(12, 1, 0.0, 4, 100, RandomStream(8, 0));
  for (std::size_t n : {1, 2}) {
    const AdvantageEstimate est = estimate_advantage_sq({n, 12, 1, 0.0}, 4, 20000, RandomStream(8, n));
    CHECK(b.value >= est.value_sq - 3.0 * est.std_error);
  }
}

#include <doctest.h>

#include "support.hpp"

#include "slrlab/randmat.hpp"
#include "slrlab/stats.hpp"

#include <algorithm>
#include <map>
#include <numbers>

using namespace slrlab;

TEST_CASE("gaussian_matrix") {
  RandomStream a(5, 0), b(5, 0);
  const Matrix x = gaussian_matrix(2, 3, a);
  CHECK(x.rows() == 2);
  CHECK(x.cols() == 3);
  CHECK(x == gaussian_matrix(2, 3, b));

  RandomStream rng(5, 1);
  const Matrix big = gaussian_matrix(1000, 1000, rng);
  const double mean = big.mean();
  const double var = (big.array() - mean).square().sum() / (big.size() - 1.0);
  CHECK(std::abs(mean) < 0.01);
  CHECK(std::abs(var - 1.0) < 0.01);

  CHECK_THROWS_AS(gaussian_matrix(0, 3, rng), std::invalid_argument);
  CHECK_THROWS_AS(gaussian_matrix(3, 0, rng), std::invalid_argument);
}

TEST_CASE("haar_orthogonal is orthogonal and sign-balanced in d = 1") {
  RandomStream rng(6, 0);
  int plus = 0;
  for (int i = 0; i < 10000; ++i) {
    const Matrix q = haar_orthogonal(1, rng);
    REQUIRE(std::abs(std::abs(q(0, 0)) - 1.0) < 1e-15);
    plus += q(0, 0) > 0;
  }
  CHECK(std::abs(plus / 10000.0 - 0.5) < 0.02);
  for (std::size_t d : {2, 5, 17, 64}) CHECK(orthogonality_error(haar_orthogonal(d, rng)) <= 1e-10);
  CHECK_THROWS_AS(haar_orthogonal(0, rng), std::invalid_argument);
}

// Q_11 of a Haar matrix in O(d) has density proportional to (1 - z^2)^{(d-3)/2}.
TEST_CASE("haar_orthogonal entry law matches its analytic density (KS)") {
  constexpr std::size_t d = 10, draws = 5000, grid = 100000;
  std::vector<double> cdf(grid + 1, 0.0);
  const double h = 2.0 / grid;
  auto f = [&](double z) { return std::pow(std::max(0.0, 1.0 - z * z), (d - 3.0) / 2.0); };
  for (std::size_t i = 1; i <= grid; ++i) {
    const double a = -1.0 + h * (i - 1.0), b = a + h;
    cdf[i] = cdf[i - 1] + h / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
  }
  for (auto& c : cdf) c /= cdf[grid];
  auto F = [&](double z) {
    const double pos = (z + 1.0) / h;
    const auto i = std::min<std::size_t>(static_cast<std::size_t>(pos), grid - 1);
    return cdf[i] + (pos - i) * (cdf[i + 1] - cdf[i]);
  };
  RandomStream rng(7, 0);
  std::vector<double> s(draws);
  for (auto& v : s) v = haar_orthogonal(d, rng)(0, 0);
  std::sort(s.begin(), s.end());
  double ks = 0.0;
  for (std::size_t i = 0; i < draws; ++i) {
    ks = std::max({ks, std::abs(F(s[i]) - double(i) / draws), std::abs(double(i + 1) / draws - F(s[i]))});
  }
  CHECK(ks < 0.03);
}

TEST_CASE("haar law is left-invariant (moments of tr and Q_11)") {
  constexpr std::size_t d = 4, draws = 10000;
  RandomStream setup(8, 0);
  const Matrix u = haar_orthogonal(d, setup);
  RunningMoments tr_q, tr_uq, tr2_q, tr2_uq, q11, uq11;
  RandomStream rng(8, 1);
  for (std::size_t i = 0; i < draws; ++i) {
    const Matrix q = haar_orthogonal(d, rng);
    const Matrix uq = u * q;
    tr_q.add(q.trace());
    tr_uq.add(uq.trace());
    tr2_q.add(q.trace() * q.trace());
    tr2_uq.add(uq.trace() * uq.trace());
    q11.add(q(0, 0) * q(0, 0));
    uq11.add(uq(0, 0) * uq(0, 0));
  }
  // E tr Q = 0, E (tr Q)^2 = 1, E Q_11^2 = 1/d for Haar on O(d).
  CHECK(tr_q.estimate(0).within(0.0, 3.0));
  CHECK(tr_uq.estimate(0).within(0.0, 3.0));
  CHECK(tr2_q.estimate(0).within(1.0, 3.0));
  CHECK(tr2_uq.estimate(0).within(1.0, 3.0));
  CHECK(q11.estimate(0).within(1.0 / d, 3.0));
  CHECK(uq11.estimate(0).within(1.0 / d, 3.0));
}

TEST_CASE("stiefel") {
  RandomStream a(9, 0), b(9, 0);
  CHECK(stiefel(6, 6, a).base() == haar_orthogonal(6, b));

  RandomStream rng(9, 1);
  for (std::size_t m : {1, 3, 7}) {
    const StiefelMatrix q = stiefel(7, m, rng);
    CHECK(q.d() == 7);
    CHECK(q.m() == static_cast<Eigen::Index>(m));
    CHECK(orthogonality_error(q.base()) <= 1e-10);
  }
  CHECK_THROWS_AS(stiefel(3, 4, rng), std::invalid_argument);

  RunningMoments q1;
  for (int i = 0; i < 100000; ++i) {
    const double v = stiefel(5, 1, rng).base()(0, 0);
    q1.add(v * v);
  }
  CHECK(q1.estimate(0).within(0.2, 3.0));
}

TEST_CASE("stiefel column prefixes have the smaller Stiefel law") {
  constexpr std::size_t d = 6, draws = 20000;
  RandomStream rng(10, 0);
  RunningMoments sq, cross, first;
  for (std::size_t i = 0; i < draws; ++i) {
    const Matrix q = stiefel(d, 4, rng).base().leftCols(2);
    CHECK(orthogonality_error(q) <= 1e-10);
    sq.add(q(0, 0) * q(0, 0));
    cross.add(q(0, 0) * q(0, 1));
    first.add(q(2, 1));
  }
  CHECK(sq.estimate(0).within(1.0 / d, 3.0));
  CHECK(cross.estimate(0).within(0.0, 3.0));
  CHECK(first.estimate(0).within(0.0, 3.0));
}

TEST_CASE("uniform_permutation") {
  RandomStream rng(11, 0);
  CHECK(uniform_permutation(1, rng) == Permutation::identity(1));
  std::map<std::vector<std::size_t>, int> counts;
  constexpr int draws = 60000;
  for (int i = 0; i < draws; ++i) counts[uniform_permutation(3, rng).mapping()]++;
  CHECK(counts.size() == 6);
  for (const auto& [perm, c] : counts) CHECK(std::abs(c / double(draws) - 1.0 / 6.0) < 0.01);
  const Permutation big = uniform_permutation(1000, rng);
  std::vector<std::size_t> sorted = big.mapping();
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) CHECK(sorted[i] == i);
  CHECK_THROWS_AS(uniform_permutation(0, rng), std::invalid_argument);
}

TEST_CASE("uniform_sphere") {
  RandomStream rng(12, 0);
  RunningMoments fourth, third;
  for (int i = 0; i < 100000; ++i) {
    const Matrix q = uniform_sphere(3, rng);
    REQUIRE(std::abs(q.norm() - 1.0) <= 1e-12);
    fourth.add(std::pow(q(0, 0), 4));
    third.add(std::pow(q(0, 0), 3));
  }
  CHECK(fourth.estimate(0).within(0.2, 3.0));
  CHECK(third.estimate(0).within(0.0, 3.0));
  CHECK_THROWS_AS(uniform_sphere(0, rng), std::invalid_argument);
}

TEST_CASE("uniform_sphere moments up to order 6 in d = 2, 3, 8") {
  std::size_t comparisons = 0, exceed = 0;
  RandomStream rng(13, 0);
  for (std::size_t d : {2, 3, 8}) {
    std::vector<std::vector<unsigned>> gammas;
    // all gamma with |gamma| <= 6 supported on the first three coordinates
    for (unsigned a = 0; a <= 6; ++a)
      for (unsigned b = 0; a + b <= 6; ++b)
        for (unsigned c = 0; a + b + c <= 6; ++c) {
          if (a + b + c == 0 || (d < 3 && c > 0)) continue;
          std::vector<unsigned> g(d, 0);
          g[0] = a;
          g[1] = b;
          if (d >= 3) g[2] = c;
          gammas.push_back(g);
        }
    std::vector<RunningMoments> acc(gammas.size());
    for (int i = 0; i < 100000; ++i) {
      const Matrix q = uniform_sphere(d, rng);
      for (std::size_t k = 0; k < gammas.size(); ++k) {
        double v = 1.0;
        for (std::size_t j = 0; j < d; ++j) v *= std::pow(q(j, 0), gammas[k][j]);
        acc[k].add(v);
      }
    }
    for (std::size_t k = 0; k < gammas.size(); ++k) {
      ++comparisons;
      exceed += acc[k].estimate(0).z_score(testing::sphere_moment_ref(gammas[k])) > 3.0;
    }
  }
  CHECK(exceed <= testing::allowed_exceedances(comparisons));
}

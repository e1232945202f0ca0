#include <doctest.h>

#include "slrlab/detect.hpp"
#include "slrlab/model.hpp"
#include "slrlab/randmat.hpp"
#include "slrlab/stats.hpp"

using namespace slrlab;

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS((ModelParams{0, 3, 2, 0.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ModelParams{1, 3, 4, 0.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ModelParams{1, 3, 0, 0.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ModelParams{1, 3, 2, -1.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ReducedParams{0, 3, 2, 0.0}.validate()), std::invalid_argument);
  CHECK_NOTHROW((ModelParams{1, 3, 3, 0.0}.validate()));
  CHECK(parse_hypothesis("planted") == Hypothesis::planted);
  CHECK(to_string(Hypothesis::null) == "null");
  CHECK_THROWS_AS(parse_hypothesis("maybe"), std::invalid_argument);
}

TEST_CASE("sample_null") {
  RandomStream rng(1, 0);
  const Instance inst = sample_null({5, 4, 3, 0.5}, rng);
  CHECK(inst.x.rows() == 5);
  CHECK(inst.x.cols() == 4);
  CHECK(inst.y.rows() == 5);
  CHECK(inst.y.cols() == 3);
  CHECK(inst.hypothesis == Hypothesis::null);
  CHECK_FALSE(inst.latent.has_value());

  const Instance big = sample_null({1000, 100, 100, 0.0}, rng);
  const double mean = big.y.mean();
  CHECK(std::abs((big.y.array() - mean).square().sum() / (big.y.size() - 1.0) - 1.0) < 0.01);

  // correlation of X_11 and Y_11 over independent draws
  double sxy = 0, sxx = 0, syy = 0;
  for (int i = 0; i < 100000; ++i) {
    const Instance one = sample_null({1, 1, 1, 0.0}, rng);
    sxy += one.x(0, 0) * one.y(0, 0);
    sxx += one.x(0, 0) * one.x(0, 0);
    syy += one.y(0, 0) * one.y(0, 0);
  }
  CHECK(std::abs(sxy / std::sqrt(sxx * syy)) < 0.01);
}

TEST_CASE("sample_planted") {
  RandomStream rng(2, 0);
  const Instance noiseless = sample_planted({50, 6, 6, 0.0}, rng);
  CHECK(std::abs(noiseless.y.squaredNorm() - noiseless.x.squaredNorm()) <=
        1e-9 * noiseless.x.squaredNorm());
  CHECK_FALSE(noiseless.latent.has_value());

  const Instance big = sample_planted({20000, 50, 50, 0.7}, rng);
  const double mean = big.y.mean();
  CHECK(std::abs((big.y.array() - mean).square().sum() / (big.y.size() - 1.0) - 1.0) < 0.01);

  const Instance kept = sample_planted({7, 5, 3, 0.4}, rng, true);
  REQUIRE(kept.latent.has_value());
  const Latent& l = *kept.latent;
  const Matrix y = (l.perm.apply_rows(kept.x) * l.q.base() + 0.4 * l.z) / std::sqrt(1.0 + 0.16);
  CHECK((y - kept.y).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((planted_response(kept.x, l.perm, l.q.base(), l.z, 0.4) - kept.y).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("sample_reduced") {
  RandomStream a(3, 0), b(3, 0);
  const Instance r = sample_reduced({1, 4, 2, 0.3}, Hypothesis::planted, a);
  const Instance p = sample_planted({1, 4, 2, 0.3}, b, true);
  CHECK(r.x == p.x);
  CHECK(r.y == p.y);

  RandomStream rng(3, 1);
  const Instance iso = sample_reduced({5, 4, 4, 0.0}, Hypothesis::planted, rng);
  for (Eigen::Index i = 0; i < 5; ++i) CHECK(std::abs(iso.y.row(i).norm() - iso.x.row(i).norm()) <= 1e-9);
  REQUIRE(iso.latent.has_value());
  CHECK(iso.latent->perm == Permutation::identity(5));

  const Instance null = sample_reduced({3, 4, 2, 0.0}, Hypothesis::null, rng);
  CHECK(null.hypothesis == Hypothesis::null);
  CHECK(null.y.rows() == 3);
  CHECK(null.y.cols() == 2);
  RunningMoments corr;
  for (int i = 0; i < 100000; ++i) {
    const Instance one = sample_reduced({1, 2, 1, 0.0}, Hypothesis::null, rng);
    corr.add(one.x(0, 0) * one.y(0, 0));
  }
  CHECK(corr.estimate(0).within(0.0, 3.0));
}

TEST_CASE("planted law is invariant under a fixed row permutation of X") {
  // T(X, Y) = sum_i |X_i|^2 |Y_i|^2 depends on the row alignment of X and Y.
  const ModelParams params{3, 2, 2, 0.0};
  const Permutation fixed({1, 2, 0});
  RandomStream rng(4, 0);
  RunningMoments diff;
  for (int i = 0; i < 50000; ++i) {
    const Instance inst = sample_planted(params, rng);
    const Matrix px = fixed.apply_rows(inst.x);
    double t = 0, tp = 0;
    for (Eigen::Index r = 0; r < 3; ++r) {
      t += inst.x.row(r).squaredNorm() * inst.y.row(r).squaredNorm();
      tp += px.row(r).squaredNorm() * inst.y.row(r).squaredNorm();
    }
    diff.add(t - tp);
  }
  CHECK(diff.estimate(0).within(0.0, 3.0));
}

TEST_CASE("large noise drives the norm-gap statistic to its null mean") {
  const ModelParams params{16, 4, 4, 100.0};
  RandomStream rng(5, 0);
  RunningMoments f;
  for (int i = 0; i < 20000; ++i) f.add(statistic_f(sample_planted(params, rng)));
  CHECK(std::abs(f.mean() / (16.0 * 4.0) - 4.0) < 0.05 * 4.0);
}

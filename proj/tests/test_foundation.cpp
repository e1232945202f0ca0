#include <doctest.h>

#include "slrlab/matrix.hpp"
#include "slrlab/multi_index.hpp"
#include "slrlab/random.hpp"
#include "slrlab/stats.hpp"

#include <filesystem>
#include <set>
#include <sstream>

using namespace slrlab;

TEST_CASE("stream seeds are a pure function of (master, index)") {
  CHECK(derive_stream_seed({7, 3}) == derive_stream_seed({7, 3}));
  CHECK(derive_stream_seed({7, 3}) != derive_stream_seed({7, 4}));
  CHECK(derive_stream_seed({7, 3}) != derive_stream_seed({8, 3}));
  RandomStream a(7, 3), b(7, 3);
  for (int i = 0; i < 100; ++i) CHECK(a.normal() == b.normal());
  CHECK(RandomStream(7, 3).child(5).seed() == RandomStream(7, 3).child(5).seed());
  CHECK(RandomStream(7, 3).child(5).seed() != RandomStream(7, 3).child(6).seed());
}

TEST_CASE("uniform draws stay in range") {
  RandomStream rng(1, 0);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    CHECK((u >= 0.0 && u < 1.0));
    CHECK(rng.uniform_index(7) < 7u);
  }
}

TEST_CASE("running moments merge matches a single pass") {
  RandomStream rng(3, 0);
  RunningMoments all, left, right;
  for (int i = 0; i < 1000; ++i) {
    const double x = rng.normal() * 3.0 + 1.0;
    all.add(x);
    (i < 400 ? left : right).add(x);
  }
  left.merge(right);
  CHECK(left.count() == all.count());
  CHECK(left.mean() == doctest::Approx(all.mean()).epsilon(1e-12));
  CHECK(left.variance() == doctest::Approx(all.variance()).epsilon(1e-12));
}

TEST_CASE("block Monte Carlo does not depend on the thread count") {
  const RandomStream root(11, 0);
  auto draw = [](RandomStream& s) { return s.normal() * s.normal(); };
  set_thread_count(1);
  const MomentEstimate one = monte_carlo_mean(5000, root, draw);
  set_thread_count(4);
  const MomentEstimate four = monte_carlo_mean(5000, root, draw);
  set_thread_count(0);
  CHECK(one.value == four.value);
  CHECK(one.std_error == four.std_error);
  CHECK(one.samples == 5000);
}

TEST_CASE("z scores") {
  const MomentEstimate e{1.0, 0.5, 10, 0};
  CHECK(e.z_score(2.0) == doctest::Approx(2.0));
  CHECK(e.within(2.0, 3.0));
  CHECK_FALSE(e.within(3.0, 3.0));
  CHECK(MomentEstimate::exact(1.0).z_score(1.0) == 0.0);
}

TEST_CASE("multi-index enumeration is graded lexicographic and complete") {
  const auto two = multiindex_enumerate(2, 1);
  REQUIRE(two.size() == 3);
  CHECK(two[0] == MultiIndex{0, 0});
  CHECK(two[1] == MultiIndex{0, 1});
  CHECK(two[2] == MultiIndex{1, 0});

  const auto one = multiindex_enumerate(1, 3);
  REQUIRE(one.size() == 4);
  for (unsigned i = 0; i < 4; ++i) CHECK(one[i] == MultiIndex{i});

  for (std::size_t d = 1; d <= 5; ++d) {
    for (unsigned w = 0; w <= 6; ++w) {
      const auto all = multiindex_enumerate(d, w);
      CHECK(static_cast<double>(all.size()) == count_multiindices(d, w));
      std::set<MultiIndex> unique(all.begin(), all.end());
      CHECK(unique.size() == all.size());
      for (std::size_t i = 1; i < all.size(); ++i) {
        const bool graded = all[i - 1].weight() < all[i].weight() ||
                            (all[i - 1].weight() == all[i].weight() && all[i - 1] < all[i]);
        CHECK(graded);
      }
    }
  }
}

TEST_CASE("multinomials and factorials") {
  CHECK(multinomial(MultiIndex{1, 1}) == 2.0);
  CHECK(multinomial(MultiIndex{2, 1, 1}) == 12.0);
  CHECK(multinomial(MultiIndex{}) == 1.0);
  CHECK(multinomial(MultiIndex{12, 13}) == doctest::Approx(5200300.0).epsilon(1e-12));
  CHECK(std::exp(log_factorial(5)) == doctest::Approx(120.0));
  CHECK(binomial(10, 3) == 120.0);
  CHECK(MultiIndex{2, 0, 4}.all_even());
  CHECK_FALSE(MultiIndex{2, 1}.all_even());
  CHECK(MultiIndex{2, 0, 1}.to_string() == "2 0 1");
  CHECK((MultiIndex{1, 2} + MultiIndex{3, 0}) == MultiIndex{4, 2});
}

TEST_CASE("permutation and Stiefel validation") {
  CHECK_THROWS_AS(Permutation({0, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation({0, 3}), std::invalid_argument);
  const Permutation p({2, 0, 1});
  Matrix m(3, 1);
  m << 10, 11, 12;
  const Matrix g = p.apply_rows(m);
  CHECK(g(0, 0) == 12);
  CHECK(g(1, 0) == 10);
  CHECK(g(2, 0) == 11);
  CHECK_THROWS_AS(StiefelMatrix(Matrix::Ones(2, 1)), std::invalid_argument);
  CHECK_NOTHROW(StiefelMatrix(Matrix::Identity(3, 2)));
}

TEST_CASE("matrix text round trip keeps every bit") {
  Matrix m(2, 3);
  m << 0.1, -1e-300, 3.0, 1.0 / 3.0, 12345678.912345678, -0.0;
  std::stringstream ss;
  write_matrix(ss, m);
  const std::string first_line = ss.str().substr(0, ss.str().find('\n'));
  CHECK(first_line == "2 3");
  const Matrix back = read_matrix(ss);
  CHECK(back.rows() == 2);
  CHECK(back.cols() == 3);
  for (Eigen::Index i = 0; i < m.size(); ++i) CHECK(back(i) == m(i));
  CHECK(format_double(0.1) == "0.10000000000000001");

  std::stringstream bad("2 2\n1 2\n3\n");
  CHECK_THROWS(read_matrix(bad));
}

TEST_CASE("metadata sidecar round trip") {
  const auto path = std::filesystem::temp_directory_path() / "slrlab_meta_test.meta";
  write_metadata_file(path, {{"seed", "7"}, {"sampler", "sample_null"}});
  const auto meta = read_metadata_file(path);
  CHECK(meta.at("seed") == "7");
  CHECK(meta.at("sampler") == "sample_null");
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_matrix_file("/nonexistent/dir/m.txt"), std::ios_base::failure);
}

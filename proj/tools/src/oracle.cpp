#include "oracle.hpp"

#include "slrlab/chisq.hpp"
#include "slrlab/gaussian_moments.hpp"
#include "slrlab/hermite.hpp"
#include "slrlab/matrix.hpp"
#include "slrlab/multi_index.hpp"
#include "slrlab/randmat.hpp"
#include "slrlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

namespace slrlab::cli {

namespace {

constexpr double kTwoSidedThreeSigma = 0.0026997960632601866;

std::string fmt(double v) { return format_double(v); }

// B.1: H_m(<x, y>) against its expansion in H_alpha(x).
OracleResult check_inner_product(std::uint64_t seed) {
  RandomStream rng(seed, 1);
  double worst = 0.0;
  for (std::size_t d : {2, 3}) {
    for (unsigned m = 1; m <= 5; ++m) {
      for (int rep = 0; rep < 100; ++rep) {
        const Matrix y = uniform_sphere(d, rng);
        const Matrix x = gaussian_matrix(d, 1, rng);
        const CoeffTable table = expand_inner_product(y.col(0), m);
        const double lhs = hermite_normalized(m, x.col(0).dot(y.col(0)));
        double rhs = 0.0, scale = std::abs(lhs);
        for (const auto& [alpha, c] : table) {
          const double term = c * hermite_multi(alpha, x.col(0));
          rhs += term;
          scale += std::abs(term);
        }
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(scale, 1e-300));
      }
    }
  }
  return {"inner-product", worst <= 1e-9, "max_rel_err=" + fmt(worst), "max_rel_err<=1e-9"};
}

// B.4: sphere moments for every |gamma| <= 6 against Monte Carlo.
OracleResult check_sphere(std::uint64_t seed) {
  constexpr std::size_t samples = 100000;
  constexpr unsigned max_weight = 6;
  MultiComparison mc;
  double exact_err = std::abs(sphere_moment(MultiIndex{4, 0, 0}, 3) - 0.2);
  std::uint64_t stream = 2;
  for (std::size_t d : {2, 3, 8}) {
    exact_err = std::max(exact_err, std::abs(sphere_moment(MultiIndex::unit(d, 0, 2), d) - 1.0 / static_cast<double>(d)));
    auto gammas = multiindex_enumerate(d, max_weight);
    gammas.erase(gammas.begin());  // gamma = 0 is exactly 1
    const std::size_t blocks = (samples + kMonteCarloBlock - 1) / kMonteCarloBlock;
    std::vector<std::vector<RunningMoments>> partial(blocks, std::vector<RunningMoments>(gammas.size()));
    for_each_block(samples, kMonteCarloBlock, RandomStream(seed, stream++),
                   [&](std::size_t b, std::size_t lo, std::size_t hi, RandomStream& s) {
                     std::vector<double> pw(d * (max_weight + 1));
                     for (std::size_t it = lo; it < hi; ++it) {
                       const Matrix q = uniform_sphere(d, s);
                       for (std::size_t i = 0; i < d; ++i) {
                         pw[i * (max_weight + 1)] = 1.0;
                         for (unsigned j = 1; j <= max_weight; ++j) {
                           pw[i * (max_weight + 1) + j] = pw[i * (max_weight + 1) + j - 1] * q(static_cast<Eigen::Index>(i), 0);
                         }
                       }
                       for (std::size_t g = 0; g < gammas.size(); ++g) {
                         double v = 1.0;
                         for (std::size_t i = 0; i < d; ++i) v *= pw[i * (max_weight + 1) + gammas[g][i]];
                         partial[b][g].add(v);
                       }
                     }
                   });
    for (std::size_t g = 0; g < gammas.size(); ++g) {
      RunningMoments total;
      for (const auto& p : partial) total.merge(p[g]);
      mc.add(total.estimate(seed).z_score(sphere_moment(gammas[g], d)));
    }
  }
  const bool ok = mc.passed() && exact_err <= 1e-12;
  return {"sphere", ok, mc.describe() + " exact_err=" + fmt(exact_err),
          "exceedances<=" + fmt(std::floor(mc.allowed())) + " exact_err<=1e-12"};
}

// Integral of the 1x1 submatrix density over [-1, 1] by composite Simpson.
double density_integral(std::size_t d, double lo, double hi, std::size_t intervals) {
  const double h = (hi - lo) / static_cast<double>(intervals);
  auto f = [&](double z) { return submatrix_density(Matrix::Constant(1, 1, z), d); };
  double acc = f(lo) + f(hi);
  for (std::size_t i = 1; i < intervals; ++i) {
    acc += (i % 2 ? 4.0 : 2.0) * f(lo + h * static_cast<double>(i));
  }
  return acc * h / 3.0;
}

// B.5: Q_11 of a Haar matrix against the 1x1 submatrix density.
OracleResult check_submatrix(std::uint64_t seed) {
  constexpr std::size_t d = 10, draws = 5000, grid = 20000;
  double norm_err = 0.0;
  for (std::size_t dd : {4, 10}) norm_err = std::max(norm_err, std::abs(density_integral(dd, -1.0, 1.0, 200000) - 1.0));

  // CDF on a uniform grid by cumulative Simpson over pairs of cells.
  std::vector<double> z(grid + 1), cdf(grid + 1, 0.0);
  const double h = 2.0 / grid;
  for (std::size_t i = 0; i <= grid; ++i) z[i] = -1.0 + h * static_cast<double>(i);
  auto f = [&](double t) { return submatrix_density(Matrix::Constant(1, 1, t), d); };
  for (std::size_t i = 1; i <= grid; ++i) {
    const double mid = 0.5 * (z[i - 1] + z[i]);
    cdf[i] = cdf[i - 1] + h / 6.0 * (f(z[i - 1]) + 4.0 * f(mid) + f(z[i]));
  }
  auto cdf_at = [&](double t) {
    if (t <= -1.0) return 0.0;
    if (t >= 1.0) return cdf[grid];
    const double pos = (t + 1.0) / h;
    const auto i = std::min<std::size_t>(static_cast<std::size_t>(pos), grid - 1);
    const double frac = pos - static_cast<double>(i);
    return cdf[i] + frac * (cdf[i + 1] - cdf[i]);
  };

  RandomStream rng(seed, 10);
  std::vector<double> sample(draws);
  for (auto& v : sample) v = haar_orthogonal(d, rng)(0, 0);
  std::sort(sample.begin(), sample.end());
  double ks = 0.0;
  for (std::size_t i = 0; i < draws; ++i) {
    const double c = cdf_at(sample[i]);
    ks = std::max({ks, std::abs(c - static_cast<double>(i) / draws), std::abs(static_cast<double>(i + 1) / draws - c)});
  }
  const double half = submatrix_density(Matrix::Zero(1, 1), 3);
  const bool ok = ks < 0.03 && norm_err < 1e-6 && std::abs(half - 0.5) < 1e-12;
  return {"submatrix", ok, "ks=" + fmt(ks) + " norm_err=" + fmt(norm_err) + " density_d3_at0=" + fmt(half),
          "ks<0.03 norm_err<1e-6 density_d3_at0=0.5"};
}

// B.6: exponential moment of a Gaussian matrix.
OracleResult check_exp_moment(std::uint64_t seed) {
  constexpr std::size_t samples = 1000000;
  constexpr double lambda = 0.3;
  RandomStream setup(seed, 20);
  const Matrix a = 0.5 * gaussian_matrix(2, 2, setup);
  const MomentEstimate est = monte_carlo_mean(samples, RandomStream(seed, 21), [&](RandomStream& s) {
    const Matrix z = gaussian_matrix(2, 2, s);
    return std::exp(-lambda * z.squaredNorm() + (a.array() * z.array()).sum());
  });
  const double target = gaussian_exp_moment(lambda, a);
  const double exact_err = std::abs(gaussian_exp_moment(0.5, Matrix::Zero(1, 1)) - 1.0 / std::sqrt(2.0));
  const bool ok = est.within(target, 3.0) && exact_err < 1e-15;
  return {"exp-moment", ok,
          "closed=" + fmt(target) + " mc=" + fmt(est.value) + " stderr=" + fmt(est.std_error) +
              " z=" + fmt(est.z_score(target)),
          "z<=3"};
}

// B.7: quadratic-form moment.
OracleResult check_quadform(std::uint64_t seed) {
  constexpr std::size_t samples = 1000000, d = 3, k = 2;
  RandomStream setup(seed, 30);
  const Matrix b = gaussian_matrix(d, d, setup);
  const Matrix a = b * b.transpose() / static_cast<double>(d);
  const MomentEstimate est = monte_carlo_mean(samples, RandomStream(seed, 31), [&](RandomStream& s) {
    const Matrix z = gaussian_matrix(d, k, s);
    return std::exp(-(z.transpose() * a * z).trace());
  });
  const double target = gaussian_quadform_moment(a, k);
  const double exact_err = std::abs(gaussian_quadform_moment(Matrix::Identity(2, 2), 2) - 1.0 / 9.0);
  const bool ok = est.within(target, 3.0) && exact_err < 1e-15;
  return {"quadform", ok,
          "closed=" + fmt(target) + " mc=" + fmt(est.value) + " stderr=" + fmt(est.std_error) +
              " z=" + fmt(est.z_score(target)),
          "z<=3"};
}

// B.8: E[det(I + eps Q)^k] over Haar Q is 1 + O(eps k). For k = 2 the exact
// value is sum_{a=0}^{d} eps^{2a}, which gives a sharper second check.
OracleResult check_det_integral(std::uint64_t seed) {
  constexpr std::size_t d = 50, samples = 100000;
  constexpr double eps = 0.1;
  constexpr int k = 2;
  const MomentEstimate est = det_integral_mc(d, eps, k, samples, RandomStream(seed, 40));
  double exact = 0.0;
  for (std::size_t a = 0; a <= d; ++a) exact += std::pow(eps, 2.0 * static_cast<double>(a));
  const double gap = std::abs(est.value - 1.0);
  const bool ok = gap <= 2.0 * eps * k && est.within(exact, 3.0);
  return {"det-integral", ok,
          "mc=" + fmt(est.value) + " stderr=" + fmt(est.std_error) + " |mc-1|=" + fmt(gap) +
              " z_exact=" + fmt(est.z_score(exact)),
          "|mc-1|<=" + fmt(2.0 * eps * k) + " z_exact<=3"};
}

using CheckFn = std::function<OracleResult(std::uint64_t)>;

const std::vector<std::pair<std::string, CheckFn>>& registry() {
  static const std::vector<std::pair<std::string, CheckFn>> checks = {
      {"inner-product", check_inner_product},
      {"sphere", check_sphere},
      {"submatrix", check_submatrix},
      {"exp-moment", check_exp_moment},
      {"quadform", check_quadform},
      {"det-integral", check_det_integral},
      {"orthonormality", [](std::uint64_t s) { return check_orthonormality(s, 1000000); }},
  };
  return checks;
}

}  // namespace

// Orthonormality of the phi basis: Gram matrix of every pattern with total
// degree <= 4 at n = 2, d = m = 2 under the null.
OracleResult check_orthonormality(std::uint64_t seed, std::size_t samples) {
  constexpr std::size_t n = 2, d = 2, m = 2;
  constexpr unsigned D = 4;
  const auto flats = multiindex_enumerate(n * (d + m), D);
  std::vector<SparsePattern> patterns;
  for (const auto& f : flats) patterns.emplace_back(PatternPair::from_flat(f, n, d, m));
  const auto P = static_cast<Eigen::Index>(patterns.size());

  constexpr std::size_t block = 1 << 16;
  const std::size_t blocks = (samples + block - 1) / block;
  std::vector<Matrix> first(blocks), second(blocks);
  for_each_block(samples, block, RandomStream(seed, 50),
                 [&](std::size_t b, std::size_t lo, std::size_t hi, RandomStream& s) {
                   HermiteCache cache(n, d, m, D);
                   constexpr std::size_t chunk = 4096;
                   Matrix g1 = Matrix::Zero(P, P), g2 = Matrix::Zero(P, P);
                   Matrix phi(static_cast<Eigen::Index>(chunk), P);
                   for (std::size_t start = lo; start < hi; start += chunk) {
                     const auto rows = static_cast<Eigen::Index>(std::min(chunk, hi - start));
                     for (Eigen::Index r = 0; r < rows; ++r) {
                       const Matrix x = gaussian_matrix(n, d, s);
                       const Matrix y = gaussian_matrix(n, m, s);
                       cache.load(x, y);
                       for (Eigen::Index p = 0; p < P; ++p) {
                         phi(r, p) = cache.evaluate(patterns[static_cast<std::size_t>(p)]);
                       }
                     }
                     const auto top = phi.topRows(rows);
                     g1.selfadjointView<Eigen::Upper>().rankUpdate(top.transpose());
                     g2.selfadjointView<Eigen::Upper>().rankUpdate(top.array().square().matrix().transpose());
                   }
                   first[b] = std::move(g1);
                   second[b] = std::move(g2);
                 });
  Matrix s1 = Matrix::Zero(P, P), s2 = Matrix::Zero(P, P);
  for (std::size_t b = 0; b < blocks; ++b) {
    s1 += first[b];
    s2 += second[b];
  }
  const double N = static_cast<double>(samples);
  MultiComparison mc;
  for (Eigen::Index p = 0; p < P; ++p) {
    for (Eigen::Index q = p; q < P; ++q) {
      const double mean = s1(p, q) / N;
      const double var = std::max(0.0, (s2(p, q) - N * mean * mean) / (N - 1.0));
      const MomentEstimate e{mean, std::sqrt(var / N), samples, seed};
      mc.add(e.z_score(p == q ? 1.0 : 0.0));
    }
  }
  return {"orthonormality", mc.passed(), mc.describe() + " patterns=" + std::to_string(P),
          "exceedances<=" + fmt(std::floor(mc.allowed()))};
}

void MultiComparison::add(double z) {
  ++comparisons;
  if (z > 3.0) ++exceedances;
  max_abs_z = std::max(max_abs_z, z);
}

double MultiComparison::allowed() const {
  const double n = static_cast<double>(comparisons);
  const double p = kTwoSidedThreeSigma;
  return n * p + 3.0 * std::sqrt(n * p * (1.0 - p));
}

std::string MultiComparison::describe() const {
  return "comparisons=" + std::to_string(comparisons) + " exceed_3sigma=" + std::to_string(exceedances) +
         " max_abs_z=" + fmt(max_abs_z);
}

const std::vector<std::string>& oracle_check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : registry()) v.push_back(name);
    return v;
  }();
  return names;
}

std::vector<OracleResult> run_oracle(const std::string& name, std::uint64_t seed) {
  std::vector<OracleResult> out;
  for (const auto& [check, fn] : registry()) {
    if (name == "all" || name == check) out.push_back(fn(seed));
  }
  if (out.empty()) throw std::invalid_argument("unknown oracle check '" + name + "'");
  return out;
}

}  // namespace slrlab::cli

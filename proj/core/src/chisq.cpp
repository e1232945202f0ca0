#include "slrlab/chisq.hpp"

#include "slrlab/errors.hpp"
#include "slrlab/randmat.hpp"
#include "slrlab/wishart.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace slrlab {

namespace {

using ll = long long;

std::string dmk(std::size_t d, std::size_t m, std::size_t k) {
  return "(d=" + std::to_string(d) + ", m=" + std::to_string(m) + ", k=" + std::to_string(k) + ")";
}

double lw(ll s, ll t) { return log_wishart_constant(s, t); }

void require_sigma0_regime(std::size_t d, std::size_t m, std::size_t k) {
  if (!sigma0_closed_form_applies(d, m, k)) {
    throw UnsupportedRegime("noiseless chi-square closed form needs d >= 2k + m + 1, got " +
                            dmk(d, m, k));
  }
}

ChiSquareReport closed_report(ChiSquareRegime regime, std::size_t d, std::size_t m, std::size_t k,
                              double log_value) {
  ChiSquareReport r;
  r.regime = regime;
  r.method = ChiSquareMethod::closed_form;
  r.value = std::exp(log_value);
  r.d = d;
  r.m = m;
  r.k = k;
  return r;
}

// Lower Cholesky factor of a symmetric positive definite matrix.
Eigen::LLT<Matrix> spd_factor(const Matrix& a, const char* who) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw std::invalid_argument(std::string(who) + ": A must be square and nonempty");
  }
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw std::invalid_argument(std::string(who) + ": A is not symmetric");
  }
  Eigen::LLT<Matrix> llt(a);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument(std::string(who) + ": A is not positive definite");
  }
  return llt;
}

// log det(I - G) for symmetric G, or -inf when the largest eigenvalue of G
// exceeds 1 + 1e-12 (outside the support). Eigenvalues in (1, 1 + 1e-12] sit on
// the boundary and give -inf as well.
double log_det_one_minus(const Matrix& g, bool& inside) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(g, Eigen::EigenvaluesOnly);
  const auto& ev = eig.eigenvalues();
  inside = ev.maxCoeff() <= 1.0 + 1e-12;
  if (!inside) return -std::numeric_limits<double>::infinity();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const double r = 1.0 - ev(i);
    if (r <= 0.0) return -std::numeric_limits<double>::infinity();
    acc += std::log(r);
  }
  return acc;
}

// exponent * log_det, treating 0 * (-inf) as 0.
double scaled_log(double exponent, double log_det) {
  return exponent == 0.0 ? 0.0 : exponent * log_det;
}

}  // namespace

std::string_view to_string(ChiSquareRegime r) {
  switch (r) {
    case ChiSquareRegime::case1_sigma0: return "case1_sigma0";
    case ChiSquareRegime::case2_sigma0: return "case2_sigma0";
    case ChiSquareRegime::m_eq_d: return "m_eq_d";
  }
  return "unknown";
}

std::string_view to_string(ChiSquareMethod m) {
  return m == ChiSquareMethod::closed_form ? "closed_form" : "monte_carlo";
}

std::string chisq_csv_header() { return "regime,d,m,k,sigma,method,value,stderr,samples,warning"; }

std::string to_csv_row(const ChiSquareReport& r) {
  std::string s;
  s += to_string(r.regime);
  s += ',' + std::to_string(r.d) + ',' + std::to_string(r.m) + ',' + std::to_string(r.k) + ',';
  s += format_double(r.sigma) + ',';
  s += to_string(r.method);
  s += ',' + format_double(r.value) + ',';
  if (r.std_error) s += format_double(*r.std_error);
  s += ',' + std::to_string(r.samples) + ',' + (r.warning ? "1" : "0");
  return s;
}

bool sigma0_closed_form_applies(std::size_t d, std::size_t m, std::size_t k) {
  return m >= 1 && k >= 1 && d >= 2 * k + m + 1;
}

ChiSquareReport chisq_case1_closed(std::size_t d, std::size_t m, std::size_t k) {
  if (k > m) throw UnsupportedRegime("case 1 closed form needs k <= m, got " + dmk(d, m, k));
  require_sigma0_regime(d, m, k);
  const ll D = static_cast<ll>(d), M = static_cast<ll>(m), K = static_cast<ll>(k);
  const double v = lw(D - M, K) + lw(D - K - 1, K) - lw(D, K) - lw(D - K - 1 - M, K);
  return closed_report(ChiSquareRegime::case1_sigma0, d, m, k, v);
}

ChiSquareReport chisq_case2_closed(std::size_t d, std::size_t m, std::size_t k) {
  if (m > k) throw UnsupportedRegime("case 2 closed form needs m <= k, got " + dmk(d, m, k));
  require_sigma0_regime(d, m, k);
  const ll D = static_cast<ll>(d), M = static_cast<ll>(m), K = static_cast<ll>(k);
  const double v = 2.0 * (lw(D - K, M) - lw(D, M)) + lw(D, K) - lw(D - M, K) +
                   lw(D - K - 1, M) - lw(D - 2 * K - 1, M);
  return closed_report(ChiSquareRegime::case2_sigma0, d, m, k, v);
}

ChiSquareReport chisq_sigma0_closed(std::size_t d, std::size_t m, std::size_t k) {
  return k <= m ? chisq_case1_closed(d, m, k) : chisq_case2_closed(d, m, k);
}

double log_likelihood_ratio_case1(const Matrix& a, const Matrix& y, std::size_t d) {
  const auto llt = spd_factor(a, "likelihood_ratio_case1");
  const Eigen::Index k = a.rows();
  const Eigen::Index m = y.cols();
  if (y.rows() != k || m == 0) {
    throw std::invalid_argument("likelihood_ratio_case1: Y must have k rows and m >= 1 columns");
  }
  const ll D = static_cast<ll>(d), K = static_cast<ll>(k), M = static_cast<ll>(m);
  if (D < K + M) {
    throw std::invalid_argument("likelihood_ratio_case1: need d >= k + m, got " +
                                dmk(d, static_cast<std::size_t>(m), static_cast<std::size_t>(k)));
  }
  const Matrix w = llt.matrixL().solve(y);  // W^T W = Y^T A^{-1} Y
  const Matrix g = k <= m ? Matrix(w * w.transpose()) : Matrix(w.transpose() * w);
  bool inside = false;
  const double ld = log_det_one_minus(g, inside);
  if (!inside) return -std::numeric_limits<double>::infinity();
  double log_det_a = 0.0;
  for (Eigen::Index i = 0; i < k; ++i) log_det_a += 2.0 * std::log(llt.matrixL()(i, i));
  const double exponent = static_cast<double>(D - K - M - 1) / 2.0;
  return lw(D - M, K) - lw(D, K) + 0.5 * y.squaredNorm() + scaled_log(exponent, ld) -
         0.5 * static_cast<double>(M) * log_det_a;
}

double likelihood_ratio_case1(const Matrix& a, const Matrix& y, std::size_t d) {
  return std::exp(log_likelihood_ratio_case1(a, y, d));
}

ChiSquareReport chisq_sigma0_mc(std::size_t d, std::size_t m, std::size_t k, std::size_t samples,
                                const RandomStream& rng) {
  if (samples == 0) throw std::invalid_argument("chisq_sigma0_mc: samples must be at least 1");
  if (m == 0 || k == 0 || d < k + m) {
    throw UnsupportedRegime("noiseless likelihood ratio needs d >= k + m, got " + dmk(d, m, k));
  }
  const MomentEstimate est = monte_carlo_mean(samples, rng, [&](RandomStream& s) {
    const Matrix x = gaussian_matrix(k, d, s);
    const Matrix y = gaussian_matrix(k, m, s);
    const Matrix a = x * x.transpose();
    return std::exp(2.0 * log_likelihood_ratio_case1(a, y, d));
  });
  ChiSquareReport r;
  r.regime = k <= m ? ChiSquareRegime::case1_sigma0 : ChiSquareRegime::case2_sigma0;
  r.method = ChiSquareMethod::monte_carlo;
  r.value = est.value;
  r.std_error = est.std_error;
  r.d = d;
  r.m = m;
  r.k = k;
  r.samples = samples;
  return r;
}

ChiSquareReport chisq_case1_mc(std::size_t d, std::size_t m, std::size_t k, std::size_t samples,
                               const RandomStream& rng) {
  if (k > m) throw UnsupportedRegime("case 1 needs k <= m, got " + dmk(d, m, k));
  return chisq_sigma0_mc(d, m, k, samples, rng);
}

ChiSquareReport chisq_m_eq_d_mc(std::size_t d, std::size_t k, double sigma, std::size_t samples,
                                const RandomStream& rng) {
  if (d == 0) throw std::invalid_argument("chisq_m_eq_d_mc: d must be at least 1");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("chisq_m_eq_d_mc: sigma must be finite and nonnegative");
  }
  if (sigma == 0.0) {
    throw UnsupportedRegime("m = d chi-square needs sigma > 0 (the integrand is unbounded at sigma = 0)");
  }
  ChiSquareReport r;
  r.regime = ChiSquareRegime::m_eq_d;
  r.method = ChiSquareMethod::monte_carlo;
  r.d = d;
  r.m = d;
  r.k = k;
  r.sigma = sigma;
  r.warning = sigma < 1.0;
  if (k == 0) {
    r.value = 1.0;
    r.std_error = 0.0;
    return r;
  }
  if (samples == 0) throw std::invalid_argument("chisq_m_eq_d_mc: samples must be at least 1");
  const double eps = 1.0 / (1.0 + sigma * sigma);
  const MomentEstimate est = det_integral_mc(d, -eps, -static_cast<int>(k), samples, rng);
  r.value = est.value;
  r.std_error = est.std_error;
  r.samples = samples;
  return r;
}

double log_sphere_moment(const MultiIndex& gamma, std::size_t d) {
  if (gamma.dimension() != d || d == 0) {
    throw std::invalid_argument("sphere_moment: gamma must have dimension d >= 1");
  }
  const double w = static_cast<double>(gamma.weight());
  double acc = std::lgamma(static_cast<double>(d) / 2.0) -
               std::lgamma((static_cast<double>(d) + w) / 2.0) - w / 2.0 * std::numbers::ln2;
  for (std::size_t i = 0; i < d; ++i) {
    const unsigned g = gamma[i];
    if (g == 0) continue;
    // log (g - 1)!! for even g: log g! - (g/2) log 2 - log (g/2)!
    acc += log_factorial(g) - (g / 2.0) * std::numbers::ln2 - log_factorial(g / 2);
  }
  return acc;
}

double sphere_moment(const MultiIndex& gamma, std::size_t d) {
  if (gamma.dimension() != d || d == 0) {
    throw std::invalid_argument("sphere_moment: gamma must have dimension d >= 1");
  }
  if (!gamma.all_even()) return 0.0;
  return std::exp(log_sphere_moment(gamma, d));
}

MomentEstimate det_integral_mc(std::size_t d, double eps, int k, std::size_t samples,
                               const RandomStream& rng) {
  if (!(std::abs(eps) < 1.0)) throw std::invalid_argument("det_integral_mc: need |eps| < 1");
  if (d == 0) throw std::invalid_argument("det_integral_mc: d must be at least 1");
  if (eps == 0.0 || k == 0) return MomentEstimate::exact(1.0, rng.master_seed());
  if (samples == 0) throw std::invalid_argument("det_integral_mc: samples must be at least 1");
  const Matrix identity = Matrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  return monte_carlo_mean(samples, rng, [&](RandomStream& s) {
    const Matrix q = haar_orthogonal(d, s);
    // det(I + eps Q) > 0 for |eps| < 1: eigenvalues of Q lie on the unit circle.
    const Eigen::PartialPivLU<Matrix> lu(identity + eps * q);
    const Matrix& u = lu.matrixLU();
    double logdet = 0.0;
    for (Eigen::Index i = 0; i < u.rows(); ++i) logdet += std::log(std::abs(u(i, i)));
    return std::exp(static_cast<double>(k) * logdet);
  });
}

double submatrix_density(const Matrix& z, std::size_t d) {
  if (z.size() == 0) throw std::invalid_argument("submatrix_density: Z must be nonempty");
  const Matrix zz = z.rows() >= z.cols() ? z : Matrix(z.transpose());
  const ll p = zz.rows(), q = zz.cols(), D = static_cast<ll>(d);
  if (p + q > D) {
    throw UnsupportedRegime("submatrix density needs p + q <= d, got p=" + std::to_string(p) +
                            ", q=" + std::to_string(q) + ", d=" + std::to_string(d));
  }
  bool inside = false;
  const double ld = log_det_one_minus(zz.transpose() * zz, inside);
  if (!inside) return 0.0;
  const double exponent = static_cast<double>(D - p - q - 1) / 2.0;
  return std::exp(lw(D - p, q) - lw(D, q) -
                  static_cast<double>(p * q) / 2.0 * std::log(2.0 * std::numbers::pi) +
                  scaled_log(exponent, ld));
}

}  // namespace slrlab

#pragma once

#include "slrlab/matrix.hpp"
#include "slrlab/multi_index.hpp"
#include "slrlab/random.hpp"
#include "slrlab/stats.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace slrlab {

enum class ChiSquareRegime { case1_sigma0, case2_sigma0, m_eq_d };
enum class ChiSquareMethod { closed_form, monte_carlo };

std::string_view to_string(ChiSquareRegime r);
std::string_view to_string(ChiSquareMethod m);

/// chi^2(P_k || Q_k) for the k-row reduced models.
struct ChiSquareReport {
  ChiSquareRegime regime = ChiSquareRegime::case1_sigma0;
  ChiSquareMethod method = ChiSquareMethod::closed_form;
  double value = 1.0;
  std::optional<double> std_error;  // present iff method == monte_carlo
  std::size_t d = 0;
  std::size_t m = 0;
  std::size_t k = 0;
  double sigma = 0.0;
  std::size_t samples = 0;
  bool warning = false;
};

/// "regime,d,m,k,sigma,method,value,stderr,samples,warning"
std::string chisq_csv_header();
std::string to_csv_row(const ChiSquareReport& r);

/// Whether the noiseless closed form applies: 1 <= m, k and d >= 2k + m + 1.
bool sigma0_closed_form_applies(std::size_t d, std::size_t m, std::size_t k);

/// Noiseless chi-square for k <= m:
///   omega(d-m, k) omega(d-k-1, k) / (omega(d, k) omega(d-k-1-m, k)).
/// Throws UnsupportedRegime when k > m or d < 2k + m + 1.
ChiSquareReport chisq_case1_closed(std::size_t d, std::size_t m, std::size_t k);

/// Noiseless chi-square for m <= k:
///   [omega(d-k, m)/omega(d, m)]^2 [omega(d, k)/omega(d-m, k)]
///   [omega(d-k-1, m)/omega(d-2k-1, m)].
/// Throws UnsupportedRegime when m > k or d < 2k + m + 1.
ChiSquareReport chisq_case2_closed(std::size_t d, std::size_t m, std::size_t k);

/// Case 1 for k <= m, Case 2 otherwise.
ChiSquareReport chisq_sigma0_closed(std::size_t d, std::size_t m, std::size_t k);

/// Noiseless likelihood ratio dP_k/dQ_k as a function of A = X X^T (k x k)
/// and Y (k x m):
///   omega(d-m,k)/omega(d,k) exp(tr(Y^T Y)/2) det(I_m - Y^T A^{-1} Y)^{(d-k-m-1)/2}
///   det(A)^{-m/2} zeta,
/// zeta = 1 iff every eigenvalue of Y^T A^{-1} Y is at most 1 + 1e-12.
/// The log version returns -inf where zeta = 0. Throws std::invalid_argument
/// unless A is symmetric positive definite.
double log_likelihood_ratio_case1(const Matrix& a, const Matrix& y, std::size_t d);
double likelihood_ratio_case1(const Matrix& a, const Matrix& y, std::size_t d);

/// Monte Carlo E_Q[L^2] with A = X X^T, X ~ N(0, I) k x d and Y ~ N(0, I) k x m.
/// Requires k <= m.
ChiSquareReport chisq_case1_mc(std::size_t d, std::size_t m, std::size_t k, std::size_t samples,
                               const RandomStream& rng);

/// As chisq_case1_mc, for any k with d >= k + m (regime tag by k <= m).
ChiSquareReport chisq_sigma0_mc(std::size_t d, std::size_t m, std::size_t k, std::size_t samples,
                                const RandomStream& rng);

/// Monte Carlo E_{Q ~ Haar(O(d))}[det(I_d - Q/(1+sigma^2))^{-k}] for m = d.
/// sigma = 0 throws UnsupportedRegime; sigma < 1 sets the heavy-tail warning.
ChiSquareReport chisq_m_eq_d_mc(std::size_t d, std::size_t k, double sigma, std::size_t samples,
                                const RandomStream& rng);

/// E[q^gamma] for q uniform on the unit sphere in R^d:
///   Gamma(d/2) prod (gamma_i - 1)!! / (Gamma((d + |gamma|)/2) 2^{|gamma|/2}),
/// and 0 if any part is odd.
double sphere_moment(const MultiIndex& gamma, std::size_t d);
double log_sphere_moment(const MultiIndex& gamma, std::size_t d);  // gamma all even

/// Monte Carlo E_{Q ~ Haar(O(d))}[det(I + eps Q)^k] via log-determinants.
/// Negative k is allowed. Throws std::invalid_argument unless |eps| < 1.
MomentEstimate det_integral_mc(std::size_t d, double eps, int k, std::size_t samples,
                               const RandomStream& rng);

/// Density of the top-left p x q block of a Haar orthogonal d x d matrix:
///   omega(d-p, q) / (omega(d, q) (2 pi)^{pq/2}) det(I_q - Z^T Z)^{(d-p-q-1)/2}
/// when every eigenvalue of Z^T Z lies in [0, 1], else 0. Uses Z^T when p < q.
/// Throws UnsupportedRegime if p + q > d.
double submatrix_density(const Matrix& z, std::size_t d);

}  // namespace slrlab

#pragma once

#include "slrlab/matrix.hpp"
#include "slrlab/model.hpp"
#include "slrlab/multi_index.hpp"
#include "slrlab/random.hpp"
#include "slrlab/stats.hpp"

#include <iosfwd>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace slrlab {

/// Normalized (probabilists') Hermite polynomial H_n(z)/sqrt(n!), evaluated
/// with the normalized three-term recurrence so that large degrees do not
/// overflow.
double hermite_normalized(unsigned degree, double z);

/// Writes H_0(z)/sqrt(0!), ..., H_max(z)/sqrt(max!) into out[0..max].
void hermite_normalized_table(unsigned max_degree, double z, std::span<double> out);

/// prod_i hermite_normalized(alpha_i, x_i).
double hermite_multi(const MultiIndex& alpha, const Eigen::Ref<const Vector>& x);

/// Row-wise Hermite indices (A, B): A holds one alpha in N^d per row of X,
/// B one beta in N^m per row of Y.
struct PatternPair {
  std::vector<MultiIndex> a;
  std::vector<MultiIndex> b;

  /// Zero pattern for an (n, d, m) instance.
  static PatternPair zero(std::size_t n, std::size_t d, std::size_t m);

  /// Splits a flattened index over N^{n(d+m)} laid out as
  /// [alpha_1, ..., alpha_n, beta_1, ..., beta_n].
  static PatternPair from_flat(const MultiIndex& flat, std::size_t n, std::size_t d,
                               std::size_t m);

  std::size_t rows() const noexcept { return a.size(); }
  /// |A| + |B|.
  unsigned degree() const noexcept;
  bool is_zero() const noexcept { return degree() == 0; }
  void validate(std::size_t n, std::size_t d, std::size_t m) const;
  std::string to_string() const;
};

/// phi_{A,B}(X, Y) = prod_i H_{alpha_i}(X_i) prod_j H_{beta_j}(Y_j).
double phi(const PatternPair& pattern, const Instance& inst);

/// A pattern stored as its nonzero factors, for evaluating many patterns
/// against cached per-entry Hermite tables.
class SparsePattern {
 public:
  struct Factor {
    bool in_y;
    unsigned row;
    unsigned col;
    unsigned degree;
  };

  explicit SparsePattern(const PatternPair& p);

  const std::vector<Factor>& factors() const noexcept { return factors_; }
  unsigned degree() const noexcept { return degree_; }

 private:
  std::vector<Factor> factors_;
  unsigned degree_ = 0;
};

/// Hermite values H_0..H_D at every entry of an instance, so that
/// phi for all patterns of degree <= D costs one product per factor.
class HermiteCache {
 public:
  HermiteCache(std::size_t n, std::size_t d, std::size_t m, unsigned max_degree);

  void load(const Matrix& x, const Matrix& y);
  double value(bool in_y, unsigned row, unsigned col, unsigned degree) const {
    const auto& t = in_y ? y_ : x_;
    const std::size_t cols = in_y ? m_ : d_;
    return t[(static_cast<std::size_t>(row) * cols + col) * stride_ + degree];
  }
  double evaluate(const SparsePattern& p) const;

 private:
  std::size_t n_, d_, m_, stride_;
  std::vector<double> x_, y_;
};

/// Coefficients of H_m(<x, y>) in the basis {H_alpha(x) : |alpha| = m}.
using CoeffTable = std::map<MultiIndex, double>;

/// For unit y: H_m(<x,y>) = sum_{|alpha|=m} sqrt(alpha!/m!) binom(m, alpha) y^alpha H_alpha(x).
/// Throws std::invalid_argument unless |y| = 1 within 1e-10.
CoeffTable expand_inner_product(const Eigen::Ref<const Vector>& y, unsigned degree);

/// Lines "alpha-parts : coefficient".
void write_coeff_table(std::ostream& out, const CoeffTable& table);

/// y^alpha.
double monomial(const Eigen::Ref<const Vector>& y, const MultiIndex& alpha);

/// Monte Carlo estimate of
///   Lambda_{alpha,beta}(Q) = E[H_alpha(U) H_beta((U Q + sigma V)/sqrt(1 + sigma^2))]
/// with U ~ N(0, I_d), V ~ N(0, I_m). alpha = beta = 0 returns exactly 1.
MomentEstimate lambda_mc(const MultiIndex& alpha, const MultiIndex& beta, const StiefelMatrix& q,
                         double sigma, std::size_t samples, const RandomStream& rng);

/// Lambda estimates for several (alpha, beta) pairs from one set of (U, V)
/// draws (common random numbers).
std::vector<MomentEstimate> lambda_mc_batch(
    const std::vector<std::pair<MultiIndex, MultiIndex>>& pairs, const StiefelMatrix& q,
    double sigma, std::size_t samples, const RandomStream& rng);

/// sqrt(alpha!/beta!) binom(beta, alpha) for |alpha| = beta.
double m1_coefficient(const MultiIndex& alpha, unsigned beta);

/// Noiseless single-response closed form
///   Lambda_{alpha,beta}(q) = 1{|alpha| = beta} M(alpha; beta) q^alpha,
/// M(alpha; beta) = sqrt(alpha!/beta!) binom(beta, alpha). q must be a unit vector.
double lambda_m1_closed(const MultiIndex& alpha, unsigned beta, const Eigen::Ref<const Vector>& q);

}  // namespace slrlab

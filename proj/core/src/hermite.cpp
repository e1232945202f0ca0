#include "slrlab/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace slrlab {

double hermite_normalized(unsigned degree, double z) {
  if (degree == 0) return 1.0;
  double prev = 1.0;
  double cur = z;
  for (unsigned k = 1; k < degree; ++k) {
    const double next = (z * cur - std::sqrt(static_cast<double>(k)) * prev) /
                        std::sqrt(static_cast<double>(k + 1));
    prev = cur;
    cur = next;
  }
  return cur;
}

void hermite_normalized_table(unsigned max_degree, double z, std::span<double> out) {
  if (out.size() < static_cast<std::size_t>(max_degree) + 1) {
    throw std::invalid_argument("hermite_normalized_table: output too small");
  }
  out[0] = 1.0;
  if (max_degree == 0) return;
  out[1] = z;
  for (unsigned k = 1; k < max_degree; ++k) {
    out[k + 1] = (z * out[k] - std::sqrt(static_cast<double>(k)) * out[k - 1]) /
                 std::sqrt(static_cast<double>(k + 1));
  }
}

double hermite_multi(const MultiIndex& alpha, const Eigen::Ref<const Vector>& x) {
  if (alpha.dimension() != static_cast<std::size_t>(x.size())) {
    throw std::invalid_argument("hermite_multi: multi-index dimension " +
                                std::to_string(alpha.dimension()) + " != vector length " +
                                std::to_string(x.size()));
  }
  double p = 1.0;
  for (std::size_t i = 0; i < alpha.dimension(); ++i) {
    if (alpha[i] != 0) p *= hermite_normalized(alpha[i], x(static_cast<Eigen::Index>(i)));
  }
  return p;
}

// --- patterns -------------------------------------------------------------

PatternPair PatternPair::zero(std::size_t n, std::size_t d, std::size_t m) {
  return PatternPair{std::vector<MultiIndex>(n, MultiIndex(d)),
                     std::vector<MultiIndex>(n, MultiIndex(m))};
}

PatternPair PatternPair::from_flat(const MultiIndex& flat, std::size_t n, std::size_t d,
                                   std::size_t m) {
  if (flat.dimension() != n * (d + m)) {
    throw std::invalid_argument("PatternPair::from_flat: expected dimension n(d+m)");
  }
  PatternPair p = zero(n, d, m);
  std::size_t pos = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) p.a[i][j] = flat[pos++];
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) p.b[i][j] = flat[pos++];
  }
  return p;
}

unsigned PatternPair::degree() const noexcept {
  unsigned s = 0;
  for (const auto& x : a) s += x.weight();
  for (const auto& x : b) s += x.weight();
  return s;
}

void PatternPair::validate(std::size_t n, std::size_t d, std::size_t m) const {
  if (a.size() != n || b.size() != n) {
    throw std::invalid_argument("pattern has " + std::to_string(a.size()) + "/" +
                                std::to_string(b.size()) + " rows, instance has " +
                                std::to_string(n));
  }
  for (const auto& x : a) {
    if (x.dimension() != d) throw std::invalid_argument("pattern alpha dimension != d");
  }
  for (const auto& x : b) {
    if (x.dimension() != m) throw std::invalid_argument("pattern beta dimension != m");
  }
}

std::string PatternPair::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += " | ";
    s += a[i].to_string();
  }
  s += " ; ";
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i) s += " | ";
    s += b[i].to_string();
  }
  return s;
}

double phi(const PatternPair& pattern, const Instance& inst) {
  pattern.validate(static_cast<std::size_t>(inst.x.rows()), static_cast<std::size_t>(inst.x.cols()),
                   static_cast<std::size_t>(inst.y.cols()));
  double p = 1.0;
  for (std::size_t i = 0; i < pattern.rows(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    if (!pattern.a[i].is_zero()) p *= hermite_multi(pattern.a[i], inst.x.row(r).transpose());
    if (!pattern.b[i].is_zero()) p *= hermite_multi(pattern.b[i], inst.y.row(r).transpose());
  }
  return p;
}

SparsePattern::SparsePattern(const PatternPair& p) {
  for (std::size_t i = 0; i < p.rows(); ++i) {
    for (std::size_t j = 0; j < p.a[i].dimension(); ++j) {
      if (p.a[i][j]) {
        factors_.push_back({false, static_cast<unsigned>(i), static_cast<unsigned>(j), p.a[i][j]});
      }
    }
  }
  for (std::size_t i = 0; i < p.rows(); ++i) {
    for (std::size_t j = 0; j < p.b[i].dimension(); ++j) {
      if (p.b[i][j]) {
        factors_.push_back({true, static_cast<unsigned>(i), static_cast<unsigned>(j), p.b[i][j]});
      }
    }
  }
  degree_ = p.degree();
}

HermiteCache::HermiteCache(std::size_t n, std::size_t d, std::size_t m, unsigned max_degree)
    : n_(n), d_(d), m_(m), stride_(static_cast<std::size_t>(max_degree) + 1),
      x_(n * d * stride_), y_(n * m * stride_) {}

void HermiteCache::load(const Matrix& x, const Matrix& y) {
  const unsigned max_degree = static_cast<unsigned>(stride_ - 1);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < d_; ++j) {
      hermite_normalized_table(max_degree, x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)),
                               std::span<double>(x_.data() + (i * d_ + j) * stride_, stride_));
    }
    for (std::size_t j = 0; j < m_; ++j) {
      hermite_normalized_table(max_degree, y(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)),
                               std::span<double>(y_.data() + (i * m_ + j) * stride_, stride_));
    }
  }
}

double HermiteCache::evaluate(const SparsePattern& p) const {
  double v = 1.0;
  for (const auto& f : p.factors()) v *= value(f.in_y, f.row, f.col, f.degree);
  return v;
}

// --- inner-product expansion ------------------------------------------------

namespace {

void require_unit(const Eigen::Ref<const Vector>& y, const char* who) {
  if (y.size() == 0 || std::abs(y.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument(std::string(who) + ": vector must have unit norm");
  }
}

}  // namespace

double monomial(const Eigen::Ref<const Vector>& y, const MultiIndex& alpha) {
  if (alpha.dimension() != static_cast<std::size_t>(y.size())) {
    throw std::invalid_argument("monomial: dimension mismatch");
  }
  double p = 1.0;
  for (std::size_t i = 0; i < alpha.dimension(); ++i) {
    for (unsigned e = 0; e < alpha[i]; ++e) p *= y(static_cast<Eigen::Index>(i));
  }
  return p;
}

double m1_coefficient(const MultiIndex& alpha, unsigned beta) {
  if (alpha.weight() != beta) return 0.0;
  // sqrt(alpha!/beta!) * beta!/alpha! = sqrt(beta!/alpha!)
  if (beta <= 20) return std::sqrt(multinomial(alpha));
  return std::exp(0.5 * (log_factorial(beta) - alpha.log_factorial()));
}

CoeffTable expand_inner_product(const Eigen::Ref<const Vector>& y, unsigned degree) {
  require_unit(y, "expand_inner_product");
  CoeffTable table;
  for (auto& alpha : multiindices_of_weight(static_cast<std::size_t>(y.size()), degree)) {
    const double c = m1_coefficient(alpha, degree) * monomial(y, alpha);
    table.emplace(std::move(alpha), c);
  }
  return table;
}

void write_coeff_table(std::ostream& out, const CoeffTable& table) {
  for (const auto& [alpha, c] : table) out << alpha.to_string() << " : " << format_double(c) << '\n';
}

double lambda_m1_closed(const MultiIndex& alpha, unsigned beta, const Eigen::Ref<const Vector>& q) {
  require_unit(q, "lambda_m1_closed");
  if (alpha.dimension() != static_cast<std::size_t>(q.size())) {
    throw std::invalid_argument("lambda_m1_closed: dimension mismatch");
  }
  if (alpha.weight() != beta) return 0.0;
  return m1_coefficient(alpha, beta) * monomial(q, alpha);
}

// --- Lambda Monte Carlo -------------------------------------------------------

std::vector<MomentEstimate> lambda_mc_batch(
    const std::vector<std::pair<MultiIndex, MultiIndex>>& pairs, const StiefelMatrix& q,
    double sigma, std::size_t samples, const RandomStream& rng) {
  const std::size_t d = static_cast<std::size_t>(q.d());
  const std::size_t m = static_cast<std::size_t>(q.m());
  unsigned max_degree = 0;
  for (const auto& [a, b] : pairs) {
    if (a.dimension() != d || b.dimension() != m) {
      throw std::invalid_argument("lambda_mc: (alpha, beta) dimensions must match Q (d x m)");
    }
    max_degree = std::max({max_degree, a.weight(), b.weight()});
  }
  if (samples == 0) throw std::invalid_argument("lambda_mc: samples must be at least 1");
  if (!(sigma >= 0.0)) throw std::invalid_argument("lambda_mc: sigma must be nonnegative");

  std::vector<PatternPair> patterns;
  patterns.reserve(pairs.size());
  for (const auto& [a, b] : pairs) patterns.push_back(PatternPair{{a}, {b}});
  std::vector<SparsePattern> sparse(patterns.begin(), patterns.end());

  const std::size_t blocks = (samples + kMonteCarloBlock - 1) / kMonteCarloBlock;
  std::vector<std::vector<RunningMoments>> partial(blocks,
                                                    std::vector<RunningMoments>(pairs.size()));
  const double scale = noise_scale(sigma);
  const Matrix& qb = q.base();

  for_each_block(samples, kMonteCarloBlock, rng,
                 [&](std::size_t blk, std::size_t begin, std::size_t end, RandomStream& s) {
                   HermiteCache cache(1, d, m, max_degree);
                   Matrix u(1, static_cast<Eigen::Index>(d));
                   Matrix v(1, static_cast<Eigen::Index>(m));
                   for (std::size_t it = begin; it < end; ++it) {
                     for (Eigen::Index j = 0; j < u.cols(); ++j) u(0, j) = s.normal();
                     for (Eigen::Index j = 0; j < v.cols(); ++j) v(0, j) = s.normal();
                     Matrix w = u * qb;
                     if (sigma != 0.0) w += sigma * v;
                     w *= scale;
                     cache.load(u, w);
                     for (std::size_t p = 0; p < sparse.size(); ++p) {
                       partial[blk][p].add(cache.evaluate(sparse[p]));
                     }
                   }
                 });

  std::vector<MomentEstimate> out(pairs.size());
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    if (patterns[p].is_zero()) {
      out[p] = MomentEstimate{1.0, 0.0, samples, rng.master_seed()};
      continue;
    }
    RunningMoments total;
    for (std::size_t b = 0; b < blocks; ++b) total.merge(partial[b][p]);
    out[p] = total.estimate(rng.master_seed());
  }
  return out;
}

MomentEstimate lambda_mc(const MultiIndex& alpha, const MultiIndex& beta, const StiefelMatrix& q,
                         double sigma, std::size_t samples, const RandomStream& rng) {
  if (alpha.dimension() == static_cast<std::size_t>(q.d()) &&
      beta.dimension() == static_cast<std::size_t>(q.m()) && alpha.is_zero() && beta.is_zero()) {
    return MomentEstimate::exact(1.0, rng.master_seed());
  }
  return lambda_mc_batch({{alpha, beta}}, q, sigma, samples, rng).front();
}

}  // namespace slrlab

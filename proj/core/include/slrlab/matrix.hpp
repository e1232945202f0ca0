#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace slrlab {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// A bijection on [0, n). Applied to a matrix, row i of the result is row
/// mapping[i] of the input (a row gather; no n x n matrix is formed).
class Permutation {
 public:
  Permutation() = default;
  /// Throws std::invalid_argument unless `mapping` is a bijection on [0, n).
  explicit Permutation(std::vector<std::size_t> mapping);

  static Permutation identity(std::size_t n);

  std::size_t size() const noexcept { return mapping_.size(); }
  std::size_t operator[](std::size_t i) const { return mapping_[i]; }
  const std::vector<std::size_t>& mapping() const noexcept { return mapping_; }

  Matrix apply_rows(const Matrix& m) const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> mapping_;
};

/// A d x m matrix with orthonormal columns.
class StiefelMatrix {
 public:
  StiefelMatrix() = default;
  /// Throws std::invalid_argument if base^T base deviates from I_m by more
  /// than `tolerance` in any entry.
  explicit StiefelMatrix(Matrix base, double tolerance = 1e-10);

  const Matrix& base() const noexcept { return base_; }
  Eigen::Index d() const noexcept { return base_.rows(); }
  Eigen::Index m() const noexcept { return base_.cols(); }

 private:
  Matrix base_;
};

/// max_ij |A^T A - I|.
double orthogonality_error(const Matrix& a);

// Matrix text format: "<rows> <cols>" then one line per row of
// space-separated values with 17 significant digits.

std::string format_double(double v);
void write_matrix(std::ostream& out, const Matrix& m);
void write_matrix_file(const std::filesystem::path& path, const Matrix& m);
Matrix read_matrix(std::istream& in);
Matrix read_matrix_file(const std::filesystem::path& path);

/// Ordered key=value sidecar lines.
using Metadata = std::vector<std::pair<std::string, std::string>>;

void write_metadata_file(const std::filesystem::path& path, const Metadata& meta);
std::map<std::string, std::string> read_metadata_file(const std::filesystem::path& path);

}  // namespace slrlab

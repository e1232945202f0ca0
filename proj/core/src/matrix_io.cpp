#include "slrlab/matrix.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace slrlab {

Permutation::Permutation(std::vector<std::size_t> mapping) : mapping_(std::move(mapping)) {
  std::vector<bool> seen(mapping_.size(), false);
  for (std::size_t v : mapping_) {
    if (v >= mapping_.size() || seen[v]) {
      throw std::invalid_argument("Permutation: mapping is not a bijection on [0, n)");
    }
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = i;
  return Permutation(std::move(m));
}

Matrix Permutation::apply_rows(const Matrix& m) const {
  if (static_cast<std::size_t>(m.rows()) != mapping_.size()) {
    throw std::invalid_argument("Permutation::apply_rows: row count mismatch");
  }
  Matrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < mapping_.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = m.row(static_cast<Eigen::Index>(mapping_[i]));
  }
  return out;
}

double orthogonality_error(const Matrix& a) {
  const Matrix gram = a.transpose() * a;
  return (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

StiefelMatrix::StiefelMatrix(Matrix base, double tolerance) : base_(std::move(base)) {
  if (base_.rows() < base_.cols() || base_.cols() == 0) {
    throw std::invalid_argument("StiefelMatrix: need 1 <= m <= d");
  }
  if (orthogonality_error(base_) > tolerance) {
    throw std::invalid_argument("StiefelMatrix: columns are not orthonormal");
  }
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_matrix(std::ostream& out, const Matrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

void write_matrix_file(const std::filesystem::path& path, const Matrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open " + path.string() + " for writing");
  write_matrix(out, m);
  if (!out) throw std::ios_base::failure("write failed: " + path.string());
}

Matrix read_matrix(std::istream& in) {
  long rows = 0, cols = 0;
  if (!(in >> rows >> cols) || rows < 0 || cols < 0) {
    throw std::invalid_argument("read_matrix: bad header");
  }
  Matrix m(rows, cols);
  for (long i = 0; i < rows; ++i) {
    for (long j = 0; j < cols; ++j) {
      if (!(in >> m(i, j))) throw std::invalid_argument("read_matrix: truncated body");
    }
  }
  return m;
}

Matrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path.string());
  return read_matrix(in);
}

void write_metadata_file(const std::filesystem::path& path, const Metadata& meta) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open " + path.string() + " for writing");
  for (const auto& [k, v] : meta) out << k << '=' << v << '\n';
  if (!out) throw std::ios_base::failure("write failed: " + path.string());
}

std::map<std::string, std::string> read_metadata_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path.string());
  std::map<std::string, std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    out[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return out;
}

}  // namespace slrlab

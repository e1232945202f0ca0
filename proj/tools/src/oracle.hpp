#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace slrlab::cli {

struct OracleResult {
  std::string name;
  bool passed = false;
  std::string observed;   // e.g. "max_rel_err=3.1e-15"
  std::string tolerance;  // e.g. "max_rel_err<=1e-9"
};

/// Names accepted by run_oracle, in the order "all" runs them.
const std::vector<std::string>& oracle_check_names();

/// Runs one named check (or every check for "all"). Throws
/// std::invalid_argument for an unknown name.
std::vector<OracleResult> run_oracle(const std::string& name, std::uint64_t seed);

/// Null Gram matrix of phi over all patterns of total degree <= 4 at
/// n = 2, d = m = 2, compared entrywise with the identity.
OracleResult check_orthonormality(std::uint64_t seed, std::size_t samples);

/// Many simultaneous 3-sigma comparisons: passes when the number of |z| > 3
/// stays within its null expectation plus three binomial standard deviations.
struct MultiComparison {
  std::size_t comparisons = 0;
  std::size_t exceedances = 0;
  double max_abs_z = 0.0;

  void add(double z);
  double allowed() const;
  bool passed() const { return static_cast<double>(exceedances) <= allowed(); }
  std::string describe() const;
};

}  // namespace slrlab::cli

#pragma once

#include "slrlab/matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace slrlab::cli {

/// A CSV report plus the per-row stream indices recorded in its sidecar.
struct Table {
  std::string header;
  std::vector<std::string> rows;
  std::vector<std::uint64_t> streams;
};

struct SampleOptions {
  std::size_t n = 4, d = 3, m = 2;
  double sigma = 0.0;
  std::string hypothesis = "null";
  bool keep_latent = false;
  std::string out_dir;  // empty: SLRLAB_OUTPUT_DIR or "."
  std::string prefix = "instance";
  std::uint64_t seed = 1;
};

struct DetectOptions {
  std::vector<std::size_t> n{256}, d{16}, m{16};
  std::vector<double> sigma{0.05};
  std::size_t trials = 2000;
  std::optional<double> threshold;
  std::uint64_t seed = 1;
};

struct AdvantageCliOptions {
  std::vector<std::size_t> n{1}, d{2}, m{1};
  std::vector<double> sigma{0.0};
  std::vector<unsigned> D{4};
  std::size_t samples = 100000;
  double cap = 1e6;
  bool exact_permutation = false;
  std::string patterns_out;
  std::uint64_t seed = 1;
};

struct ChisqCliOptions {
  std::vector<std::size_t> d{50}, m{2}, k{1};
  std::vector<double> sigma{0.0};
  std::string mode = "closed";
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
};

/// Writes the instance files and returns the paths written (sidecar last).
std::vector<std::string> cmd_sample(const SampleOptions& o);

Table cmd_detect(const DetectOptions& o, std::ostream& err);
Table cmd_advantage(const AdvantageCliOptions& o);
Table cmd_chisq(const ChisqCliOptions& o);

/// Value of SLRLAB_OUTPUT_DIR, or empty.
std::string default_output_dir();

}  // namespace slrlab::cli

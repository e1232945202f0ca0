#include "commands.hpp"

#include "slrlab/advantage.hpp"
#include "slrlab/chisq.hpp"
#include "slrlab/detect.hpp"
#include "slrlab/errors.hpp"
#include "slrlab/model.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace slrlab::cli {

namespace {

namespace fs = std::filesystem;

std::string num(double v) { return format_double(v); }
std::string num(std::size_t v) { return std::to_string(v); }

// Row-major iteration over the model grid (n, d, m, sigma); `visit` receives
// the cell's position in the full grid, which doubles as its stream index.
// Cells with m > d are skipped; a grid with no valid cell is a usage error.
template <typename Visit>
void for_each_model_cell(const std::vector<std::size_t>& ns, const std::vector<std::size_t>& ds,
                         const std::vector<std::size_t>& ms, const std::vector<double>& sigmas,
                         std::size_t inner, Visit&& visit) {
  std::uint64_t position = 0;
  std::size_t visited = 0;
  for (auto n : ns) {
    for (auto d : ds) {
      for (auto m : ms) {
        for (auto sigma : sigmas) {
          for (std::size_t j = 0; j < inner; ++j, ++position) {
            if (m > d) continue;
            ModelParams p{n, d, m, sigma};
            p.validate();
            visit(p, j, position);
            ++visited;
          }
        }
      }
    }
  }
  if (visited == 0) throw std::invalid_argument("empty parameter grid (no cell with m <= d)");
}

}  // namespace

std::string default_output_dir() {
  const char* env = std::getenv("SLRLAB_OUTPUT_DIR");
  return env ? std::string(env) : std::string();
}

std::vector<std::string> cmd_sample(const SampleOptions& o) {
  const ModelParams params{o.n, o.d, o.m, o.sigma};
  params.validate();
  const Hypothesis hyp = parse_hypothesis(o.hypothesis);
  const std::string dir_name = !o.out_dir.empty() ? o.out_dir
                               : !default_output_dir().empty() ? default_output_dir()
                                                               : std::string(".");
  const fs::path dir(dir_name);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::ios_base::failure("cannot create output directory '" + dir.string() + "'");

  constexpr std::uint64_t stream_index = 0;
  RandomStream rng(o.seed, stream_index);
  const Instance inst = hyp == Hypothesis::null ? sample_null(params, rng)
                                                : sample_planted(params, rng, o.keep_latent);
  std::vector<std::string> written;
  Metadata meta{{"sampler", hyp == Hypothesis::null ? "sample_null" : "sample_planted"},
                {"hypothesis", std::string(to_string(hyp))},
                {"n", num(o.n)},
                {"d", num(o.d)},
                {"m", num(o.m)},
                {"sigma", num(o.sigma)},
                {"master_seed", std::to_string(o.seed)},
                {"stream_index", std::to_string(stream_index)},
                {"rng", "mt19937_64/splitmix64"}};
  auto emit = [&](const std::string& key, const std::string& suffix, const Matrix& m) {
    const fs::path path = dir / (o.prefix + "." + suffix + ".txt");
    write_matrix_file(path, m);
    written.push_back(path.string());
    meta.emplace_back(key, path.filename().string());
  };
  emit("x_file", "X", inst.x);
  emit("y_file", "Y", inst.y);
  if (inst.latent) {
    Matrix perm(static_cast<Eigen::Index>(o.n), 1);
    for (std::size_t i = 0; i < o.n; ++i) perm(static_cast<Eigen::Index>(i), 0) = static_cast<double>(inst.latent->perm[i]);
    emit("perm_file", "perm", perm);
    emit("q_file", "Q", inst.latent->q.base());
    emit("z_file", "Z", inst.latent->z);
  }
  const fs::path meta_path = dir / (o.prefix + ".meta");
  write_metadata_file(meta_path, meta);
  written.push_back(meta_path.string());
  return written;
}

Table cmd_detect(const DetectOptions& o, std::ostream& err) {
  Table t;
  t.header =
      "n,d,m,sigma,trials,threshold,type1,type2,mean_null,mean_planted,var_null,var_planted,"
      "separation_ratio,master_seed";
  if (o.trials < 2) throw std::invalid_argument("detect: --trials must be at least 2");
  for_each_model_cell(o.n, o.d, o.m, o.sigma, 1, [&](const ModelParams& p, std::size_t, std::uint64_t pos) {
    if (p.m < p.d) {
      err << "warning: detect at m=" << p.m << " < d=" << p.d
          << ": the separation guarantee for this statistic holds only at m = d\n";
    }
    const DetectionSamples s = sample_statistic(p, o.trials, RandomStream(o.seed, pos));
    const ErrorRates r = error_rates(p, s, o.threshold);
    const SeparationReport sep = separation(p, s);
    t.rows.push_back(num(p.n) + ',' + num(p.d) + ',' + num(p.m) + ',' + num(p.sigma) + ',' +
                     num(o.trials) + ',' + num(r.threshold) + ',' + num(r.type1) + ',' + num(r.type2) +
                     ',' + num(sep.mean_null) + ',' + num(sep.mean_planted) + ',' + num(sep.var_null) +
                     ',' + num(sep.var_planted) + ',' + num(sep.separation_ratio) + ',' +
                     std::to_string(o.seed));
    t.streams.push_back(pos);
  });
  return t;
}

Table cmd_advantage(const AdvantageCliOptions& o) {
  Table t;
  t.header = "n,d,m,sigma,D,adv_sq,stderr,pattern_count";
  std::ofstream patterns;
  if (!o.patterns_out.empty()) {
    patterns.open(o.patterns_out);
    if (!patterns) throw std::ios_base::failure("cannot write '" + o.patterns_out + "'");
    patterns << "cell,pattern_id,degree,mean,stderr,squared_contribution\n";
  }
  std::size_t cell = 0;
  for_each_model_cell(o.n, o.d, o.m, o.sigma, o.D.size(), [&](const ModelParams& p, std::size_t j, std::uint64_t pos) {
    const unsigned D = o.D[j];
    AdvantageOptions opts;
    opts.pattern_cap = o.cap;
    opts.exact_permutation = o.exact_permutation;
    std::vector<PatternContribution> rows;
    const AdvantageEstimate est = estimate_advantage_sq(p, D, o.samples, RandomStream(o.seed, pos), opts,
                                                        patterns.is_open() ? &rows : nullptr);
    t.rows.push_back(num(p.n) + ',' + num(p.d) + ',' + num(p.m) + ',' + num(p.sigma) + ',' +
                     std::to_string(D) + ',' + num(est.value_sq) + ',' + num(est.std_error) + ',' +
                     num(est.pattern_count));
    t.streams.push_back(pos);
    for (const auto& r : rows) {
      patterns << cell << ',' << r.pattern_id << ',' << r.degree << ',' << num(r.mean) << ','
               << num(r.std_error) << ',' << num(r.squared_contribution) << '\n';
    }
    ++cell;
  });
  if (patterns.is_open() && !patterns.flush()) {
    throw std::ios_base::failure("failed writing '" + o.patterns_out + "'");
  }
  return t;
}

Table cmd_chisq(const ChisqCliOptions& o) {
  if (o.mode != "closed" && o.mode != "mc" && o.mode != "both") {
    throw std::invalid_argument("chisq: --mode must be closed, mc or both");
  }
  Table t;
  t.header = chisq_csv_header() + ",delta";
  std::uint64_t position = 0;
  std::size_t visited = 0;
  for (auto d : o.d) {
    for (auto m : o.m) {
      for (auto k : o.k) {
        for (auto sigma : o.sigma) {
          const std::uint64_t pos = position++;
          if (m > d) continue;
          ++visited;
          if (m == 0 || !(sigma >= 0.0)) throw std::invalid_argument("chisq: need m >= 1 and sigma >= 0");
          const RandomStream rng(o.seed, pos);
          if (sigma == 0.0) {
            std::optional<ChiSquareReport> closed;
            if (o.mode != "mc") {
              closed = chisq_sigma0_closed(d, m, k);
              t.rows.push_back(to_csv_row(*closed) + ',');
              t.streams.push_back(pos);
            }
            if (o.mode != "closed") {
              const ChiSquareReport mc = chisq_sigma0_mc(d, m, k, o.samples, rng);
              t.rows.push_back(to_csv_row(mc) + ',' + (closed ? num(mc.value - closed->value) : ""));
              t.streams.push_back(pos);
            }
          } else if (m == d) {
            if (o.mode != "mc") {
              throw UnsupportedRegime("no closed form for m = d with sigma > 0 (use --mode mc)");
            }
            t.rows.push_back(to_csv_row(chisq_m_eq_d_mc(d, k, sigma, o.samples, rng)) + ',');
            t.streams.push_back(pos);
          } else {
            throw UnsupportedRegime("chi-square with sigma > 0 is only available for m = d, got d=" +
                                    num(d) + ", m=" + num(m));
          }
        }
      }
    }
  }
  if (visited == 0) throw std::invalid_argument("empty parameter grid (no cell with m <= d)");
  return t;
}

}  // namespace slrlab::cli

#include "cli.hpp"

#include "commands.hpp"
#include "oracle.hpp"

#include "slrlab/errors.hpp"
#include "slrlab/matrix.hpp"
#include "slrlab/stats.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ios>
#include <ostream>
#include <sstream>
#include <stdexcept>

#ifndef SLRLAB_VERSION
#define SLRLAB_VERSION "unknown"
#endif

namespace slrlab::cli {

namespace {

namespace fs = std::filesystem;

std::string join(const std::vector<std::string>& args) {
  std::string s;
  for (const auto& a : args) {
    if (!s.empty()) s += ' ';
    s += a;
  }
  return s;
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

// Writes the CSV to `output` (or stdout when empty) and, for files, a
// ".meta" sidecar with everything needed to regenerate each row.
void emit_table(const Table& t, const std::string& command, const std::string& output,
                const std::vector<std::string>& args, std::uint64_t seed, const std::string& started,
                double elapsed, std::ostream& out) {
  std::string csv = t.header + '\n';
  for (const auto& r : t.rows) csv += r + '\n';
  if (output.empty()) {
    out << csv;
    return;
  }
  const fs::path path(output);
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << csv) || !f.flush()) throw std::ios_base::failure("cannot write '" + output + "'");

  Metadata meta{{"artifact", "slrlab"},
                {"version", SLRLAB_VERSION},
                {"command", command},
                {"args", join(args)},
                {"master_seed", std::to_string(seed)},
                {"rng", "mt19937_64/splitmix64"},
                {"block_size", std::to_string(kMonteCarloBlock)},
                {"threads", std::to_string(thread_count())},
                {"started_utc", started},
                {"elapsed_seconds", format_double(elapsed)}};
  for (std::size_t i = 0; i < t.streams.size(); ++i) {
    meta.emplace_back("row" + std::to_string(i + 1) + "_stream", std::to_string(t.streams[i]));
  }
  write_metadata_file(output + ".meta", meta);
}

std::string resolve_output(const std::string& flag, const std::string& command) {
  if (!flag.empty()) return flag;
  const std::string dir = default_output_dir();
  if (dir.empty()) return {};
  return (fs::path(dir) / (command + ".csv")).string();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Shuffled linear regression numerical laboratory", "slrlab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", SLRLAB_VERSION);
  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker threads (default: SLRLAB_THREADS or all cores)");

  std::string output;
  std::uint64_t seed = 1;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "Master seed")->capture_default_str();
    sub->add_option("-o,--output", output, "CSV path (default: $SLRLAB_OUTPUT_DIR/<command>.csv, else stdout)");
  };

  SampleOptions so;
  auto* sample = app.add_subcommand("sample", "Draw one null or planted instance");
  sample->add_option("--n", so.n)->capture_default_str();
  sample->add_option("--d", so.d)->capture_default_str();
  sample->add_option("--m", so.m)->capture_default_str();
  sample->add_option("--sigma", so.sigma)->capture_default_str();
  sample->add_option("--hypothesis", so.hypothesis)->check(CLI::IsMember({"null", "planted"}))->capture_default_str();
  sample->add_flag("--keep-latent", so.keep_latent, "Also write perm, Q and Z");
  sample->add_option("--out-dir", so.out_dir, "Directory (default: $SLRLAB_OUTPUT_DIR, else .)");
  sample->add_option("--prefix", so.prefix)->capture_default_str();
  sample->add_option("--seed", seed, "Master seed")->capture_default_str();

  DetectOptions dopt;
  double threshold = 0.0;
  auto* detect = app.add_subcommand("detect", "Error rates and separation of the norm-gap statistic");
  detect->add_option("--n", dopt.n)->delimiter(',')->capture_default_str();
  detect->add_option("--d", dopt.d)->delimiter(',')->capture_default_str();
  detect->add_option("--m", dopt.m)->delimiter(',')->capture_default_str();
  detect->add_option("--sigma", dopt.sigma)->delimiter(',')->capture_default_str();
  detect->add_option("--trials", dopt.trials)->capture_default_str();
  auto* threshold_opt = detect->add_option("--threshold", threshold, "Default: midpoint of the two means");
  add_common(detect);

  AdvantageCliOptions aopt;
  auto* advantage = app.add_subcommand("advantage", "Monte Carlo low-degree advantage");
  advantage->add_option("--n", aopt.n)->delimiter(',')->capture_default_str();
  advantage->add_option("--d", aopt.d)->delimiter(',')->capture_default_str();
  advantage->add_option("--m", aopt.m)->delimiter(',')->capture_default_str();
  advantage->add_option("--sigma", aopt.sigma)->delimiter(',')->capture_default_str();
  advantage->add_option("--D", aopt.D, "Degree grid")->delimiter(',')->capture_default_str();
  advantage->add_option("--samples", aopt.samples)->capture_default_str();
  advantage->add_option("--cap", aopt.cap, "Pattern cap")->capture_default_str();
  advantage->add_flag("--exact-permutation", aopt.exact_permutation, "Average over all n! permutations (n <= 7)");
  advantage->add_option("--patterns-out", aopt.patterns_out, "Per-pattern CSV path");
  add_common(advantage);

  ChisqCliOptions copt;
  auto* chisq = app.add_subcommand("chisq", "Chi-square divergence of the reduced models");
  chisq->add_option("--d", copt.d)->delimiter(',')->capture_default_str();
  chisq->add_option("--m", copt.m)->delimiter(',')->capture_default_str();
  chisq->add_option("--k", copt.k)->delimiter(',')->capture_default_str();
  chisq->add_option("--sigma", copt.sigma)->delimiter(',')->capture_default_str();
  chisq->add_option("--mode", copt.mode)->check(CLI::IsMember({"closed", "mc", "both"}))->capture_default_str();
  chisq->add_option("--samples", copt.samples)->capture_default_str();
  add_common(chisq);

  std::string check = "all";
  auto* oracle = app.add_subcommand("oracle", "Analytic self-checks against Monte Carlo");
  std::vector<std::string> names = oracle_check_names();
  names.push_back("all");
  oracle->add_option("--check", check)->check(CLI::IsMember(names))->capture_default_str();
  oracle->add_option("--seed", seed, "Master seed")->capture_default_str();

  std::string config_path;
  auto* sweep = app.add_subcommand("sweep", "Run a subcommand from a key = value config file");
  sweep->add_option("config", config_path, "Config file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  if (threads > 0) set_thread_count(threads);

  const std::string started = utc_now();
  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  try {
    if (*sweep) {
      return run(config_to_args(parse_config_file(config_path)), out, err);
    }
    if (*sample) {
      so.seed = seed;
      for (const auto& path : cmd_sample(so)) out << path << '\n';
      return kOk;
    }
    if (*oracle) {
      bool all_passed = true;
      for (const auto& r : run_oracle(check, seed)) {
        out << (r.passed ? "PASS " : "FAIL ") << r.name << ' ' << r.observed << " [" << r.tolerance << "]\n";
        all_passed = all_passed && r.passed;
      }
      return all_passed ? kOk : kOracleFailure;
    }
    Table table;
    std::string command;
    if (*detect) {
      command = "detect";
      dopt.seed = seed;
      if (threshold_opt->count() > 0) dopt.threshold = threshold;
      table = cmd_detect(dopt, err);
    } else if (*advantage) {
      command = "advantage";
      aopt.seed = seed;
      table = cmd_advantage(aopt);
    } else {
      command = "chisq";
      copt.seed = seed;
      table = cmd_chisq(copt);
    }
    emit_table(table, command, resolve_output(output, command), args, seed, started, elapsed(), out);
    return kOk;
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << '\n';
    return kCapacity;
  } catch (const UnsupportedRegime& e) {
    err << "unsupported regime: " << e.what() << '\n';
    return kUnsupportedRegime;
  } catch (const std::ios_base::failure& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace slrlab::cli

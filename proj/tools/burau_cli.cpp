// Command-line front end: verification, normalisation, searches, sampling
// and CSV emission.
//
// Exit codes: 0 success (verify: kernel element), 1 verify: not a kernel
// element, 2 usage or input error, 3 internal consistency failure.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "burau/io.hpp"
#include "burau/representation.hpp"
#include "burau/search.hpp"

namespace fs = std::filesystem;
using namespace burau;

namespace {

constexpr int kExitKernel = 0;
constexpr int kExitNotKernel = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Overrides {
  std::optional<std::int64_t> modulus;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> capacity;
  std::optional<int> max_level;
  std::optional<unsigned> threads;
  bool stop_on_kernel = false;
  std::string out_dir = ".";
};

void add_search_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--mod", o.modulus, "Coefficient modulus (0 for the integers)");
  cmd->add_option("--seed", o.seed, "RNG seed");
  cmd->add_option("--capacity", o.capacity, "Bucket capacity k");
  cmd->add_option("--max-level", o.max_level, "Highest Garside length to explore");
  cmd->add_option("--threads", o.threads, "Worker threads for matrix products");
  cmd->add_flag("--stop-on-kernel", o.stop_on_kernel, "Stop after the first level that yields a kernel element");
  cmd->add_option("--out-dir", o.out_dir, "Directory for report files");
}

SearchConfig load_config(const std::string& path, const Overrides& o) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  SearchConfig c = config_from_json(j, fs::path(path).parent_path());
  if (o.modulus) c.modulus = *o.modulus;
  if (o.seed) c.seed = *o.seed;
  if (o.capacity) c.capacity = *o.capacity;
  if (o.max_level) c.max_level = *o.max_level;
  if (o.threads) c.threads = *o.threads;
  if (o.stop_on_kernel) c.stop_on_kernel = true;
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return c;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot write " + path.string());
  out << content;
}

// Writes to <out_dir>/<name> when an output directory was requested, else to stdout.
void emit(const std::optional<std::string>& out_dir, const std::string& name, const std::string& content) {
  if (!out_dir) {
    std::cout << content;
    return;
  }
  fs::create_directories(*out_dir);
  write_file(fs::path(*out_dir) / name, content);
}

void check_modulus(std::int64_t m) {
  try {
    validate_modulus(m);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

template <class Ring>
int verify_with(const Braid& b, const Ring& ring) {
  const BurauContext<Ring> ctx(b.strands(), ring);
  const auto matrix = ctx.of_braid(b);
  std::cout << "strands: " << b.strands() << '\n'
            << "inf: " << b.inf() << '\n'
            << "garside_length: " << b.garside_length() << '\n'
            << "modulus: " << ring.modulus() << '\n'
            << "deg: " << matrix.deg() << '\n'
            << "val: " << matrix.val() << '\n'
            << "projlen: " << matrix.projlen() << '\n';
  if (!matrix.is_identity()) {
    std::cout << "result: not in kernel\n";
    return kExitNotKernel;
  }
  if (b.is_trivial()) {
    std::cout << "result: trivial braid (in the kernel)\n";
  } else if (ring.modulus() == 0) {
    std::cout << "result: INTEGRAL kernel element, l_G=" << b.garside_length() << '\n';
    std::cerr << "warning: nontrivial braid with identity integral Burau matrix\n";
  } else {
    std::cout << "result: kernel element, l_G=" << b.garside_length() << '\n';
  }
  return kExitKernel;
}

int cmd_verify(const std::string& input, int n, std::int64_t modulus) {
  check_modulus(modulus);
  const Braid b = read_braid_file(input, n);
  if (modulus == 0) return verify_with(b, IntegerRing{});
  return verify_with(b, ModularRing(modulus));
}

int cmd_gnf(const std::string& input, int n) {
  const std::string text = read_text_file(input);
  std::optional<ArtinWord> word;
  Braid b(n);
  if (looks_like_json(text)) {
    b = read_braid_file(input, n);
    word = artin_word(b);
  } else {
    word = parse_artin_word(text, n);
    b = gnf_from_artin(*word);
  }
  if (n >= 3) {
    const BurauContext<IntegerRing> ctx(n, IntegerRing{});
    if (!(ctx.of_word(*word) == ctx.of_braid(b))) {
      std::cerr << "internal error: Burau matrix of the normal form differs from the input word\n";
      return kExitInternal;
    }
  }
  std::cout << braid_to_json(b).dump() << '\n';
  std::cerr << "inf=" << b.inf() << " factors=" << b.garside_length() << " artin_length=" << word->size() << '\n';
  return 0;
}

SearchHooks progress_hooks(const char* unit) {
  const auto start = std::chrono::steady_clock::now();
  SearchHooks hooks;
  hooks.on_level = [start, unit](const LevelSummary& s) {
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::fprintf(stderr, "%s %d buckets=%zu items=%zu min_projlen=%s kernels=%zu elapsed=%.2fs\n", unit, s.level,
                 s.buckets, s.items, s.min_projlen ? std::to_string(*s.min_projlen).c_str() : "-",
                 s.kernels_found, elapsed);
  };
  return hooks;
}

void write_report(const SearchReport& report, const std::string& out_dir) {
  fs::create_directories(out_dir);
  std::ostringstream min_projlen, buckets, kernels;
  write_min_projlen_csv(min_projlen, report);
  write_bucket_stats_csv(buckets, report);
  write_kernels_jsonl(kernels, report);
  write_file(fs::path(out_dir) / "min_projlen.csv", min_projlen.str());
  write_file(fs::path(out_dir) / "buckets.csv", buckets.str());
  write_file(fs::path(out_dir) / "kernels.jsonl", kernels.str());
  std::cerr << "found " << report.found.size() << " kernel element(s) over " << report.levels_completed
            << " level(s)\n";
}

int cmd_search(const std::string& config_path, const Overrides& o) {
  const SearchConfig config = load_config(config_path, o);
  write_report(run_search(config, progress_hooks("level")), o.out_dir);
  return 0;
}

int cmd_mc_search(const std::string& config_path, const Overrides& o, const McConfig& mc) {
  const SearchConfig config = load_config(config_path, o);
  if (mc.rollout_length < 1 || mc.rounds < 0) throw UsageError("--rollout must be >= 1 and --rounds >= 0");
  const McResult result = mc_search(config, mc, progress_hooks("round"));
  write_report(result.report, o.out_dir);
  std::cerr << "database holds " << result.database.size() << " node(s)\n";
  return 0;
}

int cmd_trajectory(const std::string& input, int n, std::int64_t modulus, const std::optional<std::string>& out_dir) {
  check_modulus(modulus);
  const Braid b = read_braid_file(input, n);
  const auto points = trajectory(b, modulus);
  std::ostringstream csv;
  write_trajectory_csv(csv, points);
  emit(out_dir, "trajectory.csv", csv.str());
  return 0;
}

int cmd_sample(const ScatterConfig& config, const std::optional<std::string>& out_dir) {
  check_modulus(config.modulus);
  if (config.n < 3 || config.n > 8) throw UsageError("--n must be in 3..8");
  if (config.max_length < 1 || config.per_length < 1) throw UsageError("--max-len and --per-len must be >= 1");
  const auto points = sample_scatter(config);
  std::ostringstream csv;
  write_scatter_csv(csv, points);
  emit(out_dir, "scatter.csv", csv.str());
  return 0;
}

int cmd_forced_analyze(const std::string& config_path, const std::string& target, const Overrides& o) {
  SearchConfig config = load_config(config_path, o);
  config.forced_target = read_braid_file(target, config.n);
  const ForcedRunResult result = forced_run(config);
  std::vector<std::uint64_t> counts;
  for (const auto& s : result.prefixes) counts.push_back(s.r);
  fs::create_directories(o.out_dir);
  std::ostringstream csv;
  write_forced_csv(csv, result.prefixes, config.capacity);
  write_file(fs::path(o.out_dir) / "forced.csv", csv.str());
  char line[64];
  std::snprintf(line, sizeof line, "%.6e", discovery_probability(counts, config.capacity));
  std::cout << "P(beta) = " << line << '\n';
  return 0;
}

int cmd_features(const std::string& input, int n, std::int64_t modulus, int slices) {
  check_modulus(modulus);
  if (slices < 0) throw UsageError("--slices must be >= 0");
  const Braid b = read_braid_file(input, n);
  json out;
  if (modulus == 0) {
    out = pattern_to_json(coefficient_pattern(BurauContext<IntegerRing>(n, IntegerRing{}).of_positive_part(b), slices));
  } else {
    out = pattern_to_json(
        coefficient_pattern(BurauContext<ModularRing>(n, ModularRing(modulus)).of_positive_part(b), slices));
  }
  std::cout << out.dump() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Garside normal forms, Burau matrices and kernel searches"};
  app.require_subcommand(1);

  int n = 4;
  std::int64_t modulus = 5;
  std::string input;
  std::optional<std::string> out_dir;

  auto* verify = app.add_subcommand("verify", "Check whether a braid lies in the Burau kernel");
  verify->add_option("input", input, "Artin word file or braid JSON")->required();
  verify->add_option("--n", n, "Strand count");
  verify->add_option("--mod", modulus, "Coefficient modulus (0 for the integers)");

  auto* gnf = app.add_subcommand("gnf", "Print the Garside normal form as JSON");
  gnf->add_option("input", input, "Artin word file or braid JSON")->required();
  gnf->add_option("--n", n, "Strand count");

  Overrides overrides;
  std::string config_path;
  auto* search = app.add_subcommand("search", "Bucketed reservoir-sampling search");
  search->add_option("config", config_path, "Search config JSON")->required();
  add_search_flags(search, overrides);

  McConfig mc;
  auto* mc_cmd = app.add_subcommand("mc-search", "Monte-Carlo node-database search");
  mc_cmd->add_option("config", config_path, "Search config JSON")->required();
  mc_cmd->add_option("--rollout", mc.rollout_length, "Levels per rollout");
  mc_cmd->add_option("--rounds", mc.rounds, "Number of node expansions");
  add_search_flags(mc_cmd, overrides);

  auto* traj = app.add_subcommand("trajectory", "projlen of every Garside prefix");
  traj->add_option("input", input, "Artin word file or braid JSON")->required();
  traj->add_option("--n", n, "Strand count");
  traj->add_option("--mod", modulus, "Coefficient modulus (0 for the integers)");
  traj->add_option("--out-dir", out_dir, "Write trajectory.csv here instead of stdout");

  ScatterConfig scatter;
  auto* sample = app.add_subcommand("sample", "Garside length vs projlen/2 for random braids");
  sample->add_option("--n", scatter.n, "Strand count");
  sample->add_option("--max-len", scatter.max_length, "Largest Garside length");
  sample->add_option("--per-len", scatter.per_length, "Samples per Garside length");
  sample->add_option("--mod", scatter.modulus, "Coefficient modulus (0 for the integers)");
  sample->add_option("--seed", scatter.seed, "RNG seed");
  sample->add_option("--out-dir", out_dir, "Write scatter.csv here instead of stdout");

  std::string target;
  auto* forced = app.add_subcommand("forced-analyze", "Forced run and discovery probability of a target");
  forced->add_option("config", config_path, "Search config JSON")->required();
  forced->add_option("target", target, "Target braid (word file or JSON)")->required();
  add_search_flags(forced, overrides);

  int slices = 2;
  auto* features = app.add_subcommand("features", "Zero-one coefficient patterns of a braid's matrix");
  features->add_option("input", input, "Artin word file or braid JSON")->required();
  features->add_option("--n", n, "Strand count");
  features->add_option("--mod", modulus, "Coefficient modulus (0 for the integers)");
  features->add_option("--slices", slices, "Slices kept at each end");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*verify) return cmd_verify(input, n, modulus);
    if (*gnf) return cmd_gnf(input, n);
    if (*search) return cmd_search(config_path, overrides);
    if (*mc_cmd) return cmd_mc_search(config_path, overrides, mc);
    if (*traj) return cmd_trajectory(input, n, modulus, out_dir);
    if (*sample) return cmd_sample(scatter, out_dir);
    if (*forced) return cmd_forced_analyze(config_path, target, overrides);
    if (*features) return cmd_features(input, n, modulus, slices);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}

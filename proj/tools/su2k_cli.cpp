// su2k - braid compiler for SU(2)_k anyon models.
//
// Subcommands: ebm (print generators), compile (run one search), verify
// (replay golden fixtures), sweep (batch compile to CSV).
//
// Exit codes: 0 success, 1 usage error, 2 fixture verification failure,
// 3 exhaustive budget refusal.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "su2k/driver.hpp"

namespace {

using namespace su2k;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerifyFailed = 2;
constexpr int kExitBudget = 3;

driver::Encoding parse_encoding(const std::string& s) {
  if (s == "one_qubit" || s == "1q") return driver::Encoding::one_qubit;
  if (s == "two_qubit" || s == "2q") return driver::Encoding::two_qubit;
  throw driver::UsageError("unknown encoding '" + s + "' (one_qubit | two_qubit)");
}

driver::Target parse_target(const std::string& s) {
  if (s == "H" || s == "h") return driver::Target::h;
  if (s == "T" || s == "t") return driver::Target::t;
  if (s == "custom") return driver::Target::custom;
  if (s == "cnot" || s == "CNOT") return driver::Target::cnot_class;
  if (s == "swap" || s == "SWAP") return driver::Target::swap_class;
  throw driver::UsageError("unknown target '" + s + "' (H | T | custom | cnot | swap)");
}

search::Engine parse_engine(const std::string& s) {
  if (s == "exhaustive") return search::Engine::exhaustive;
  if (s == "ga") return search::Engine::ga;
  if (s == "sk") return search::Engine::sk;
  throw driver::UsageError("unknown engine '" + s + "' (exhaustive | ga | sk)");
}

/// Custom gate file: JSON 2x2 array of [re, im] pairs.
Mat2 load_target_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw driver::UsageError("cannot open target file " + path);
  nlohmann::json j;
  in >> j;
  if (!j.is_array() || j.size() != 2) throw driver::UsageError("target file must be a 2x2 array");
  Mat2 m;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      const auto& cell = j.at(std::size_t(r)).at(std::size_t(c));
      m(r, c) = cplx{cell.at(0).get<double>(), cell.at(1).get<double>()};
    }
  if (m.unitarity_error() > 1e-8) throw driver::UsageError("target matrix is not unitary");
  return m;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& s) {
  std::vector<std::uint64_t> seeds;
  std::string item;
  std::istringstream ss(s);
  while (std::getline(ss, item, ','))
    if (!item.empty()) seeds.push_back(std::stoull(item));
  if (seeds.empty()) throw driver::UsageError("empty seed list");
  return seeds;
}

void parse_range(const std::string& s, int& lo, int& hi) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) {
    lo = hi = std::stoi(s);
    return;
  }
  lo = std::stoi(s.substr(0, colon));
  hi = std::stoi(s.substr(colon + 1));
}

void write_or_print(const std::optional<std::string>& out_path, const std::string& content) {
  if (!out_path) {
    std::fputs(content.c_str(), stdout);
    return;
  }
  std::ofstream out(*out_path, std::ios::binary);
  if (!out) throw driver::UsageError("cannot open output file " + *out_path);
  out << content;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"su2k - braid compiler for SU(2)_k anyon models"};
  app.require_subcommand(1);

  // Shared options (applied per subcommand where relevant).
  int k = 5;
  std::string encoding = "one_qubit";
  std::string target = "H";
  std::string engine = "ga";
  int length = 30;
  int sk_level = 0;
  bool inverses = false;
  std::uint64_t seed = 1;
  int threads = 0;
  std::string config_path;
  std::string out_path;
  std::string target_file;

  auto add_model_opts = [&](CLI::App* cmd) {
    cmd->add_option("--k", k, "model level (k >= 3)");
    cmd->add_option("--encoding", encoding, "one_qubit | two_qubit");
  };

  CLI::App* ebm = app.add_subcommand("ebm", "print the elementary braiding matrices");
  add_model_opts(ebm);
  ebm->add_option("--out", out_path, "write to file instead of stdout");

  CLI::App* compile = app.add_subcommand("compile", "compile one target gate or class");
  add_model_opts(compile);
  compile->add_option("--target", target, "H | T | custom | cnot | swap");
  compile->add_option("--target-file", target_file, "JSON 2x2 matrix for --target custom");
  compile->add_option("--engine", engine, "exhaustive | ga | sk");
  compile->add_option("--length", length, "word length (exhaustive/ga)");
  compile->add_option("--sk-level", sk_level, "recursion depth (sk)");
  compile->add_flag("--inverses", inverses, "include inverse generators in the alphabet");
  compile->add_option("--seed", seed, "search seed");
  compile->add_option("--config", config_path, "key=value config file");
  compile->add_option("--threads", threads, "worker threads (0 = hardware)");
  compile->add_option("--out", out_path, "result record file (default stdout)");

  CLI::App* verify = app.add_subcommand("verify", "replay the golden fixtures");
  std::string fixtures_path = "data/golden_su2k.txt";
  verify->add_option("--fixtures", fixtures_path, "fixture file path");

  CLI::App* sweep = app.add_subcommand("sweep", "batch compile over a length or level range");
  std::vector<int> sweep_k{5};
  std::string sweep_lengths, sweep_levels, seeds_text = "1";
  int threshold = -1;
  sweep->add_option("--k", sweep_k, "model level(s)");
  sweep->add_option("--encoding", encoding, "one_qubit | two_qubit");
  sweep->add_option("--target", target, "H | T | cnot | swap");
  sweep->add_option("--lengths", sweep_lengths, "length range lo:hi");
  sweep->add_option("--sk-levels", sweep_levels, "SK level range lo:hi (one-qubit)");
  sweep->add_option("--seeds", seeds_text, "comma-separated seed list");
  sweep->add_option("--threshold", threshold,
                    "exhaustive/ga switchover length (default 13, or 7 with inverses)");
  sweep->add_flag("--inverses", inverses, "include inverse generators");
  sweep->add_option("--config", config_path, "key=value config file");
  sweep->add_option("--threads", threads, "worker threads (0 = hardware)");
  sweep->add_option("--out", out_path, "CSV output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (ebm->parsed()) {
      const std::string text = driver::describe_generators(k, parse_encoding(encoding));
      write_or_print(out_path.empty() ? std::nullopt : std::make_optional(out_path), text);
      return kExitOk;
    }

    if (compile->parsed()) {
      driver::RunConfig cfg;
      if (!config_path.empty())
        driver::apply_config_file(config_path, cfg);
      else if (auto env = driver::default_config_path())
        driver::apply_config_file(*env, cfg);
      cfg.k = k;
      cfg.encoding = parse_encoding(encoding);
      cfg.target = parse_target(target);
      cfg.engine = parse_engine(engine);
      if (compile->count("--length")) cfg.length = length;
      if (compile->count("--sk-level")) cfg.sk_level = sk_level;
      if (compile->count("--inverses")) cfg.include_inverses = inverses;
      if (compile->count("--seed")) cfg.search.rng_seed = seed;
      if (compile->count("--threads")) cfg.threads = threads;
      if (!target_file.empty()) cfg.custom_target = load_target_matrix(target_file);

      const driver::CompileOutcome outcome = driver::run_compile(cfg);
      write_or_print(out_path.empty() ? std::nullopt : std::make_optional(out_path),
                     outcome.record);
      std::fprintf(stderr, "compiled %s -> word of %zu letters, distance %.6e (%.0f ms, %llu evaluations)\n",
                   driver::target_name(cfg.target), outcome.result.word.size(),
                   outcome.result.distance, outcome.result.wall_ms,
                   static_cast<unsigned long long>(outcome.result.evaluations));
      return kExitOk;
    }

    if (verify->parsed()) {
      const auto data = fixtures::load_golden(fixtures_path);
      const auto report = fixtures::verify_golden(data);
      report.print(stdout);
      return report.passed() ? kExitOk : kExitVerifyFailed;
    }

    if (sweep->parsed()) {
      driver::SweepSpec spec;
      driver::RunConfig base;  // reused for config-file search settings
      if (!config_path.empty())
        driver::apply_config_file(config_path, base);
      else if (auto env = driver::default_config_path())
        driver::apply_config_file(*env, base);
      spec.search = base.search;
      spec.leakage_weight = base.leakage_weight;
      spec.budget = base.budget;
      spec.k_values = sweep_k;
      spec.encoding = parse_encoding(encoding);
      spec.target = parse_target(target);
      spec.include_inverses = inverses;
      spec.seeds = parse_seed_list(seeds_text);
      if (sweep->count("--threads"))
        spec.threads = threads;
      else if (base.threads > 0)
        spec.threads = base.threads;
      if (threshold >= 0) spec.threshold = threshold;
      if (!sweep_lengths.empty() && !sweep_levels.empty())
        throw driver::UsageError("choose either --lengths or --sk-levels");
      if (!sweep_levels.empty()) {
        spec.sk_levels = true;
        parse_range(sweep_levels, spec.point_min, spec.point_max);
      } else if (!sweep_lengths.empty()) {
        parse_range(sweep_lengths, spec.point_min, spec.point_max);
      } else {
        throw driver::UsageError("sweep needs --lengths or --sk-levels");
      }

      const auto rows = driver::run_sweep(spec, stderr);
      std::string csv = driver::sweep_csv_header() + "\n";
      for (const auto& row : rows) csv += driver::sweep_csv_row(row) + "\n";
      write_or_print(out_path.empty() ? std::nullopt : std::make_optional(out_path), csv);
      return kExitOk;
    }
  } catch (const search::BudgetExceeded& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitBudget;
  } catch (const driver::UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}

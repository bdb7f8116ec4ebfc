#pragma once

// Command-driver layer shared by the CLI and the test suites: run
// configuration (defaults < config file < flags), compile/sweep execution,
// and the serialized record formats.
//
// Result records are deterministic byte for byte for a fixed seed: they
// carry no wall-clock fields (timing goes to the human-readable summary and
// to sweep rows, which are measurements rather than results).

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "su2k/anyonmodel.hpp"
#include "su2k/fixtures.hpp"
#include "su2k/metrics.hpp"
#include "su2k/parallel.hpp"
#include "su2k/search.hpp"

namespace su2k::driver {

enum class Encoding { one_qubit, two_qubit };
enum class Target { h, t, custom, cnot_class, swap_class };

inline const char* encoding_name(Encoding e) {
  return e == Encoding::one_qubit ? "one_qubit" : "two_qubit";
}

inline const char* target_name(Target t) {
  switch (t) {
    case Target::h: return "H";
    case Target::t: return "T";
    case Target::custom: return "custom";
    case Target::cnot_class: return "CNOT";
    case Target::swap_class: return "SWAP";
  }
  return "?";
}

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  int k = 5;
  Encoding encoding = Encoding::one_qubit;
  Target target = Target::h;
  std::optional<Mat2> custom_target;  // required when target == custom
  search::Engine engine = search::Engine::ga;
  int length = 30;    // exhaustive / ga
  int sk_level = 0;   // sk
  bool include_inverses = false;
  search::SearchConfig search;
  double leakage_weight = 0.0;  // optional lambda * dU penalty (two-qubit)
  double budget = 2.2e9;        // exhaustive candidate budget
  int sk_level_cap = 3;
  int threads = 0;  // 0 = hardware

  void validate() const {
    if (k < 3) throw UsageError("model level must be k >= 3");
    const bool one_qubit_target =
        target == Target::h || target == Target::t || target == Target::custom;
    if (one_qubit_target != (encoding == Encoding::one_qubit))
      throw UsageError("target/encoding mismatch: H, T and custom need one_qubit; "
                       "CNOT and SWAP classes need two_qubit");
    if (target == Target::custom && !custom_target)
      throw UsageError("custom target requires a target matrix file");
    if (engine == search::Engine::sk) {
      if (encoding != Encoding::one_qubit) throw UsageError("sk engine is one-qubit only");
      if (!include_inverses) throw UsageError("sk engine requires --inverses");
      if (sk_level < 0 || sk_level > sk_level_cap)
        throw UsageError("sk level outside [0, " + std::to_string(sk_level_cap) +
                         "] (raise sk_level_cap to go deeper)");
    } else if (length < 1) {
      throw UsageError("length must be >= 1");
    }
    search.validate();
  }
};

// --- config file ---------------------------------------------------

/// Plain key=value files; '#' starts a comment. Unknown keys are rejected so
/// typos do not silently fall back to defaults.
inline void apply_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      std::istringstream rest(line);
      std::string word;
      if (rest >> word)
        throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
      continue;
    }
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t");
      const auto b = s.find_last_not_of(" \t");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "population")
        cfg.search.population_size = std::stoi(value);
      else if (key == "mutation_prob")
        cfg.search.mutation_prob = std::stod(value);
      else if (key == "crossovers")
        cfg.search.crossovers_per_generation = std::stoi(value);
      else if (key == "survivors")
        cfg.search.survivors = std::stoi(value);
      else if (key == "generations")
        cfg.search.generations = std::stoi(value);
      else if (key == "base_length")
        cfg.search.base_length = std::stoi(value);
      else if (key == "seed")
        cfg.search.rng_seed = std::stoull(value);
      else if (key == "threads")
        cfg.threads = std::stoi(value);
      else if (key == "budget")
        cfg.budget = std::stod(value);
      else if (key == "leakage_weight")
        cfg.leakage_weight = std::stod(value);
      else if (key == "sk_level_cap")
        cfg.sk_level_cap = std::stoi(value);
      else
        throw UsageError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    } catch (const std::invalid_argument&) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": bad value for '" + key + "'");
    }
  }
}

/// Config path resolution: explicit flag wins, then the SU2K_CONFIG
/// environment variable.
inline std::optional<std::string> default_config_path() {
  if (const char* env = std::getenv("SU2K_CONFIG")) return std::string(env);
  return std::nullopt;
}

// --- compile ---------------------------------------------------

struct CompileOutcome {
  search::CompilationResult result;
  int n_generators = 2;
  std::string record;  // serialized JSON, newline-terminated
};

namespace detail {

inline Mat2 one_qubit_target_matrix(const RunConfig& cfg) {
  switch (cfg.target) {
    case Target::h: return metrics::hadamard();
    case Target::t: return metrics::t_gate();
    case Target::custom: return *cfg.custom_target;
    default: throw UsageError("not a one-qubit target");
  }
}

inline search::Objective<5> two_qubit_objective(const RunConfig& cfg) {
  const metrics::ClassTarget target = cfg.target == Target::cnot_class
                                          ? metrics::ClassTarget::cnot()
                                          : metrics::ClassTarget::swap();
  const double lambda = cfg.leakage_weight;
  return [target, lambda](const Mat5& b) {
    const BlockSplit split = split_blocks(b);
    if (std::abs(split.a.determinant()) <= 1e-6) return 1e9;  // invariants undefined
    double value = metrics::class_distance(split.a, target);
    if (lambda > 0.0) value += lambda * metrics::leakage_metrics(b).du;
    return value;
  };
}

inline nlohmann::ordered_json search_json(const search::SearchConfig& s) {
  return {{"population", s.population_size},
          {"mutation_prob", s.mutation_prob},
          {"crossovers", s.crossovers_per_generation},
          {"survivors", s.survivors},
          {"generations", s.generations},
          {"base_length", s.base_length}};
}

}  // namespace detail

inline CompileOutcome run_compile(const RunConfig& cfg) {
  cfg.validate();
  AnyonModel model(cfg.k);

  search::CompilationResult result;
  int n_generators = 0;
  if (cfg.encoding == Encoding::one_qubit) {
    const auto gens = one_qubit_generators(model, 1, cfg.include_inverses ||
                                                        cfg.engine == search::Engine::sk);
    n_generators = gens.generator_count();
    const Mat2 target = detail::one_qubit_target_matrix(cfg);
    const search::Objective<2> objective = [&target](const Mat2& u) {
      return metrics::phase_distance<2>(u, target);
    };
    switch (cfg.engine) {
      case search::Engine::exhaustive:
        result = search::exhaustive_search<2>(gens, cfg.length, objective, cfg.budget,
                                              cfg.threads);
        break;
      case search::Engine::ga:
        result = search::ga_search<2>(gens, cfg.length, objective, cfg.search, cfg.threads);
        break;
      case search::Engine::sk:
        result = search::solovay_kitaev(target, cfg.sk_level, gens, cfg.search, cfg.threads);
        break;
    }
  } else {
    const auto gens = two_qubit_generators(model, cfg.include_inverses);
    n_generators = gens.generator_count();
    const auto objective = detail::two_qubit_objective(cfg);
    switch (cfg.engine) {
      case search::Engine::exhaustive:
        result = search::exhaustive_search<5>(gens, cfg.length, objective, cfg.budget,
                                              cfg.threads);
        break;
      case search::Engine::ga:
        result = search::ga_search<5>(gens, cfg.length, objective, cfg.search, cfg.threads);
        break;
      case search::Engine::sk:
        throw UsageError("sk engine is one-qubit only");
    }
    result.leakage = metrics::leakage_metrics(evaluate_braidword(result.word, gens));
  }

  nlohmann::ordered_json record{
      {"schema", "su2k-result-1"},
      {"k", cfg.k},
      {"encoding", encoding_name(cfg.encoding)},
      {"engine", search::engine_name(result.engine)},
      {"target", target_name(cfg.target)},
      {"include_inverses", cfg.include_inverses},
  };
  if (cfg.engine == search::Engine::sk)
    record["sk_level"] = result.sk_level;
  else
    record["length"] = cfg.length;
  record["seed"] = cfg.search.rng_seed;
  record["search"] = detail::search_json(cfg.search);
  if (cfg.encoding == Encoding::two_qubit) record["leakage_weight"] = cfg.leakage_weight;
  record["word"] = to_string(result.word, n_generators);
  record["word_length"] = result.word.size();
  record["distance"] = result.distance;
  if (result.leakage) {
    record["m11"] = result.leakage->m11;
    record["dU"] = result.leakage->du;
  }
  record["evaluations"] = result.evaluations;

  CompileOutcome outcome;
  outcome.result = std::move(result);
  outcome.n_generators = n_generators;
  outcome.record = record.dump(2) + "\n";
  return outcome;
}

// --- sweep ---------------------------------------------------

struct SweepSpec {
  std::vector<int> k_values{5};
  Encoding encoding = Encoding::two_qubit;
  Target target = Target::cnot_class;
  bool include_inverses = false;
  bool sk_levels = false;       // points are SK levels instead of lengths
  int point_min = 1, point_max = 13;
  std::vector<std::uint64_t> seeds{1};
  // Engine split per point: exhaustive up to the threshold, GA above. The
  // default mirrors the feasibility edge: five extra inverse generators cut
  // exhaustive reach from length 13 down to 7.
  std::optional<int> threshold;
  search::SearchConfig search;
  double leakage_weight = 0.0;
  double budget = 2.2e9;
  int threads = 0;

  int effective_threshold() const {
    if (threshold) return *threshold;
    return include_inverses ? 7 : 13;
  }
};

struct SweepRow {
  int k = 0;
  Encoding encoding = Encoding::two_qubit;
  search::Engine engine = search::Engine::ga;
  int point = 0;  // length, or SK level when the spec sweeps levels
  std::uint64_t seed = 0;
  bool failed = false;
  double distance = 0.0;
  std::optional<metrics::LeakageReport> leakage;
  double wall_ms = 0.0;
};

inline std::string sweep_csv_header() {
  return "model_k,encoding,engine,length,seed,distance,m11,dU,wall_ms";
}

inline std::string sweep_csv_row(const SweepRow& row) {
  char buf[256];
  std::string out = std::to_string(row.k);
  out += ",";
  out += encoding_name(row.encoding);
  out += ",";
  out += search::engine_name(row.engine);
  out += "," + std::to_string(row.point) + "," + std::to_string(row.seed) + ",";
  if (row.failed) {
    out += "nan";
  } else {
    std::snprintf(buf, sizeof buf, "%.17g", row.distance);
    out += buf;
  }
  out += ",";
  if (row.leakage) {
    std::snprintf(buf, sizeof buf, "%.17g", row.leakage->m11);
    out += buf;
  }
  out += ",";
  if (row.leakage) {
    std::snprintf(buf, sizeof buf, "%.17g", row.leakage->du);
    out += buf;
  }
  std::snprintf(buf, sizeof buf, ",%.0f", row.wall_ms);
  out += buf;
  return out;
}

/// Runs every (model, point, seed) combination. Points run concurrently;
/// rows come back in deterministic nesting order (k, point, seed).
/// Exhaustive points are seed-independent and computed once per point, then
/// replicated per seed. Failures are recorded per row and do not stop the
/// sweep.
inline std::vector<SweepRow> run_sweep(const SweepSpec& spec,
                                       std::FILE* progress = nullptr) {
  if (spec.point_min > spec.point_max) throw UsageError("empty sweep range");
  if (spec.seeds.empty()) throw UsageError("sweep needs at least one seed");
  if (spec.sk_levels && spec.encoding != Encoding::one_qubit)
    throw UsageError("sk-level sweeps are one-qubit only");

  struct Task {
    int k;
    int point;
  };
  std::vector<Task> tasks;
  for (const int k : spec.k_values)
    for (int p = spec.point_min; p <= spec.point_max; ++p) tasks.push_back({k, p});

  std::vector<std::vector<SweepRow>> per_task(tasks.size());
  parallel_for(tasks.size(), spec.threads, [&](std::size_t ti) {
    const Task task = tasks[ti];
    auto& rows = per_task[ti];
    RunConfig cfg;
    cfg.k = task.k;
    cfg.encoding = spec.encoding;
    cfg.target = spec.target;
    cfg.include_inverses = spec.include_inverses;
    cfg.search = spec.search;
    cfg.leakage_weight = spec.leakage_weight;
    cfg.budget = spec.budget;
    cfg.threads = 1;  // concurrency lives at the task level
    if (spec.sk_levels) {
      cfg.engine = search::Engine::sk;
      cfg.sk_level = task.point;
      cfg.include_inverses = true;
    } else {
      cfg.engine = task.point <= spec.effective_threshold() ? search::Engine::exhaustive
                                                            : search::Engine::ga;
      cfg.length = task.point;
    }

    const bool seed_independent = cfg.engine == search::Engine::exhaustive;
    for (std::size_t si = 0; si < (seed_independent ? 1 : spec.seeds.size()); ++si) {
      SweepRow row;
      row.k = task.k;
      row.encoding = spec.encoding;
      row.engine = cfg.engine;
      row.point = task.point;
      row.seed = spec.seeds[si];
      cfg.search.rng_seed = spec.seeds[si];
      try {
        const CompileOutcome outcome = run_compile(cfg);
        row.distance = outcome.result.distance;
        row.leakage = outcome.result.leakage;
        row.wall_ms = outcome.result.wall_ms;
      } catch (const std::exception& e) {
        row.failed = true;
        if (progress) std::fprintf(progress, "sweep point k=%d p=%d: %s\n", task.k, task.point, e.what());
      }
      rows.push_back(row);
    }
    if (seed_independent)
      for (std::size_t si = 1; si < spec.seeds.size(); ++si) {
        rows.push_back(rows.front());
        rows.back().seed = spec.seeds[si];
      }
    if (progress) std::fprintf(progress, "sweep point k=%d p=%d done\n", task.k, task.point);
  });

  std::vector<SweepRow> rows;
  for (auto& r : per_task) rows.insert(rows.end(), r.begin(), r.end());
  return rows;
}

// --- generator printing ---------------------------------------------------

inline std::string format_complex(cplx v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%+.8f%+.8fi", v.real(), v.imag());
  return buf;
}

template <int Dim>
std::string format_matrix(const Matrix<Dim>& m, const char* indent = "  ") {
  std::string out;
  for (int r = 0; r < Dim; ++r) {
    out += indent;
    out += "[";
    for (int c = 0; c < Dim; ++c) {
      out += format_complex(m(r, c));
      if (c + 1 < Dim) out += "  ";
    }
    out += "]\n";
  }
  return out;
}

template <int Dim>
double braid_relation_residual(const GeneratorSet<Dim>& gens) {
  double worst = 0.0;
  const int n = gens.generator_count();
  for (int i = 0; i + 1 < n; ++i)
    worst = std::max(worst,
                     (gens.sigma[i] * gens.sigma[i + 1] * gens.sigma[i])
                         .frobenius_distance(gens.sigma[i + 1] * gens.sigma[i] * gens.sigma[i + 1]));
  for (int i = 0; i < n; ++i)
    for (int j = i + 2; j < n; ++j)
      worst = std::max(worst, (gens.sigma[i] * gens.sigma[j])
                                  .frobenius_distance(gens.sigma[j] * gens.sigma[i]));
  return worst;
}

/// Text dump of the generator matrices for one model/encoding, 8 fractional
/// digits, plus unitarity and braid-relation residuals.
inline std::string describe_generators(int k, Encoding encoding) {
  AnyonModel model(k);
  std::string out = "SU(2)_" + std::to_string(k) + " " + encoding_name(encoding) +
                    " braid generators\n";
  if (!model.braiding_universal())
    out += "note: braiding alone is not computationally universal at k = 4\n";
  double unit = 0.0, braid = 0.0;
  if (encoding == Encoding::one_qubit) {
    const auto gens = one_qubit_generators(model);
    out += "basis {|0>, |1>} = pair fusion channels {0, 2}\n";
    for (int i = 0; i < gens.generator_count(); ++i) {
      out += "sigma_" + std::to_string(i + 1) + ":\n" + format_matrix(gens.sigma[i]);
      unit = std::max(unit, gens.sigma[i].unitarity_error());
    }
    braid = braid_relation_residual(gens);
  } else {
    const auto gens = two_qubit_generators(model);
    out += "basis {NC, |00>, |01>, |10>, |11>}\n";
    for (int i = 0; i < gens.generator_count(); ++i) {
      out += "sigma_" + std::to_string(i + 1) + ":\n" + format_matrix(gens.sigma[i]);
      unit = std::max(unit, gens.sigma[i].unitarity_error());
    }
    braid = braid_relation_residual(gens);
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "unitarity residual: %.3e\nbraid relation residual: %.3e\n", unit,
                braid);
  out += buf;
  return out;
}

}  // namespace su2k::driver

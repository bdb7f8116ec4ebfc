#pragma once

// The three compilation engines: pruned exhaustive enumeration over fixed
// word lengths, a genetic search over braidwords, and the group-commutator
// recursion that lifts a coarse one-qubit approximation to exponentially
// accurate ones.

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cstdio>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "su2k/anyonmodel.hpp"
#include "su2k/braidword.hpp"
#include "su2k/matrix.hpp"
#include "su2k/metrics.hpp"
#include "su2k/parallel.hpp"

namespace su2k::search {

template <int Dim>
using Objective = std::function<double(const Matrix<Dim>&)>;

enum class Engine { exhaustive, ga, sk };

inline const char* engine_name(Engine e) {
  switch (e) {
    case Engine::exhaustive: return "exhaustive";
    case Engine::ga: return "ga";
    case Engine::sk: return "sk";
  }
  return "?";
}

struct SearchConfig {
  int population_size = 1000;
  double mutation_prob = 0.03;          // per-letter substitution probability
  int crossovers_per_generation = 500;  // offspring per generation
  int survivors = 200;                  // truncation-selection keep count
  int generations = 200;
  int base_length = 30;  // word length for level-0 approximations
  std::uint64_t rng_seed = 1;

  void validate() const {
    if (population_size <= 0 || crossovers_per_generation <= 0 || generations <= 0 ||
        survivors <= 0 || base_length < 1)
      throw std::invalid_argument("SearchConfig: all counts must be positive");
    if (survivors > population_size)
      throw std::invalid_argument("SearchConfig: survivors must not exceed population size");
    if (mutation_prob < 0.0 || mutation_prob > 1.0)
      throw std::invalid_argument("SearchConfig: mutation probability outside [0, 1]");
  }
};

struct CompilationResult {
  Braidword word;
  double distance = 0.0;
  std::optional<metrics::LeakageReport> leakage;  // two-qubit runs only
  Engine engine = Engine::exhaustive;
  int sk_level = -1;  // >= 0 for SK results
  double wall_ms = 0.0;
  std::uint64_t evaluations = 0;
};

/// Thrown when a projected exhaustive enumeration exceeds the candidate
/// budget; the caller should fall back to the GA engine.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GcDegenerate : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Unbiased-enough uniform index draw (multiply-shift on the raw 64 bits).
inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  return std::size_t((static_cast<unsigned __int128>(rng()) * n) >> 64);
}

inline double uniform_unit(std::mt19937_64& rng) {
  return double(rng() >> 11) * 0x1.0p-53;
}

struct Candidate {
  std::vector<std::int8_t> codes;
  double fitness = std::numeric_limits<double>::infinity();
};

inline bool candidate_less(const Candidate& a, const Candidate& b) {
  if (a.fitness != b.fitness) return a.fitness < b.fitness;
  return a.codes < b.codes;
}

template <int Dim>
Braidword word_from_codes(const std::vector<std::int8_t>& codes, const GeneratorSet<Dim>& gens) {
  Braidword w;
  w.letters.reserve(codes.size());
  for (const std::int8_t c : codes) w.letters.push_back(letter_from_code(c, gens.generator_count()));
  return w;
}

}  // namespace detail

// --- exhaustive enumeration ---------------------------------------------------

inline double projected_candidates(int alphabet, int length, bool prune_inverses) {
  double total = double(alphabet);
  for (int i = 1; i < length; ++i) total *= prune_inverses ? double(alphabet - 1) : double(alphabet);
  return total;
}

/// Minimizes the objective over every word of exactly the given length.
/// Words containing an adjacent generator/inverse pair are skipped (their
/// matrices duplicate shorter words). Ties break to the lexicographically
/// smallest word. The prefix partition makes the parallel run reduce to the
/// sequential result bit for bit.
template <int Dim>
CompilationResult exhaustive_search(const GeneratorSet<Dim>& gens, int length,
                                    const Objective<Dim>& objective,
                                    double candidate_budget = 2.2e9, int threads = 1) {
  if (length < 1) throw std::invalid_argument("exhaustive_search: length must be >= 1");
  const int alphabet = gens.alphabet_size();
  const bool prune = gens.include_inverses;
  const double projected = projected_candidates(alphabet, length, prune);
  if (projected > candidate_budget) {
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "exhaustive_search: %.3g candidates exceed budget %.3g; use the ga engine for "
                  "this length",
                  projected, candidate_budget);
    throw BudgetExceeded(msg);
  }

  const auto t0 = std::chrono::steady_clock::now();

  struct Partial {
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::int8_t> word;
    std::uint64_t evals = 0;
  };
  std::vector<Partial> partials(static_cast<std::size_t>(alphabet));

  parallel_for(std::size_t(alphabet), threads, [&](std::size_t first) {
    Partial& out = partials[first];
    std::vector<std::int8_t> codes(std::size_t(length), 0);
    std::vector<Matrix<Dim>> prefix(std::size_t(length) + 1);
    prefix[0] = Matrix<Dim>::identity();
    codes[0] = std::int8_t(first);
    prefix[1] = prefix[0] * gens.letter_matrix(int(first));
    int depth = 1;  // letters fixed so far; extend depth-first in lex order
    while (true) {
      if (depth == length) {
        const double value = objective(prefix[std::size_t(depth)]);
        ++out.evals;
        if (value < out.best) {
          out.best = value;
          out.word = codes;
        }
        // Backtrack to the deepest position (> 0) that can still advance.
        int pos = depth - 1;
        while (pos > 0 && codes[std::size_t(pos)] == alphabet - 1) --pos;
        if (pos == 0) break;
        for (;;) {
          if (codes[std::size_t(pos)] == alphabet - 1) {
            if (--pos == 0) break;
            continue;
          }
          ++codes[std::size_t(pos)];
          if (prune && inverse_code(codes[std::size_t(pos)], gens.generator_count()) ==
                           codes[std::size_t(pos - 1)])
            continue;
          break;
        }
        if (pos == 0) break;
        prefix[std::size_t(pos) + 1] =
            prefix[std::size_t(pos)] * gens.letter_matrix(codes[std::size_t(pos)]);
        depth = pos + 1;
        continue;
      }
      // Descend with the smallest admissible letter.
      int c = 0;
      if (prune)
        while (c < alphabet && inverse_code(c, gens.generator_count()) == codes[std::size_t(depth - 1)])
          ++c;
      codes[std::size_t(depth)] = std::int8_t(c);
      prefix[std::size_t(depth) + 1] = prefix[std::size_t(depth)] * gens.letter_matrix(c);
      ++depth;
    }
  });

  CompilationResult result;
  result.engine = Engine::exhaustive;
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::int8_t> word;
  for (const Partial& p : partials) {
    result.evaluations += p.evals;
    if (p.best < best) {
      best = p.best;
      word = p.word;
    }
  }
  if (word.empty()) throw std::logic_error("exhaustive_search: empty search space");
  result.word = detail::word_from_codes(word, gens);
  result.distance = best;
  result.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

// --- genetic search ---------------------------------------------------

namespace detail {

/// Uniform letter draw avoiding one forbidden code (or none if < 0).
inline std::int8_t draw_letter(std::mt19937_64& rng, int alphabet, int forbidden) {
  if (forbidden < 0 || forbidden >= alphabet)
    return std::int8_t(uniform_index(rng, std::size_t(alphabet)));
  int c = int(uniform_index(rng, std::size_t(alphabet - 1)));
  if (c >= forbidden) ++c;
  return std::int8_t(c);
}

/// Random word free of adjacent generator/inverse pairs. Nearly every plain
/// random word contains such a pair and therefore collapses to a shorter
/// word; sampling without them covers the target group markedly better at
/// the same budget.
inline std::vector<std::int8_t> random_word(std::mt19937_64& rng, int length, int alphabet,
                                            int n_gens) {
  std::vector<std::int8_t> w(static_cast<std::size_t>(length));
  int prev = -1;
  for (auto& c : w) {
    const int forbidden = (prev >= 0 && alphabet > n_gens) ? inverse_code(prev, n_gens) : -1;
    c = draw_letter(rng, alphabet, forbidden);
    prev = c;
  }
  return w;
}

/// Single-splice crossover; the cut point may sit at either end, so two
/// identical parents always reproduce themselves.
inline std::vector<std::int8_t> crossover(const std::vector<std::int8_t>& a,
                                          const std::vector<std::int8_t>& b,
                                          std::mt19937_64& rng) {
  const std::size_t cut = uniform_index(rng, a.size() + 1);
  std::vector<std::int8_t> child(a.begin(), a.begin() + long(cut));
  child.insert(child.end(), b.begin() + long(cut), b.end());
  return child;
}

/// Per-letter substitution with probability `prob`; replacements avoid
/// cancelling against the letter to the left.
inline void mutate(std::vector<std::int8_t>& w, double prob, int alphabet, int n_gens,
                   std::mt19937_64& rng) {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (uniform_unit(rng) < prob) {
      const int forbidden =
          (i > 0 && alphabet > n_gens) ? inverse_code(w[i - 1], n_gens) : -1;
      w[i] = draw_letter(rng, alphabet, forbidden);
    }
}

}  // namespace detail

/// Genetic search over fixed-length words: random initial population, then
/// per generation `crossovers_per_generation` spliced-and-mutated offspring,
/// truncation selection of the best `survivors`, and a refill with fresh
/// random words. Returns the best individual ever seen. Fully deterministic
/// for a given seed; fitness evaluation may be parallel (it is pure).
template <int Dim>
CompilationResult ga_search(const GeneratorSet<Dim>& gens, int length,
                            const Objective<Dim>& objective, const SearchConfig& cfg,
                            int threads = 1) {
  cfg.validate();
  if (length < 1) throw std::invalid_argument("ga_search: length must be >= 1");
  const auto t0 = std::chrono::steady_clock::now();
  const int alphabet = gens.alphabet_size();
  std::mt19937_64 rng(detail::splitmix64(cfg.rng_seed));

  std::uint64_t evals = 0;
  auto evaluate_all = [&](std::vector<detail::Candidate>& pool, std::size_t from) {
    parallel_for(pool.size() - from, threads, [&](std::size_t i) {
      detail::Candidate& c = pool[from + i];
      c.fitness = objective(evaluate_codes(c.codes, gens));
    });
    evals += pool.size() - from;
  };

  std::vector<detail::Candidate> population(static_cast<std::size_t>(cfg.population_size));
  for (auto& c : population) c.codes = detail::random_word(rng, length, alphabet, gens.generator_count());
  evaluate_all(population, 0);

  detail::Candidate best = *std::min_element(population.begin(), population.end(),
                                             detail::candidate_less);

  std::vector<detail::Candidate> pool;
  double monitored_best = best.fitness;  // best-so-far must never worsen
  for (int gen = 0; gen < cfg.generations; ++gen) {
    pool = population;
    pool.resize(population.size() + std::size_t(cfg.crossovers_per_generation));
    for (int t = 0; t < cfg.crossovers_per_generation; ++t) {
      const auto& pa = population[detail::uniform_index(rng, population.size())];
      const auto& pb = population[detail::uniform_index(rng, population.size())];
      auto child = detail::crossover(pa.codes, pb.codes, rng);
      detail::mutate(child, cfg.mutation_prob, alphabet, gens.generator_count(), rng);
      pool[population.size() + std::size_t(t)].codes = std::move(child);
    }
    evaluate_all(pool, population.size());

    std::sort(pool.begin(), pool.end(), detail::candidate_less);
    if (detail::candidate_less(pool.front(), best)) best = pool.front();

    population.assign(pool.begin(), pool.begin() + cfg.survivors);
    const std::size_t refill_from = population.size();
    population.resize(std::size_t(cfg.population_size));
    for (std::size_t i = refill_from; i < population.size(); ++i)
      population[i].codes = detail::random_word(rng, length, alphabet, gens.generator_count());
    evaluate_all(population, refill_from);
    for (std::size_t i = refill_from; i < population.size(); ++i)
      if (detail::candidate_less(population[i], best)) best = population[i];

    assert(best.fitness <= monitored_best);
    monitored_best = best.fitness;
  }
  (void)monitored_best;

  CompilationResult result;
  result.engine = Engine::ga;
  result.word = detail::word_from_codes(best.codes, gens);
  result.distance = best.fitness;
  result.evaluations = evals;
  result.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

// --- group-commutator decomposition ---------------------------------------------------

struct GcPair {
  Mat2 v;
  Mat2 w;
  double theta = 0.0;  // rotation angle of the input
  double phi = 0.0;    // common rotation angle of v and w
};

namespace detail {

struct AxisAngle {
  double theta = 0.0;          // in [0, 2*pi)
  double nx = 0, ny = 0, nz = 1;
};

/// su(2) axis-angle decomposition U = cos(t/2) I - i sin(t/2) n.sigma.
inline AxisAngle axis_angle(const Mat2& u) {
  AxisAngle a;
  const double c = 0.5 * (u(0, 0) + u(1, 1)).real();
  double sx = -0.5 * (u(0, 1) + u(1, 0)).imag();
  double sy = 0.5 * (u(1, 0) - u(0, 1)).real();
  double sz = -0.5 * (u(0, 0) - u(1, 1)).imag();
  const double s = std::sqrt(sx * sx + sy * sy + sz * sz);
  a.theta = 2.0 * std::atan2(s, c);
  if (s > 1e-300) {
    a.nx = sx / s;
    a.ny = sy / s;
    a.nz = sz / s;
  }
  return a;
}

inline Mat2 rotation(double nx, double ny, double nz, double angle) {
  const double c = std::cos(angle / 2.0), s = std::sin(angle / 2.0);
  const cplx i{0.0, 1.0};
  Mat2 u;
  u(0, 0) = c - i * s * nz;
  u(0, 1) = -i * s * nx - s * ny;
  u(1, 0) = -i * s * nx + s * ny;
  u(1, 1) = c + i * s * nz;
  return u;
}

/// f(phi) = 2 sin^2(phi/2) sqrt(1 - sin^4(phi/2)), the commutator rotation
/// angle relation sin(theta/2) = f(phi). Rises from 0 to 1 on [0, phi*] and
/// falls back to 0 on [phi*, pi], phi* = 2 asin(2^{-1/4}).
inline double gc_angle_relation(double phi) {
  const double s2 = std::pow(std::sin(phi / 2.0), 2);
  return 2.0 * s2 * std::sqrt(1.0 - s2 * s2);
}

inline double solve_gc_phi(double theta) {
  const double target = std::sin(theta / 2.0);
  const double phi_star = 2.0 * std::asin(std::pow(2.0, -0.25));
  // cos(theta/2) >= 0 picks the rising branch, < 0 the falling one.
  double lo, hi;
  const bool rising = std::cos(theta / 2.0) >= 0.0;
  if (rising) {
    lo = 0.0;
    hi = phi_star;
  } else {
    lo = phi_star;
    hi = std::numbers::pi;
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const bool below = rising ? (gc_angle_relation(mid) < target) : (gc_angle_relation(mid) > target);
    (below ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Rotation mapping unit vector m onto unit vector n.
inline Mat2 axis_aligner(const AxisAngle& m, const AxisAngle& n) {
  const double dot = m.nx * n.nx + m.ny * n.ny + m.nz * n.nz;
  double cx = m.ny * n.nz - m.nz * n.ny;
  double cy = m.nz * n.nx - m.nx * n.nz;
  double cz = m.nx * n.ny - m.ny * n.nx;
  const double cl = std::sqrt(cx * cx + cy * cy + cz * cz);
  if (cl < 1e-14) {
    if (dot > 0.0) return Mat2::identity();
    // Antiparallel: rotate by pi about any axis orthogonal to m.
    double px = -m.ny, py = m.nx, pz = 0.0;
    double pl = std::sqrt(px * px + py * py);
    if (pl < 1e-7) {
      px = 0.0;
      py = -m.nz;
      pz = m.ny;
      pl = std::sqrt(py * py + pz * pz);
    }
    return rotation(px / pl, py / pl, pz / pl, std::numbers::pi);
  }
  return rotation(cx / cl, cy / cl, cz / cl, std::atan2(cl, dot));
}

}  // namespace detail

/// Factors a special-unitary delta as V W V^dag W^dag with V, W rotations by
/// a common angle phi about conjugated orthogonal axes. delta = -I has no
/// well-defined axis and is rejected.
inline GcPair gc_decompose(const Mat2& delta) {
  if (std::abs(delta.determinant() - cplx{1.0, 0.0}) > 1e-10)
    throw std::invalid_argument("gc_decompose: input must be special-unitary");
  const detail::AxisAngle target = detail::axis_angle(delta);
  if (std::cos(target.theta / 2.0) < -1.0 + 1e-12)
    throw GcDegenerate("gc_decompose: delta = -I has no unique axis");

  GcPair pair;
  pair.theta = target.theta;
  if (std::abs(std::sin(target.theta / 2.0)) < 1e-18) {
    pair.v = Mat2::identity();
    pair.w = Mat2::identity();
    return pair;
  }
  pair.phi = detail::solve_gc_phi(target.theta);
  const Mat2 v0 = detail::rotation(1, 0, 0, pair.phi);
  const Mat2 w0 = detail::rotation(0, 1, 0, pair.phi);
  const Mat2 commutator = v0 * w0 * v0.dagger() * w0.dagger();
  const Mat2 s = detail::axis_aligner(detail::axis_angle(commutator), target);
  pair.v = s * v0 * s.dagger();
  pair.w = s * w0 * s.dagger();
  return pair;
}

// --- Solovay-Kitaev ---------------------------------------------------

namespace detail {

struct SkApprox {
  Braidword word;
  Mat2 matrix;
};

struct SkRecursion {
  const GeneratorSet<2>& gens;
  const SearchConfig& cfg;
  int threads;
  std::uint64_t ga_counter = 0;
  std::uint64_t evaluations = 0;
  std::vector<SkApprox>* levels = nullptr;  // per-level trace of the main chain

  using Approx = SkApprox;

  Approx basic_approximation(const Mat2& target) {
    SearchConfig level0 = cfg;
    level0.rng_seed = splitmix64(cfg.rng_seed ^ (0xa24baed4963ee407ULL + ga_counter));
    ++ga_counter;
    const Objective<2> objective = [&target](const Mat2& u) {
      return metrics::phase_distance<2>(u, target);
    };
    CompilationResult r = ga_search(gens, cfg.base_length, objective, level0, threads);
    evaluations += r.evaluations;
    return {r.word, evaluate_braidword(r.word, gens)};
  }

  /// Appends the single letter that best improves the approximation; used to
  /// escape the (never observed in practice) delta = -I degeneracy.
  Approx perturb(const Approx& a, const Mat2& target) {
    Approx best;
    double best_d = std::numeric_limits<double>::infinity();
    for (int code = 0; code < gens.alphabet_size(); ++code) {
      Approx cand = a;
      cand.word.letters.push_back(letter_from_code(code, gens.generator_count()));
      cand.matrix = cand.matrix * gens.letter_matrix(code);
      const double d = metrics::phase_distance<2>(cand.matrix, target);
      if (d < best_d) {
        best_d = d;
        best = cand;
      }
    }
    return best;
  }

  Approx run(const Mat2& target, int level, bool main_chain) {
    if (level == 0) {
      Approx a = basic_approximation(target);
      if (main_chain && levels) levels->push_back(a);
      return a;
    }
    Approx below = run(target, level - 1, main_chain);
    GcPair gc;
    for (int attempt = 0;; ++attempt) {
      try {
        gc = gc_decompose(metrics::su2_project(target * below.matrix.dagger()));
        break;
      } catch (const GcDegenerate&) {
        if (attempt >= 3) throw;
        below = perturb(below, target);
      }
    }
    const Approx v = run(gc.v, level - 1, false);
    const Approx w = run(gc.w, level - 1, false);

    Approx result;
    result.word = v.word;
    result.word.append(w.word).append(v.word.inverse()).append(w.word.inverse()).append(below.word);
    result.matrix =
        v.matrix * w.matrix * v.matrix.dagger() * w.matrix.dagger() * below.matrix;
    if (main_chain && levels) levels->push_back(result);
    return result;
  }
};

}  // namespace detail

/// GA-enhanced Solovay-Kitaev: level 0 is a genetic basic approximation of
/// length cfg.base_length; level n applies the group-commutator correction
/// V_{n-1} W_{n-1} V_{n-1}^dag W_{n-1}^dag U_{n-1}. Word length grows
/// exactly fivefold per level. Returns one result per level 0..level.
inline std::vector<CompilationResult> solovay_kitaev_levels(const Mat2& target, int level,
                                                            const GeneratorSet<2>& gens,
                                                            const SearchConfig& cfg,
                                                            int threads = 1) {
  cfg.validate();
  if (level < 0) throw std::invalid_argument("solovay_kitaev: level must be >= 0");
  if (!gens.include_inverses)
    throw std::invalid_argument("solovay_kitaev: generator set must include inverses");
  const auto t0 = std::chrono::steady_clock::now();

  detail::SkRecursion rec{gens, cfg, threads};
  std::vector<detail::SkApprox> levels;
  rec.levels = &levels;
  rec.run(target, level, true);

  const double wall =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  std::vector<CompilationResult> out;
  out.reserve(levels.size());
  for (std::size_t n = 0; n < levels.size(); ++n) {
    CompilationResult r;
    r.engine = Engine::sk;
    r.sk_level = int(n);
    r.word = levels[n].word;
    // Reported distance re-evaluates the stored word end to end.
    r.distance = metrics::phase_distance<2>(evaluate_braidword(r.word, gens), target);
    r.evaluations = rec.evaluations;
    r.wall_ms = wall;
    out.push_back(std::move(r));
  }
  return out;
}

inline CompilationResult solovay_kitaev(const Mat2& target, int level, const GeneratorSet<2>& gens,
                                        const SearchConfig& cfg, int threads = 1) {
  auto levels = solovay_kitaev_levels(target, level, gens, cfg, threads);
  return std::move(levels.back());
}

}  // namespace su2k::search

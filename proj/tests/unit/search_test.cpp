#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "su2k/anyonmodel.hpp"
#include "su2k/metrics.hpp"
#include "su2k/search.hpp"

using namespace su2k;
using namespace su2k::search;
namespace sdetail = su2k::search::detail;

namespace {

/// Independent oracle: plain odometer over every word of the given length
/// (no pruning, no incremental products).
template <int Dim>
double brute_force_min(const GeneratorSet<Dim>& gens, int length, const Objective<Dim>& obj) {
  const int alphabet = gens.alphabet_size();
  std::vector<int> codes(std::size_t(length), 0);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    Matrix<Dim> u = Matrix<Dim>::identity();
    for (const int c : codes) u = u * gens.letter_matrix(c);
    best = std::min(best, obj(u));
    int pos = length - 1;
    while (pos >= 0 && codes[std::size_t(pos)] == alphabet - 1) {
      codes[std::size_t(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++codes[std::size_t(pos)];
  }
  return best;
}

Mat2 seeded_unitary(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double a = 2.0 * std::numbers::pi * uni(rng);
  double nx = uni(rng) - 0.5, ny = uni(rng) - 0.5, nz = uni(rng) - 0.5;
  const double len = std::sqrt(nx * nx + ny * ny + nz * nz) ;
  return sdetail::rotation(nx / len, ny / len, nz / len, a);
}

}  // namespace

TEST_CASE("exhaustive search finds a single-letter target") {
  AnyonModel model(5);
  const auto gens = one_qubit_generators(model, 1, true);
  const Mat2 target = gens.sigma[0];
  const auto r = exhaustive_search<2>(
      gens, 1, [&](const Mat2& u) { return metrics::phase_distance<2>(u, target); });
  CHECK(to_string(r.word, 2) == "A");
  CHECK(r.distance < 1e-7);  // metric floor near sqrt(eps)
  CHECK(r.evaluations == 4);
}

TEST_CASE("pruned enumeration agrees with the unpruned oracle") {
  AnyonModel model(5);
  // One qubit with inverses: pruning active.
  {
    const auto gens = one_qubit_generators(model, 1, true);
    for (std::uint64_t seed : {101ull, 202ull, 303ull}) {
      const Mat2 target = seeded_unitary(seed);
      const Objective<2> obj = [&](const Mat2& u) {
        return metrics::phase_distance<2>(u, target);
      };
      for (int length : {3, 5}) {
        const double oracle = brute_force_min<2>(gens, length, obj);
        const auto r = exhaustive_search<2>(gens, length, obj);
        CHECK(r.distance == doctest::Approx(oracle).epsilon(1e-12));
        CHECK(r.distance >= oracle);  // pruning only removes duplicates
      }
    }
  }
  // Two qubits without inverses: every word enumerated.
  {
    const auto gens = two_qubit_generators(model, false);
    const Objective<5> obj = [](const Mat5& b) {
      return metrics::class_distance(split_blocks(b).a, metrics::ClassTarget::swap());
    };
    for (int length : {3, 4}) {
      const double oracle = brute_force_min<5>(gens, length, obj);
      const auto r = exhaustive_search<5>(gens, length, obj);
      CHECK(r.distance == doctest::Approx(oracle).epsilon(1e-12));
      CHECK(r.evaluations == std::uint64_t(std::pow(5, length)));
    }
  }
}

TEST_CASE("exhaustive tie-break picks the lexicographically smallest word") {
  AnyonModel model(5);
  const auto gens = one_qubit_generators(model, 1, true);
  // Constant objective: everything ties; the first word in lex order wins.
  const auto r = exhaustive_search<2>(gens, 3, [](const Mat2&) { return 1.0; });
  CHECK(to_string(r.word, 2) == "AAA");
}

TEST_CASE("exhaustive search refuses blown budgets") {
  AnyonModel model(5);
  const auto gens = two_qubit_generators(model, false);
  CHECK_THROWS_AS(exhaustive_search<5>(
                      gens, 20, [](const Mat5&) { return 0.0; }, 1e6),
                  BudgetExceeded);
}

TEST_CASE("parallel exhaustive equals the sequential run") {
  AnyonModel model(5);
  const auto gens = one_qubit_generators(model, 1, true);
  const Mat2 target = seeded_unitary(7);
  const Objective<2> obj = [&](const Mat2& u) { return metrics::phase_distance<2>(u, target); };
  const auto serial = exhaustive_search<2>(gens, 6, obj, 2.2e9, 1);
  const auto parallel = exhaustive_search<2>(gens, 6, obj, 2.2e9, 3);
  CHECK(serial.distance == parallel.distance);
  CHECK(serial.word == parallel.word);
  CHECK(serial.evaluations == parallel.evaluations);
}

TEST_CASE("ga determinism and trivial membership") {
  AnyonModel model(5);
  const auto gens = one_qubit_generators(model, 1, true);
  const Mat2 target = gens.sigma[0] * gens.sigma[1];
  const Objective<2> obj = [&](const Mat2& u) { return metrics::phase_distance<2>(u, target); };
  SearchConfig cfg;
  cfg.population_size = 400;
  cfg.survivors = 80;
  cfg.crossovers_per_generation = 100;
  cfg.generations = 5;
  cfg.rng_seed = 9;
  const auto a = ga_search<2>(gens, 2, obj, cfg);
  const auto b = ga_search<2>(gens, 2, obj, cfg);
  CHECK(a.word == b.word);
  CHECK(a.distance == b.distance);
  CHECK(a.evaluations == b.evaluations);
  // 400 random 2-letter words over a 16-letter square: the exact target word
  // is already in the initial population for this seed.
  CHECK(a.distance < 1e-7);
  CHECK(to_string(a.word, 2) == "AB");

  cfg.rng_seed = 10;
  const auto c = ga_search<2>(gens, 2, obj, cfg);
  CHECK(c.distance < 1e-7);  // same optimum, possibly via another seed path
}

TEST_CASE("parallel ga fitness evaluation equals the sequential run") {
  AnyonModel model(6);
  const auto gens = one_qubit_generators(model, 1, true);
  const Mat2 target = metrics::hadamard();
  const Objective<2> obj = [&](const Mat2& u) { return metrics::phase_distance<2>(u, target); };
  SearchConfig cfg;
  cfg.population_size = 200;
  cfg.survivors = 40;
  cfg.crossovers_per_generation = 60;
  cfg.generations = 4;
  cfg.rng_seed = 77;
  const auto serial = ga_search<2>(gens, 12, obj, cfg, 1);
  const auto parallel = ga_search<2>(gens, 12, obj, cfg, 4);
  CHECK(serial.word == parallel.word);
  CHECK(serial.distance == parallel.distance);
}

TEST_CASE("crossover of identical parents reproduces the parent") {
  std::mt19937_64 rng(1);
  const std::vector<std::int8_t> parent{0, 3, 1, 2, 2, 0, 1};
  for (int trial = 0; trial < 20; ++trial)
    CHECK(sdetail::crossover(parent, parent, rng) == parent);
}

TEST_CASE("random words avoid adjacent cancellation pairs") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const auto w = sdetail::random_word(rng, 40, 4, 2);
    for (std::size_t i = 1; i < w.size(); ++i)
      CHECK(int(w[i]) != inverse_code(w[i - 1], 2));
  }
}

TEST_CASE("gc decomposition") {
  CHECK_THROWS_AS(gc_decompose(Mat2::identity().scaled(2.0)), std::invalid_argument);
  CHECK_THROWS_AS(gc_decompose(Mat2::identity().scaled(-1.0)), GcDegenerate);
  {
    const auto pair = gc_decompose(Mat2::identity());
    CHECK(pair.theta == 0.0);
    CHECK(pair.phi == 0.0);
    CHECK(pair.v.max_abs_diff(Mat2::identity()) == 0.0);
  }
  {
    // The angle relation has phi = 0 as its unique root at theta = 0.
    CHECK(sdetail::solve_gc_phi(0.0) < 1e-15);
  }
  std::mt19937_64 rng(5);
  std::normal_distribution<double> gauss;
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    double nx = gauss(rng), ny = gauss(rng), nz = gauss(rng);
    const double len = std::sqrt(nx * nx + ny * ny + nz * nz);
    const double theta =
        trial == 0 ? 0.2 : std::numbers::pi * double(rng() >> 11) * 0x1.0p-53;
    const Mat2 delta = sdetail::rotation(nx / len, ny / len, nz / len, theta);
    const auto pair = gc_decompose(delta);
    const Mat2 rebuilt = pair.v * pair.w * pair.v.dagger() * pair.w.dagger();
    worst = std::max(worst, rebuilt.frobenius_distance(delta));
    CHECK(std::abs(pair.v.determinant() - cplx{1.0, 0.0}) < 1e-12);
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("gc decomposition covers the reflex branch") {
  // Commutators of rotations past phi* produce angles beyond pi; the solver
  // must land on the falling branch of the angle relation.
  for (double phi : {2.3, 2.8, 3.0}) {
    const Mat2 v0 = sdetail::rotation(1, 0, 0, phi);
    const Mat2 w0 = sdetail::rotation(0, 1, 0, phi);
    const Mat2 delta = v0 * w0 * v0.dagger() * w0.dagger();
    const auto pair = gc_decompose(delta);
    const Mat2 rebuilt = pair.v * pair.w * pair.v.dagger() * pair.w.dagger();
    CHECK(rebuilt.frobenius_distance(delta) < 1e-10);
  }
}

TEST_CASE("solovay-kitaev word length law and determinism") {
  AnyonModel model(5);
  const auto gens = one_qubit_generators(model, 1, true);
  SearchConfig cfg;
  cfg.population_size = 60;
  cfg.survivors = 20;
  cfg.crossovers_per_generation = 30;
  cfg.generations = 3;
  cfg.base_length = 6;
  cfg.rng_seed = 4;
  const auto levels = solovay_kitaev_levels(metrics::t_gate(), 2, gens, cfg);
  REQUIRE(levels.size() == 3);
  for (int n = 0; n <= 2; ++n) {
    CHECK(levels[std::size_t(n)].sk_level == n);
    CHECK(levels[std::size_t(n)].word.size() == std::size_t(6 * std::pow(5, n)));
  }
  const auto again = solovay_kitaev(metrics::t_gate(), 2, gens, cfg);
  CHECK(again.word == levels[2].word);
  CHECK(again.distance == levels[2].distance);

  // Reported distance equals re-evaluating the stored word.
  const Mat2 u = evaluate_braidword(again.word, gens);
  CHECK(again.distance == metrics::phase_distance<2>(u, metrics::t_gate()));

  const auto no_inverses = one_qubit_generators(model, 1, false);
  CHECK_THROWS_AS(solovay_kitaev(metrics::t_gate(), 1, no_inverses, cfg),
                  std::invalid_argument);
}

TEST_CASE("solovay-kitaev level 0 reaches an in-space target") {
  AnyonModel model(5);
  const auto gens = one_qubit_generators(model, 1, true);
  SearchConfig cfg;
  cfg.population_size = 600;
  cfg.survivors = 100;
  cfg.crossovers_per_generation = 200;
  cfg.generations = 4;
  cfg.base_length = 2;
  cfg.rng_seed = 21;
  const Mat2 target = gens.sigma[1] * gens.sigma[0].dagger();
  const auto r = solovay_kitaev(target, 0, gens, cfg);
  CHECK(r.distance < 1e-7);
  CHECK(r.word.size() == 2);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "su2k/anyonmodel.hpp"
#include "su2k/metrics.hpp"

using namespace su2k;
using namespace su2k::metrics;

namespace {

Mat2 random_unitary2(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double a = 2.0 * std::numbers::pi * uni(rng);
  const double phase = 2.0 * std::numbers::pi * uni(rng);
  double nx, ny, nz, len;
  do {
    nx = uni(rng) - 0.5;
    ny = uni(rng) - 0.5;
    nz = uni(rng) - 0.5;
    len = std::sqrt(nx * nx + ny * ny + nz * nz);
  } while (len < 0.1);
  nx /= len;
  ny /= len;
  nz /= len;
  const double c = std::cos(a / 2), s = std::sin(a / 2);
  const cplx i{0.0, 1.0};
  Mat2 u;
  u(0, 0) = c - i * s * nz;
  u(0, 1) = -i * s * nx - s * ny;
  u(1, 0) = -i * s * nx + s * ny;
  u(1, 1) = c + i * s * nz;
  return u.scaled(std::polar(1.0, phase));
}

// Equality up to one global phase, resolved at machine precision (the metric
// itself bottoms out near sqrt(eps) because of the square root).
template <int Dim>
double aligned_distance(const Matrix<Dim>& a, const Matrix<Dim>& b) {
  int br = 0, bc = 0;
  double best = -1.0;
  for (int r = 0; r < Dim; ++r)
    for (int c = 0; c < Dim; ++c)
      if (std::abs(b(r, c)) > best) {
        best = std::abs(b(r, c));
        br = r;
        bc = c;
      }
  const cplx ratio = a(br, bc) / b(br, bc);
  return a.max_abs_diff(b.scaled(ratio / std::abs(ratio)));
}

Mat4 random_unitary4(std::mt19937_64& rng) {
  // Gram-Schmidt on a random complex Gaussian matrix.
  std::normal_distribution<double> gauss;
  Mat4 m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = cplx{gauss(rng), gauss(rng)};
  for (int c = 0; c < 4; ++c) {
    for (int prev = 0; prev < c; ++prev) {
      cplx dot = 0.0;
      for (int r = 0; r < 4; ++r) dot += std::conj(m(r, prev)) * m(r, c);
      for (int r = 0; r < 4; ++r) m(r, c) -= dot * m(r, prev);
    }
    double norm = 0.0;
    for (int r = 0; r < 4; ++r) norm += std::norm(m(r, c));
    norm = std::sqrt(norm);
    for (int r = 0; r < 4; ++r) m(r, c) /= norm;
  }
  return m;
}

}  // namespace

TEST_CASE("phase distance basics") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const Mat2 u = random_unitary2(rng);
    const Mat2 v = random_unitary2(rng);
    const double d = phase_invariant_distance(u, v);
    CHECK(d >= 0.0);
    CHECK(d <= 1.0);
    // The square root floors the metric near sqrt(eps) for identical gates.
    CHECK(phase_invariant_distance(u, u) < 1e-7);
    CHECK(aligned_distance(u, u) == 0.0);
    const double alpha = 2.0 * std::numbers::pi * (trial + 1) / 101.0;
    CHECK(std::abs(phase_invariant_distance(u.scaled(std::polar(1.0, alpha)), v) - d) < 1e-12);
  }
}

TEST_CASE("published 30-letter H approximation reproduces its distance") {
  AnyonModel model(5);
  const auto gens = one_qubit_generators(model, 1, true);
  const Mat2 u = evaluate_braidword(parse_braidword("ADCCDCDABBADCCDABBBADADDDAAAAA", 2), gens);
  CHECK(phase_invariant_distance(u, hadamard()) == doctest::Approx(0.01197934).epsilon(1e-4));
}

TEST_CASE("bell transform") {
  CHECK(bell_transform(Mat4::identity()).max_abs_diff(Mat4::identity()) < 1e-15);
  CHECK(bell_q().unitarity_error() < 1e-15);
  CHECK(bell_transform(bell_q()).max_abs_diff(bell_q()) < 1e-15);
}

TEST_CASE("local invariants of the reference gates") {
  const auto gc = local_invariants(cnot_gate());
  CHECK(std::abs(gc.g1 - 0.0) < 1e-12);
  CHECK(std::abs(gc.g2 - 0.0) < 1e-12);
  CHECK(std::abs(gc.g3 - 1.0) < 1e-12);
  const auto gs = local_invariants(swap_gate());
  CHECK(std::abs(gs.g1 + 1.0) < 1e-12);
  CHECK(std::abs(gs.g2 - 0.0) < 1e-12);
  CHECK(std::abs(gs.g3 + 3.0) < 1e-12);
  // Hand oracle for the identity: m = I, tr^2 = 16, det = 1, tr(m^2) = 4.
  const auto gi = local_invariants(Mat4::identity());
  CHECK(std::abs(gi.g1 - 1.0) < 1e-12);
  CHECK(std::abs(gi.g2 - 0.0) < 1e-12);
  CHECK(std::abs(gi.g3 - 3.0) < 1e-12);
}

TEST_CASE("local invariants ignore one-qubit dressings") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const Mat4 a = random_unitary4(rng);
    const auto base = local_invariants(a);
    const Mat4 dressed = kron(random_unitary2(rng), random_unitary2(rng)) * a *
                         kron(random_unitary2(rng), random_unitary2(rng));
    const auto g = local_invariants(dressed);
    CHECK(std::abs(g.g1 - base.g1) < 1e-9);
    CHECK(std::abs(g.g2 - base.g2) < 1e-9);
    CHECK(std::abs(g.g3 - base.g3) < 1e-9);
  }
}

TEST_CASE("class distance is a faithful separation") {
  CHECK(class_distance(cnot_gate(), ClassTarget::cnot()) < 1e-24);
  CHECK(class_distance(swap_gate(), ClassTarget::swap()) < 1e-24);
  CHECK(class_distance(cnot_gate(), ClassTarget::swap()) > 1.0);
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const Mat4 a = random_unitary4(rng);
    const double d = class_distance(a, ClassTarget::cnot());
    CHECK(d >= 0.0);
    const auto g = local_invariants(a);
    const bool matches = std::abs(g.g1) < 1e-12 && std::abs(g.g2) < 1e-12 &&
                         std::abs(g.g3 - 1.0) < 1e-12;
    CHECK((d < 3e-24) == matches);
  }
  CHECK_THROWS_AS(local_invariants(Mat4{}), std::invalid_argument);
}

TEST_CASE("published class-distance anchors") {
  {
    AnyonModel model(5);
    const auto gens = two_qubit_generators(model);
    const Mat5 b = evaluate_braidword(parse_braidword("CDBACEBDC", 5), gens);
    CHECK(class_distance(split_blocks(b).a, ClassTarget::swap()) < 1e-28);
  }
  {
    AnyonModel model(7);
    const auto gens = two_qubit_generators(model);
    const Mat5 b = evaluate_braidword(parse_braidword("CBADCBEDC", 5), gens);
    CHECK(class_distance(split_blocks(b).a, ClassTarget::swap()) < 1e-28);
  }
}

TEST_CASE("leakage metrics") {
  AnyonModel model(5);
  const auto gens = two_qubit_generators(model);
  {
    // No middle exchange touched: block-diagonal, no leakage.
    const Mat5 b = evaluate_braidword(parse_braidword("ABDEEDBA", 5), gens);
    const auto leak = leakage_metrics(b);
    CHECK(std::abs(leak.m11 - 1.0) < 1e-12);
    CHECK(leak.du < 1e-12);
  }
  {
    const auto leak = leakage_metrics(gens.sigma[2]);
    CHECK(leak.m11 == doctest::Approx(0.44504187).epsilon(1e-7));
  }
  {
    const Mat5 b = evaluate_braidword(parse_braidword("CDBACEBDC", 5), gens);
    const auto leak = leakage_metrics(b);
    CHECK(std::abs(leak.m11 - 1.0) < 1e-12);
    CHECK(leak.du < 1e-12);
  }
  // Cross-check: dU ~ 0 exactly when the off-block amplitudes vanish.
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    Braidword w;
    for (int i = 0; i < 12; ++i) w.letters.push_back(letter_from_code(int(rng() % 5), 5));
    const Mat5 b = evaluate_braidword(w, gens);
    double off = 0.0;
    for (int j = 1; j < 5; ++j) off += std::norm(b(0, j));
    const auto leak = leakage_metrics(b);
    CHECK((leak.du <= 1e-12) == (off <= 1e-12));
  }
}

TEST_CASE("su2 projection") {
  CHECK(su2_project(Mat2::identity()).max_abs_diff(Mat2::identity()) < 1e-15);
  CHECK(su2_project(Mat2::identity().scaled(std::polar(1.0, 1.2345)))
            .max_abs_diff(Mat2::identity()) < 1e-12);
  AnyonModel model(5);
  const auto gens = one_qubit_generators(model);
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const Mat2 u = trial == 0 ? gens.sigma[0] : random_unitary2(rng);
    const Mat2 v = su2_project(u);
    CHECK(std::abs(v.determinant() - cplx{1.0, 0.0}) < 1e-12);
    CHECK(phase_invariant_distance(v, u) < 1e-7);
    CHECK(aligned_distance(v, u) < 1e-12);  // only a global phase was removed
    CHECK(v.trace().real() >= -1e-12);
  }
}

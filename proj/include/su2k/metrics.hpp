#pragma once

// Figures of merit for compiled gates: the global-phase-invariant one-qubit
// distance, Bell-basis local invariants of two-qubit blocks, distances to
// the [CNOT]/[SWAP] local-equivalence classes, and leakage metrics for the
// five-dimensional braid matrices.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "su2k/anyonmodel.hpp"
#include "su2k/matrix.hpp"

namespace su2k::metrics {

/// d(U0, U) = sqrt(1 - |Tr(U0 U^dag)| / dim). Ignores global phase; tiny
/// negative radicands from round-off clamp to zero.
template <int Dim>
double phase_distance(const Matrix<Dim>& u0, const Matrix<Dim>& u) {
  const double overlap = std::abs((u0 * u.dagger()).trace()) / double(Dim);
  const double radicand = 1.0 - overlap;
  if (radicand < 0.0) {
    if (radicand < -1e-12)
      throw std::logic_error("phase_distance: radicand below round-off tolerance");
    return 0.0;
  }
  return std::min(std::sqrt(radicand), 1.0);
}

inline double phase_invariant_distance(const Mat2& u0, const Mat2& u) {
  return phase_distance<2>(u0, u);
}

// --- standard gates ---------------------------------------------------

inline Mat2 hadamard() {
  Mat2 h;
  const double s = 1.0 / std::numbers::sqrt2;
  h(0, 0) = s;
  h(0, 1) = s;
  h(1, 0) = s;
  h(1, 1) = -s;
  return h;
}

inline Mat2 t_gate() {
  Mat2 t;
  t(0, 0) = 1.0;
  t(1, 1) = std::polar(1.0, std::numbers::pi / 4.0);
  return t;
}

inline Mat4 cnot_gate() {
  Mat4 g;
  g(0, 0) = 1.0;
  g(1, 1) = 1.0;
  g(2, 3) = 1.0;
  g(3, 2) = 1.0;
  return g;
}

inline Mat4 swap_gate() {
  Mat4 g;
  g(0, 0) = 1.0;
  g(1, 2) = 1.0;
  g(2, 1) = 1.0;
  g(3, 3) = 1.0;
  return g;
}

// --- local invariants ---------------------------------------------------

/// The Bell-basis change Q (entries +-1, +-i over sqrt 2).
inline Mat4 bell_q() {
  Mat4 q;
  const double s = 1.0 / std::numbers::sqrt2;
  const cplx i{0.0, 1.0};
  q(0, 0) = s;
  q(0, 3) = i * s;
  q(1, 1) = i * s;
  q(1, 2) = s;
  q(2, 1) = i * s;
  q(2, 2) = -s;
  q(3, 0) = s;
  q(3, 3) = -i * s;
  return q;
}

inline Mat4 bell_transform(const Mat4& u) {
  static const Mat4 q = bell_q();
  static const Mat4 qd = bell_q().dagger();
  return qd * u * q;
}

/// Real triple (g1, g2, g3) identifying a two-qubit local-equivalence class.
struct LocalInvariants {
  double g1 = 0.0;
  double g2 = 0.0;
  double g3 = 0.0;
};

/// Makhlin invariants of a (near-)invertible 4x4 block:
///   m = U_B^T U_B,  g1 + i g2 = tr(m)^2 / (16 det U),
///   g3 = (tr(m)^2 - tr(m^2)) / (4 det U).
/// The transpose in m is essential: the conjugate form collapses every
/// unitary to the identity class.
inline LocalInvariants local_invariants(const Mat4& a) {
  const cplx det = a.determinant();
  if (std::abs(det) <= 1e-6)
    throw std::invalid_argument("local_invariants: block is near-singular");
  const Mat4 ub = bell_transform(a);
  const Mat4 m = ub.transpose() * ub;
  const cplx tr = m.trace();
  cplx tr_m2 = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) tr_m2 += m(i, j) * m(j, i);
  const cplx g12 = tr * tr / (16.0 * det);
  const cplx g3 = (tr * tr - tr_m2) / (4.0 * det);
  return {g12.real(), g12.imag(), g3.real()};
}

/// A named local-equivalence class target.
struct ClassTarget {
  std::string name;
  LocalInvariants g;

  static ClassTarget cnot() { return {"CNOT", {0.0, 0.0, 1.0}}; }
  static ClassTarget swap() { return {"SWAP", {-1.0, 0.0, -3.0}}; }
  static ClassTarget custom(const LocalInvariants& g) { return {"custom", g}; }
};

/// Sum of squared invariant deviations from the target class.
inline double class_distance(const Mat4& a, const ClassTarget& target) {
  const LocalInvariants g = local_invariants(a);
  const double d1 = std::abs(g.g1 - target.g.g1);
  const double d2 = std::abs(g.g2 - target.g.g2);
  const double d3 = std::abs(g.g3 - target.g.g3);
  return d1 * d1 + d2 * d2 + d3 * d3;
}

// --- leakage ---------------------------------------------------

struct LeakageReport {
  double m11 = 0.0;  // |B(0,0)|, magnitude of the non-computational element
  double du = 0.0;   // Tr sqrt(a^dag a) with a = A^dag A - I
};

/// Unitarity metrics of a five-dimensional braid matrix: m11 = 1 and du = 0
/// exactly when no amplitude leaks out of the computational subspace.
inline LeakageReport leakage_metrics(const Mat5& b) {
  const BlockSplit s = split_blocks(b);
  const Mat4 defect = s.a.dagger() * s.a - Mat4::identity();
  // defect is Hermitian, so its singular values are |eigenvalues|.
  double du = 0.0;
  for (const double ev : hermitian_eigenvalues(defect)) du += std::abs(ev);
  return {std::abs(s.nc), du};
}

// --- determinant normalization ---------------------------------------------------

/// U / sqrt(det U) with the branch fixed so the result's trace has
/// non-negative real part (ties broken toward non-negative imaginary part).
/// Distance from the input is zero under the phase-invariant metric.
inline Mat2 su2_project(const Mat2& u) {
  const cplx root = std::sqrt(u.determinant());
  Mat2 v = u.scaled(1.0 / root);
  const cplx tr = v.trace();
  if (tr.real() < 0.0 || (tr.real() == 0.0 && tr.imag() < 0.0)) v = v.scaled(-1.0);
  return v;
}

}  // namespace su2k::metrics

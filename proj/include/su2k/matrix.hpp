#pragma once

// Small fixed-size dense complex matrices. The compiler only ever touches
// 2x2 gates, 4x4 computational blocks and 5x5 two-qubit braid matrices, so
// everything lives on the stack and the loops are left to the optimizer.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>

namespace su2k {

using cplx = std::complex<double>;

template <int Dim>
class Matrix {
  static_assert(Dim >= 2 && Dim <= 32, "unexpected matrix dimension");

 public:
  Matrix() = default;  // zero matrix

  static Matrix identity() {
    Matrix m;
    for (int i = 0; i < Dim; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix diagonal(const std::array<cplx, Dim>& d) {
    Matrix m;
    for (int i = 0; i < Dim; ++i) m(i, i) = d[i];
    return m;
  }

  static constexpr int dim() { return Dim; }

  cplx& operator()(int r, int c) { return e_[std::size_t(r) * Dim + c]; }
  const cplx& operator()(int r, int c) const { return e_[std::size_t(r) * Dim + c]; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix r;
    for (int i = 0; i < Dim; ++i)
      for (int k = 0; k < Dim; ++k) {
        const cplx aik = a(i, k);
        for (int j = 0; j < Dim; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    Matrix r;
    for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] + b.e_[i];
    return r;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    Matrix r;
    for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] - b.e_[i];
    return r;
  }

  Matrix scaled(cplx s) const {
    Matrix r;
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] * s;
    return r;
  }

  Matrix dagger() const {
    Matrix r;
    for (int i = 0; i < Dim; ++i)
      for (int j = 0; j < Dim; ++j) r(i, j) = std::conj((*this)(j, i));
    return r;
  }

  Matrix transpose() const {
    Matrix r;
    for (int i = 0; i < Dim; ++i)
      for (int j = 0; j < Dim; ++j) r(i, j) = (*this)(j, i);
    return r;
  }

  Matrix conjugate() const {
    Matrix r;
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = std::conj(e_[i]);
    return r;
  }

  cplx trace() const {
    cplx t = 0.0;
    for (int i = 0; i < Dim; ++i) t += (*this)(i, i);
    return t;
  }

  /// Determinant via LU with partial pivoting.
  cplx determinant() const {
    Matrix a = *this;
    cplx det = 1.0;
    for (int col = 0; col < Dim; ++col) {
      int pivot = col;
      double best = std::abs(a(col, col));
      for (int r = col + 1; r < Dim; ++r) {
        const double v = std::abs(a(r, col));
        if (v > best) {
          best = v;
          pivot = r;
        }
      }
      if (best == 0.0) return 0.0;
      if (pivot != col) {
        for (int c = 0; c < Dim; ++c) std::swap(a(pivot, c), a(col, c));
        det = -det;
      }
      det *= a(col, col);
      const cplx inv = 1.0 / a(col, col);
      for (int r = col + 1; r < Dim; ++r) {
        const cplx f = a(r, col) * inv;
        if (f == 0.0) continue;
        for (int c = col; c < Dim; ++c) a(r, c) -= f * a(col, c);
      }
    }
    return det;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const cplx& v : e_) s += std::norm(v);
    return std::sqrt(s);
  }

  double frobenius_distance(const Matrix& o) const { return (*this - o).frobenius_norm(); }

  double max_abs_diff(const Matrix& o) const {
    double m = 0.0;
    for (std::size_t i = 0; i < e_.size(); ++i) m = std::max(m, std::abs(e_[i] - o.e_[i]));
    return m;
  }

  /// ‖U†U − I‖_F; zero for exactly unitary matrices.
  double unitarity_error() const { return (dagger() * *this).frobenius_distance(identity()); }

 private:
  std::array<cplx, std::size_t(Dim) * Dim> e_{};
};

using Mat2 = Matrix<2>;
using Mat4 = Matrix<4>;
using Mat5 = Matrix<5>;

template <int A, int B>
Matrix<A * B> kron(const Matrix<A>& a, const Matrix<B>& b) {
  Matrix<A * B> r;
  for (int i = 0; i < A; ++i)
    for (int j = 0; j < A; ++j)
      for (int p = 0; p < B; ++p)
        for (int q = 0; q < B; ++q) r(i * B + p, j * B + q) = a(i, j) * b(p, q);
  return r;
}

/// 1 ⊕ 4 direct sum; the scalar occupies the leading (non-computational) slot.
inline Mat5 direct_sum(cplx head, const Mat4& block) {
  Mat5 r;
  r(0, 0) = head;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r(i + 1, j + 1) = block(i, j);
  return r;
}

/// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi sweeps.
/// Deterministic and plenty accurate for the tiny dimensions used here.
template <int Dim>
std::array<double, Dim> hermitian_eigenvalues(Matrix<Dim> a) {
  // Shed round-off asymmetry once up front.
  for (int r = 0; r < Dim; ++r) {
    a(r, r) = a(r, r).real();
    for (int c = r + 1; c < Dim; ++c) {
      const cplx avg = 0.5 * (a(r, c) + std::conj(a(c, r)));
      a(r, c) = avg;
      a(c, r) = std::conj(avg);
    }
  }
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int r = 0; r < Dim; ++r)
      for (int c = r + 1; c < Dim; ++c) off += std::norm(a(r, c));
    if (off < 1e-30) break;
    for (int p = 0; p < Dim; ++p)
      for (int q = p + 1; q < Dim; ++q) {
        const cplx apq = a(p, q);
        const double r = std::abs(apq);
        if (r < 1e-300) continue;
        const double phi = std::arg(apq);
        const double theta = 0.5 * std::atan2(2.0 * r, a(p, p).real() - a(q, q).real());
        const double c = std::cos(theta), s = std::sin(theta);
        Matrix<Dim> u = Matrix<Dim>::identity();
        u(p, p) = c;
        u(p, q) = -s * std::polar(1.0, phi);
        u(q, p) = s * std::polar(1.0, -phi);
        u(q, q) = c;
        a = u.dagger() * a * u;
      }
  }
  std::array<double, Dim> ev{};
  for (int i = 0; i < Dim; ++i) ev[i] = a(i, i).real();
  return ev;
}

}  // namespace su2k

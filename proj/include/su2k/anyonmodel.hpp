#pragma once

// Elementary braiding matrices (EBMs) for SU(2)_k anyon models.
//
// One qubit is carried by three spin-1/2 anyons (doubled label 1) with total
// charge 1; the two fusion channels of the leading pair give the logical
// basis {|0>, |1>} = {channel 0, channel 2}. Two qubits use six anyons; the
// five-dimensional fusion space is ordered
//
//   index 0            non-computational state (both triples in channel 3)
//   indices 1..4       |00>, |01>, |10>, |11>  (channels g1,g2 in {0,2})
//
// so every braid matrix splits as B = M + A with M the leading scalar.
//
// Words evaluate left-to-right: U(w) = U(w1) * U(w2) * ... * U(wn). All
// table fixtures reproduce under this convention (the generators are
// complex-symmetric, which makes the reversed convention land on the
// transpose and therefore on identical distances).

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "su2k/braidword.hpp"
#include "su2k/matrix.hpp"
#include "su2k/qalgebra.hpp"

namespace su2k {

class AnyonModel {
 public:
  explicit AnyonModel(int level)
      : level_(level), table_(std::make_shared<qalgebra::SymbolTable>(level)) {
    if (level < 3) throw std::invalid_argument("AnyonModel: requires level k >= 3");
  }

  int level() const { return level_; }

  /// k = 4 (metaplectic) builds fine but braiding alone is not universal
  /// there; callers that rely on dense gate coverage should check this.
  bool braiding_universal() const { return level_ != 4; }

  const qalgebra::SymbolTable& symbols() const { return *table_; }

 private:
  int level_;
  std::shared_ptr<qalgebra::SymbolTable> table_;
};

/// An ordered family of braid generators s1..sn (plus cached inverses).
/// Immutable after construction and freely shareable across threads.
template <int Dim>
struct GeneratorSet {
  std::vector<Matrix<Dim>> sigma;
  std::vector<Matrix<Dim>> sigma_inv;
  bool include_inverses = false;

  int generator_count() const { return int(sigma.size()); }
  int alphabet_size() const { return generator_count() * (include_inverses ? 2 : 1); }

  const Matrix<Dim>& letter_matrix(int code) const {
    const int n = generator_count();
    return code < n ? sigma[std::size_t(code)] : sigma_inv[std::size_t(code - n)];
  }

  const Matrix<Dim>& matrix_for(const BraidLetter& l) const {
    if (l.index < 1 || l.index > generator_count())
      throw std::out_of_range("braid letter index outside generator set");
    return l.power > 0 ? sigma[std::size_t(l.index - 1)] : sigma_inv[std::size_t(l.index - 1)];
  }
};

namespace detail {

template <int Dim>
void finalize_generators(GeneratorSet<Dim>& gens) {
  gens.sigma_inv.clear();
  gens.sigma_inv.reserve(gens.sigma.size());
  for (const auto& s : gens.sigma) {
    if (s.unitarity_error() > 1e-12)
      throw std::logic_error("generator construction produced a non-unitary matrix");
    gens.sigma_inv.push_back(s.dagger());
  }
}

}  // namespace detail

/// One-qubit generators for a 3-anyon encoding. The default anyon is the
/// spin-1/2 label; other self-dual labels whose pair fusion has exactly two
/// channels (e.g. label 4 at k = 5) yield generators equal to the spin-1/2
/// ones up to one global phase each.
inline GeneratorSet<2> one_qubit_generators(const AnyonModel& model, int anyon = 1,
                                            bool include_inverses = false) {
  const int k = model.level();
  const auto& sym = model.symbols();

  std::vector<int> channels;
  for (int c = 0; c <= k; ++c)
    if (qalgebra::is_admissible(anyon, anyon, c, k)) channels.push_back(c);
  if (channels.size() != 2)
    throw std::invalid_argument("one_qubit_generators: anyon label does not carry a qubit");
  const int c0 = channels[0], c1 = channels[1];

  const cplx r0 = sym.r_symbol(anyon, anyon, c0);
  const cplx r1 = sym.r_symbol(anyon, anyon, c1);

  GeneratorSet<2> gens;
  gens.include_inverses = include_inverses;
  gens.sigma.push_back(Mat2::diagonal({r0, r1}));

  // s2 = F^-1 R F with F = [F^{aaa}_a]_{g,h}; F is real orthogonal and
  // symmetric in this gauge, so the explicit transpose form below is exact.
  Mat2 f;
  for (int gi = 0; gi < 2; ++gi)
    for (int hi = 0; hi < 2; ++hi)
      f(gi, hi) = sym.f_symbol(anyon, anyon, anyon, anyon, channels[std::size_t(gi)],
                               channels[std::size_t(hi)]);
  const Mat2 r_diag = Mat2::diagonal({r0, r1});
  gens.sigma.push_back(f * r_diag * f.transpose());

  detail::finalize_generators(gens);
  return gens;
}

/// Two-qubit generators for the 6-anyon encoding. s1, s2, s4, s5 are direct
/// sums of one-qubit blocks; s3 exchanges the middle anyons and couples the
/// non-computational state to |11>.
inline GeneratorSet<5> two_qubit_generators(const AnyonModel& model,
                                            bool include_inverses = false) {
  const auto& sym = model.symbols();
  const GeneratorSet<2> q1 = one_qubit_generators(model);
  const Mat2& s1 = q1.sigma[0];
  const Mat2& s2 = q1.sigma[1];
  const cplx r0 = sym.r_symbol(1, 1, 0);
  const cplx r2 = sym.r_symbol(1, 1, 2);
  const Mat2 id2 = Mat2::identity();

  GeneratorSet<5> gens;
  gens.include_inverses = include_inverses;
  gens.sigma.resize(5);
  gens.sigma[0] = direct_sum(r2, kron(s1, id2));
  gens.sigma[1] = direct_sum(r2, kron(s2, id2));
  gens.sigma[3] = direct_sum(r2, kron(id2, s2));
  gens.sigma[4] = direct_sum(r2, kron(id2, s1));

  // s3: exchanging anyons 3 and 4 re-brackets each basis tree so the middle
  // pair fuses first. For qubit channels (g1, g2) the exchange channel m is
  // forced unless g1 = g2 = 2, where the per-triple charge c in {1, 3}
  // (c = 3 is the non-computational state) mixes through the 2x2 F-block
  // [F^{211}_2]_{c,m}.
  Mat5& s3 = gens.sigma[2];
  s3(1, 1) = r0;  // (g1,g2) = (0,0): m = 0
  s3(2, 2) = r2;  // (0,2): m = 2
  s3(3, 3) = r2;  // (2,0): m = 2
  const int c_states[2] = {1, 3};    // fusion-space rows {|11>, NC}
  const int c_index[2] = {4, 0};     // their positions in the 5x5 basis
  const int m_channels[2] = {0, 2};  // exchange channels of the middle pair
  Mat2 fb;
  for (int ci = 0; ci < 2; ++ci)
    for (int mi = 0; mi < 2; ++mi) fb(ci, mi) = sym.f_symbol(2, 1, 1, 2, c_states[ci], m_channels[mi]);
  const cplx r_m[2] = {r0, r2};
  for (int ci = 0; ci < 2; ++ci)
    for (int cj = 0; cj < 2; ++cj) {
      cplx v = 0.0;
      for (int mi = 0; mi < 2; ++mi) v += fb(ci, mi) * r_m[mi] * fb(cj, mi);
      s3(c_index[ci], c_index[cj]) = v;
    }

  detail::finalize_generators(gens);
  return gens;
}

/// Ordered product of generator matrices; the first letter is the leftmost
/// factor. The empty word is the identity.
template <int Dim>
Matrix<Dim> evaluate_braidword(const Braidword& word, const GeneratorSet<Dim>& gens) {
  Matrix<Dim> u = Matrix<Dim>::identity();
  for (const BraidLetter& l : word.letters) u = u * gens.matrix_for(l);
  return u;
}

/// Fast path for the search engines: letters given as alphabet codes.
template <int Dim>
Matrix<Dim> evaluate_codes(const std::vector<std::int8_t>& codes, const GeneratorSet<Dim>& gens) {
  Matrix<Dim> u = Matrix<Dim>::identity();
  for (const std::int8_t c : codes) u = u * gens.letter_matrix(c);
  return u;
}

struct BlockSplit {
  cplx nc;  // non-computational sector element B(0,0)
  Mat4 a;   // computational subspace block
};

/// B = M + A in the declared basis order. Off-block leakage amplitudes are
/// not returned; they are bounded through the leakage metrics.
inline BlockSplit split_blocks(const Mat5& b) {
  BlockSplit s;
  s.nc = b(0, 0);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) s.a(i, j) = b(i + 1, j + 1);
  return s;
}

}  // namespace su2k

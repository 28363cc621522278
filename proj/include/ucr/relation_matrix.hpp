#pragma once

#include <utility>
#include <vector>

#include "ucr/types.hpp"

namespace ucr {

/// The unitary matrix u identifying E (x) F with F (x) E, where E = C^n and
/// F = C^m.  Rows and columns are indexed by pairs (i,j), 0 <= i < n,
/// 0 <= j < m, in lexicographic order, so row i*m + j is the row of (i,j).
/// Indices are 0-based internally; the I/O layer speaks 1-based.
class RelationMatrix {
 public:
  /// Checks the dimensions and the unitarity of `u` (max-norm residual of
  /// u^* u - I against `unitarity_tol`).  Throws DimensionMismatch or
  /// NotUnitary.
  static RelationMatrix validate(int n, int m, const Matrix& u,
                                 double unitarity_tol = 1e-10);

  int n() const { return n_; }
  int m() const { return m_; }
  int dim() const { return n_ * m_; }
  const Matrix& matrix() const { return u_; }
  double unitarity_residual() const { return residual_; }

  int pair_index(int i, int j) const { return i * m_ + j; }
  Complex entry(int i, int j, int k, int l) const {
    return u_(pair_index(i, j), pair_index(k, l));
  }

 private:
  RelationMatrix(int n, int m, Matrix u, double residual)
      : n_(n), m_(m), u_(std::move(u)), residual_(residual) {}

  int n_;
  int m_;
  Matrix u_;
  double residual_;
};

/// The n x m blocks u_(i,j) with (k,l)-entry u_{(i,j),(k,l)}, together with
/// the matrices C_(i,j) = u_(i,j) - E_ij.  The C matrices cut out the core of
/// the character space.
struct BlockDecomposition {
  int n = 0;
  int m = 0;
  std::vector<Matrix> blocks;      // indexed by pair (i,j)
  std::vector<Matrix> c_matrices;  // C_(i,j) = u_(i,j) - E_ij

  const Matrix& block(int i, int j) const { return blocks[i * m + j]; }
  const Matrix& c(int i, int j) const { return c_matrices[i * m + j]; }
};

BlockDecomposition blocks(const RelationMatrix& rel);

/// Reassembles a block decomposition into the full nm x nm matrix; inverse of
/// blocks() bit-for-bit.
Matrix reassemble(const BlockDecomposition& dec);

/// The exchange matrix: tilde(u)_{(i,j),(k,l)} = conj(u_{(l,k),(j,i)}).
/// The result is an mn x mn relation matrix with the two generator families
/// swapped (n' = m, m' = n).  Applying the operation twice gives back u.
RelationMatrix exchange_tilde(const RelationMatrix& rel);

/// Coefficients of f_l (x) e_k re-expressed in the e-before-f order:
/// f_l (x) e_k = sum_{i,j} conj(u_{(i,j),(k,l)}) e_i (x) f_j.
/// This is the single rewrite primitive behind all Fock-space normal
/// ordering.  Indices are 0-based; throws IndexOutOfRange.
std::vector<std::pair<std::pair<int, int>, Complex>> swap_coefficients(
    const RelationMatrix& rel, int l, int k);

/// Matrix of the forward identification E (x) F -> F (x) E, where the slot of
/// f_l (x) e_k is the pair index (k,l).  Equal to u^t.
Matrix forward_matrix(const RelationMatrix& rel);

/// Matrix of the reverse identification F (x) E -> E (x) F in the same slot
/// convention.  Equal to conj(u), and the adjoint of forward_matrix().
Matrix swap_matrix(const RelationMatrix& rel);

}  // namespace ucr

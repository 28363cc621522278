#pragma once

#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "ucr/relation_matrix.hpp"
#include "ucr/rewriting.hpp"
#include "ucr/types.hpp"

namespace ucr {

struct FockBuildOptions {
  /// Budget for the sparse generator matrices, checked while building.
  std::size_t memory_budget_bytes = std::size_t{64} << 20;
};

/// The compression of the Fock space of a relation matrix to total degree
/// <= N.  Basis words are ordered by total degree, then by (k,l) =
/// (e-length, f-length) lexicographically, then by word content, so the
/// degree-p subspaces are contiguous blocks.  Holds sparse matrices for the
/// left creation operators and the right shifts.  Immutable once built.
class TruncatedFock {
 public:
  TruncatedFock(const RelationMatrix& rel, int max_degree,
                FockBuildOptions options = {});

  const RelationMatrix& relation() const { return rel_; }
  int max_degree() const { return max_degree_; }
  int dim() const { return static_cast<int>(basis_.size()); }

  const std::vector<FockWord>& basis() const { return basis_; }
  const FockWord& word(int idx) const { return basis_[idx]; }
  int index_of(const FockWord& w) const;
  int degree_of(int idx) const { return degrees_[idx]; }
  /// Basis slots of total degree d are [degree_begin(d), degree_end(d)).
  int degree_begin(int d) const { return offsets_[d]; }
  int degree_end(int d) const { return offsets_[d + 1]; }

  const SparseMatrix& left_e(int i) const { return left_e_[i]; }
  const SparseMatrix& left_f(int j) const { return left_f_[j]; }
  const SparseMatrix& right_e(int i) const { return right_e_[i]; }
  const SparseMatrix& right_f(int j) const { return right_f_[j]; }

  Vector vacuum() const;

  /// Projection onto the f-free subspace C + E + E(x)E + ...
  Matrix f_free_projection() const;

 private:
  RelationMatrix rel_;
  int max_degree_;
  std::vector<FockWord> basis_;
  std::vector<int> degrees_;
  std::vector<int> offsets_;
  std::unordered_map<std::uint64_t, int> index_;
  std::vector<SparseMatrix> left_e_, left_f_, right_e_, right_f_;
};

/// A dense operator on a truncated Fock space.  `lo`/`hi` bound how much the
/// operator can raise the total degree, and `validity` is the largest input
/// degree on which the stored matrix can be trusted against the untruncated
/// operator; identity checks restrict to columns of degree <= validity.
struct FockOperator {
  Matrix mat;
  int lo = 0;
  int hi = 0;
  int validity = 0;
};

FockOperator identity_op(const TruncatedFock& fock);
FockOperator left_e_op(const TruncatedFock& fock, int i);
FockOperator left_f_op(const TruncatedFock& fock, int j);
FockOperator right_e_op(const TruncatedFock& fock, int i);
FockOperator right_f_op(const TruncatedFock& fock, int j);

/// A (x) B with the usual bookkeeping (apply B first).
FockOperator compose(const FockOperator& a, const FockOperator& b);
FockOperator add(const FockOperator& a, const FockOperator& b);
FockOperator scale(Complex c, const FockOperator& a);
FockOperator add_scalar(const FockOperator& a, Complex c);
FockOperator adjoint_op(const TruncatedFock& fock, const FockOperator& a);

/// Frobenius norm of the columns of `mat` belonging to words of degree
/// <= max_input_degree.
double restricted_norm(const TruncatedFock& fock, const Matrix& mat,
                       int max_input_degree);

/// Residual of an operator identity, restricted to the common validity
/// degrees of the two sides: || (a - b) restricted ||_F.
double identity_residual(const TruncatedFock& fock, const FockOperator& a,
                         const FockOperator& b);

/// The degree-k diagonal band of A: sum_p Q_{p+k} A Q_p where Q_p projects
/// onto total degree p.  Exact band extraction, no quadrature.
FockOperator fourier_component(const TruncatedFock& fock, const FockOperator& a,
                               int k);

/// sum_{k<=p} (1 - k/p) * band_k(A), the averaged partial band sum.
FockOperator cesaro_sum(const TruncatedFock& fock, const FockOperator& a,
                        int p);

/// The word-reversal unitary W from the Fock space of u onto the Fock space
/// of u^*: e-word (x) f-word maps to the fully reversed letter string,
/// re-expressed in the normal form of the target space.  Satisfies
/// R_x W = W L_x with the right shifts taken on the u^* side.
/// Throws RelationMismatch unless `fock_ustar` is built from the adjoint of
/// `fock_u`'s relation matrix at the same truncation degree.
FockOperator reversal_unitary(const TruncatedFock& fock_u,
                              const TruncatedFock& fock_ustar);

/// Unitary change of basis from normal-form coordinates to f-before-e
/// coordinates, computed by iterating the forward identification.  The
/// f-first basis is indexed by the same (e-word, f-word) pairs.
FockOperator regrade_f_first(const TruncatedFock& fock);

/// Inverse regrading, computed independently by normal-ordering the f-first
/// words; regrade_f_first_inverse * regrade_f_first = I.
FockOperator regrade_f_first_inverse(const TruncatedFock& fock);

/// Realizes a generator polynomial as an operator on the truncation.
FockOperator poly_operator(const TruncatedFock& fock, const GeneratorPoly& p);

}  // namespace ucr

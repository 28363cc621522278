#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ucr/fock_space.hpp"
#include "ucr/relation_matrix.hpp"
#include "ucr/types.hpp"

namespace ucr {

enum class EquivalenceStatus { Equivalent, ExchangeEquivalent, Disproved, Undecided };

/// Witness of a definite verdict.  An Equivalent/ExchangeEquivalent verdict
/// carries unitaries with (A (x) B) v = u (A (x) B) (v replaced by its
/// exchange matrix when `exchange` is set) and the independently recomputed
/// residual.  A Disproved verdict names the invariant that separates the two
/// inputs.
struct EquivalenceCertificate {
  Matrix A;
  Matrix B;
  bool exchange = false;
  double residual = 0.0;
};

struct DisproofWitness {
  std::string invariant;
  std::string u_value;
  std::string v_value;
};

struct EquivalenceVerdict {
  EquivalenceStatus status = EquivalenceStatus::Undecided;
  std::optional<EquivalenceCertificate> certificate;
  std::optional<DisproofWitness> witness;
};

/// Quantities constant on product-unitary-equivalence orbits: the unordered
/// dimension pair, the eigenvalue multiset, dim Ker(u - I), and the two core
/// subspace dimensions.
struct InvariantProfile {
  int n = 0;
  int m = 0;
  std::vector<Complex> spectrum;  // sorted by phase, then modulus
  int d_kernel = 0;
  int dim_z = 0;
  int dim_w = 0;
};

InvariantProfile invariant_profile(const RelationMatrix& rel);

/// Compares two profiles; on mismatch fills `witness` with the first
/// differing invariant.  Spectra are matched greedily as multisets in the
/// complex plane with the given tolerance.
bool profiles_match(const InvariantProfile& a, const InvariantProfile& b,
                    double tol, DisproofWitness* witness);

/// Complete invariant of the 2x2 family with a three-dimensional fixed
/// space: the eigenvalue different from 1 together with the smaller singular
/// value of the 2x2 folding of its unit eigenvector.
struct CanonicalFormD3 {
  double a = 0.0;
  Complex lambda;
};

/// Throws WrongDimensions unless n = m = 2 and WrongKernelDim unless
/// dim Ker(u - I) = 3.
CanonicalFormD3 canonical_d3(const RelationMatrix& rel);

/// The representative 4x4 matrix with invariant pair (a, lambda);
/// 0 <= a <= 1/sqrt(2), |lambda| = 1, lambda != 1.
Matrix canonical_d3_matrix(double a, Complex lambda);

/// Permutations act on pair indices; entry p holds the image of pair p.
using PairPermutation = std::vector<int>;

Matrix permutation_matrix(const PairPermutation& theta);
std::optional<PairPermutation> as_permutation(const RelationMatrix& rel,
                                              double tol = 1e-12);

/// The exchange involution on permutations of the (n, m) grid, computed
/// through the grid transpose; for n = m it matches the exchange matrix of
/// the permutation matrix.
PairPermutation permutation_tilde(const PairPermutation& theta, int n, int m);

/// Exact decision of product conjugacy (conjugation by S_n x S_m) between
/// two permutations, including the exchange branch.  No floating point.
/// Note this decides conjugacy of the permutations, which is strictly finer
/// than product unitary equivalence of their matrices: the inverse pair of
/// grid three-cycles is intertwined by Hadamard-type unitaries while lying
/// in distinct conjugacy classes.
EquivalenceVerdict decide_permutation(const PairPermutation& theta_u,
                                      const PairPermutation& theta_v, int n,
                                      int m);

/// Orbit partition of all permutations of the (n, m) grid under product
/// conjugacy together with the exchange involution.  Throws BudgetExceeded
/// when nm exceeds `max_grid` (factorial search).
struct PermutationClasses {
  std::vector<std::vector<PairPermutation>> classes;  // each sorted, first = representative
};
PermutationClasses permutation_classes(int n, int m, int max_grid = 8);

struct DecideConfig {
  int restarts = 32;
  int max_iters = 500;
  double tol = 1e-8;
  double stall = 1e-12;
  int stall_kicks = 3;
  std::uint64_t seed = 0x75c2;
  bool permutation_fastpath = true;
};

/// Full decision pipeline: invariant screening, the exact rank-three
/// canonical comparison, the exact permutation branch, the exact
/// one-dimensional-family branch, then the alternating Procrustes search.
/// The search alone never disproves; it returns Undecided on exhaustion.
EquivalenceVerdict decide_numeric(const RelationMatrix& u,
                                  const RelationMatrix& v,
                                  const DecideConfig& config = {});

/// ||(A (x) B) v - u (A (x) B)||_F.
double product_equivalence_residual(const RelationMatrix& u,
                                    const RelationMatrix& v, const Matrix& A,
                                    const Matrix& B);

/// Kronecker product in the pair-index convention:
/// (A (x) B)[(i,j),(k,l)] = A(i,k) B(j,l).
Matrix kronecker(const Matrix& A, const Matrix& B);

/// Haar-distributed unitary from a seeded generator.
Matrix random_unitary(int d, std::mt19937_64& rng);

/// Alternating polar search for (A (x) B) v = u (A (x) B); returns the pair
/// on success.
std::optional<std::pair<Matrix, Matrix>> procrustes_search(
    const RelationMatrix& u, const RelationMatrix& v,
    const DecideConfig& config);

/// The word-wise intertwining unitary from the Fock space of u onto the Fock
/// space of v attached to unitaries with (A (x) B) v = u (A (x) B): every
/// letter of a basis word is mapped through A or B according to its family.
/// Throws NotIntertwiner when the pair fails that equation at `tol`.
FockOperator intertwining_fock_unitary(const TruncatedFock& fock_u,
                                       const TruncatedFock& fock_v,
                                       const Matrix& A, const Matrix& B,
                                       double tol = 1e-8);

}  // namespace ucr

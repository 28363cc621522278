#pragma once

#include <vector>

#include "ucr/fock_space.hpp"
#include "ucr/relation_matrix.hpp"
#include "ucr/rewriting.hpp"
#include "ucr/types.hpp"

namespace ucr {

/// A candidate character coordinate (z,w) in C^n x C^m with its membership
/// flags.  `in_variety` means z_i w_j = sum u_{(i,j),(k,l)} z_k w_l for all
/// i,j; `in_omega` adds the closed-ball constraints, `in_core` the linear
/// conditions C_(i,j) w = 0 and C_(i,j)^t z = 0; `interior` uses the open
/// balls with margin.
struct CharacterPoint {
  Vector z;
  Vector w;
  bool in_variety = false;
  bool in_omega = false;
  bool in_core = false;
  bool interior = false;
  double variety_residual = 0.0;
  double core_residual = 0.0;
};

CharacterPoint variety_test(const RelationMatrix& rel, const Vector& z,
                            const Vector& w, double tol = 1e-9);

/// Orthonormal bases of the joint kernels cutting out the core:
/// Z spans the common kernel of the transposed C matrices in C^n, W the
/// common kernel of the C matrices in C^m.  The core equals
/// (Z-span ball) x (W-span ball).  `d_kernel` is dim Ker(u - I).
/// Singular values falling inside [1e-11, 1e-7] relative to the largest are
/// reported as ambiguous rank decisions.
struct CoreSubspaces {
  Matrix Z;
  Matrix W;
  int d_kernel = 0;
  std::vector<double> ambiguous_singular_values;
};

CoreSubspaces core_subspaces(const RelationMatrix& rel,
                             double rank_tol = 1e-9);

/// Draws a point of the core interior: z in span(Z), w in span(W) with norms
/// scaled below the given radii.  Coefficients come from the supplied
/// generator for reproducibility.
CharacterPoint random_core_point(const RelationMatrix& rel,
                                 const CoreSubspaces& core, double radius_z,
                                 double radius_w, std::uint64_t seed);

/// Fixed-vector checks behind the kernel-dimension bounds: for a core point,
/// u fixes delta_i (x) w and z (x) delta_j; the applicable lower bound on
/// dim Ker(u-I) is m (z != 0), n (w != 0), or m+n-1 (both).
struct DimfixReport {
  double max_fixed_residual = 0.0;
  int required_lower_bound = 0;
  int d_kernel = 0;
  bool bound_holds = false;
};

DimfixReport dimfix_check(const RelationMatrix& rel,
                          const CharacterPoint& point);

/// Multiplicative-linear evaluation of a generator polynomial at a variety
/// point: L_{e_i} -> z_i, L_{f_j} -> w_j after normal ordering.
/// Throws NotInVariety off the variety.
Complex character_eval(const RelationMatrix& rel, const CharacterPoint& point,
                       const GeneratorPoly& poly);

/// The truncated character vector w_alpha = sum conj(alpha(word)) word, its
/// computed and closed-form squared norms, and the geometric tail bound of
/// the truncation.  Requires an interior point.
struct CharacterVectorResult {
  Vector coefficients;
  double norm_squared = 0.0;
  double norm_squared_formula = 0.0;
  double tail_bound = 0.0;
};

CharacterVectorResult character_vector(const TruncatedFock& fock,
                                       const CharacterPoint& point);

/// A representation into 2x2 upper-triangular matrices with equal diagonal
/// character: rho(L_{e_i}) = [[z_i, lambda_i], [0, z_i]] and similarly for
/// the f generators with (w_j, mu_j).  `relation_residual` is the maximal
/// Frobenius deviation of the represented relations; it vanishes exactly
/// when the off-diagonal pairing condition holds.
struct NestRep {
  std::vector<Eigen::Matrix2cd> e_images;
  std::vector<Eigen::Matrix2cd> f_images;
  double relation_residual = 0.0;
};

NestRep nest_rep(const RelationMatrix& rel, const CharacterPoint& point,
                 const Vector& lambda, const Vector& mu);

/// A (lambda, mu) pair violating the off-diagonal condition at a non-core
/// variety point, scaled so the violation is at least `target`.
std::pair<Vector, Vector> violating_pair(const RelationMatrix& rel,
                                         const CharacterPoint& point,
                                         double target = 1e-2);

}  // namespace ucr

#pragma once

#include <optional>
#include <vector>

#include "ucr/characters.hpp"
#include "ucr/fock_space.hpp"
#include "ucr/free_fock.hpp"
#include "ucr/types.hpp"

namespace ucr {

/// Data of the positive-type element of U(1,n) attached to a point alpha of
/// the open unit ball: x0 = (1-||alpha||^2)^{-1/2}, eta = x0*alpha,
/// X1 = (I + eta eta^*)^{1/2}, assembled into X = [[x0, eta^*], [eta, X1]],
/// which satisfies X^* J X = J with J = diag(1, -I).
struct MobiusData {
  Vector alpha;
  double x0 = 1.0;
  Vector eta;
  Matrix X1;
  Matrix X;
};

/// Throws NotInOpenBall when ||alpha|| >= 1.  X1 is computed by spectral
/// square root.
MobiusData mobius_data(const Vector& alpha);

/// The ball automorphism theta_X(lam) = (X1 lam + eta) / (x0 + <lam, eta>).
Vector ball_map(const MobiusData& data, const Vector& lam);

/// Fractional-linear action of a general (n+1)x(n+1) matrix in U(1,n),
/// blocked as [[z0, eta1^*], [eta2, Z1]]; satisfies
/// ball_map(Z, ball_map(W, lam)) = ball_map(Z*W, lam).
Vector ball_map(const Matrix& Z, const Vector& lam);

/// Resolvent sign in (x0 I +/- L_eta)^{-1}.  Both signs satisfy the lifted
/// commutation relations and give a unit-norm twisted vacuum; only one makes
/// the generator images of a ball automorphism (see
/// select_sign_convention()).
enum class SignConvention { plus, minus };

/// The generator image (x0 I + s L_eta)^{-1} (L_{X1 g} + <g, eta> I) on a
/// truncated Fock space, with g the i-th basis vector of the chosen family.
/// The resolvent is a terminating series; no matrix inversion.
FockOperator theta_generator(const TruncatedFock& fock, const MobiusData& data,
                             int i, SignConvention sign = SignConvention::plus,
                             bool f_family = false);

/// Vector-level counterparts on the free Fock space.
Vector resolvent_apply(const FreeFock& fock, const MobiusData& data,
                       SignConvention sign, const Vector& v);
Vector theta_apply(const FreeFock& fock, const MobiusData& data, int i,
                   SignConvention sign, const Vector& v);

/// Evaluation of the generator images under the character at lam via the
/// multiplicative calculus: (sum_k X1[k,i] lam_k + conj(eta_i)) /
/// (x0 + sum_k eta_k lam_k).
Complex theta_character_value(const MobiusData& data, const Vector& lam,
                              int i);

/// Columns of the implementing unitary: the image of every word of length
/// <= max_word_degree, computed as word(V_1..V_n) applied to the twisted
/// vacuum xi0' = (x0 I + s L_eta)^{-1} xi0.  Column order follows
/// FreeFock::words_up_to.
Matrix implementing_unitary_images(const FreeFock& fock,
                                   const MobiusData& data, int max_word_degree,
                                   SignConvention sign = SignConvention::plus);

/// Lifted automorphism of the whole algebra at an interior core point
/// (z, w): acts as the ball automorphism of conj(z) on the e generators and
/// of conj(w) on the f generators, fixing the opposite family each time.
struct AutoOnFock {
  std::vector<FockOperator> e_images;
  std::vector<FockOperator> f_images;
  double relation_residual_e = 0.0;   // lifted relations for the e-side map
  double relation_residual_f = 0.0;   // same with the roles of E and F swapped
  double compressed_commutation = 0.0;  // adjoint-side commutation residual
};

AutoOnFock lift_to_au(const TruncatedFock& fock, const CharacterPoint& point,
                      SignConvention sign = SignConvention::plus);

/// Vacuum-evaluation of the lifted automorphism on every generator; the
/// deviations from the coordinates of the core point are reported for both
/// orders of composing the two one-sided maps.
struct OrbitCheckReport {
  double max_deviation = 0.0;            // e-then-f composition
  double max_deviation_swapped = 0.0;    // f-then-e composition
};

OrbitCheckReport corechar_orbit_check(const TruncatedFock& fock,
                                      const CharacterPoint& point,
                                      SignConvention sign = SignConvention::plus);

/// Diagnostics distinguishing the two resolvent signs on a free Fock space.
struct SignDiagnostics {
  double thetau_residual = 0.0;     // lifted relations (identity system)
  double vacuum_norm_error = 0.0;   // | ||xi0'|| - 1 |
  double pullback_deviation = 0.0;  // character pullback identity
  double gram_deviation = 0.0;      // orthonormality of word images
};

SignDiagnostics sign_diagnostics(SignConvention sign, std::uint64_t seed);

/// Runs the diagnostics for both signs and returns the convention passing
/// all of them (the pullback and Gram tests are the discriminating ones).
SignConvention select_sign_convention(std::uint64_t seed = 0x5eed);

}  // namespace ucr

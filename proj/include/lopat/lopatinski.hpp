#pragma once

#include "lopat/shock.hpp"
#include "lopat/types.hpp"

namespace lopat {

/// (tau, xi) with tau = gamma + i sigma on the hemisphere
/// Re tau >= 0, |tau|^2 + xi^2 = 1.
struct FrequencyPoint {
  double gamma = 0.0;
  double sigma = 0.0;
  double xi = 0.0;

  cplx tau() const { return {gamma, sigma}; }
  bool on_hemisphere(double tol = 1e-12) const;
  // gamma = 0, sigma = cos(theta), xi = sin(theta)
  static FrequencyPoint boundary(double theta);
};

enum class Side { Minus, Plus };
enum class Kind { Stable, Unstable };

struct SubspaceBasis {
  CMat columns;       // orthonormal, n x dim
  Side side = Side::Minus;
  Kind kind = Kind::Stable;
  int dim = 0;
  double eig_gap = 0.0;  // min |Re mu| over the selected eigenvalues
  bool converged = true;  // boundary limit diagnostic, see boundary_subspaces
};

struct SubspacePair {
  SubspaceBasis stable;
  SubspaceBasis unstable;
};

struct LopatinskiValue {
  cplx delta;
  double delta_norm = 0.0;
  double eig_gap_minus = 0.0;
  double eig_gap_plus = 0.0;
  bool boundary_converged = true;
};

// (tau I + i xi DF_2(U)) DF_1(U)^{-1}. Throws CharacteristicBoundaryError if
// cond(DF_1) > 1e10.
CMat symbol_matrix_A(const HyperbolicSystem& system, const StateVector& u, cplx tau, double xi);

// Spectral split of A(tau, xi) by the sign of Re mu for Re tau >= 1e-8.
// Dimensions are checked against the numbers of negative / positive
// eigenvalues of DF_1(U); a mismatch throws StructuralError.
SubspacePair interior_subspaces(const HyperbolicSystem& system, const StateVector& u, cplx tau,
                                double xi, Side side = Side::Minus);

// Continuous extension of the stable / unstable space to tau = i sigma.
//
// Eigenvalues of A(i sigma, xi) off the imaginary axis are split by sign.
// Those on it are assigned by the sign of d(Re mu)/d(Re tau) at Re tau = 0,
// from left and right eigenvectors; the basis is then read off an ordered
// Schur form, so coalesced eigenvalues at branch points yield the common
// limit. At xi = 0 the eigenvectors of DF_1 are used directly.
//
// `converged` reports whether interior evaluations at Re tau = 1e-3 ... 1e-6
// approach the limit at the regular (linear) rate; it is false at glancing
// and branch points where the approach is only O(sqrt(Re tau)).
SubspaceBasis boundary_subspaces(const HyperbolicSystem& system, const StateVector& u,
                                 double sigma, double xi, Side side, Kind kind);

// tau [U] + i xi [F_2(U)], unnormalized.
CVec jump_column(const ShockWave& shock, cplx tau, double xi);

// det[stable_minus | jump | unstable_plus]. Columns are used as given.
cplx assemble_delta(const CMat& stable_minus, const CVec& jump, const CMat& unstable_plus);

// Lopatinski determinant with orthonormal subspace bases and a unit jump
// column, so that delta_norm = |delta| lies in [0, 1]. Points with
// gamma < 1e-8 are evaluated with the boundary limits.
LopatinskiValue lopatinski_delta(const ShockWave& shock, const FrequencyPoint& point);

}  // namespace lopat

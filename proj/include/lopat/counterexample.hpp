#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "lopat/lopatinski.hpp"
#include "lopat/shock.hpp"

namespace lopat {

/// v_t + diag(s, -s) v_{x_1} + [[0, s], [s, 0]] v_{x_2} = 0.
struct LinearWaveSystem {
  double s = 1.0;

  Mat jac1() const;
  Mat jac2() const;
  SystemPtr system() const { return make_linear_wave(s); }
};

// Extra flux terms h_1, h_2 : (u, v) -> R^{n+2}, required to be O(|v|^2).
struct Coupling {
  std::function<Vec(const Vec& u, const Vec& v)> flux1;
  std::function<Vec(const Vec& u, const Vec& v)> flux2;
};

/// F_j(u, v) = (f_j(u), g_j(v)) + coupling terms.
struct CoupledSystem {
  SystemPtr base;
  LinearWaveSystem wave;
  double coupling_amplitude = 0.0;
  SystemPtr system;  // dimension base->dim() + 2
};

struct BranchPoint {
  int id = 0;
  FrequencyPoint point;
  double theta = 0.0;  // atan2(xi, sigma) in [0, 2 pi)
};

using BranchPointSet = std::array<BranchPoint, 4>;

struct BEigen {
  cplx mu_plus;   // principal square root of tau^2 / s^2 + xi^2
  cplx mu_minus;  // -mu_plus
  CVec vec_plus;  // unit eigenvectors
  CVec vec_minus;
  bool defective = false;
};

// s > spectral radius of DF_1(u*) + 1e-10.
bool supersonic_check(const HyperbolicSystem& base, const StateVector& u_star, double s);

// Built-in quadratic coupling a (v1^2, v1 v2, v2^2, ...) added to the
// u-block of F_1 and a (v2^2, v1 v2, v1^2, ...) to the u-block of F_2.
CoupledSystem couple(const SystemPtr& base, double s, double coupling_amplitude = 0.0);

// User-supplied coupling. The Jacobians at v = 0 are spot-checked against
// the block-diagonal ones at `probe_states` (to 1e-10); a violation throws
// std::invalid_argument.
CoupledSystem couple(const SystemPtr& base, double s, const Coupling& coupling,
                     const std::vector<StateVector>& probe_states);

// U = (u, 0, 0). Throws TuningError unless s is supersonic at both states.
ShockWave augment_shock(const ShockWave& base_shock, const CoupledSystem& coupled);

// The four boundary points sigma^2 = s^2 xi^2, sigma^2 + xi^2 = 1, ordered by
// theta.
BranchPointSet predict_branch_points(double s);

// Closed-form spectrum of b(tau, xi) = (tau I + i xi [[0,s],[s,0]]) diag(s,-s)^{-1}.
BEigen b_eigen_oracle(cplx tau, double xi, double s);

// |det(r-, r+)| for unit vectors spanning the Re tau -> 0+ limits of the
// stable and unstable spaces of b(i sigma, xi), in closed form.
double coincidence_gap(double sigma, double xi, double s);

}  // namespace lopat

#pragma once

#include "lopat/hyperbolic_system.hpp"

namespace lopat {

/// Planar shock x_1 = 0 between U_minus (x_1 < 0) and U_plus (x_1 > 0).
/// Speed and direction are fixed to 0 and (1, 0).
struct ShockWave {
  SystemPtr system;
  StateVector u_minus;
  StateVector u_plus;
  double speed = 0.0;
  Vec2 normal = Vec2(1.0, 0.0);
  int family = 0;  // 1-based
  double epsilon = 0.0;
};

struct ShockFamilyParams {
  StateVector base_state;  // sonic state: lambda_p(base_state, N) == 0
  Vec2 normal = Vec2(1.0, 0.0);
  int family = 0;
  double epsilon = 0.0;
};

struct LaxClassification {
  int family = 0;  // 1-based
  int dim = 0;
  int negative_minus = 0;
  int positive_minus = 0;
  int negative_plus = 0;
  int positive_plus = 0;
};

// speed (U+ - U-) - (F.N(U+) - F.N(U-))
Vec rh_residual(const HyperbolicSystem& system, const StateVector& u_minus,
                const StateVector& u_plus, double speed, const Vec2& normal);

// Zero-speed Lax p-shock of amplitude ~epsilon near the sonic base state.
// U- = u* + (eps/2) r_p (sign chosen so that lambda_p(U-) > 0); U+ solves
// F_1(U+) = F_1(U-) by damped Newton starting from U- - eps r_p.
ShockWave solve_zero_speed_shock(const SystemPtr& system, const ShockFamilyParams& params);

// Counts characteristic speeds on both sides and identifies the Lax family.
// Throws MarginalShockError if a speed is within 1e-10 of zero and
// ClassificationError if no family satisfies the Lax inequalities.
LaxClassification lax_classify(const ShockWave& shock);

}  // namespace lopat

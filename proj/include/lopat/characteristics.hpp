#pragma once

#include <vector>

#include "lopat/hyperbolic_system.hpp"

namespace lopat {

/// One characteristic field of the symbol nu_1 DF_1 + nu_2 DF_2.
struct CharField {
  int index = 0;       // 1-based, ascending speed
  double speed = 0.0;
  Vec right;           // unit norm, largest-magnitude component positive
  Vec left;            // left.dot(right) == 1
};

// nu_1 jac1(U) + nu_2 jac2(U). Throws std::invalid_argument for nu == 0.
Mat eval_symbol(const HyperbolicSystem& system, const StateVector& u, const Vec2& nu);

// Sorted eigen-decomposition of the symbol in direction nu. Throws
// HyperbolicityError on complex spectrum or a defective symbol. When
// `previous` is given, fields with tied speeds are ordered to follow the
// previous eigenvectors.
std::vector<CharField> char_fields(const HyperbolicSystem& system, const StateVector& u,
                                   const Vec2& nu,
                                   const std::vector<CharField>* previous = nullptr);

// Ascending speeds only.
Vec char_speeds(const HyperbolicSystem& system, const StateVector& u, const Vec2& nu);

struct MultiplicityProfile {
  bool constant = false;
  std::vector<int> pattern;  // cluster sizes at the first sampled direction
};

// Samples num_dirs (>= 8) equispaced unit directions and compares the
// multiplicity pattern of the sorted speeds, clustered at relative gap 1e-8.
MultiplicityProfile check_constant_multiplicity(const HyperbolicSystem& system,
                                                const StateVector& u, int num_dirs);

// grad_U lambda_p . r_p, the genuine nonlinearity coefficient of mode p
// (1-based). Nonzero iff the mode is genuinely nonlinear.
double metivier_genuine_nonlinearity(const HyperbolicSystem& system, const StateVector& u,
                                     const Vec2& n, int p);

// d^2/dxi^2 lambda_p(U, N + xi T) at xi = 0 with T perpendicular to N.
// Positive iff the slowness curve of mode p is strictly convex there.
double metivier_transverse_convexity(const HyperbolicSystem& system, const StateVector& u,
                                     const Vec2& n, int p);

}  // namespace lopat

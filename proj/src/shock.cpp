#include "lopat/shock.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "lopat/characteristics.hpp"
#include "lopat/errors.hpp"

namespace lopat {

namespace {

constexpr double kSonicTol = 1e-10;
constexpr double kNewtonTol = 1e-13;
constexpr int kNewtonMaxIter = 50;
constexpr double kMarginalSpeed = 1e-10;

Mat flux_jacobian(const HyperbolicSystem& system, const StateVector& u, const Vec2& normal) {
  return normal(0) * system.jac1(u) + normal(1) * system.jac2(u);
}

}  // namespace

Vec rh_residual(const HyperbolicSystem& system, const StateVector& u_minus,
                const StateVector& u_plus, double speed, const Vec2& normal) {
  system.require_admissible(u_minus);
  system.require_admissible(u_plus);
  return speed * (u_plus - u_minus) - (system.flux(u_plus, normal) - system.flux(u_minus, normal));
}

ShockWave solve_zero_speed_shock(const SystemPtr& system, const ShockFamilyParams& params) {
  if (!system) throw std::invalid_argument("solve_zero_speed_shock: null system");
  if (!(params.epsilon > 0.0)) {
    throw std::invalid_argument("solve_zero_speed_shock: epsilon must be positive");
  }
  const int n = system->dim();
  const int p = params.family;
  if (p < 1 || p > n) throw std::invalid_argument("solve_zero_speed_shock: bad family index");
  const Vec2& normal = params.normal;

  const auto fields = char_fields(*system, params.base_state, normal);
  if (std::abs(fields[p - 1].speed) > kSonicTol) {
    throw std::invalid_argument("solve_zero_speed_shock: base state is not sonic for family " +
                                std::to_string(p));
  }
  const double nonlinearity = metivier_genuine_nonlinearity(*system, params.base_state, normal, p);
  if (nonlinearity == 0.0) {
    throw std::invalid_argument("solve_zero_speed_shock: family is linearly degenerate");
  }

  // lambda_p grows along sign(nonlinearity) * r_p, so that side is U-.
  const Vec r = (nonlinearity > 0.0 ? 1.0 : -1.0) * fields[p - 1].right;
  const double eps = params.epsilon;
  const StateVector u_minus = params.base_state + 0.5 * eps * r;
  system->require_admissible(u_minus);
  const Vec target = system->flux(u_minus, normal);

  StateVector u_plus = u_minus - eps * r;
  auto residual = [&](const StateVector& u) -> Vec { return system->flux(u, normal) - target; };
  Vec res = residual(u_plus);
  double res_norm = res.norm();
  bool converged = res_norm <= kNewtonTol;
  for (int iter = 0; iter < kNewtonMaxIter && !converged; ++iter) {
    const Vec step = flux_jacobian(*system, u_plus, normal).fullPivLu().solve(-res);
    double lambda = 1.0;
    bool accepted = false;
    for (int halving = 0; halving < 30; ++halving, lambda *= 0.5) {
      const StateVector trial = u_plus + lambda * step;
      if (!system->admissible(trial)) continue;
      const Vec trial_res = residual(trial);
      if (trial_res.norm() < res_norm || trial_res.norm() <= kNewtonTol) {
        u_plus = trial;
        res = trial_res;
        res_norm = trial_res.norm();
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    converged = res_norm <= kNewtonTol;
  }
  if (!converged) {
    throw ContinuationError("zero-speed shock: Newton did not converge (residual " +
                            std::to_string(res_norm) + ")");
  }
  if ((u_plus - u_minus).norm() < 0.5 * eps) {
    throw ContinuationError("zero-speed shock: Newton returned the trivial root");
  }

  ShockWave shock{system, u_minus, u_plus, 0.0, normal, p, eps};
  const auto cls = lax_classify(shock);
  if (cls.family != p) {
    throw ClassificationError("zero-speed shock: expected family " + std::to_string(p) +
                              ", got " + std::to_string(cls.family));
  }
  return shock;
}

LaxClassification lax_classify(const ShockWave& shock) {
  const auto& system = *shock.system;
  const int n = system.dim();
  const Vec minus = char_speeds(system, shock.u_minus, shock.normal).array() - shock.speed;
  const Vec plus = char_speeds(system, shock.u_plus, shock.normal).array() - shock.speed;

  LaxClassification cls;
  cls.dim = n;
  for (int k = 0; k < n; ++k) {
    if (std::abs(minus(k)) <= kMarginalSpeed || std::abs(plus(k)) <= kMarginalSpeed) {
      throw MarginalShockError("lax_classify: characteristic speed at the shock speed");
    }
    (minus(k) < 0.0 ? cls.negative_minus : cls.positive_minus) += 1;
    (plus(k) < 0.0 ? cls.negative_plus : cls.positive_plus) += 1;
  }

  // lambda_{p-1}(U-) < s < lambda_p(U-) and lambda_p(U+) < s < lambda_{p+1}(U+).
  const int p = cls.negative_minus + 1;
  if (p > n || cls.positive_plus != n - p) {
    throw ClassificationError("lax_classify: not a Lax shock (" +
                              std::to_string(cls.negative_minus) + " negative speeds at U-, " +
                              std::to_string(cls.positive_plus) + " positive at U+)");
  }
  cls.family = p;
  return cls;
}

}  // namespace lopat

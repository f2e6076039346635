#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "lopat/types.hpp"

namespace lopat {

using FluxFn = std::function<Vec(const StateVector&)>;
using JacobianFn = std::function<Mat(const StateVector&)>;
using DomainFn = std::function<bool(const StateVector&)>;

/// System of conservation laws  U_t + F_1(U)_{x_1} + F_2(U)_{x_2} = 0.
///
/// Jacobians are analytic when supplied and central finite differences of
/// the fluxes otherwise.
class HyperbolicSystem {
 public:
  HyperbolicSystem(std::string name, int dim, FluxFn flux1, FluxFn flux2,
                   std::optional<JacobianFn> jac1 = std::nullopt,
                   std::optional<JacobianFn> jac2 = std::nullopt,
                   DomainFn domain = {});

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }

  bool admissible(const StateVector& u) const;
  // Throws DomainError for wrong length or inadmissible states.
  void require_admissible(const StateVector& u) const;

  Vec flux1(const StateVector& u) const;
  Vec flux2(const StateVector& u) const;
  // nu_1 F_1 + nu_2 F_2
  Vec flux(const StateVector& u, const Vec2& nu) const;

  Mat jac1(const StateVector& u) const;
  Mat jac2(const StateVector& u) const;

  bool has_analytic_jacobians() const { return jac1_.has_value() && jac2_.has_value(); }

  // Finite-difference Jacobians regardless of whether analytic ones exist.
  Mat fd_jac1(const StateVector& u) const;
  Mat fd_jac2(const StateVector& u) const;

 private:
  Mat fd_jacobian(const FluxFn& f, const StateVector& u) const;

  std::string name_;
  int dim_;
  FluxFn flux1_;
  FluxFn flux2_;
  std::optional<JacobianFn> jac1_;
  std::optional<JacobianFn> jac2_;
  DomainFn domain_;
};

using SystemPtr = std::shared_ptr<const HyperbolicSystem>;

// 2-D isentropic Euler in conserved variables (rho, m_1, m_2) with
// pressure p = kappa * rho^gamma.
SystemPtr make_euler_isentropic(double gamma = 2.0, double kappa = 0.5);

// U = (v_1, v_2), F_1 = diag(s, -s) v, F_2 = [[0, s], [s, 0]] v.
SystemPtr make_linear_wave(double s);

// Built-in registry: "euler-isentropic" (gamma, kappa) and "linear-wave" (s).
// Missing parameters take their defaults; unknown names throw
// std::invalid_argument.
SystemPtr make_system(const std::string& name,
                      const std::map<std::string, double>& params = {});

}  // namespace lopat

#include "lopat/hyperbolic_system.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "lopat/errors.hpp"

namespace lopat {

HyperbolicSystem::HyperbolicSystem(std::string name, int dim, FluxFn flux1, FluxFn flux2,
                                   std::optional<JacobianFn> jac1,
                                   std::optional<JacobianFn> jac2, DomainFn domain)
    : name_(std::move(name)),
      dim_(dim),
      flux1_(std::move(flux1)),
      flux2_(std::move(flux2)),
      jac1_(std::move(jac1)),
      jac2_(std::move(jac2)),
      domain_(std::move(domain)) {
  if (dim_ < 2) throw std::invalid_argument("HyperbolicSystem: dimension must be >= 2");
  if (!flux1_ || !flux2_) throw std::invalid_argument("HyperbolicSystem: missing flux");
}

bool HyperbolicSystem::admissible(const StateVector& u) const {
  if (u.size() != dim_) return false;
  if (!u.allFinite()) return false;
  return !domain_ || domain_(u);
}

void HyperbolicSystem::require_admissible(const StateVector& u) const {
  if (u.size() != dim_) {
    throw DomainError(name_ + ": state has length " + std::to_string(u.size()) +
                      ", expected " + std::to_string(dim_));
  }
  if (!admissible(u)) throw DomainError(name_ + ": inadmissible state");
}

Vec HyperbolicSystem::flux1(const StateVector& u) const {
  require_admissible(u);
  return flux1_(u);
}

Vec HyperbolicSystem::flux2(const StateVector& u) const {
  require_admissible(u);
  return flux2_(u);
}

Vec HyperbolicSystem::flux(const StateVector& u, const Vec2& nu) const {
  return nu(0) * flux1(u) + nu(1) * flux2(u);
}

Mat HyperbolicSystem::jac1(const StateVector& u) const {
  require_admissible(u);
  return jac1_ ? (*jac1_)(u) : fd_jacobian(flux1_, u);
}

Mat HyperbolicSystem::jac2(const StateVector& u) const {
  require_admissible(u);
  return jac2_ ? (*jac2_)(u) : fd_jacobian(flux2_, u);
}

Mat HyperbolicSystem::fd_jac1(const StateVector& u) const {
  require_admissible(u);
  return fd_jacobian(flux1_, u);
}

Mat HyperbolicSystem::fd_jac2(const StateVector& u) const {
  require_admissible(u);
  return fd_jacobian(flux2_, u);
}

Mat HyperbolicSystem::fd_jacobian(const FluxFn& f, const StateVector& u) const {
  static const double kStep = std::cbrt(std::numeric_limits<double>::epsilon());
  Mat jac(dim_, dim_);
  for (int j = 0; j < dim_; ++j) {
    const double h = kStep * std::max(1.0, std::abs(u(j)));
    StateVector up = u;
    StateVector um = u;
    up(j) += h;
    um(j) -= h;
    if (domain_ && (!domain_(up) || !domain_(um))) {
      throw DomainError(name_ + ": finite-difference stencil leaves the admissible set");
    }
    jac.col(j) = (f(up) - f(um)) / (up(j) - um(j));
  }
  return jac;
}

SystemPtr make_euler_isentropic(double gamma, double kappa) {
  if (!(gamma >= 1.0) || !(kappa > 0.0)) {
    throw std::invalid_argument("euler-isentropic: need gamma >= 1 and kappa > 0");
  }
  auto pressure = [=](double rho) { return kappa * std::pow(rho, gamma); };
  auto sound2 = [=](double rho) { return kappa * gamma * std::pow(rho, gamma - 1.0); };

  FluxFn f1 = [=](const StateVector& u) {
    const double rho = u(0), m1 = u(1), m2 = u(2);
    Vec f(3);
    f << m1, m1 * m1 / rho + pressure(rho), m1 * m2 / rho;
    return f;
  };
  FluxFn f2 = [=](const StateVector& u) {
    const double rho = u(0), m1 = u(1), m2 = u(2);
    Vec f(3);
    f << m2, m1 * m2 / rho, m2 * m2 / rho + pressure(rho);
    return f;
  };
  JacobianFn j1 = [=](const StateVector& u) {
    const double rho = u(0), u1 = u(1) / rho, u2 = u(2) / rho;
    Mat a(3, 3);
    a << 0.0, 1.0, 0.0,
         sound2(rho) - u1 * u1, 2.0 * u1, 0.0,
         -u1 * u2, u2, u1;
    return a;
  };
  JacobianFn j2 = [=](const StateVector& u) {
    const double rho = u(0), u1 = u(1) / rho, u2 = u(2) / rho;
    Mat b(3, 3);
    b << 0.0, 0.0, 1.0,
         -u1 * u2, u2, u1,
         sound2(rho) - u2 * u2, 0.0, 2.0 * u2;
    return b;
  };
  DomainFn positive_density = [](const StateVector& u) { return u(0) > 0.0; };
  return std::make_shared<HyperbolicSystem>("euler-isentropic", 3, f1, f2, j1, j2,
                                            positive_density);
}

SystemPtr make_linear_wave(double s) {
  if (!(s > 0.0)) throw std::invalid_argument("linear-wave: s must be positive");
  Mat a(2, 2);
  a << s, 0.0, 0.0, -s;
  Mat b(2, 2);
  b << 0.0, s, s, 0.0;
  FluxFn f1 = [a](const StateVector& v) -> Vec { return a * v; };
  FluxFn f2 = [b](const StateVector& v) -> Vec { return b * v; };
  JacobianFn j1 = [a](const StateVector&) { return a; };
  JacobianFn j2 = [b](const StateVector&) { return b; };
  return std::make_shared<HyperbolicSystem>("linear-wave", 2, f1, f2, j1, j2);
}

namespace {

double param_or(const std::map<std::string, double>& params, const std::string& key,
                double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

}  // namespace

SystemPtr make_system(const std::string& name, const std::map<std::string, double>& params) {
  if (name == "euler-isentropic") {
    return make_euler_isentropic(param_or(params, "gamma", 2.0), param_or(params, "kappa", 0.5));
  }
  if (name == "linear-wave") return make_linear_wave(param_or(params, "s", 1.0));
  throw std::invalid_argument("unknown system: " + name);
}

}  // namespace lopat

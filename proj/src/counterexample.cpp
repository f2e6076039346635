#include "lopat/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lopat/characteristics.hpp"
#include "lopat/errors.hpp"

namespace lopat {

namespace {

constexpr double kSupersonicMargin = 1e-10;
constexpr double kCouplingCheckTol = 1e-10;
constexpr double kDefectTol = 1e-13;  // on |mu^2|

// Eigenvector of b for eigenvalue mu, unit norm, largest component real
// positive. Uses whichever row of (b - mu I) gives the better-conditioned
// null vector.
CVec b_eigenvector(cplx a, double xi, cplx mu) {
  const cplx ixi(0.0, xi);
  Eigen::Vector2cd r1(a + mu, ixi);
  Eigen::Vector2cd r2(ixi, a - mu);
  CVec r = r1.norm() >= r2.norm() ? CVec(r1) : CVec(r2);
  r /= r.norm();
  Eigen::Index imax = 0;
  r.cwiseAbs().maxCoeff(&imax);
  r *= std::conj(r(imax)) / std::abs(r(imax));
  return r;
}

Vec quadratic_terms(int n, double v1, double v2, bool swapped) {
  const double a = swapped ? v2 * v2 : v1 * v1;
  const double c = swapped ? v1 * v1 : v2 * v2;
  const std::array<double, 3> cycle = {a, v1 * v2, c};
  Vec q(n);
  for (int i = 0; i < n; ++i) q(i) = cycle[i % 3];
  return q;
}

// d(quadratic_terms)/dv, n x 2.
Mat quadratic_terms_jacobian(int n, double v1, double v2, bool swapped) {
  Mat d(n, 2);
  for (int i = 0; i < n; ++i) {
    switch (i % 3) {
      case 0:
        d.row(i) = swapped ? Eigen::RowVector2d(0.0, 2.0 * v2) : Eigen::RowVector2d(2.0 * v1, 0.0);
        break;
      case 1:
        d.row(i) = Eigen::RowVector2d(v2, v1);
        break;
      default:
        d.row(i) = swapped ? Eigen::RowVector2d(2.0 * v1, 0.0) : Eigen::RowVector2d(0.0, 2.0 * v2);
        break;
    }
  }
  return d;
}

Mat block_diag(const Mat& a, const Mat& b) {
  Mat m = Mat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  m.topLeftCorner(a.rows(), a.cols()) = a;
  m.bottomRightCorner(b.rows(), b.cols()) = b;
  return m;
}

Mat fd_jacobian(const std::function<Vec(const Vec&)>& f, const Vec& x) {
  static const double kStep = std::cbrt(std::numeric_limits<double>::epsilon());
  const Eigen::Index m = x.size();
  Mat jac(f(x).size(), m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const double h = kStep * std::max(1.0, std::abs(x(j)));
    Vec xp = x;
    Vec xm = x;
    xp(j) += h;
    xm(j) -= h;
    jac.col(j) = (f(xp) - f(xm)) / (xp(j) - xm(j));
  }
  return jac;
}

SystemPtr build_coupled(const SystemPtr& base, const LinearWaveSystem& wave,
                        const Coupling* custom, double amplitude) {
  const int n = base->dim();
  const Mat g1 = wave.jac1();
  const Mat g2 = wave.jac2();
  auto split_u = [n](const StateVector& w) -> Vec { return w.head(n); };
  auto split_v = [n](const StateVector& w) -> Vec { return w.tail(2); };

  std::optional<Coupling> custom_copy;
  if (custom != nullptr) custom_copy = *custom;

  auto flux = [=](const StateVector& w, bool second) -> Vec {
    const Vec u = split_u(w);
    const Vec v = split_v(w);
    Vec f(n + 2);
    f.head(n) = second ? base->flux2(u) : base->flux1(u);
    f.tail(2) = (second ? g2 : g1) * v;
    if (custom_copy) {
      f += second ? custom_copy->flux2(u, v) : custom_copy->flux1(u, v);
    } else if (amplitude != 0.0) {
      f.head(n) += amplitude * quadratic_terms(n, v(0), v(1), second);
    }
    return f;
  };

  auto jacobian = [=](const StateVector& w, bool second) -> Mat {
    const Vec u = split_u(w);
    const Vec v = split_v(w);
    Mat j = block_diag(second ? base->jac2(u) : base->jac1(u), second ? g2 : g1);
    if (custom_copy) {
      const auto& h = second ? custom_copy->flux2 : custom_copy->flux1;
      j += fd_jacobian([&](const Vec& x) { return h(x.head(n), x.tail(2)); }, w);
    } else if (amplitude != 0.0) {
      j.block(0, n, n, 2) += amplitude * quadratic_terms_jacobian(n, v(0), v(1), second);
    }
    return j;
  };

  DomainFn domain = [base, n](const StateVector& w) { return base->admissible(w.head(n)); };
  return std::make_shared<HyperbolicSystem>(
      base->name() + "+linear-wave", n + 2,
      [flux](const StateVector& w) { return flux(w, false); },
      [flux](const StateVector& w) { return flux(w, true); },
      JacobianFn([jacobian](const StateVector& w) { return jacobian(w, false); }),
      JacobianFn([jacobian](const StateVector& w) { return jacobian(w, true); }), domain);
}

double spectral_radius_jac1(const HyperbolicSystem& system, const StateVector& u) {
  return char_speeds(system, u, Vec2(1.0, 0.0)).cwiseAbs().maxCoeff();
}

}  // namespace

Mat LinearWaveSystem::jac1() const {
  Mat a(2, 2);
  a << s, 0.0, 0.0, -s;
  return a;
}

Mat LinearWaveSystem::jac2() const {
  Mat b(2, 2);
  b << 0.0, s, s, 0.0;
  return b;
}

bool supersonic_check(const HyperbolicSystem& base, const StateVector& u_star, double s) {
  return s > spectral_radius_jac1(base, u_star) + kSupersonicMargin;
}

CoupledSystem couple(const SystemPtr& base, double s, double coupling_amplitude) {
  if (!base) throw std::invalid_argument("couple: null base system");
  if (!(s > 0.0)) throw std::invalid_argument("couple: s must be positive");
  LinearWaveSystem wave{s};
  return {base, wave, coupling_amplitude, build_coupled(base, wave, nullptr, coupling_amplitude)};
}

CoupledSystem couple(const SystemPtr& base, double s, const Coupling& coupling,
                     const std::vector<StateVector>& probe_states) {
  if (!base) throw std::invalid_argument("couple: null base system");
  if (!(s > 0.0)) throw std::invalid_argument("couple: s must be positive");
  if (!coupling.flux1 || !coupling.flux2) throw std::invalid_argument("couple: empty coupling");
  LinearWaveSystem wave{s};
  CoupledSystem coupled{base, wave, std::numeric_limits<double>::quiet_NaN(),
                        build_coupled(base, wave, &coupling, 0.0)};
  const int n = base->dim();
  for (const auto& u : probe_states) {
    StateVector w = StateVector::Zero(n + 2);
    w.head(n) = u;
    const Mat d1 = coupled.system->jac1(w) - block_diag(base->jac1(u), wave.jac1());
    const Mat d2 = coupled.system->jac2(w) - block_diag(base->jac2(u), wave.jac2());
    if (d1.cwiseAbs().maxCoeff() > kCouplingCheckTol ||
        d2.cwiseAbs().maxCoeff() > kCouplingCheckTol) {
      throw std::invalid_argument("couple: coupling is not O(|v|^2) at v = 0");
    }
  }
  return coupled;
}

ShockWave augment_shock(const ShockWave& base_shock, const CoupledSystem& coupled) {
  const auto& base = *base_shock.system;
  if (!supersonic_check(base, base_shock.u_minus, coupled.wave.s) ||
      !supersonic_check(base, base_shock.u_plus, coupled.wave.s)) {
    throw TuningError("augment_shock: s = " + std::to_string(coupled.wave.s) +
                      " is not supersonic for the base shock");
  }
  const int n = base.dim();
  ShockWave shock = base_shock;
  shock.system = coupled.system;
  shock.u_minus = StateVector::Zero(n + 2);
  shock.u_plus = StateVector::Zero(n + 2);
  shock.u_minus.head(n) = base_shock.u_minus;
  shock.u_plus.head(n) = base_shock.u_plus;
  shock.family = base_shock.family + 1;
  return shock;
}

BranchPointSet predict_branch_points(double s) {
  if (!(s > 0.0)) throw std::invalid_argument("predict_branch_points: s must be positive");
  const double norm = std::sqrt(1.0 + s * s);
  const double sigma = s / norm;
  const double xi = 1.0 / norm;
  BranchPointSet set;
  int k = 0;
  for (double ss : {1.0, -1.0}) {
    for (double sx : {1.0, -1.0}) {
      BranchPoint& bp = set[k++];
      bp.point = {0.0, ss * sigma, sx * xi};
      bp.theta = std::atan2(bp.point.xi, bp.point.sigma);
      if (bp.theta < 0.0) bp.theta += 2.0 * kPi;
    }
  }
  std::sort(set.begin(), set.end(),
            [](const BranchPoint& a, const BranchPoint& b) { return a.theta < b.theta; });
  for (int i = 0; i < 4; ++i) set[i].id = i;
  return set;
}

BEigen b_eigen_oracle(cplx tau, double xi, double s) {
  if (!(s > 0.0)) throw std::invalid_argument("b_eigen_oracle: s must be positive");
  const cplx a = tau / s;
  const cplx mu2 = a * a + xi * xi;
  BEigen out;
  out.mu_plus = std::sqrt(mu2);
  out.mu_minus = -out.mu_plus;
  out.defective = std::abs(mu2) <= kDefectTol;
  if (out.defective) {
    out.vec_plus = b_eigenvector(a, xi, 0.0);
    out.vec_minus = out.vec_plus;
  } else {
    out.vec_plus = b_eigenvector(a, xi, out.mu_plus);
    out.vec_minus = b_eigenvector(a, xi, out.mu_minus);
  }
  return out;
}

double coincidence_gap(double sigma, double xi, double s) {
  if (!(s > 0.0)) throw std::invalid_argument("coincidence_gap: s must be positive");
  const cplx a(0.0, sigma / s);
  const double mu2 = xi * xi - sigma * sigma / (s * s);
  cplx mu_stable;
  cplx mu_unstable;
  if (mu2 > 0.0) {
    mu_stable = -std::sqrt(mu2);
    mu_unstable = std::sqrt(mu2);
  } else if (mu2 < 0.0) {
    // mu = +-i beta; Re mu(eta) = eta sigma / (s^2 mu / i), so the stable
    // branch is -i sign(sigma) beta.
    const double beta = std::sqrt(-mu2);
    const double sgn = sigma > 0.0 ? 1.0 : -1.0;
    mu_stable = cplx(0.0, -sgn * beta);
    mu_unstable = cplx(0.0, sgn * beta);
  }
  const CVec rs = b_eigenvector(a, xi, mu_stable);
  const CVec ru = b_eigenvector(a, xi, mu_unstable);
  return std::abs(rs(0) * ru(1) - rs(1) * ru(0));
}

}  // namespace lopat

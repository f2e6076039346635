#include "lopat/lopatinski.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "lopat/characteristics.hpp"
#include "lopat/errors.hpp"
#include "lopat/linalg.hpp"

namespace lopat {

namespace {

constexpr double kMaxJacobianCond = 1e10;
constexpr double kInteriorMinGamma = 1e-8;
constexpr double kInteriorSplitTol = 1e-12;
// |Re mu| below this fraction of ||A|| counts as on the imaginary axis.
constexpr double kAxisTol = 1e-6;
constexpr std::array<double, 4> kEtaLadder = {1e-3, 1e-4, 1e-5, 1e-6};
constexpr double kLimitTol = 1e-7;
constexpr double kRegularRate = 5.0;

struct SymbolParts {
  CMat a;
  CMat jac1_inv;  // dA / d(Re tau)
};

SymbolParts symbol_parts(const HyperbolicSystem& system, const StateVector& u, cplx tau,
                         double xi) {
  const Mat j1 = system.jac1(u);
  Eigen::JacobiSVD<Mat> svd(j1);
  const Vec sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  if (smin == 0.0 || sv(0) / smin > kMaxJacobianCond) {
    throw CharacteristicBoundaryError(system.name() + ": DF_1 is (nearly) singular");
  }
  const Mat j1_inv = j1.fullPivLu().inverse();
  const int n = system.dim();
  const CMat lhs = tau * CMat::Identity(n, n) + cplx(0.0, xi) * system.jac2(u).cast<cplx>();
  return {lhs * j1_inv.cast<cplx>(), j1_inv.cast<cplx>()};
}

int negative_speed_count(const HyperbolicSystem& system, const StateVector& u) {
  const Vec speeds = char_speeds(system, u, Vec2(1.0, 0.0));
  return static_cast<int>((speeds.array() < 0.0).count());
}

SubspaceBasis leading_block(linalg::OrderedSchur schur, const std::vector<bool>& select,
                            Side side, Kind kind) {
  const CVec mu = schur.eigenvalues();
  double gap = std::numeric_limits<double>::infinity();
  int dim = 0;
  for (std::size_t i = 0; i < select.size(); ++i) {
    if (!select[i]) continue;
    gap = std::min(gap, std::abs(mu(static_cast<Eigen::Index>(i)).real()));
    ++dim;
  }
  schur.reorder(select);
  SubspaceBasis basis;
  basis.columns = schur.z().leftCols(dim);
  basis.side = side;
  basis.kind = kind;
  basis.dim = dim;
  basis.eig_gap = dim == 0 ? 0.0 : gap;
  return basis;
}

std::vector<bool> complement(std::vector<bool> select) {
  select.flip();
  return select;
}

SubspacePair split_interior(const CMat& a, int stable_dim, Side side) {
  linalg::OrderedSchur schur(a);
  const CVec mu = schur.eigenvalues();
  std::vector<bool> stable(mu.size());
  int count = 0;
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    if (std::abs(mu(i).real()) < kInteriorSplitTol) {
      throw StructuralError("interior split: eigenvalue on the imaginary axis");
    }
    stable[i] = mu(i).real() < 0.0;
    count += stable[i] ? 1 : 0;
  }
  if (count != stable_dim) {
    throw StructuralError("interior split: stable dimension " + std::to_string(count) +
                          " but " + std::to_string(stable_dim) + " negative speeds");
  }
  return {leading_block(schur, stable, side, Kind::Stable),
          leading_block(schur, complement(stable), side, Kind::Unstable)};
}

// Signed score whose sign says on which side of the imaginary axis the
// eigenvalue sits for small Re tau > 0.
double limit_score(const CMat& a, const CMat& da, cplx mu, double axis_tol) {
  if (std::abs(mu.real()) > axis_tol) return mu.real();
  const Eigen::Index n = a.rows();
  Eigen::JacobiSVD<CMat> svd(a - mu * CMat::Identity(n, n), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const CVec r = svd.matrixV().col(n - 1);
  const CVec l = svd.matrixU().col(n - 1);
  const cplx lr = l.dot(r);
  const cplx dmu = l.dot(da * r) / lr;
  if (lr != 0.0 && std::isfinite(std::abs(dmu)) && std::abs(dmu.real()) >= std::abs(dmu.imag())) {
    // Strictly inside (-axis_tol, axis_tol) so certain eigenvalues rank first.
    return 0.5 * axis_tol * dmu.real() / std::abs(dmu);
  }
  return 0.5 * mu.real();
}

bool eta_ladder_converged(const HyperbolicSystem& system, const StateVector& u, double sigma,
                          double xi, int stable_dim, Side side, Kind kind) {
  try {
    std::array<double, kEtaLadder.size() - 1> dist{};
    CMat prev;
    for (std::size_t k = 0; k < kEtaLadder.size(); ++k) {
      const auto parts = symbol_parts(system, u, cplx(kEtaLadder[k], sigma), xi);
      const auto pair = split_interior(parts.a, stable_dim, side);
      const CMat& cur = kind == Kind::Stable ? pair.stable.columns : pair.unstable.columns;
      if (k > 0) dist[k - 1] = linalg::subspace_distance(prev, cur);
      prev = cur;
    }
    const double last = dist.back();
    const double before = dist[dist.size() - 2];
    return last < kLimitTol || before >= kRegularRate * last;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

bool FrequencyPoint::on_hemisphere(double tol) const {
  return gamma >= 0.0 && std::abs(gamma * gamma + sigma * sigma + xi * xi - 1.0) <= tol;
}

FrequencyPoint FrequencyPoint::boundary(double theta) {
  return {0.0, std::cos(theta), std::sin(theta)};
}

CMat symbol_matrix_A(const HyperbolicSystem& system, const StateVector& u, cplx tau, double xi) {
  return symbol_parts(system, u, tau, xi).a;
}

SubspacePair interior_subspaces(const HyperbolicSystem& system, const StateVector& u, cplx tau,
                                double xi, Side side) {
  if (!(tau.real() >= kInteriorMinGamma)) {
    throw std::invalid_argument("interior_subspaces: Re tau must be >= 1e-8");
  }
  const auto parts = symbol_parts(system, u, tau, xi);
  return split_interior(parts.a, negative_speed_count(system, u), side);
}

SubspaceBasis boundary_subspaces(const HyperbolicSystem& system, const StateVector& u,
                                 double sigma, double xi, Side side, Kind kind) {
  const int n = system.dim();
  const int stable_dim = negative_speed_count(system, u);
  const auto parts = symbol_parts(system, u, cplx(0.0, sigma), xi);

  if (xi == 0.0 && sigma != 0.0) {
    // A = i sigma DF_1^{-1}; Re mu(eta) has the sign of the speed.
    const auto fields = char_fields(system, u, Vec2(1.0, 0.0));
    Mat cols(n, 0);
    for (const auto& f : fields) {
      if ((f.speed < 0.0) == (kind == Kind::Stable)) {
        cols.conservativeResize(n, cols.cols() + 1);
        cols.col(cols.cols() - 1) = f.right;
      }
    }
    SubspaceBasis basis;
    basis.columns = linalg::orthonormalize(cols.cast<cplx>());
    basis.side = side;
    basis.kind = kind;
    basis.dim = static_cast<int>(cols.cols());
    basis.eig_gap = 0.0;
    basis.converged = true;
    return basis;
  }

  linalg::OrderedSchur schur(parts.a);
  const CVec mu = schur.eigenvalues();
  const double axis_tol = kAxisTol * std::max(1.0, parts.a.norm());
  std::vector<double> score(n);
  for (int i = 0; i < n; ++i) score[i] = limit_score(parts.a, parts.jac1_inv, mu(i), axis_tol);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return score[x] < score[y]; });
  std::vector<bool> stable(n, false);
  for (int k = 0; k < stable_dim; ++k) stable[order[k]] = true;

  const auto& select = kind == Kind::Stable ? stable : complement(stable);
  SubspaceBasis basis = leading_block(schur, select, side, kind);
  basis.converged = eta_ladder_converged(system, u, sigma, xi, stable_dim, side, kind);
  return basis;
}

CVec jump_column(const ShockWave& shock, cplx tau, double xi) {
  const auto& system = *shock.system;
  const Vec du = shock.u_plus - shock.u_minus;
  const Vec df2 = system.flux2(shock.u_plus) - system.flux2(shock.u_minus);
  return tau * du.cast<cplx>() + cplx(0.0, xi) * df2.cast<cplx>();
}

cplx assemble_delta(const CMat& stable_minus, const CVec& jump, const CMat& unstable_plus) {
  const Eigen::Index n = jump.size();
  if (stable_minus.cols() + 1 + unstable_plus.cols() != n) {
    throw StructuralError("Lopatinski matrix: " + std::to_string(stable_minus.cols()) + " + 1 + " +
                          std::to_string(unstable_plus.cols()) + " columns for dimension " +
                          std::to_string(n));
  }
  CMat m(n, n);
  m << stable_minus, jump, unstable_plus;
  return m.partialPivLu().determinant();
}

LopatinskiValue lopatinski_delta(const ShockWave& shock, const FrequencyPoint& point) {
  if (!point.on_hemisphere()) {
    throw std::invalid_argument("lopatinski_delta: point is not on the frequency hemisphere");
  }
  if ((shock.u_plus - shock.u_minus).norm() == 0.0) {
    throw DegenerateShockError("lopatinski_delta: zero jump");
  }
  const auto& system = *shock.system;

  SubspaceBasis minus;
  SubspaceBasis plus;
  if (point.gamma < kInteriorMinGamma) {
    minus = boundary_subspaces(system, shock.u_minus, point.sigma, point.xi, Side::Minus,
                               Kind::Stable);
    plus = boundary_subspaces(system, shock.u_plus, point.sigma, point.xi, Side::Plus,
                              Kind::Unstable);
  } else {
    minus = interior_subspaces(system, shock.u_minus, point.tau(), point.xi, Side::Minus).stable;
    plus = interior_subspaces(system, shock.u_plus, point.tau(), point.xi, Side::Plus).unstable;
  }

  CVec jump = jump_column(shock, point.tau(), point.xi);
  const double jump_norm = jump.norm();
  if (jump_norm == 0.0) throw DegenerateShockError("lopatinski_delta: jump column vanishes");
  jump /= jump_norm;

  LopatinskiValue value;
  value.delta = assemble_delta(minus.columns, jump, plus.columns);
  value.delta_norm = std::abs(value.delta);
  value.eig_gap_minus = minus.eig_gap;
  value.eig_gap_plus = plus.eig_gap;
  value.boundary_converged = minus.converged && plus.converged;
  return value;
}

}  // namespace lopat

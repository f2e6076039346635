#include "lopat/characteristics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "lopat/errors.hpp"

namespace lopat {

namespace {

constexpr double kImagTol = 1e-8;
constexpr double kClusterGap = 1e-8;

void normalize_sign(Vec& r) {
  Eigen::Index imax = 0;
  r.cwiseAbs().maxCoeff(&imax);
  if (r(imax) < 0.0) r = -r;
}

bool is_simple(const Vec& speeds, int p) {
  const double scale = std::max(1.0, speeds.cwiseAbs().maxCoeff());
  const int i = p - 1;
  if (i > 0 && speeds(i) - speeds(i - 1) <= kClusterGap * scale) return false;
  if (i + 1 < speeds.size() && speeds(i + 1) - speeds(i) <= kClusterGap * scale) return false;
  return true;
}

void require_mode(int n, int p) {
  if (p < 1 || p > n) {
    throw std::invalid_argument("mode index " + std::to_string(p) + " out of range 1.." +
                                std::to_string(n));
  }
}

std::vector<int> cluster_pattern(const Vec& speeds) {
  std::vector<int> pattern;
  const double scale = std::max(1.0, speeds.cwiseAbs().maxCoeff());
  int run = 1;
  for (Eigen::Index i = 1; i < speeds.size(); ++i) {
    if (speeds(i) - speeds(i - 1) <= kClusterGap * scale) {
      ++run;
    } else {
      pattern.push_back(run);
      run = 1;
    }
  }
  pattern.push_back(run);
  return pattern;
}

}  // namespace

Mat eval_symbol(const HyperbolicSystem& system, const StateVector& u, const Vec2& nu) {
  if (nu(0) == 0.0 && nu(1) == 0.0) {
    throw std::invalid_argument("eval_symbol: direction must be nonzero");
  }
  return nu(0) * system.jac1(u) + nu(1) * system.jac2(u);
}

std::vector<CharField> char_fields(const HyperbolicSystem& system, const StateVector& u,
                                   const Vec2& nu, const std::vector<CharField>* previous) {
  const Mat m = eval_symbol(system, u, nu);
  const int n = static_cast<int>(m.rows());
  Eigen::EigenSolver<Mat> es(m);
  if (es.info() != Eigen::Success) {
    throw HyperbolicityError(system.name() + ": eigensolver failed");
  }
  const double scale = std::max(1.0, m.norm());
  const auto& evals = es.eigenvalues();
  const auto& evecs = es.eigenvectors();
  for (int i = 0; i < n; ++i) {
    if (std::abs(evals(i).imag()) > kImagTol * scale) {
      throw HyperbolicityError(system.name() + ": complex characteristic speed");
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return evals(a).real() < evals(b).real(); });

  Mat right(n, n);
  Vec speeds(n);
  for (int k = 0; k < n; ++k) {
    speeds(k) = evals(order[k]).real();
    // Real eigenvalues of a real matrix: rotate the phase out before
    // taking the real part.
    CVec v = evecs.col(order[k]);
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    v *= std::conj(v(imax)) / std::abs(v(imax));
    Vec r = v.real();
    r.normalize();
    normalize_sign(r);
    right.col(k) = r;
  }

  if (previous != nullptr && static_cast<int>(previous->size()) == n) {
    // Within each tied cluster, greedily match previous eigenvectors.
    int start = 0;
    while (start < n) {
      int end = start + 1;
      while (end < n && speeds(end) - speeds(end - 1) <= kClusterGap * scale) ++end;
      if (end - start > 1) {
        std::vector<int> pool(end - start);
        std::iota(pool.begin(), pool.end(), start);
        Mat reordered = right.middleCols(start, end - start);
        for (int k = start; k < end; ++k) {
          const Vec& ref = (*previous)[k].right;
          auto best = std::max_element(pool.begin(), pool.end(), [&](int a, int b) {
            return std::abs(ref.dot(right.col(a))) < std::abs(ref.dot(right.col(b)));
          });
          reordered.col(k - start) = right.col(*best);
          pool.erase(best);
        }
        right.middleCols(start, end - start) = reordered;
      }
      start = end;
    }
  }

  Eigen::FullPivLU<Mat> lu(right);
  if (!lu.isInvertible() || lu.rcond() < 1e-12) {
    throw HyperbolicityError(system.name() + ": symbol lacks a full eigenvector set");
  }
  const Mat left_rows = lu.inverse();

  std::vector<CharField> fields(n);
  for (int k = 0; k < n; ++k) {
    fields[k].index = k + 1;
    fields[k].speed = speeds(k);
    fields[k].right = right.col(k);
    fields[k].left = left_rows.row(k).transpose();
  }
  return fields;
}

Vec char_speeds(const HyperbolicSystem& system, const StateVector& u, const Vec2& nu) {
  const Mat m = eval_symbol(system, u, nu);
  Eigen::EigenSolver<Mat> es(m, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) {
    throw HyperbolicityError(system.name() + ": eigensolver failed");
  }
  const double scale = std::max(1.0, m.norm());
  Vec speeds(m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (std::abs(es.eigenvalues()(i).imag()) > kImagTol * scale) {
      throw HyperbolicityError(system.name() + ": complex characteristic speed");
    }
    speeds(i) = es.eigenvalues()(i).real();
  }
  std::sort(speeds.begin(), speeds.end());
  return speeds;
}

MultiplicityProfile check_constant_multiplicity(const HyperbolicSystem& system,
                                                const StateVector& u, int num_dirs) {
  if (num_dirs < 8) throw std::invalid_argument("check_constant_multiplicity: num_dirs < 8");
  MultiplicityProfile profile;
  for (int k = 0; k < num_dirs; ++k) {
    const double angle = 2.0 * kPi * k / num_dirs;
    Vec speeds;
    try {
      speeds = char_speeds(system, u, Vec2(std::cos(angle), std::sin(angle)));
    } catch (const HyperbolicityError&) {
      profile.constant = false;
      return profile;
    }
    auto pattern = cluster_pattern(speeds);
    if (k == 0) {
      profile.pattern = std::move(pattern);
    } else if (pattern != profile.pattern) {
      profile.constant = false;
      return profile;
    }
  }
  profile.constant = true;
  return profile;
}

double metivier_genuine_nonlinearity(const HyperbolicSystem& system, const StateVector& u,
                                     const Vec2& n, int p) {
  require_mode(system.dim(), p);
  const auto fields = char_fields(system, u, n);
  Vec speeds(system.dim());
  for (int k = 0; k < system.dim(); ++k) speeds(k) = fields[k].speed;
  if (!is_simple(speeds, p)) throw MultiplicityError("genuine nonlinearity: mode is not simple");

  static const double kStep = std::cbrt(std::numeric_limits<double>::epsilon());
  Vec grad(system.dim());
  for (int j = 0; j < system.dim(); ++j) {
    const double h = kStep * std::max(1.0, std::abs(u(j)));
    StateVector up = u;
    StateVector um = u;
    up(j) += h;
    um(j) -= h;
    grad(j) = (char_speeds(system, up, n)(p - 1) - char_speeds(system, um, n)(p - 1)) /
              (up(j) - um(j));
  }
  return grad.dot(fields[p - 1].right);
}

double metivier_transverse_convexity(const HyperbolicSystem& system, const StateVector& u,
                                     const Vec2& n, int p) {
  require_mode(system.dim(), p);
  const Vec speeds0 = char_speeds(system, u, n);
  if (!is_simple(speeds0, p)) throw MultiplicityError("transverse convexity: mode is not simple");

  const Vec2 t(-n(1), n(0));
  const double base = speeds0(p - 1);
  auto second_difference = [&](double h) {
    const double plus = char_speeds(system, u, n + h * t)(p - 1);
    const double minus = char_speeds(system, u, n - h * t)(p - 1);
    return (plus - 2.0 * base + minus) / (h * h);
  };
  constexpr double kBaseStep = 1e-4;
  const double coarse = second_difference(kBaseStep);
  const double fine = second_difference(0.5 * kBaseStep);
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace lopat

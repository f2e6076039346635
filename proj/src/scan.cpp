#include "lopat/scan.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <stdexcept>
#include <thread>

namespace lopat {

namespace {

constexpr double kGammaMin = 1e-3;
constexpr double kDuplicateZero = 1e-8;

double wrap_angle(double theta) {
  double t = std::fmod(theta, 2.0 * kPi);
  if (t < 0.0) t += 2.0 * kPi;
  return t;
}

// Runs fn(i) for i in [0, count) on up to `threads` workers. The first
// failure in index order is rethrown.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, threads))));
  std::vector<std::exception_ptr> errors(count);
  auto body = [&](std::size_t w) {
    for (std::size_t i = w; i < count; i += workers) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    body(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(body, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

double boundary_norm(const ShockWave& shock, double theta) {
  return lopatinski_delta(shock, FrequencyPoint::boundary(theta)).delta_norm;
}

}  // namespace

double angle_distance(double a, double b) {
  const double d = std::abs(wrap_angle(a) - wrap_angle(b));
  return std::min(d, 2.0 * kPi - d);
}

ScanRecord evaluate_record(const ShockWave& shock, const FrequencyPoint& point, double theta) {
  LopatinskiValue value;
  try {
    value = lopatinski_delta(shock, point);
  } catch (const Error& e) {
    throw ScanError(std::string(e.what()) + " at theta = " + std::to_string(theta), theta);
  }
  ScanRecord rec;
  rec.theta = theta;
  rec.gamma = point.gamma;
  rec.sigma = point.sigma;
  rec.xi = point.xi;
  rec.re_delta = value.delta.real();
  rec.im_delta = value.delta.imag();
  rec.delta_norm = value.delta_norm;
  rec.eig_gap_minus = value.eig_gap_minus;
  rec.eig_gap_plus = value.eig_gap_plus;
  rec.boundary_converged = value.boundary_converged;
  return rec;
}

std::vector<ScanRecord> scan_boundary(const ShockWave& shock, int resolution, int threads) {
  if (resolution < 16) throw std::invalid_argument("scan_boundary: resolution must be >= 16");
  std::vector<ScanRecord> records(static_cast<std::size_t>(resolution));
  parallel_for(records.size(), threads, [&](std::size_t k) {
    const double theta = 2.0 * kPi * static_cast<double>(k) / resolution;
    records[k] = evaluate_record(shock, FrequencyPoint::boundary(theta), theta);
  });
  return records;
}

RefineResult refine_zero(const ShockWave& shock, double lo, double hi, double theta_tolerance) {
  if (hi < lo) std::swap(lo, hi);
  const double f_lo = boundary_norm(shock, lo);
  if (hi == lo) return {lo, f_lo};
  const double f_hi = boundary_norm(shock, hi);
  const double mid = 0.5 * (lo + hi);
  const double f_mid = boundary_norm(shock, mid);
  if (f_mid > f_lo && f_mid > f_hi) {
    throw BracketError("refine_zero: delta_norm decreases towards both ends of the bracket");
  }

  RefineResult best{lo, f_lo};
  auto consider = [&](double t, double f) {
    if (f < best.delta_norm) best = {t, f};
  };
  consider(hi, f_hi);
  consider(mid, f_mid);

  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo;
  double b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = boundary_norm(shock, x1);
  double f2 = boundary_norm(shock, x2);
  consider(x1, f1);
  consider(x2, f2);
  const double floor_tol = 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(hi));
  const double tol = std::max(theta_tolerance, floor_tol);
  for (int iter = 0; iter < 400 && (b - a) > tol; ++iter) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      if (!(x1 > a && x1 < x2)) break;
      f1 = boundary_norm(shock, x1);
      consider(x1, f1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      if (!(x2 > x1 && x2 < b)) break;
      f2 = boundary_norm(shock, x2);
      consider(x2, f2);
    }
  }
  return best;
}

std::size_t hemisphere_grid_size(int resolution) {
  if (resolution < 8) throw std::invalid_argument("scan_hemisphere: resolution must be >= 8");
  return static_cast<std::size_t>(resolution / 4) * static_cast<std::size_t>(resolution) + 1;
}

std::vector<ScanRecord> scan_hemisphere(const ShockWave& shock, int resolution, int threads) {
  const std::size_t total = hemisphere_grid_size(resolution);
  const int rings = resolution / 4;
  const double alpha_min = std::asin(kGammaMin);
  std::vector<ScanRecord> records(total);
  parallel_for(total, threads, [&](std::size_t idx) {
    FrequencyPoint point;
    double theta = 0.0;
    if (idx + 1 == total) {
      point = {1.0, 0.0, 0.0};
    } else {
      const int ring = static_cast<int>(idx / static_cast<std::size_t>(resolution));
      const int k = static_cast<int>(idx % static_cast<std::size_t>(resolution));
      const double alpha = alpha_min + (0.5 * kPi - alpha_min) * ring / rings;
      theta = 2.0 * kPi * k / resolution;
      const double r = std::cos(alpha);
      point = {std::sin(alpha), r * std::cos(theta), r * std::sin(theta)};
    }
    records[idx] = evaluate_record(shock, point, theta);
  });
  std::stable_sort(records.begin(), records.end(), [](const ScanRecord& a, const ScanRecord& b) {
    return a.theta != b.theta ? a.theta < b.theta : a.gamma < b.gamma;
  });
  return records;
}

ZeroReport find_zeros(const ShockWave& shock, const std::vector<ScanRecord>& boundary,
                      std::span<const BranchPoint> predictions, const ZeroSearchOptions& options) {
  ZeroReport report;
  const std::size_t m = boundary.size();
  if (m < 3) throw std::invalid_argument("find_zeros: need at least 3 boundary records");

  report.coarse_min_delta_norm = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> seeds;
  for (std::size_t k = 0; k < m; ++k) {
    const double f = boundary[k].delta_norm;
    report.coarse_min_delta_norm = std::min(report.coarse_min_delta_norm, f);
    const double prev = boundary[(k + m - 1) % m].delta_norm;
    const double next = boundary[(k + 1) % m].delta_norm;
    if (f < prev && f <= next && f < options.seed_threshold) seeds.push_back(k);
  }
  report.seeds = static_cast<int>(seeds.size());

  std::vector<RefineResult> refined(seeds.size());
  parallel_for(seeds.size(), options.threads, [&](std::size_t i) {
    const std::size_t k = seeds[i];
    const double center = boundary[k].theta;
    const double step = 2.0 * kPi / static_cast<double>(m);
    RefineResult r = refine_zero(shock, center - step, center + step, options.theta_tolerance);
    if (boundary[k].delta_norm <= r.delta_norm) r = {center, boundary[k].delta_norm};
    r.theta = wrap_angle(r.theta);
    refined[i] = r;
  });

  report.min_delta_norm = report.coarse_min_delta_norm;
  for (const auto& r : refined) {
    report.min_delta_norm = std::min(report.min_delta_norm, r.delta_norm);
    if (r.delta_norm >= options.zero_threshold) continue;
    const bool duplicate = std::any_of(report.zeros.begin(), report.zeros.end(), [&](const RefinedZero& z) {
      return angle_distance(z.theta, r.theta) < kDuplicateZero;
    });
    if (duplicate) continue;
    RefinedZero z;
    z.theta = r.theta;
    z.delta_norm = r.delta_norm;
    for (const auto& bp : predictions) {
      const double d = angle_distance(r.theta, bp.theta);
      if (d < z.distance) {
        z.distance = d;
        z.matched_prediction = d <= options.match_tolerance ? std::optional<int>(bp.id) : std::nullopt;
      }
    }
    report.zeros.push_back(z);
  }
  std::sort(report.zeros.begin(), report.zeros.end(),
            [](const RefinedZero& a, const RefinedZero& b) { return a.theta < b.theta; });
  return report;
}

}  // namespace lopat

#pragma once

#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "lopat/counterexample.hpp"
#include "lopat/errors.hpp"
#include "lopat/lopatinski.hpp"

namespace lopat {

struct ScanRecord {
  double theta = 0.0;  // azimuth: sigma = r cos(theta), xi = r sin(theta)
  double gamma = 0.0;
  double sigma = 0.0;
  double xi = 0.0;
  double re_delta = 0.0;
  double im_delta = 0.0;
  double delta_norm = 0.0;
  double eig_gap_minus = 0.0;
  double eig_gap_plus = 0.0;
  bool boundary_converged = true;
};

struct RefinedZero {
  double theta = 0.0;
  double delta_norm = 0.0;
  std::optional<int> matched_prediction;  // BranchPoint::id
  double distance = std::numeric_limits<double>::infinity();  // to the nearest prediction
};

struct ZeroSearchOptions {
  double zero_threshold = 1e-6;
  // Coarse local minima above this value are not refined.
  double seed_threshold = std::numeric_limits<double>::infinity();
  double match_tolerance = 1e-6;
  double theta_tolerance = 0.0;  // 0: refine to machine precision
  int threads = 1;
};

struct ZeroReport {
  std::vector<RefinedZero> zeros;
  int seeds = 0;                 // coarse minima refined
  double min_delta_norm = 0.0;   // over the grid and all refinements
  double coarse_min_delta_norm = 0.0;
};

struct RefineResult {
  double theta = 0.0;
  double delta_norm = 0.0;
};

// An engine failure at a specific scan angle.
class ScanError : public Error {
 public:
  ScanError(const std::string& what, double theta) : Error(what), theta_(theta) {}
  double theta() const { return theta_; }

 private:
  double theta_;
};

ScanRecord evaluate_record(const ShockWave& shock, const FrequencyPoint& point, double theta);

// gamma = 0, theta_k = 2 pi k / resolution (resolution >= 16). Output is in
// k order regardless of `threads`.
std::vector<ScanRecord> scan_boundary(const ShockWave& shock, int resolution, int threads = 1);

// Golden-section minimization of delta_norm(theta) on the boundary over
// [lo, hi]. Throws BracketError if the midpoint exceeds both endpoints.
RefineResult refine_zero(const ShockWave& shock, double lo, double hi,
                         double theta_tolerance = 0.0);

// Number of points produced by scan_hemisphere: (resolution / 4) rings of
// `resolution` azimuths each, plus the pole tau = 1.
std::size_t hemisphere_grid_size(int resolution);

// Interior grid: elevation alpha (gamma = sin alpha) on resolution / 4
// equispaced rings from asin(1e-3) up to (excluding) pi/2, plus the pole.
// Sorted by (theta, gamma).
std::vector<ScanRecord> scan_hemisphere(const ShockWave& shock, int resolution, int threads = 1);

// Refines every coarse local minimum of a boundary scan and keeps those below
// options.zero_threshold, matched against `predictions`.
ZeroReport find_zeros(const ShockWave& shock, const std::vector<ScanRecord>& boundary,
                      std::span<const BranchPoint> predictions,
                      const ZeroSearchOptions& options = {});

// Cyclic angular distance.
double angle_distance(double a, double b);

}  // namespace lopat

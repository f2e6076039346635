#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "lopat/scan.hpp"

namespace lopat::cli {

enum class Expectation { None, Zeros, Stable };

struct ScanConfig {
  std::string preset;
  double s = 3.0;
  double eps = 0.1;
  double coupling = 0.0;
  int resolution = 4096;
  bool hemisphere = false;
  Expectation expect = Expectation::None;
  std::filesystem::path out = ".";
  int threads = 1;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUnexpectedZeros = 2;
inline constexpr int kExitMissingZeros = 3;

inline constexpr const char* kCsvHeader =
    "theta,gamma,sigma,xi,re_delta,im_delta,delta_norm,eig_gap_minus,eig_gap_plus,"
    "boundary_converged";

struct Fixture {
  std::string name;
  ShockWave shock;
  std::vector<BranchPoint> predictions;  // empty for the pure Euler control
  nlohmann::json params;
};

// Presets: "paper-counterexample" (isentropic Euler gamma = 2 at
// u* = (1, -1, 0), family 3, coupled to the linear wave block with s and
// coupling amplitude a) and "pure-euler-extreme" (same base shock alone).
// Throws std::invalid_argument for unknown presets.
Fixture build_fixture(const ScanConfig& config);

// Header plus one line per record, 17 significant digits.
void write_csv(std::ostream& os, const std::vector<ScanRecord>& records);

nlohmann::json config_to_json(const ScanConfig& config);

nlohmann::json make_report(const Fixture& fixture, const ZeroReport& zeros,
                           const ScanConfig& config, double wall_time_s,
                           const std::vector<ScanRecord>* hemisphere = nullptr);

struct RunOutcome {
  int exit_code = kExitOk;
  ZeroReport zeros;
  nlohmann::json report;
};

// Builds the fixture, scans, refines, and writes scan.csv, report.json and
// (with hemisphere) hemisphere.csv into config.out. Files are written even
// when the expectation fails.
RunOutcome run(const ScanConfig& config, std::ostream& log);

}  // namespace lopat::cli

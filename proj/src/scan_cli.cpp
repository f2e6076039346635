#include "lopat/scan_cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "lopat/shock.hpp"

namespace lopat::cli {

namespace {

nlohmann::json to_json(const Vec& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

ShockWave euler_base_shock(double eps) {
  const auto euler = make_euler_isentropic(2.0, 0.5);
  StateVector u_star(3);
  u_star << 1.0, -1.0, 0.0;
  return solve_zero_speed_shock(euler, {u_star, Vec2(1.0, 0.0), 3, eps});
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

Fixture build_fixture(const ScanConfig& config) {
  Fixture fixture;
  fixture.name = config.preset;
  if (config.preset == "paper-counterexample") {
    const ShockWave base = euler_base_shock(config.eps);
    const auto coupled = couple(base.system, config.s, config.coupling);
    fixture.shock = augment_shock(base, coupled);
    const auto bps = predict_branch_points(config.s);
    fixture.predictions.assign(bps.begin(), bps.end());
    fixture.params = {{"base", "euler-isentropic"}, {"gamma", 2.0}, {"kappa", 0.5},
                      {"u_star", {1.0, -1.0, 0.0}}, {"s", config.s},
                      {"eps", config.eps}, {"coupling", config.coupling}};
  } else if (config.preset == "pure-euler-extreme") {
    fixture.shock = euler_base_shock(config.eps);
    fixture.params = {{"base", "euler-isentropic"}, {"gamma", 2.0}, {"kappa", 0.5},
                      {"u_star", {1.0, -1.0, 0.0}}, {"eps", config.eps}};
  } else {
    throw std::invalid_argument("unknown preset: " + config.preset);
  }
  return fixture;
}

void write_csv(std::ostream& os, const std::vector<ScanRecord>& records) {
  os << kCsvHeader << '\n';
  for (const auto& r : records) {
    os << format_double(r.theta) << ',' << format_double(r.gamma) << ','
       << format_double(r.sigma) << ',' << format_double(r.xi) << ','
       << format_double(r.re_delta) << ',' << format_double(r.im_delta) << ','
       << format_double(r.delta_norm) << ',' << format_double(r.eig_gap_minus) << ','
       << format_double(r.eig_gap_plus) << ',' << (r.boundary_converged ? "true" : "false")
       << '\n';
  }
}

nlohmann::json config_to_json(const ScanConfig& config) {
  const char* expect = config.expect == Expectation::Zeros    ? "zeros"
                       : config.expect == Expectation::Stable ? "stable"
                                                              : "none";
  return {{"preset", config.preset},         {"s", config.s},
          {"eps", config.eps},               {"coupling", config.coupling},
          {"resolution", config.resolution}, {"hemisphere", config.hemisphere},
          {"expect", expect},                {"out", config.out.string()},
          {"threads", config.threads}};
}

nlohmann::json make_report(const Fixture& fixture, const ZeroReport& zeros,
                           const ScanConfig& config, double wall_time_s,
                           const std::vector<ScanRecord>* hemisphere) {
  const auto& shock = fixture.shock;
  const Vec residual = rh_residual(*shock.system, shock.u_minus, shock.u_plus, shock.speed,
                                   shock.normal);
  nlohmann::json report;
  report["fixture"] = {{"name", fixture.name}, {"system", shock.system->name()},
                       {"params", fixture.params}};
  report["shock"] = {{"u_minus", to_json(shock.u_minus)},
                     {"u_plus", to_json(shock.u_plus)},
                     {"speed", shock.speed},
                     {"normal", {shock.normal(0), shock.normal(1)}},
                     {"family", shock.family},
                     {"dim", shock.system->dim()},
                     {"epsilon", shock.epsilon},
                     {"residual", residual.norm()}};
  auto predicted = nlohmann::json::array();
  for (const auto& bp : fixture.predictions) {
    predicted.push_back({{"id", bp.id}, {"sigma", bp.point.sigma}, {"xi", bp.point.xi},
                         {"theta", bp.theta}});
  }
  report["predicted_branch_points"] = predicted;
  auto zero_list = nlohmann::json::array();
  for (const auto& z : zeros.zeros) {
    zero_list.push_back({{"theta", z.theta},
                         {"sigma", std::cos(z.theta)},
                         {"xi", std::sin(z.theta)},
                         {"delta_norm", z.delta_norm},
                         {"matched_prediction", z.matched_prediction
                                                    ? nlohmann::json(*z.matched_prediction)
                                                    : nlohmann::json(nullptr)},
                         {"distance", std::isfinite(z.distance) ? nlohmann::json(z.distance)
                                                                : nlohmann::json(nullptr)}});
  }
  report["zeros"] = zero_list;
  report["min_delta_norm"] = zeros.min_delta_norm;
  report["coarse_min_delta_norm"] = zeros.coarse_min_delta_norm;
  report["refined_seeds"] = zeros.seeds;
  report["zero_threshold"] = ZeroSearchOptions{}.zero_threshold;
  if (hemisphere != nullptr && !hemisphere->empty()) {
    double interior_min = std::numeric_limits<double>::infinity();
    for (const auto& r : *hemisphere) interior_min = std::min(interior_min, r.delta_norm);
    report["hemisphere_min_delta_norm"] = interior_min;
    report["hemisphere_points"] = hemisphere->size();
  }
  report["wall_time_s"] = wall_time_s;
  report["config"] = config_to_json(config);
  return report;
}

RunOutcome run(const ScanConfig& config, std::ostream& log) {
  const auto start = std::chrono::steady_clock::now();
  const Fixture fixture = build_fixture(config);
  log << "fixture " << fixture.name << ": " << fixture.shock.system->name() << ", family "
      << fixture.shock.family << " of " << fixture.shock.system->dim() << '\n';

  const auto boundary = scan_boundary(fixture.shock, config.resolution, config.threads);
  ZeroSearchOptions options;
  options.threads = config.threads;
  RunOutcome outcome;
  outcome.zeros = find_zeros(fixture.shock, boundary, fixture.predictions, options);

  std::vector<ScanRecord> hemisphere;
  if (config.hemisphere) hemisphere = scan_hemisphere(fixture.shock, config.resolution, config.threads);

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  outcome.report = make_report(fixture, outcome.zeros, config, wall,
                               config.hemisphere ? &hemisphere : nullptr);

  std::filesystem::create_directories(config.out);
  {
    std::ofstream csv(config.out / "scan.csv");
    write_csv(csv, boundary);
  }
  if (config.hemisphere) {
    std::ofstream csv(config.out / "hemisphere.csv");
    write_csv(csv, hemisphere);
  }
  {
    std::ofstream json(config.out / "report.json");
    json << outcome.report.dump(2) << '\n';
  }

  log << "refined " << outcome.zeros.seeds << " coarse minima, " << outcome.zeros.zeros.size()
      << " zero(s); min delta_norm " << outcome.zeros.min_delta_norm << '\n';
  for (const auto& z : outcome.zeros.zeros) {
    log << "  zero at theta = " << format_double(z.theta) << ", delta_norm = " << z.delta_norm;
    if (z.matched_prediction) log << ", branch point " << *z.matched_prediction;
    log << '\n';
  }

  const bool found = !outcome.zeros.zeros.empty();
  if (config.expect == Expectation::Stable && found) {
    outcome.exit_code = kExitUnexpectedZeros;
  } else if (config.expect == Expectation::Zeros && !found) {
    outcome.exit_code = kExitMissingZeros;
  }
  return outcome;
}

}  // namespace lopat::cli

#pragma once

#include <chrono>
#include <cstddef>
#include <string>
#include <thread>
#include <type_traits>
#include <utility>
#include <vector>

#include "rph/binomial.hpp"
#include "rph/certificate.hpp"
#include "rph/errors.hpp"
#include "rph/lattice.hpp"
#include "rph/mixed_cells.hpp"
#include "rph/tracker.hpp"

namespace rph {

struct SolverConfig {
  TrackerSettings tracker;
  /// Track even when the certificate fails; the report is then marked
  /// uncertified.
  bool force = false;
  unsigned threads = 0;  ///< 0 = hardware concurrency
};

struct StageTimings {
  double initialization_ms = 0.0;
  double cells_ms = 0.0;
  double certificate_ms = 0.0;
  double binomial_ms = 0.0;
  double tracking_ms = 0.0;
};

struct SolveReport {
  std::size_t m = 0;
  MixedCellSet cells;
  Certificate certificate;
  bool tracked = false;      ///< the continuation stage ran
  bool uncertified = false;  ///< tracked although the certificate failed
  std::vector<std::size_t> start_solutions;  ///< real binomial solutions per cell
  std::vector<TrackedSolution> solutions;
  std::vector<PathFailure> failures;
  StageTimings timings;
};

namespace detail {

template <class F>
auto run_stage(const char* name, double& elapsed_ms, F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  auto record = [&] {
    elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  };
  try {
    if constexpr (std::is_void_v<decltype(f())>) {
      f();
      record();
    } else {
      auto r = f();
      record();
      return r;
    }
  } catch (Error& e) {
    if (e.stage().empty()) e.set_stage(name);
    throw;
  }
}

}  // namespace detail

/// Initialization, mixed cells of the Log|C| subdivision, certificate, then
/// real continuation from the binomial start systems. When the certificate
/// fails (and `force` is off) the report carries cells and margins but no
/// solutions.
inline SolveReport solve(const SupportSystem& system, const SolverConfig& config = {}) {
  SolveReport report;
  CayleyConfig cfg;
  Lifting lifting;
  detail::run_stage("initialization", report.timings.initialization_ms, [&] {
    cfg = build_cayley(system);
    lifting = log_abs_lifting(system);
  });
  report.m = cfg.size();
  report.cells = detail::run_stage("mixed_cells", report.timings.cells_ms,
                                   [&] { return enumerate_mixed_cells(cfg, lifting); });
  detail::run_stage("certificate", report.timings.certificate_ms, [&] {
    if (report.cells.inequalities.empty()) {
      report.certificate.m = cfg.size();
      report.certificate.pass = true;
    } else {
      report.certificate = certify(lifting, report.cells.inequalities, cfg.size());
    }
  });
  if (!report.certificate.pass && !config.force) return report;
  report.uncertified = !report.certificate.pass;
  report.tracked = true;

  const HomotopySystem homotopy(system);
  std::vector<PathState> paths;
  detail::run_stage("binomial", report.timings.binomial_ms, [&] {
    for (std::size_t c = 0; c < report.cells.cells.size(); ++c) {
      const MixedCell& cell = report.cells.cells[c];
      const auto sols = solve_real(binomial_from_cell(cell, system));
      report.start_solutions.push_back(sols.size());
      for (const auto& s : sols) {
        PathState p;
        p.cell = c;
        p.zeta = cell.normal;
        p.t = select_t0(homotopy, p.zeta, s, config.tracker);
        p.x = start_point(p.zeta, s, p.t);
        paths.push_back(std::move(p));
      }
    }
  });

  detail::run_stage("tracking", report.timings.tracking_ms, [&] {
    const unsigned threads = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.threads;
    TrackResult r = track(homotopy, paths, config.tracker, threads);
    report.solutions = std::move(r.solutions);
    report.failures = std::move(r.failures);
  });
  return report;
}

}  // namespace rph

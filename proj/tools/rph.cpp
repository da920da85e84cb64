#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rph/io.hpp"
#include "rph/rph.hpp"

namespace {

enum Exit : int { Ok = 0, InputError = 1, CertificateFail = 2, Degenerate = 3, TrackingFailures = 4 };

int report_error(const rph::Error& e) {
  std::cerr << "error";
  if (!e.stage().empty()) std::cerr << " [" << e.stage() << "]";
  std::cerr << ": " << e.what() << "\n";
  return e.code() == rph::ErrorCode::TieDegenerate ? Degenerate : InputError;
}

void emit(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_mixed_cells(const std::string& path) {
  const rph::SupportSystem system = rph::io::read_system(path);
  const rph::CayleyConfig cfg = rph::build_cayley(system);
  const auto cells = rph::enumerate_mixed_cells(cfg, rph::log_abs_lifting(system));
  emit(rph::io::cells_to_json(cells, cfg));
  return Ok;
}

int cmd_certify(const std::string& path) {
  const rph::SupportSystem system = rph::io::read_system(path);
  const rph::CertifiedCells cc = rph::certify_system(system);
  emit(rph::io::certificate_to_json(cc.certificate));
  return cc.certificate.pass ? Ok : CertificateFail;
}

int cmd_solve(const std::string& path, const rph::SolverConfig& config) {
  const rph::SupportSystem system = rph::io::read_system(path);
  const rph::SolveReport report = rph::solve(system, config);
  emit(rph::io::report_to_json(report, rph::build_cayley(system)));
  std::cerr << rph::io::summary(report);
  if (!report.tracked) return CertificateFail;
  return report.failures.empty() ? Ok : TrackingFailures;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Real polyhedral homotopy for sparse polynomial systems"};
  app.require_subcommand(1);

  std::string path;
  auto* mixed = app.add_subcommand("mixed-cells", "List the mixed cells of the Log|C| subdivision");
  mixed->add_option("file", path, "input document ('-' for stdin)")->required();

  auto* cert = app.add_subcommand("certify", "Check the patchworking certificate");
  cert->add_option("file", path, "input document ('-' for stdin)")->required();

  rph::SolverConfig config;
  auto* solve = app.add_subcommand("solve", "Find the real solutions");
  solve->add_option("file", path, "input document ('-' for stdin)")->required();
  solve->add_option("--t0", config.tracker.t0, "start parameter in (0,1]; 0 picks it automatically")
      ->check(CLI::Range(0.0, 1.0));
  solve->add_option("--tol", config.tracker.final_tolerance, "residual tolerance at t = 1")
      ->check(CLI::PositiveNumber);
  solve->add_flag("--force", config.force, "track even if the certificate fails");
  solve->add_option("--threads", config.threads, "path tracking threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? Ok : InputError;
  }

  try {
    if (*mixed) return cmd_mixed_cells(path);
    if (*cert) return cmd_certify(path);
    return cmd_solve(path, config);
  } catch (const rph::Error& e) {
    return report_error(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return InputError;
  }
}

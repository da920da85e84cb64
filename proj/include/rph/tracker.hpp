#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "rph/binomial.hpp"
#include "rph/errors.hpp"
#include "rph/lattice.hpp"
#include "rph/mixed_cells.hpp"

namespace rph {

struct TrackerSettings {
  double t0 = 0.0;  ///< fixed start parameter; 0 picks one per path
  double final_tolerance = 1e-8;
  double corrector_tolerance = 1e-10;
  int corrector_iterations = 3;
  double initial_step_fraction = 0.1;
  int easy_steps_before_doubling = 4;
  int max_consecutive_failures = 3;
  double divergence_bound = 1e12;
  double min_step = 1e-14;
  double start_residual_threshold = 1e-3;
  std::size_t max_steps = 100000;
  int polish_iterations = 5;
};

enum class PathStatus { Tracking, Converged, Diverged, Failed };

enum class PathError { PathDiverged, CorrectorStalled, ResidualTooLarge };

constexpr std::string_view to_string(PathError e) {
  switch (e) {
    case PathError::PathDiverged: return "PathDiverged";
    case PathError::CorrectorStalled: return "CorrectorStalled";
    case PathError::ResidualTooLarge: return "ResidualTooLarge";
  }
  return "Unknown";
}

struct PathState {
  double t = 1.0;
  std::vector<double> x;
  std::size_t cell = 0;
  std::vector<double> zeta;  ///< Puiseux exponent of the branch (cell normal)
  PathStatus status = PathStatus::Tracking;
};

struct TrackedSolution {
  std::vector<double> point;
  double residual = 0.0;
  std::size_t cell = 0;
  std::size_t steps = 0;
};

struct PathFailure {
  std::size_t path = 0;
  std::size_t cell = 0;
  PathError error = PathError::CorrectorStalled;
  double t = 0.0;
  std::vector<double> x;
};

struct TrackResult {
  std::vector<TrackedSolution> solutions;
  std::vector<PathFailure> failures;
};

/// The real toric deformation p_i(t, x) = sum_a c_a t^{-v_a} x^a with
/// v_a = w(a) - max_{b in A_i} w(b), w = Log|C|. At t = 1 this is the input
/// system; as t -> 0 each mixed cell's two terms per equation dominate along
/// x = y t^zeta.
class HomotopySystem {
 public:
  explicit HomotopySystem(SupportSystem system) : system_(std::move(system)) {
    const std::size_t n = system_.dim();
    log_c_.resize(n);
    sign_c_.resize(n);
    v_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& c = system_.coefficients()[i];
      double wmax = -std::numeric_limits<double>::infinity();
      for (double ci : c) {
        log_c_[i].push_back(std::log(std::abs(ci)));
        sign_c_[i].push_back(ci < 0 ? -1 : 1);
        wmax = std::max(wmax, log_c_[i].back());
      }
      for (double l : log_c_[i]) v_[i].push_back(l - wmax);
    }
  }

  const SupportSystem& system() const noexcept { return system_; }
  std::size_t dim() const noexcept { return system_.dim(); }

  /// Deformation exponents, one per Cayley point (block-major), all <= 0.
  std::vector<double> exponents() const {
    std::vector<double> out;
    for (const auto& vi : v_) out.insert(out.end(), vi.begin(), vi.end());
    return out;
  }

  double coefficient(std::size_t i, std::size_t j, double t) const {
    return system_.coefficient(i, j) * std::pow(t, -v_[i][j]);
  }

  struct Eval {
    Eigen::VectorXd F;        ///< equations, each divided by its largest term
    Eigen::MatrixXd J;        ///< d F / d u, same row scaling
    Eigen::VectorXd F_lambda; ///< d F / d lambda, same row scaling
  };

  /// Evaluates at x = signs * exp(u) and t = exp(-lambda). Each row is
  /// divided by its largest term magnitude; Newton steps are unaffected by
  /// row scaling and max|F| is the relative residual.
  void evaluate(std::span<const double> u, std::span<const int> signs, double lambda, Eval& out) const {
    const std::size_t n = dim();
    out.F.setZero(static_cast<Eigen::Index>(n));
    out.J.setZero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    out.F_lambda.setZero(static_cast<Eigen::Index>(n));
    std::vector<double> e;
    for (std::size_t i = 0; i < n; ++i) {
      const SupportSet& s = system_.support(i);
      e.assign(s.size(), 0.0);
      double emax = -std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < s.size(); ++j) {
        double v = log_c_[i][j] + lambda * v_[i][j];
        for (std::size_t k = 0; k < n; ++k) v += static_cast<double>(s[j][k]) * u[k];
        e[j] = v;
        emax = std::max(emax, v);
      }
      const auto row = static_cast<Eigen::Index>(i);
      for (std::size_t j = 0; j < s.size(); ++j) {
        int sg = sign_c_[i][j];
        for (std::size_t k = 0; k < n; ++k)
          if (signs[k] < 0 && (s[j][k] & 1) != 0) sg = -sg;
        const double term = sg * std::exp(e[j] - emax);
        out.F(row) += term;
        out.F_lambda(row) += term * v_[i][j];
        for (std::size_t k = 0; k < n; ++k) out.J(row, static_cast<Eigen::Index>(k)) += term * static_cast<double>(s[j][k]);
      }
    }
  }

  /// max_i |p_i(t, x)| / max_a |c_a t^{-v_a} x^a|.
  double normalized_residual(std::span<const double> x, double t) const {
    const std::size_t n = dim();
    std::vector<double> u(n);
    std::vector<int> signs(n);
    for (std::size_t k = 0; k < n; ++k) {
      if (x[k] == 0.0 || !std::isfinite(x[k])) return std::numeric_limits<double>::infinity();
      u[k] = std::log(std::abs(x[k]));
      signs[k] = x[k] < 0 ? -1 : 1;
    }
    Eval ev;
    evaluate(u, signs, -std::log(t), ev);
    return ev.F.cwiseAbs().maxCoeff();
  }

  double target_residual(std::span<const double> x) const { return normalized_residual(x, 1.0); }

 private:
  SupportSystem system_;
  std::vector<std::vector<double>> log_c_;
  std::vector<std::vector<int>> sign_c_;
  std::vector<std::vector<double>> v_;
};

/// Leading term of the branch at t0: (sol_k t0^{zeta_k})_k.
inline std::vector<double> start_point(std::span<const double> zeta, const RealOrthantSolution& sol, double t0) {
  if (!(t0 > 0.0 && t0 <= 1.0)) throw Error(ErrorCode::InvalidInput, "start parameter must lie in (0, 1]");
  std::vector<double> x(sol.point.size());
  for (std::size_t k = 0; k < x.size(); ++k) x[k] = sol.point[k] * std::pow(t0, zeta[k]);
  return x;
}

template <class T>
std::vector<double> start_point(const BasicMixedCell<T>& cell, const RealOrthantSolution& sol, double t0) {
  std::vector<double> zeta(cell.normal.begin(), cell.normal.end());
  return start_point(std::span<const double>(zeta), sol, t0);
}

/// Largest t0 in {1e-1, ..., 1e-8} whose normalized start residual is below
/// the threshold. t0 = 1 is used when the start point already solves the
/// target exactly (binomial targets).
inline double select_t0(const HomotopySystem& h, std::span<const double> zeta, const RealOrthantSolution& sol,
                        const TrackerSettings& settings) {
  if (settings.t0 > 0.0) return settings.t0;
  if (h.normalized_residual(sol.point, 1.0) <= settings.corrector_tolerance) return 1.0;
  double t0 = 1e-8;
  for (int k = 1; k <= 8; ++k) {
    const double t = std::pow(10.0, -k);
    const auto x = start_point(zeta, sol, t);
    if (h.normalized_residual(x, t) < settings.start_residual_threshold) {
      t0 = t;
      break;
    }
  }
  return t0;
}

namespace detail {

inline bool newton_correct(const HomotopySystem& h, std::vector<double>& u, std::span<const int> signs, double lambda,
                           int iterations, double tol, HomotopySystem::Eval& ev) {
  const std::size_t n = u.size();
  for (int it = 0; it < iterations; ++it) {
    h.evaluate(u, signs, lambda, ev);
    if (!ev.F.allFinite()) return false;
    if (ev.F.cwiseAbs().maxCoeff() <= tol) return true;
    const Eigen::VectorXd du = ev.J.partialPivLu().solve(-ev.F);
    if (!du.allFinite()) return false;
    for (std::size_t k = 0; k < n; ++k) u[k] += du(static_cast<Eigen::Index>(k));
  }
  h.evaluate(u, signs, lambda, ev);
  return ev.F.allFinite() && ev.F.cwiseAbs().maxCoeff() <= tol;
}

}  // namespace detail

/// Continues one path from its start parameter to t = 1 in lambda = -log t
/// with an Euler predictor on the Davidenko equation and a Newton corrector.
/// Working in u = log|x| with the orthant fixed keeps every iterate off the
/// coordinate hyperplanes.
inline std::variant<TrackedSolution, PathFailure> track_path(const HomotopySystem& h, const PathState& start,
                                                             const TrackerSettings& settings,
                                                             std::size_t path_index = 0) {
  const std::size_t n = h.dim();
  if (start.x.size() != n || start.zeta.size() != n) throw Error(ErrorCode::InvalidInput, "path state has wrong dimension");
  std::vector<int> signs(n);
  std::vector<double> u(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (start.x[k] == 0.0) throw Error(ErrorCode::InvalidInput, "start point has a zero coordinate");
    signs[k] = start.x[k] < 0 ? -1 : 1;
    u[k] = std::log(std::abs(start.x[k]));
  }
  auto failure = [&](PathError err, double lambda) {
    PathFailure f{path_index, start.cell, err, std::exp(-lambda), {}};
    for (std::size_t k = 0; k < n; ++k) f.x.push_back(signs[k] * std::exp(u[k]));
    return f;
  };
  const double log_bound = std::log(settings.divergence_bound);
  double lambda = -std::log(start.t);
  // Growth is measured in the rescaled frame y = x t^{-zeta}, relative to
  // the start; y stays bounded along a regular branch.
  std::vector<double> log_y0(n);
  for (std::size_t k = 0; k < n; ++k) log_y0[k] = u[k] + start.zeta[k] * lambda;
  auto diverged = [&](const std::vector<double>& uu, double lam) {
    for (std::size_t k = 0; k < n; ++k)
      if (!std::isfinite(uu[k]) || std::abs(uu[k] + start.zeta[k] * lam - log_y0[k]) > log_bound) return true;
    return false;
  };

  HomotopySystem::Eval ev;
  if (!detail::newton_correct(h, u, signs, lambda, 2 * settings.corrector_iterations + 4, settings.corrector_tolerance, ev))
    return failure(PathError::CorrectorStalled, lambda);

  double step = settings.initial_step_fraction * lambda;
  std::size_t steps = 0;
  int easy = 0;
  int failures = 0;
  std::vector<double> trial(n);
  while (lambda > 0.0) {
    if (steps >= settings.max_steps) return failure(PathError::CorrectorStalled, lambda);
    step = std::min(step, lambda);
    const double next = step >= lambda ? 0.0 : lambda - step;

    h.evaluate(u, signs, lambda, ev);
    const Eigen::VectorXd du = ev.J.partialPivLu().solve(-ev.F_lambda);  // du / dlambda
    bool ok = du.allFinite();
    if (ok) {
      for (std::size_t k = 0; k < n; ++k) trial[k] = u[k] - step * du(static_cast<Eigen::Index>(k));
      ok = detail::newton_correct(h, trial, signs, next, settings.corrector_iterations, settings.corrector_tolerance, ev) &&
           !diverged(trial, next);
    }
    if (ok) {
      u = trial;
      lambda = next;
      ++steps;
      failures = 0;
      if (++easy >= settings.easy_steps_before_doubling) {
        step *= 2.0;
        easy = 0;
      }
      continue;
    }
    easy = 0;
    step *= 0.5;
    if (step < settings.min_step) return failure(PathError::PathDiverged, lambda);
    if (++failures > settings.max_consecutive_failures) return failure(PathError::CorrectorStalled, lambda);
  }

  // polish on the target system
  detail::newton_correct(h, u, signs, 0.0, settings.polish_iterations, 0.0, ev);
  TrackedSolution sol;
  sol.cell = start.cell;
  sol.steps = steps;
  for (std::size_t k = 0; k < n; ++k) sol.point.push_back(signs[k] * std::exp(u[k]));
  sol.residual = h.target_residual(sol.point);
  if (!(sol.residual < settings.final_tolerance)) return failure(PathError::ResidualTooLarge, 0.0);
  return sol;
}

/// Tracks independent paths, optionally on several threads. Results keep
/// the input path order regardless of scheduling.
inline TrackResult track(const HomotopySystem& h, const std::vector<PathState>& paths, const TrackerSettings& settings,
                         unsigned threads = 1) {
  std::vector<std::variant<TrackedSolution, PathFailure>> results(paths.size());
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < paths.size(); i += stride) results[i] = track_path(h, paths[i], settings, i);
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, paths.size()));
  if (workers <= 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
  }
  TrackResult out;
  for (auto& r : results) {
    if (auto* s = std::get_if<TrackedSolution>(&r))
      out.solutions.push_back(std::move(*s));
    else
      out.failures.push_back(std::get<PathFailure>(std::move(r)));
  }
  return out;
}

}  // namespace rph

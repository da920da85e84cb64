#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "rph/errors.hpp"
#include "rph/lattice.hpp"
#include "rph/mixed_cells.hpp"

namespace rph {

/// Outcome of the patchworking test. A pass means the ray Log|C| + lambda v
/// stays off the A-discriminant amoeba for every v in the mixed-cell cone,
/// so the toric deformation of the system crosses no discriminant. A fail
/// is inconclusive.
struct Certificate {
  std::vector<double> margins;  ///< <w, z> - log(m) * |z|_1, one per inequality
  std::size_t m = 0;            ///< number of Cayley points
  bool pass = false;

  double min_margin() const {
    return margins.empty() ? 0.0 : *std::min_element(margins.begin(), margins.end());
  }
};

inline Certificate certify(const Lifting& lifting, const std::vector<CircuitInequality>& inequalities, std::size_t m) {
  if (inequalities.empty()) throw Error(ErrorCode::EmptyInequalities, "no circuit inequalities to certify against");
  if (m < 2) throw Error(ErrorCode::InvalidInput, "configuration needs at least two points");
  const double log_m = std::log(static_cast<double>(m));
  Certificate cert;
  cert.m = m;
  cert.margins.reserve(inequalities.size());
  for (const auto& z : inequalities) {
    for (const auto& [idx, c] : z.coeffs)
      if (idx >= lifting.size()) throw Error(ErrorCode::InvalidInput, "inequality index outside the lifting");
    cert.margins.push_back(z.dot(lifting.values) - log_m * static_cast<double>(z.l1_norm()));
  }
  cert.pass = std::all_of(cert.margins.begin(), cert.margins.end(), [](double v) { return v > 0.0; });
  return cert;
}

struct CertifiedCells {
  Certificate certificate;
  MixedCellSet cells;
};

/// Lifting by Log|C|, mixed cells of the induced subdivision, then the
/// certificate. A system without excluded points (every equation a
/// binomial) passes vacuously with no margins.
inline CertifiedCells certify_system(const SupportSystem& system) {
  const CayleyConfig cfg = build_cayley(system);
  const Lifting w = log_abs_lifting(system);
  CertifiedCells out{{}, enumerate_mixed_cells(cfg, w)};
  if (out.cells.inequalities.empty()) {
    out.certificate.m = cfg.size();
    out.certificate.pass = true;
  } else {
    out.certificate = certify(w, out.cells.inequalities, cfg.size());
  }
  return out;
}

}  // namespace rph

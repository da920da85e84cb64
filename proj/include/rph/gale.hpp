#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "rph/errors.hpp"
#include "rph/integer_matrix.hpp"
#include "rph/lattice.hpp"

namespace rph {

/// Integer lattice basis of the kernel of the homogenized configuration
/// matrix. Row b(i) belongs to Cayley point i; every column sums to zero.
struct GaleDual {
  IntMatrix B;  ///< m x (m - rank)

  std::size_t points() const noexcept { return B.rows(); }
  std::size_t codim() const noexcept { return B.cols(); }
};

/// Homogenized configuration matrix: an all-ones row over the point
/// coordinates, one column per point.
inline IntMatrix homogenized_matrix(const CayleyConfig& cfg) {
  const std::size_t dim = cfg.points.empty() ? 0 : cfg.points.front().size();
  IntMatrix a(dim + 1, cfg.size());
  for (std::size_t j = 0; j < cfg.size(); ++j) {
    a(0, j) = 1;
    for (std::size_t r = 0; r < dim; ++r) a(r + 1, j) = cfg.points[j][r];
  }
  return a;
}

inline GaleDual gale_dual(const CayleyConfig& cfg) {
  const IntMatrix a = homogenized_matrix(cfg);
  const EchelonForm e = row_echelon(a.transposed());  // U * A^T = H
  if (e.rank() < a.rows())
    throw Error(ErrorCode::DegenerateConfiguration, "points do not affinely span their ambient space");
  // Rows of U that map to zero rows of H span the integer kernel of A.
  const std::size_t m = cfg.size();
  const std::size_t codim = m - e.rank();
  GaleDual g{IntMatrix(m, codim)};
  for (std::size_t c = 0; c < codim; ++c)
    for (std::size_t i = 0; i < m; ++i) g.B(i, c) = e.U(e.rank() + c, i);
  return g;
}

namespace detail {

inline std::vector<double> gale_pairings(const GaleDual& g, std::span<const double> zeta) {
  if (zeta.size() != g.codim()) throw Error(ErrorCode::InvalidInput, "direction has the wrong length");
  double zmax = 0.0;
  for (double z : zeta) zmax = std::max(zmax, std::abs(z));
  std::vector<double> out(g.points(), 0.0);
  for (std::size_t i = 0; i < g.points(); ++i) {
    double s = 0.0, bnorm = 0.0;
    for (std::size_t c = 0; c < g.codim(); ++c) {
      const double b = g.B(i, c).convert_to<double>();
      s += b * zeta[c];
      bnorm += std::abs(b);
    }
    // A zero row contributes nothing (x log|x| -> 0); any other row must
    // pair away from zero.
    if (bnorm > 0.0 && std::abs(s) <= 1e-14 * bnorm * zmax)
      throw Error(ErrorCode::SingularDirection, "direction is orthogonal to row " + std::to_string(i));
    out[i] = s;
  }
  return out;
}

}  // namespace detail

/// phi_A(zeta) = sum_i b(i) log|<b(i), zeta>|.
inline std::vector<double> horn_kapranov(const GaleDual& g, std::span<const double> zeta) {
  const std::vector<double> s = detail::gale_pairings(g, zeta);
  std::vector<double> phi(g.codim(), 0.0);
  for (std::size_t i = 0; i < g.points(); ++i) {
    if (s[i] == 0.0) continue;
    const double l = std::log(std::abs(s[i]));
    for (std::size_t c = 0; c < g.codim(); ++c) phi[c] += g.B(i, c).convert_to<double>() * l;
  }
  return phi;
}

/// Right-hand side of the tangent hyperplane <zeta, x> = offset at phi_A(zeta).
inline double supporting_hyperplane_offset(const GaleDual& g, std::span<const double> zeta) {
  const std::vector<double> s = detail::gale_pairings(g, zeta);
  double off = 0.0;
  for (double v : s)
    if (v != 0.0) off += v * std::log(std::abs(v));
  return off;
}

}  // namespace rph

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "rph/errors.hpp"
#include "rph/integer_matrix.hpp"
#include "rph/lattice.hpp"
#include "rph/mixed_cells.hpp"

namespace rph {

using Quad = boost::multiprecision::cpp_bin_float_quad;

/// x^{D_i} = rhs_i for every row i of D.
struct BinomialSystem {
  IntMatrix D;
  std::vector<double> rhs;
  std::optional<std::vector<Rational>> exact_rhs;

  std::size_t dim() const noexcept { return D.rows(); }
};

struct RealOrthantSolution {
  std::vector<double> point;
  std::vector<int> signs;  ///< +1 / -1 per coordinate
};

/// The binomial system of a mixed cell: the two edge terms of equation i,
/// c_p x^{a_p} + c_q x^{a_q} = 0, become x^{a_p - a_q} = -c_q / c_p where p
/// is the first-listed edge point.
template <class T>
BinomialSystem binomial_from_cell(const BasicMixedCell<T>& cell, const SupportSystem& system) {
  const std::size_t n = system.dim();
  if (cell.edges.size() != n) throw Error(ErrorCode::InvalidInput, "cell needs one edge per equation");
  BinomialSystem b{IntMatrix(n, n), std::vector<double>(n), std::nullopt};
  const auto& exact = system.exact_coefficients();
  if (exact) b.exact_rhs.emplace(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [p, q] = cell.edges[i];
    const SupportSet& s = system.support(i);
    if (p >= s.size() || q >= s.size() || p == q) throw Error(ErrorCode::InvalidInput, "invalid edge for support");
    for (std::size_t k = 0; k < n; ++k) b.D(i, k) = s[p][k] - s[q][k];
    b.rhs[i] = -system.coefficient(i, q) / system.coefficient(i, p);
    if (exact) (*b.exact_rhs)[i] = -(*exact)[i][q] / (*exact)[i][p];
  }
  return b;
}

/// max_i |x^{D_i} - rhs_i| / |rhs_i|, evaluated directly on the system.
inline double binomial_residual(const BinomialSystem& b, std::span<const double> x) {
  double worst = 0.0;
  for (std::size_t i = 0; i < b.dim(); ++i) {
    long double v = 1.0L;
    for (std::size_t k = 0; k < b.dim(); ++k)
      v *= std::pow(static_cast<long double>(x[k]), b.D(i, k).convert_to<long double>());
    worst = std::max(worst, static_cast<double>(std::abs((v - b.rhs[i]) / b.rhs[i])));
  }
  return worst;
}

namespace detail {

inline Rational rational_power(const Rational& base, const BigInt& e) {
  if (e == 0) return Rational(1);
  Rational b = e < 0 ? Rational(1) / base : base;
  BigInt k = abs(e);
  Rational out(1);
  while (k > 0) {
    if ((k & 1) != 0) out *= b;
    b *= b;
    k >>= 1;
  }
  return out;
}

inline Quad log_abs(const Rational& q) {
  return log(Quad(abs(numerator(q)))) - log(Quad(denominator(q)));
}

}  // namespace detail

/// Every real solution of a binomial system in (R^*)^n.
///
/// After U D = H (lower triangular), the system becomes
/// prod_{k<=i} x_k^{h_ik} = lambda_i with lambda = rhs^U. Magnitudes are
/// unique and come from back substitution in log space; signs branch only at
/// even pivots, and a negative right-hand side at an even pivot kills the
/// branch. Solutions are ordered by sign vector, then coordinates.
inline std::vector<RealOrthantSolution> solve_real(const BinomialSystem& b) {
  const std::size_t n = b.dim();
  if (b.D.cols() != n || b.rhs.size() != n) throw Error(ErrorCode::InvalidInput, "binomial system shape mismatch");
  for (double r : b.rhs)
    if (r == 0.0 || !std::isfinite(r)) throw Error(ErrorCode::InvalidInput, "binomial right-hand side must be nonzero");
  const HermiteForm hf = hermite_normal_form(b.D);

  // lambda_i = prod_j rhs_j^{U_ij}: exact sign from parities, log magnitude
  // in 113-bit precision (or exactly when the rhs is rational).
  std::vector<int> lambda_sign(n, 1);
  std::vector<Quad> lambda_log(n, Quad(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (b.exact_rhs) {
      Rational lam(1);
      for (std::size_t j = 0; j < n; ++j) lam *= detail::rational_power((*b.exact_rhs)[j], hf.U(i, j));
      lambda_sign[i] = lam < 0 ? -1 : 1;
      lambda_log[i] = detail::log_abs(lam);
    } else {
      for (std::size_t j = 0; j < n; ++j) {
        const BigInt& u = hf.U(i, j);
        if (u == 0) continue;
        if (b.rhs[j] < 0 && (abs(u) & 1) != 0) lambda_sign[i] = -lambda_sign[i];
        lambda_log[i] += Quad(u) * log(Quad(std::abs(b.rhs[j])));
      }
    }
  }

  std::vector<Quad> xlog(n);
  for (std::size_t i = 0; i < n; ++i) {
    Quad acc = lambda_log[i];
    for (std::size_t k = 0; k < i; ++k) acc -= Quad(hf.H(i, k)) * xlog[k];
    xlog[i] = acc / Quad(hf.H(i, i));
  }

  // Depth-first over coordinates; only signs branch.
  std::vector<std::vector<int>> sign_sets{{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::vector<int>> next;
    const bool even = (hf.H(i, i) & 1) == 0;
    for (const auto& partial : sign_sets) {
      int s = lambda_sign[i];
      for (std::size_t k = 0; k < i; ++k)
        if (partial[k] < 0 && (hf.H(i, k) & 1) != 0) s = -s;
      if (even) {
        if (s < 0) continue;
        for (int choice : {-1, 1}) {
          auto v = partial;
          v.push_back(choice);
          next.push_back(std::move(v));
        }
      } else {
        auto v = partial;
        v.push_back(s);
        next.push_back(std::move(v));
      }
    }
    sign_sets = std::move(next);
  }

  std::vector<double> magnitude(n);
  for (std::size_t i = 0; i < n; ++i) magnitude[i] = static_cast<double>(exp(xlog[i]));

  std::vector<RealOrthantSolution> out;
  for (auto& signs : sign_sets) {
    RealOrthantSolution s;
    s.point.resize(n);
    for (std::size_t i = 0; i < n; ++i) s.point[i] = signs[i] * magnitude[i];
    s.signs = std::move(signs);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const RealOrthantSolution& a, const RealOrthantSolution& b) {
    if (a.signs != b.signs) return a.signs < b.signs;
    return a.point < b.point;
  });
  return out;
}

}  // namespace rph

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rph/errors.hpp"
#include "rph/integer_matrix.hpp"

namespace rph {

using Point = std::vector<std::int64_t>;

/// Exponent vectors of the monomials of one polynomial.
class SupportSet {
 public:
  SupportSet() = default;
  explicit SupportSet(std::vector<Point> points) : points_(std::move(points)) {
    if (points_.empty()) throw Error(ErrorCode::InvalidSystem, "support set is empty");
    dim_ = points_.front().size();
    std::set<Point> seen;
    for (const auto& p : points_) {
      if (p.size() != dim_) throw Error(ErrorCode::InvalidSystem, "support points have mixed dimensions");
      if (!seen.insert(p).second) throw Error(ErrorCode::InvalidSystem, "support set has a repeated point");
    }
  }

  const std::vector<Point>& points() const noexcept { return points_; }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  std::size_t size() const noexcept { return points_.size(); }
  std::size_t dim() const noexcept { return dim_; }

 private:
  std::vector<Point> points_;
  std::size_t dim_ = 0;
};

/// A square sparse system p_1, ..., p_n over (R^*)^n.
///
/// `coefficients[i][j]` multiplies `supports[i][j]`. When every coefficient
/// was given exactly (integers or p/q), `exact_coefficients` carries the
/// rational values and downstream steps use them where exactness matters.
class SupportSystem {
 public:
  SupportSystem() = default;
  SupportSystem(std::vector<SupportSet> supports, std::vector<std::vector<double>> coefficients,
                std::optional<std::vector<std::vector<Rational>>> exact = std::nullopt)
      : supports_(std::move(supports)), coefficients_(std::move(coefficients)), exact_(std::move(exact)) {
    const std::size_t n = supports_.size();
    if (n == 0) throw Error(ErrorCode::InvalidSystem, "system has no equations");
    if (coefficients_.size() != n) throw Error(ErrorCode::InvalidSystem, "one coefficient list per support required");
    for (std::size_t i = 0; i < n; ++i) {
      if (supports_[i].dim() != n)
        throw Error(ErrorCode::InvalidSystem, "system is not square: " + std::to_string(n) + " supports in dimension " +
                                                  std::to_string(supports_[i].dim()));
      if (coefficients_[i].size() != supports_[i].size())
        throw Error(ErrorCode::InvalidSystem, "coefficient count does not match support " + std::to_string(i));
      for (double c : coefficients_[i]) {
        if (c == 0.0) throw Error(ErrorCode::InvalidSystem, "zero coefficient in equation " + std::to_string(i));
        if (!std::isfinite(c)) throw Error(ErrorCode::InvalidSystem, "non-finite coefficient");
      }
    }
    if (exact_) {
      if (exact_->size() != n) throw Error(ErrorCode::InvalidSystem, "exact coefficient shape mismatch");
      for (std::size_t i = 0; i < n; ++i)
        if ((*exact_)[i].size() != coefficients_[i].size())
          throw Error(ErrorCode::InvalidSystem, "exact coefficient shape mismatch");
    }
  }

  std::size_t dim() const noexcept { return supports_.size(); }
  const std::vector<SupportSet>& supports() const noexcept { return supports_; }
  const SupportSet& support(std::size_t i) const { return supports_[i]; }
  const std::vector<std::vector<double>>& coefficients() const noexcept { return coefficients_; }
  double coefficient(std::size_t i, std::size_t j) const { return coefficients_[i][j]; }
  const std::optional<std::vector<std::vector<Rational>>>& exact_coefficients() const noexcept { return exact_; }

  std::size_t max_terms() const noexcept {
    std::size_t t = 0;
    for (const auto& s : supports_) t = std::max(t, s.size());
    return t;
  }

 private:
  std::vector<SupportSet> supports_;
  std::vector<std::vector<double>> coefficients_;
  std::optional<std::vector<std::vector<Rational>>> exact_;
};

/// The Cayley configuration A_1 * ... * A_n in Z^{2n-1}: point (a, e_{i-1})
/// for a in A_i, with e_0 = 0. Points are stored block-major in input order.
struct CayleyConfig {
  std::vector<Point> points;
  std::vector<std::size_t> block;         ///< originating support of each point
  std::vector<std::size_t> origin_index;  ///< index of the point inside its support
  std::vector<std::size_t> block_start;   ///< first Cayley index of each block
  std::size_t n = 0;

  std::size_t size() const noexcept { return points.size(); }
  std::size_t blocks() const noexcept { return block_start.size(); }
  std::size_t block_size(std::size_t i) const {
    return (i + 1 < block_start.size() ? block_start[i + 1] : points.size()) - block_start[i];
  }
  std::size_t index(std::size_t blk, std::size_t local) const { return block_start[blk] + local; }
  /// The exponent vector in Z^n, without the block tag.
  std::span<const std::int64_t> exponent(std::size_t idx) const { return {points[idx].data(), n}; }
};

inline CayleyConfig build_cayley(const SupportSystem& system) {
  const std::size_t n = system.dim();
  CayleyConfig cfg;
  cfg.n = n;
  for (std::size_t i = 0; i < n; ++i) {
    const SupportSet& s = system.support(i);
    if (s.dim() != n) throw Error(ErrorCode::InvalidSystem, "system is not square");
    cfg.block_start.push_back(cfg.points.size());
    for (std::size_t j = 0; j < s.size(); ++j) {
      Point p = s[j];
      for (std::size_t k = 1; k < n; ++k) p.push_back(k == i ? 1 : 0);
      cfg.points.push_back(std::move(p));
      cfg.block.push_back(i);
      cfg.origin_index.push_back(j);
    }
  }
  return cfg;
}

/// One value per Cayley point; T is double for coefficient-derived liftings
/// and Rational when a caller wants exact tie detection.
template <class T>
struct BasicLifting {
  std::vector<T> values;

  std::size_t size() const noexcept { return values.size(); }
  const T& operator[](std::size_t i) const { return values[i]; }
};

using Lifting = BasicLifting<double>;
using ExactLifting = BasicLifting<Rational>;

inline Lifting log_abs_lifting(const SupportSystem& system) {
  Lifting w;
  for (const auto& coeffs : system.coefficients())
    for (double c : coeffs) {
      if (c == 0.0) throw Error(ErrorCode::InvalidSystem, "zero coefficient has no logarithm");
      w.values.push_back(std::log(std::abs(c)));
    }
  return w;
}

inline void check_lifting(const CayleyConfig& cfg, const Lifting& w) {
  if (w.size() != cfg.size()) throw Error(ErrorCode::InvalidInput, "lifting length does not match the configuration");
  for (double v : w.values)
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidInput, "lifting has a non-finite value");
}

inline void check_lifting(const CayleyConfig& cfg, const ExactLifting& w) {
  if (w.size() != cfg.size()) throw Error(ErrorCode::InvalidInput, "lifting length does not match the configuration");
}

}  // namespace rph

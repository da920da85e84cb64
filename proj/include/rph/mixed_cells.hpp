#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <type_traits>
#include <utility>
#include <vector>

#include "rph/errors.hpp"
#include "rph/integer_matrix.hpp"
#include "rph/lattice.hpp"

namespace rph {

/// One edge per block of the Cayley configuration spanning a facet of the
/// lifted polytope.
///
/// `edges[i]` holds two indices into support i, ascending. `normal` is the
/// Puiseux exponent of the solution branch the cell starts: with lifting w
/// it is the vector z such that w(a) - <z, a> is maximal exactly on the
/// edge points of every block. For Example-style liftings w = k * log(b)
/// this equals k * log(b) times the usual min-convention tropical normal.
template <class T>
struct BasicMixedCell {
  std::vector<std::array<std::size_t, 2>> edges;
  std::vector<T> normal;
  std::uint64_t volume = 0;

  friend bool operator==(const BasicMixedCell&, const BasicMixedCell&) = default;
};

using MixedCell = BasicMixedCell<double>;

/// Sparse primitive integer vector over the Cayley points. It encodes that
/// `witness` lies strictly below the lifted cell: <coeffs, w> > 0.
struct CircuitInequality {
  std::vector<std::pair<std::size_t, std::int64_t>> coeffs;  ///< sorted by Cayley index
  std::size_t witness = 0;

  std::size_t nonzeros() const noexcept { return coeffs.size(); }

  std::int64_t l1_norm() const noexcept {
    std::int64_t s = 0;
    for (const auto& [idx, c] : coeffs) s += c < 0 ? -c : c;
    return s;
  }

  template <class T>
  T dot(const std::vector<T>& values) const {
    T s(0);
    for (const auto& [idx, c] : coeffs) s += T(c) * values[idx];
    return s;
  }

  std::vector<std::int64_t> dense(std::size_t m) const {
    std::vector<std::int64_t> v(m, 0);
    for (const auto& [idx, c] : coeffs) v[idx] = c;
    return v;
  }

  friend bool operator==(const CircuitInequality&, const CircuitInequality&) = default;
};

template <class T>
struct BasicMixedCellSet {
  std::vector<BasicMixedCell<T>> cells;
  std::vector<CircuitInequality> inequalities;  ///< union over cells, not minimized
  BasicLifting<T> lifting;

  std::uint64_t total_volume() const noexcept {
    std::uint64_t v = 0;
    for (const auto& c : cells) v += c.volume;
    return v;
  }
};

using MixedCellSet = BasicMixedCellSet<double>;

namespace detail {

template <class T>
T from_rational(const Rational& q) {
  if constexpr (std::is_same_v<T, Rational>)
    return q;
  else
    return static_cast<T>(q);
}

inline IntMatrix edge_matrix(const CayleyConfig& cfg, const std::vector<std::array<std::size_t, 2>>& edges) {
  const std::size_t n = cfg.n;
  IntMatrix d(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto p = cfg.exponent(cfg.index(i, edges[i][0]));
    const auto q = cfg.exponent(cfg.index(i, edges[i][1]));
    for (std::size_t k = 0; k < n; ++k) d(i, k) = p[k] - q[k];
  }
  return d;
}

template <class T>
T lifted(const CayleyConfig& cfg, const BasicLifting<T>& w, const std::vector<T>& gamma, std::size_t idx) {
  const auto a = cfg.exponent(idx);
  T s = w[idx];
  for (std::size_t k = 0; k < cfg.n; ++k) s += gamma[k] * T(a[k]);
  return s;
}

enum class CandidateVerdict { Rejected, Accepted, Tie };

/// Decides one candidate. `gamma` is the max-convention normal.
template <class T>
CandidateVerdict classify(const CayleyConfig& cfg, const BasicLifting<T>& w,
                          const std::vector<std::array<std::size_t, 2>>& edges, const std::vector<T>& gamma) {
  bool tie = false;
  for (std::size_t i = 0; i < cfg.n; ++i) {
    const std::size_t start = cfg.block_start[i];
    const std::size_t size = cfg.block_size(i);
    const T top = lifted(cfg, w, gamma, start + edges[i][0]);
    T scale(1);
    if constexpr (std::is_floating_point_v<T>) {
      for (std::size_t l = 0; l < size; ++l) scale = std::max(scale, 1 + std::abs(lifted(cfg, w, gamma, start + l)));
    }
    for (std::size_t l = 0; l < size; ++l) {
      if (l == edges[i][0] || l == edges[i][1]) continue;
      const T margin = top - lifted(cfg, w, gamma, start + l);
      if constexpr (std::is_floating_point_v<T>) {
        const T tol = 1e-12 * scale;
        if (margin < -tol) return CandidateVerdict::Rejected;
        if (margin <= tol) tie = true;
      } else {
        if (margin < 0) return CandidateVerdict::Rejected;
        if (margin == 0) tie = true;
      }
    }
  }
  return tie ? CandidateVerdict::Tie : CandidateVerdict::Accepted;
}

}  // namespace detail

/// Circuit inequalities of one cell: for every Cayley point outside the
/// cell's 2n vertices, the unique affine dependence with those vertices,
/// oriented so that a lifting inducing the cell pairs positively with it.
inline std::vector<CircuitInequality> circuit_inequalities(const std::vector<std::array<std::size_t, 2>>& edges,
                                                           const CayleyConfig& cfg) {
  const std::size_t n = cfg.n;
  if (edges.size() != n) throw Error(ErrorCode::InvalidInput, "cell needs one edge per block");
  const IntMatrix d = detail::edge_matrix(cfg, edges);
  const Matrix<Rational> inv = rational_inverse(d);  // throws on degenerate cells

  std::vector<CircuitInequality> out;
  for (std::size_t alpha = 0; alpha < cfg.size(); ++alpha) {
    const std::size_t blk = cfg.block[alpha];
    const std::size_t local = cfg.origin_index[alpha];
    if (local == edges[blk][0] || local == edges[blk][1]) continue;

    // a_alpha - a_q = sum_k mu_k (a_p_k - a_q_k), i.e. D^T mu = a_alpha - a_q.
    const std::size_t q_idx = cfg.index(blk, edges[blk][1]);
    const auto a = cfg.exponent(alpha);
    const auto q = cfg.exponent(q_idx);
    std::vector<Rational> mu(n, Rational(0));
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) mu[k] += inv(j, k) * Rational(a[j] - q[j]);

    std::vector<std::pair<std::size_t, Rational>> entries;
    auto add = [&](std::size_t idx, const Rational& v) {
      for (auto& e : entries)
        if (e.first == idx) {
          e.second += v;
          return;
        }
      entries.emplace_back(idx, v);
    };
    for (std::size_t k = 0; k < n; ++k) {
      add(cfg.index(k, edges[k][0]), mu[k]);
      add(cfg.index(k, edges[k][1]), -mu[k]);
    }
    add(q_idx, Rational(1));
    add(alpha, Rational(-1));

    BigInt lcm = 1;
    for (const auto& e : entries) lcm = boost::multiprecision::lcm(lcm, denominator(e.second));
    BigInt g = 0;
    std::vector<std::pair<std::size_t, BigInt>> ints;
    for (const auto& e : entries) {
      if (e.second == 0) continue;
      const BigInt v = numerator(e.second) * (lcm / denominator(e.second));
      ints.emplace_back(e.first, v);
      g = boost::multiprecision::gcd(g, BigInt(abs(v)));
    }
    CircuitInequality c;
    c.witness = alpha;
    for (const auto& [idx, v] : ints) c.coeffs.emplace_back(idx, to_int64(v / g));
    std::sort(c.coeffs.begin(), c.coeffs.end());
    out.push_back(std::move(c));
  }
  return out;
}

template <class T>
std::vector<CircuitInequality> circuit_inequalities(const BasicMixedCell<T>& cell, const CayleyConfig& cfg) {
  return circuit_inequalities(cell.edges, cfg);
}

/// Mixed cells of the regular subdivision of the Cayley configuration induced
/// by `lifting` (upper faces), found by testing every tuple of one edge per
/// block. Cells come out sorted by their edge indices.
template <class T>
BasicMixedCellSet<T> enumerate_mixed_cells(const CayleyConfig& cfg, const BasicLifting<T>& lifting) {
  check_lifting(cfg, lifting);
  const std::size_t n = cfg.n;
  for (std::size_t i = 0; i < n; ++i)
    if (cfg.block_size(i) < 2)
      throw Error(ErrorCode::EmptySupport, "support " + std::to_string(i) + " has fewer than two points");

  std::vector<std::vector<std::array<std::size_t, 2>>> pairs(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < cfg.block_size(i); ++a)
      for (std::size_t b = a + 1; b < cfg.block_size(i); ++b) pairs[i].push_back({a, b});

  BasicMixedCellSet<T> out;
  out.lifting = lifting;
  std::vector<std::size_t> choice(n, 0);
  std::vector<std::array<std::size_t, 2>> edges(n);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) edges[i] = pairs[i][choice[i]];

    const IntMatrix d = detail::edge_matrix(cfg, edges);
    const BigInt det = determinant(d);
    if (det != 0) {
      const Matrix<Rational> inv = rational_inverse(d);
      // <gamma, a_p - a_q> = w(q) - w(p) for every edge (p, q)
      std::vector<T> rhs(n);
      for (std::size_t i = 0; i < n; ++i)
        rhs[i] = lifting[cfg.index(i, edges[i][1])] - lifting[cfg.index(i, edges[i][0])];
      std::vector<T> gamma(n, T(0));
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) gamma[k] += detail::from_rational<T>(inv(k, i)) * rhs[i];

      switch (detail::classify(cfg, lifting, edges, gamma)) {
        case detail::CandidateVerdict::Rejected:
          break;
        case detail::CandidateVerdict::Tie:
          throw Error(ErrorCode::TieDegenerate, "lifting is not generic: a point ties with a candidate cell");
        case detail::CandidateVerdict::Accepted: {
          BasicMixedCell<T> cell;
          cell.edges = edges;
          for (auto& g : gamma) cell.normal.push_back(T(-g));
          cell.volume = to_int64(abs(det));
          auto ineqs = circuit_inequalities(edges, cfg);
          out.inequalities.insert(out.inequalities.end(), ineqs.begin(), ineqs.end());
          out.cells.push_back(std::move(cell));
          break;
        }
      }
    }

    bool more = false;
    for (std::size_t k = n; k-- > 0;) {
      if (++choice[k] < pairs[k].size()) {
        more = true;
        break;
      }
      choice[k] = 0;
    }
    if (!more) break;
  }
  std::stable_sort(out.cells.begin(), out.cells.end(),
                   [](const auto& a, const auto& b) { return a.edges < b.edges; });
  return out;
}

/// Upper bound 2^{n+1} * C(tn - n, n) on the number of real zeros of a
/// patchworked system whose supports have at most t points each.
inline BigInt mixed_cell_count_bound(std::int64_t n, std::int64_t t) {
  if (n < 1 || t < 2) throw Error(ErrorCode::InvalidInput, "mixed_cell_count_bound needs n >= 1 and t >= 2");
  const std::int64_t top = t * n - n;
  BigInt binom = 1;
  for (std::int64_t k = 0; k < n; ++k) binom = binom * (top - k) / (k + 1);
  return (BigInt(1) << static_cast<unsigned>(n + 1)) * binom;
}

}  // namespace rph

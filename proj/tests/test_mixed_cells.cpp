#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace rph;

namespace {

MixedCellSet cells_of(const SupportSystem& sys) { return enumerate_mixed_cells(build_cayley(sys), log_abs_lifting(sys)); }

void expect_matches_oracle(const oracle::RandomSystem& r) {
  const SupportSystem sys = fixtures::make_system(r);
  const Lifting w = log_abs_lifting(sys);
  const oracle::CellResult ref = oracle::brute_mixed_cells(r.supports, w.values);
  ASSERT_FALSE(ref.tie);
  const MixedCellSet got = enumerate_mixed_cells(build_cayley(sys), w);
  ASSERT_EQ(got.cells.size(), ref.cells.size());
  for (std::size_t k = 0; k < ref.cells.size(); ++k) {
    EXPECT_EQ(got.cells[k].edges, ref.cells[k].edges);
    EXPECT_EQ(got.cells[k].volume, ref.cells[k].volume);
    for (std::size_t d = 0; d < ref.cells[k].normal.size(); ++d)
      EXPECT_NEAR(got.cells[k].normal[d], ref.cells[k].normal[d], 1e-9 * (1 + std::abs(ref.cells[k].normal[d])));
  }
}

}  // namespace

TEST(MixedCells, Patchwork) {
  const MixedCellSet set = cells_of(fixtures::patchwork());
  const auto& printed = fixtures::patchwork_cells();
  ASSERT_EQ(set.cells.size(), printed.size());
  const double unit = std::log(1 / 0.45);
  for (std::size_t k = 0; k < printed.size(); ++k) {
    for (std::size_t i = 0; i < 2; ++i) {
      EXPECT_EQ(set.cells[k].edges[i][0] + 1, printed[k].edges[i][0]);
      EXPECT_EQ(set.cells[k].edges[i][1] + 1, printed[k].edges[i][1]);
      EXPECT_NEAR(set.cells[k].normal[i] / unit, printed[k].normal[i], 1e-9);
    }
    EXPECT_EQ(set.cells[k].volume, 1u);
  }
  EXPECT_EQ(set.total_volume(), 6u);
}

TEST(MixedCells, UnivariateQuadratic) {
  // 1 + 10x + x^2: the subdivision of {0,1,2} lifted by (0, log 10, 0) has
  // both unit edges as cells.
  const MixedCellSet set = cells_of(fixtures::quadratic(1, 10, 1));
  ASSERT_EQ(set.cells.size(), 2u);
  EXPECT_EQ(set.cells[0].edges[0], (std::array<std::size_t, 2>{0, 1}));
  EXPECT_EQ(set.cells[1].edges[0], (std::array<std::size_t, 2>{1, 2}));
  EXPECT_NEAR(set.cells[0].normal[0], std::log(10.0), 1e-12);
  EXPECT_NEAR(set.cells[1].normal[0], -std::log(10.0), 1e-12);
  // 1 + 0.1x + x^2: one long edge
  const MixedCellSet flat = cells_of(fixtures::quadratic(1, 0.1, 1));
  ASSERT_EQ(flat.cells.size(), 1u);
  EXPECT_EQ(flat.cells[0].edges[0], (std::array<std::size_t, 2>{0, 2}));
  EXPECT_EQ(flat.cells[0].volume, 2u);
}

TEST(MixedCells, MatchesFacetEnumerationOnRandomSystems) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) expect_matches_oracle(oracle::random_system(rng));
}

TEST(MixedCells, DenseVolumesAreBezoutNumbers) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> logmag(-5.0, 5.0);
  for (int d1 = 1; d1 <= 3; ++d1)
    for (int d2 = 1; d2 <= 3; ++d2) {
      std::vector<oracle::IntPoints> s{oracle::dense_support(d1), oracle::dense_support(d2)};
      std::vector<std::vector<double>> c(2);
      for (int i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < s[i].size(); ++j) c[i].push_back(std::exp(logmag(rng)));
      EXPECT_EQ(cells_of(fixtures::make_system(s, c)).total_volume(), static_cast<std::uint64_t>(d1 * d2))
          << d1 << "," << d2;
    }
}

TEST(MixedCells, EqualLiftingsOnACircuitAreDegenerate) {
  try {
    cells_of(fixtures::quadratic(1, 1, 1));
    FAIL() << "expected TieDegenerate";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TieDegenerate);
  }
  // exact liftings detect the same tie with no tolerance
  const CayleyConfig cfg = build_cayley(fixtures::quadratic(1, 1, 1));
  EXPECT_THROW(enumerate_mixed_cells(cfg, ExactLifting{{Rational(0), Rational(1, 2), Rational(1)}}), Error);
  const auto ok = enumerate_mixed_cells(cfg, ExactLifting{{Rational(0), Rational(2, 3), Rational(1)}});
  ASSERT_EQ(ok.cells.size(), 2u);
  EXPECT_EQ(ok.cells[0].normal[0], Rational(2, 3));
}

TEST(MixedCells, SinglePointSupportIsRejected) {
  const SupportSystem sys = fixtures::make_system({{{0, 0}}, {{0, 0}, {1, 1}}}, {{1}, {1, 2}});
  try {
    cells_of(sys);
    FAIL() << "expected EmptySupport";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptySupport);
  }
}

TEST(CircuitInequalities, QuadraticOrientation) {
  const CayleyConfig cfg = build_cayley(fixtures::quadratic(1, 3, 1));
  const auto z = circuit_inequalities({{0, 1}}, cfg);
  ASSERT_EQ(z.size(), 1u);
  EXPECT_EQ(z[0].witness, 2u);
  EXPECT_EQ(z[0].dense(3), (std::vector<std::int64_t>{-1, 2, -1}));
  const auto wide = circuit_inequalities({{0, 2}}, cfg);
  ASSERT_EQ(wide.size(), 1u);
  EXPECT_EQ(wide[0].dense(3), (std::vector<std::int64_t>{1, -2, 1}));
}

TEST(CircuitInequalities, StructureOnRandomSystems) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const oracle::RandomSystem r = oracle::random_system(rng, 6);
    const SupportSystem sys = fixtures::make_system(r);
    const CayleyConfig cfg = build_cayley(sys);
    const Lifting w = log_abs_lifting(sys);
    const MixedCellSet set = enumerate_mixed_cells(cfg, w);
    const std::size_t n = 2, t = sys.max_terms();
    for (const auto& cell : set.cells) {
      const auto ineqs = circuit_inequalities(cell, cfg);
      EXPECT_EQ(ineqs.size(), cfg.size() - 2 * n);
      EXPECT_LE(ineqs.size(), n * (t - 2));
      for (const auto& z : ineqs) {
        EXPECT_LE(z.nonzeros(), 2 * n + 1);
        EXPECT_GT(z.dot(w.values), 0.0);
        // an affine dependency: coefficients sum to zero in every block and
        // annihilate every coordinate
        std::vector<std::int64_t> coord(n, 0), per_block(n, 0);
        std::int64_t g = 0;
        for (const auto& [idx, c] : z.coeffs) {
          per_block[cfg.block[idx]] += c;
          for (std::size_t k = 0; k < n; ++k) coord[k] += c * cfg.exponent(idx)[k];
          g = std::gcd(g, c);
        }
        EXPECT_EQ(coord, std::vector<std::int64_t>(n, 0));
        EXPECT_EQ(per_block, std::vector<std::int64_t>(n, 0));
        EXPECT_EQ(g, 1);
        EXPECT_LT(z.dense(cfg.size())[z.witness], 0);
      }
    }
  }
}

TEST(MixedCellCountBound, Values) {
  EXPECT_EQ(mixed_cell_count_bound(2, 8), 728);
  EXPECT_EQ(mixed_cell_count_bound(1, 2), 4);
  EXPECT_EQ(mixed_cell_count_bound(2, 3), 48);
  EXPECT_EQ(mixed_cell_count_bound(3, 4), 16 * 84);
  EXPECT_THROW(mixed_cell_count_bound(0, 3), Error);
  EXPECT_THROW(mixed_cell_count_bound(2, 1), Error);
}

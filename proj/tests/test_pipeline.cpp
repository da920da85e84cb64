#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace rph;

TEST(Solve, PatchworkStopsAtTheCertificate) {
  const SolveReport r = solve(fixtures::patchwork());
  EXPECT_EQ(r.cells.cells.size(), 6u);
  EXPECT_FALSE(r.certificate.pass);
  EXPECT_EQ(r.certificate.margins.size(), 72u);
  EXPECT_FALSE(r.tracked);
  EXPECT_TRUE(r.solutions.empty());
  EXPECT_TRUE(r.start_solutions.empty());
}

TEST(Solve, PatchworkForced) {
  SolverConfig cfg;
  cfg.force = true;
  const SolveReport r = solve(fixtures::patchwork(), cfg);
  EXPECT_TRUE(r.tracked);
  EXPECT_TRUE(r.uncertified);
  EXPECT_EQ(r.start_solutions, (std::vector<std::size_t>(6, 1)));
  ASSERT_EQ(r.solutions.size(), 6u);
  EXPECT_TRUE(r.failures.empty());
}

TEST(Solve, ForcedFailingQuadratic) {
  SolverConfig cfg;
  cfg.force = true;
  const SolveReport r = solve(fixtures::quadratic(1, 3, 1), cfg);
  EXPECT_TRUE(r.uncertified);
  ASSERT_EQ(r.solutions.size(), 2u);
  std::vector<double> roots{r.solutions[0].point[0], r.solutions[1].point[0]};
  std::sort(roots.begin(), roots.end());
  EXPECT_NEAR(roots[0], -(3 + std::sqrt(5.0)) / 2, 1e-10);
  EXPECT_NEAR(roots[1], -(3 - std::sqrt(5.0)) / 2, 1e-10);
}

TEST(Solve, CertifiedQuadratic) {
  const SolveReport r = solve(fixtures::quadratic(2, -30, 3));
  EXPECT_TRUE(r.certificate.pass);
  EXPECT_FALSE(r.uncertified);
  const auto ref = oracle::quadratic_roots(2, -30, 3);
  ASSERT_EQ(r.solutions.size(), ref.size());
  std::vector<double> roots;
  for (const auto& s : r.solutions) roots.push_back(s.point[0]);
  std::sort(roots.begin(), roots.end());
  for (std::size_t k = 0; k < ref.size(); ++k) EXPECT_NEAR(roots[k], ref[k], 1e-9 * std::abs(ref[k]));
}

TEST(Solve, BinomialSystemPassesVacuously) {
  const SupportSystem sys = rph::io::read_system(fixtures::data("binomial.json"));
  const SolveReport r = solve(sys);
  EXPECT_TRUE(r.certificate.pass);
  EXPECT_TRUE(r.certificate.margins.empty());
  EXPECT_FALSE(r.uncertified);
  const auto exact = solve_real(binomial_from_cell(r.cells.cells.at(0), sys));
  ASSERT_EQ(r.solutions.size(), exact.size());
  for (std::size_t k = 0; k < exact.size(); ++k)
    for (std::size_t d = 0; d < 2; ++d) EXPECT_NEAR(r.solutions[k].point[d], exact[k].point[d], 1e-14);
}

TEST(Solve, StableUnderTinyPerturbations) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> noise(-1e-9, 1e-9);
  for (const auto& sys : {fixtures::powered(fixtures::patchwork(), 20), fixtures::quadratic(1, 10, 1)}) {
    const SolveReport base = solve(sys);
    ASSERT_TRUE(base.certificate.pass);
    for (int trial = 0; trial < 5; ++trial) {
      auto c = sys.coefficients();
      for (auto& row : c)
        for (auto& v : row) v *= 1 + noise(rng);
      const SolveReport r = solve(SupportSystem(sys.supports(), c));
      ASSERT_EQ(r.cells.cells.size(), base.cells.cells.size());
      for (std::size_t k = 0; k < r.cells.cells.size(); ++k) EXPECT_EQ(r.cells.cells[k].edges, base.cells.cells[k].edges);
      EXPECT_EQ(r.solutions.size(), base.solutions.size());
    }
  }
}

TEST(Solve, SolutionCountWithinFewnomialBound) {
  for (const char* f : {"patchwork_pow20.json", "quadratic_pass.json", "binomial.json"}) {
    const SupportSystem sys = rph::io::read_system(fixtures::data(f));
    const SolveReport r = solve(sys);
    const auto bound = mixed_cell_count_bound(static_cast<std::int64_t>(sys.dim()),
                                              std::max<std::int64_t>(2, static_cast<std::int64_t>(sys.max_terms())));
    EXPECT_LE(BigInt(r.solutions.size()), bound) << f;
  }
}

TEST(Solve, ErrorsCarryTheirStage) {
  try {
    solve(rph::io::read_system(fixtures::data("degenerate.json")));
    FAIL() << "expected TieDegenerate";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TieDegenerate);
    EXPECT_EQ(e.stage(), "mixed_cells");
  }
}

TEST(Solve, TighterToleranceIsHonoured) {
  SolverConfig cfg;
  cfg.force = true;
  cfg.tracker.final_tolerance = 1e-12;
  const SolveReport r = solve(fixtures::patchwork(), cfg);
  ASSERT_EQ(r.solutions.size(), 6u);
  for (const auto& s : r.solutions) EXPECT_LT(s.residual, 1e-12);
}

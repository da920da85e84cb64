#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rph/io.hpp"
#include "rph/rph.hpp"

namespace fixtures {

inline std::string data(const std::string& name) { return std::string(RPH_DATA_DIR) + "/" + name; }

inline rph::SupportSystem make_system(const std::vector<oracle::IntPoints>& supports,
                                      const std::vector<std::vector<double>>& coefficients) {
  std::vector<rph::SupportSet> s;
  for (const auto& p : supports) s.emplace_back(p);
  return rph::SupportSystem(std::move(s), coefficients);
}

inline rph::SupportSystem make_system(const oracle::RandomSystem& r) { return make_system(r.supports, r.coefficients); }

inline rph::SupportSystem quadratic(double c0, double c1, double c2) {
  return make_system({{{0}, {1}, {2}}}, {{c0, c1, c2}});
}

/// Each coefficient replaced by sign(c) |c|^s.
inline rph::SupportSystem powered(const rph::SupportSystem& sys, double s) {
  std::vector<std::vector<double>> c = sys.coefficients();
  for (auto& row : c)
    for (auto& v : row) v = std::copysign(std::pow(std::abs(v), s), v);
  return rph::SupportSystem(sys.supports(), c);
}

inline rph::SupportSystem patchwork() { return rph::io::read_system(data("patchwork.json")); }

// Reference values for the two-equation system in data/patchwork.json, whose
// coefficients are signed powers of 0.45: cells with 1-based edges and
// tropical normals in units of log(1/0.45), binomial start solutions, and
// tracked endpoints.
struct PrintedCell {
  std::array<std::array<std::size_t, 2>, 2> edges;
  std::array<double, 2> normal;
};

inline const std::vector<PrintedCell>& patchwork_cells() {
  static const std::vector<PrintedCell> cells{
      {{{{1, 2}, {3, 5}}}, {-4, -3}}, {{{{1, 2}, {5, 6}}}, {-2, -1}}, {{{{2, 3}, {3, 5}}}, {-4, 0}},
      {{{{2, 3}, {5, 6}}}, {-2, 2}},  {{{{3, 4}, {3, 5}}}, {-4, 3}},  {{{{3, 7}, {5, 6}}}, {-2, 4}},
  };
  return cells;
}

inline const std::vector<std::array<double, 2>>& patchwork_start_solutions() {
  static const std::vector<std::array<double, 2>> s{
      {4.938271604938272, 2.2222222222222223},   {4.938271604938272, -0.20249999999999999},
      {4.938271604938272, -0.041006249999999994}, {24.386526444139612, 10.973936899862824},
      {24.386526444139612, -1.0},                {24.386526444139612, 0.09112500000000004},
  };
  return s;
}

inline const std::vector<std::array<double, 2>>& patchwork_endpoints() {
  static const std::vector<std::array<double, 2>> e{
      {4.20818, 2.41707}, {7.12063, -0.138875},  {6.94337, -0.0383256},
      {49.3211, 24.3919}, {15.9697, -0.517115}, {17.5735, 0.0244792},
  };
  return e;
}

}  // namespace fixtures

#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rph/certificate.hpp"
#include "rph/errors.hpp"
#include "rph/lattice.hpp"
#include "rph/mixed_cells.hpp"
#include "rph/pipeline.hpp"

namespace rph::io {

using nlohmann::json;

namespace detail {

inline BigInt parse_integer(std::string_view s) {
  if (s.empty()) throw Error(ErrorCode::InvalidInput, "empty integer");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw Error(ErrorCode::InvalidInput, "malformed integer '" + std::string(s) + "'");
  for (std::size_t k = i; k < s.size(); ++k)
    if (s[k] < '0' || s[k] > '9') throw Error(ErrorCode::InvalidInput, "malformed integer '" + std::string(s) + "'");
  const std::string_view body = s.substr(i);
  const auto nz = body.find_first_not_of('0');
  const BigInt v = nz == std::string_view::npos ? BigInt(0) : BigInt(std::string(body.substr(nz)));
  return s[0] == '-' ? BigInt(-v) : v;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace detail

/// Exact value of "p/q", "-12", "0.45" or "1.5e-3".
inline Rational parse_rational(std::string_view text) {
  const std::string_view s = detail::trim(text);
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const BigInt num = detail::parse_integer(detail::trim(s.substr(0, slash)));
    const BigInt den = detail::parse_integer(detail::trim(s.substr(slash + 1)));
    if (den == 0) throw Error(ErrorCode::InvalidInput, "zero denominator in '" + std::string(s) + "'");
    return Rational(num, den);
  }
  std::string_view mant = s;
  long long exp10 = 0;
  if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    mant = s.substr(0, e);
    const std::string_view es = s.substr(e + 1);
    const auto [ptr, ec] = std::from_chars(es.data() + (es.starts_with('+') ? 1 : 0), es.data() + es.size(), exp10);
    if (ec != std::errc() || ptr != es.data() + es.size())
      throw Error(ErrorCode::InvalidInput, "malformed exponent in '" + std::string(s) + "'");
  }
  std::string digits;
  bool neg = false;
  std::size_t i = 0;
  if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
    neg = mant[0] == '-';
    i = 1;
  }
  bool seen_dot = false, seen_digit = false;
  for (; i < mant.size(); ++i) {
    const char c = mant[i];
    if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      seen_digit = true;
      if (seen_dot) --exp10;
    } else {
      throw Error(ErrorCode::InvalidInput, "malformed number '" + std::string(s) + "'");
    }
  }
  if (!seen_digit) throw Error(ErrorCode::InvalidInput, "malformed number '" + std::string(s) + "'");
  // cpp_int reads a leading 0 as an octal prefix
  const auto nz = digits.find_first_not_of('0');
  Rational v{nz == std::string::npos ? BigInt(0) : BigInt(digits.substr(nz))};
  const BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(exp10 < 0 ? -exp10 : exp10));
  v = exp10 < 0 ? v / Rational(scale) : v * Rational(scale);
  return neg ? Rational(-v) : v;
}

/// Builds a system from the input document
/// {"n": 2, "supports": [[[0,3], ...], ...], "coefficients": [[1, "-9/20", 0.25, ...], ...]}.
/// JSON integers and strings are read exactly; if every coefficient is
/// exact the system carries rational coefficients too.
inline SupportSystem system_from_json(const json& doc) {
  try {
    if (!doc.is_object()) throw Error(ErrorCode::InvalidInput, "input must be a JSON object");
    for (const char* key : {"n", "supports", "coefficients"})
      if (!doc.contains(key)) throw Error(ErrorCode::InvalidInput, std::string("missing field '") + key + "'");
    const auto n = doc.at("n").get<std::int64_t>();
    const json& sup = doc.at("supports");
    const json& coef = doc.at("coefficients");
    if (n < 1) throw Error(ErrorCode::InvalidInput, "n must be positive");
    if (!sup.is_array() || !coef.is_array() || sup.size() != static_cast<std::size_t>(n) || coef.size() != sup.size())
      throw Error(ErrorCode::InvalidInput, "'supports' and 'coefficients' must be lists of n entries");

    std::vector<SupportSet> supports;
    std::vector<std::vector<double>> coeffs(sup.size());
    std::vector<std::vector<Rational>> exact(sup.size());
    bool all_exact = true;
    for (std::size_t i = 0; i < sup.size(); ++i) {
      std::vector<Point> pts;
      for (const json& p : sup[i]) {
        if (!p.is_array() || p.size() != static_cast<std::size_t>(n))
          throw Error(ErrorCode::InvalidInput, "support point must be an integer " + std::to_string(n) + "-vector");
        Point pt;
        for (const json& e : p) {
          if (!e.is_number_integer()) throw Error(ErrorCode::InvalidInput, "exponents must be integers");
          pt.push_back(e.get<std::int64_t>());
        }
        pts.push_back(std::move(pt));
      }
      supports.emplace_back(std::move(pts));
      if (!coef[i].is_array()) throw Error(ErrorCode::InvalidInput, "coefficients must be lists");
      for (const json& c : coef[i]) {
        if (c.is_string()) {
          const Rational q = parse_rational(c.get<std::string>());
          exact[i].push_back(q);
          coeffs[i].push_back(static_cast<double>(q));
        } else if (c.is_number_integer()) {
          exact[i].emplace_back(c.get<std::int64_t>());
          coeffs[i].push_back(c.get<double>());
        } else if (c.is_number()) {
          all_exact = false;
          coeffs[i].push_back(c.get<double>());
        } else {
          throw Error(ErrorCode::InvalidInput, "coefficient must be a number or a decimal/rational string");
        }
      }
    }
    std::optional<std::vector<std::vector<Rational>>> ex;
    if (all_exact) ex = std::move(exact);
    return SupportSystem(std::move(supports), std::move(coeffs), std::move(ex));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, e.what());
  }
}

inline SupportSystem read_system(const std::string& path) {
  json doc;
  try {
    if (path == "-") {
      doc = json::parse(std::cin);
    } else {
      std::ifstream in(path);
      if (!in) throw Error(ErrorCode::InvalidInput, "cannot open '" + path + "'");
      doc = json::parse(in);
    }
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidInput, std::string("malformed JSON: ") + e.what());
  }
  return system_from_json(doc);
}

/// Indices are 1-based in every document.
inline json cell_to_json(const MixedCell& cell, const CayleyConfig& cfg) {
  json edges = json::array();
  for (const auto& e : cell.edges) edges.push_back({e[0] + 1, e[1] + 1});
  return {{"indices", edges},
          {"normal", cell.normal},
          {"volume", cell.volume},
          {"inequalities", circuit_inequalities(cell, cfg).size()}};
}

inline json cells_to_json(const MixedCellSet& set, const CayleyConfig& cfg) {
  json cells = json::array();
  for (const auto& c : set.cells) cells.push_back(cell_to_json(c, cfg));
  return {{"n", cfg.n},
          {"m", cfg.size()},
          {"cells", cells},
          {"mixed_volume", set.total_volume()},
          {"inequality_count", set.inequalities.size()}};
}

inline json certificate_to_json(const Certificate& cert) {
  std::vector<double> sorted = cert.margins;
  std::sort(sorted.begin(), sorted.end());
  json j = {{"verdict", cert.pass ? "pass" : "fail"},
            {"m", cert.m},
            {"inequality_count", cert.margins.size()},
            {"margins", sorted}};
  j["min_margin"] = sorted.empty() ? json(nullptr) : json(sorted.front());
  return j;
}

inline json report_to_json(const SolveReport& r, const CayleyConfig& cfg) {
  json sols = json::array();
  for (const auto& s : r.solutions)
    sols.push_back({{"point", s.point}, {"residual", s.residual}, {"cell", s.cell + 1}, {"steps", s.steps}});
  json fails = json::array();
  for (const auto& f : r.failures)
    fails.push_back({{"path", f.path + 1},
                     {"cell", f.cell + 1},
                     {"error", std::string(to_string(f.error))},
                     {"t", f.t},
                     {"x", f.x}});
  return {{"certificate", certificate_to_json(r.certificate)},
          {"certified", r.certificate.pass},
          {"tracked", r.tracked},
          {"uncertified", r.uncertified},
          {"mixed_cells", cells_to_json(r.cells, cfg)},
          {"start_solutions", r.start_solutions},
          {"solutions", sols},
          {"failures", fails},
          {"timings_ms",
           {{"initialization", r.timings.initialization_ms},
            {"mixed_cells", r.timings.cells_ms},
            {"certificate", r.timings.certificate_ms},
            {"binomial", r.timings.binomial_ms},
            {"tracking", r.timings.tracking_ms}}}};
}

inline std::string summary(const SolveReport& r) {
  std::ostringstream os;
  os << r.cells.cells.size() << " mixed cells (mixed volume " << r.cells.total_volume() << "), "
     << r.cells.inequalities.size() << " circuit inequalities\n";
  os << "certificate: " << (r.certificate.pass ? "pass" : "fail");
  if (!r.certificate.margins.empty()) os << " (min margin " << r.certificate.min_margin() << ")";
  os << "\n";
  if (!r.tracked) {
    os << "not tracked: the system could not be certified (use --force to track anyway)\n";
    return os.str();
  }
  std::size_t starts = 0;
  for (auto s : r.start_solutions) starts += s;
  os << starts << " real start solutions, " << r.solutions.size() << " tracked to the target";
  if (!r.failures.empty()) os << ", " << r.failures.size() << " failed";
  if (r.uncertified) os << " [uncertified]";
  os << "\n";
  return os.str();
}

}  // namespace rph::io

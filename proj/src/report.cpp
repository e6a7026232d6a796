#include "hallgh/report.hpp"

#include <fmt/format.h>

#include <cmath>

namespace hallgh {

void VerificationReport::observe(double margin, NamedValues location) {
  // NaN margins must fail the suite rather than vanish in the comparison.
  if (std::isnan(margin)) margin = -std::numeric_limits<double>::infinity();
  if (margin < worst_margin) {
    worst_margin = margin;
    worst_location = std::move(location);
  }
}

nlohmann::ordered_json VerificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["suite"] = suite;
  j["alpha"] = alpha ? nlohmann::ordered_json(*alpha) : nlohmann::ordered_json(nullptr);
  j["grid"] = grid;
  j["tolerance"] = tolerance;
  j["worst_margin"] = std::isfinite(worst_margin) ? nlohmann::ordered_json(worst_margin)
                                                  : nlohmann::ordered_json(nullptr);
  nlohmann::ordered_json loc = nlohmann::ordered_json::object();
  for (const auto& [k, v] : worst_location) loc[k] = v;
  j["worst_location"] = loc;
  j["passed"] = passed();
  if (!details.empty()) {
    nlohmann::ordered_json d = nlohmann::ordered_json::object();
    for (const auto& [k, v] : details) d[k] = v;
    j["details"] = d;
  }
  return j;
}

std::string VerificationReport::summary() const {
  std::string where;
  for (const auto& [k, v] : worst_location) {
    where += fmt::format("{}{}={:.6g}", where.empty() ? "" : ", ", k, v);
  }
  std::string alpha_part = alpha ? fmt::format(" alpha={:g}", *alpha) : std::string();
  return fmt::format("[{}] {}{} grid={} worst_margin={:.6e} at ({}) tol={:g}",
                     passed() ? "PASS" : "FAIL", suite, alpha_part, grid, worst_margin,
                     where, tolerance);
}

}  // namespace hallgh

#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace hallgh {

using NamedValues = std::vector<std::pair<std::string, double>>;

/// Outcome of one verification suite. Margins are oriented so that a
/// nonnegative margin means the inequality holds at that point.
struct VerificationReport {
  std::string suite;
  std::optional<double> alpha;
  std::size_t grid = 0;
  double tolerance = 0.0;
  double worst_margin = std::numeric_limits<double>::infinity();
  NamedValues worst_location;
  /// Auxiliary observations (sub-grid margins, limits) that are reported but
  /// do not enter `passed`.
  NamedValues details;

  bool passed() const { return worst_margin >= -tolerance; }

  /// Keeps the smaller margin; ties keep the earlier location.
  void observe(double margin, NamedValues location);

  nlohmann::ordered_json to_json() const;
  std::string summary() const;
};

}  // namespace hallgh

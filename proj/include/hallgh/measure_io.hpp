#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "hallgh/specfun.hpp"
#include "hallgh/starlike.hpp"

namespace hallgh {

/// Schema or syntax problem in a measure document.
class MeasureFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LoadedMeasure {
  OrderAlpha order;
  HerglotzMeasure measure;
  double raw_weight_sum = 1.0;
  /// Raw weights summed to something further than 1e-6 from 1 and were rescaled.
  bool renormalized = false;
};

/// Parses {"alpha": a, "atoms": [{"t": t, "w": w}, ...]}.
LoadedMeasure parse_measure_json(std::string_view text);
LoadedMeasure load_measure_file(const std::filesystem::path& path);

std::string to_measure_json(OrderAlpha order, const HerglotzMeasure& measure);

}  // namespace hallgh

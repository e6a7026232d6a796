#include "hallgh/measure_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace hallgh {

namespace {

constexpr double kWarnDeviation = 1e-6;

double number_field(const nlohmann::json& obj, const char* key, const char* where) {
  const auto it = obj.find(key);
  if (it == obj.end() || !it->is_number()) {
    throw MeasureFormatError(std::string(where) + ": missing numeric field \"" + key + "\"");
  }
  return it->get<double>();
}

}  // namespace

LoadedMeasure parse_measure_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw MeasureFormatError(std::string("measure JSON does not parse: ") + e.what());
  }
  if (!doc.is_object()) throw MeasureFormatError("measure JSON must be an object");

  const double alpha = number_field(doc, "alpha", "measure");
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw MeasureFormatError("measure: alpha must lie in [0, 1)");
  }
  const auto atoms_it = doc.find("atoms");
  if (atoms_it == doc.end() || !atoms_it->is_array() || atoms_it->empty()) {
    throw MeasureFormatError("measure: \"atoms\" must be a non-empty array");
  }

  std::vector<Atom> atoms;
  double sum = 0.0;
  for (const auto& entry : *atoms_it) {
    if (!entry.is_object()) throw MeasureFormatError("measure: each atom must be an object");
    const double t = number_field(entry, "t", "atom");
    const double w = number_field(entry, "w", "atom");
    if (!std::isfinite(t)) throw MeasureFormatError("atom: \"t\" must be finite");
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw MeasureFormatError("atom: weight \"w\" must be positive and finite");
    }
    atoms.push_back({t, w});
    sum += w;
  }

  return LoadedMeasure{OrderAlpha(alpha), HerglotzMeasure::normalized(std::move(atoms)), sum,
                       std::abs(sum - 1.0) > kWarnDeviation};
}

LoadedMeasure load_measure_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MeasureFormatError("cannot open measure file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_measure_json(buf.str());
}

std::string to_measure_json(OrderAlpha order, const HerglotzMeasure& measure) {
  nlohmann::json doc;
  doc["alpha"] = order.alpha();
  doc["atoms"] = nlohmann::json::array();
  for (const Atom& a : measure.atoms()) {
    doc["atoms"].push_back({{"t", a.node}, {"w", a.weight}});
  }
  return doc.dump(2);
}

}  // namespace hallgh

#include "subrayleigh/config.hpp"

#include <charconv>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "subrayleigh/errors.hpp"
#include "subrayleigh/io.hpp"

namespace subrayleigh {

using nlohmann::json;

namespace {

struct UnitSuffix {
  std::string_view suffix;
  double scale;
};

// Longest suffixes first so "mm" is not read as "m".
constexpr UnitSuffix kUnits[] = {
    {"nm", 1e-9}, {"um", 1e-6}, {"\xC2\xB5m", 1e-6}, {"mm", 1e-3}, {"m", 1.0},
};

void reject_unknown_keys(const json& object, std::string_view where,
                         const std::set<std::string>& allowed) {
  for (const auto& item : object.items()) {
    if (!allowed.count(item.key())) {
      throw ConfigError("unknown key '" + item.key() + "' in " +
                        std::string(where));
    }
  }
}

const json& require_object(const json& v, std::string_view where) {
  if (!v.is_object()) {
    throw ConfigError(std::string(where) + " must be an object");
  }
  return v;
}

double length_value(const json& v, const std::string& name) {
  if (v.is_number()) {
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
      throw ConfigError(name + " must be finite");
    }
    return x;
  }
  if (v.is_string()) {
    try {
      return parse_length(v.get<std::string>());
    } catch (const ConfigError& e) {
      throw ConfigError(name + ": " + e.what());
    }
  }
  throw ConfigError(name + " must be a number of meters or a string such as "
                           "\"500nm\"");
}

double number_value(const json& v, const std::string& name) {
  if (!v.is_number()) {
    throw ConfigError(name + " must be a number");
  }
  return v.get<double>();
}

int integer_value(const json& v, const std::string& name) {
  if (!v.is_number_integer()) {
    throw ConfigError(name + " must be an integer");
  }
  return v.get<int>();
}

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text,
                                                    std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  const std::size_t end = std::min(byte, text.size());
  // nlohmann reports the byte one past the offending character.
  for (std::size_t i = 0; i + 1 < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end(), nullptr, true, true);
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_and_column(text, e.byte);
    throw ConfigError("config parse error at line " + std::to_string(line) +
                      ", column " + std::to_string(column) + ": " + e.what());
  }
}

Geometry parse_geometry(const json& v) {
  require_object(v, "geometry");
  reject_unknown_keys(v, "geometry",
                      {"wavelength", "source_distance", "detector_distance",
                       "amplitude"});
  const ScanConfig defaults;
  const auto& g = defaults.geometry;
  const double wavelength = v.contains("wavelength")
                                ? length_value(v["wavelength"], "wavelength")
                                : g.wavelength();
  const double source =
      v.contains("source_distance")
          ? length_value(v["source_distance"], "source_distance")
          : g.source_distance();
  const double detector =
      v.contains("detector_distance")
          ? length_value(v["detector_distance"], "detector_distance")
          : g.detector_distance();
  const double amplitude = v.contains("amplitude")
                               ? number_value(v["amplitude"], "amplitude")
                               : g.amplitude();
  try {
    return Geometry(wavelength, source, detector, amplitude);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("geometry: ") + e.what());
  }
}

Aperture parse_aperture(const json& v, Scenario scenario) {
  require_object(v, "aperture");
  reject_unknown_keys(v, "aperture",
                      {"kind", "height", "width", "slit_separation",
                       "slit_count"});
  std::string kind = (scenario == Scenario::ClassicalGrating ||
                      scenario == Scenario::G2Grating)
                         ? "grating"
                         : "rect";
  if (v.contains("kind")) {
    if (!v["kind"].is_string()) {
      throw ConfigError("aperture.kind must be \"rect\" or \"grating\"");
    }
    kind = v["kind"].get<std::string>();
  }
  const double height =
      v.contains("height") ? length_value(v["height"], "aperture.height")
                           : 20e-6;
  const double width =
      v.contains("width") ? length_value(v["width"], "aperture.width") : 20e-6;
  try {
    if (kind == "rect") {
      if (v.contains("slit_separation") || v.contains("slit_count")) {
        throw ConfigError(
            "slit_separation and slit_count apply to gratings only");
      }
      return Aperture::rect(height, width);
    }
    if (kind == "grating") {
      const double separation =
          v.contains("slit_separation")
              ? length_value(v["slit_separation"], "aperture.slit_separation")
              : 3.0 * height;
      const int count = v.contains("slit_count")
                            ? integer_value(v["slit_count"],
                                            "aperture.slit_count")
                            : 3;
      return Aperture::grating(height, width, separation, count);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("aperture: ") + e.what());
  }
  throw ConfigError("aperture.kind must be \"rect\" or \"grating\", got \"" +
                    kind + "\"");
}

OracleSettings parse_oracle(const json& v) {
  require_object(v, "oracle");
  reject_unknown_keys(v, "oracle",
                      {"points_per_axis", "subdivisions", "tolerance"});
  OracleSettings s;
  if (v.contains("points_per_axis")) {
    s.quadrature.points_per_axis =
        integer_value(v["points_per_axis"], "oracle.points_per_axis");
  }
  if (v.contains("subdivisions")) {
    s.quadrature.subdivisions =
        integer_value(v["subdivisions"], "oracle.subdivisions");
  }
  if (v.contains("tolerance")) {
    s.tolerance = number_value(v["tolerance"], "oracle.tolerance");
  }
  return s;
}

std::string_view rule_name(OffsetRule rule) {
  return rule == OffsetRule::PlusOffset ? "PlusOffset" : "MinusOffset";
}

}  // namespace

double parse_length(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  while (!text.empty() &&
         std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  for (const auto& unit : kUnits) {
    if (text.size() > unit.suffix.size() && text.ends_with(unit.suffix)) {
      std::string_view number = text.substr(0, text.size() - unit.suffix.size());
      while (!number.empty() &&
             std::isspace(static_cast<unsigned char>(number.back()))) {
        number.remove_suffix(1);
      }
      if (!number.empty() && number.front() == '+') {
        number.remove_prefix(1);
      }
      double value = 0.0;
      const auto [end, ec] =
          std::from_chars(number.data(), number.data() + number.size(), value);
      if (ec != std::errc() || end != number.data() + number.size() ||
          !std::isfinite(value)) {
        throw ConfigError("cannot read length \"" + std::string(text) + "\"");
      }
      return value * unit.scale;
    }
  }
  throw ConfigError("length \"" + std::string(text) +
                    "\" needs a unit suffix (nm, um, mm or m)");
}

ScanConfig parse_config(std::string_view text) {
  const json root = parse_json(text);
  require_object(root, "config document");
  reject_unknown_keys(root, "config",
                      {"scenario", "geometry", "aperture", "scan_min",
                       "scan_max", "steps", "base_x", "detector_rule", "oracle",
                       "output_path"});

  ScanConfig c;
  if (!root.contains("scenario") || !root["scenario"].is_string()) {
    throw ConfigError("config needs a \"scenario\" string");
  }
  const auto name = root["scenario"].get<std::string>();
  const auto scenario = scenario_from_string(name);
  if (!scenario) {
    throw ConfigError("unknown scenario \"" + name + "\"");
  }
  c.scenario = *scenario;

  c.geometry = parse_geometry(root.value("geometry", json::object()));
  c.aperture = parse_aperture(root.value("aperture", json::object()), c.scenario);

  if (root.contains("scan_min")) {
    c.scan_min = length_value(root["scan_min"], "scan_min");
  }
  c.scan_max = root.contains("scan_max")
                   ? length_value(root["scan_max"], "scan_max")
                   : 2.0 * c.geometry.wavelength() *
                         c.geometry.detector_distance() / c.aperture.height();
  if (root.contains("steps")) {
    c.steps = integer_value(root["steps"], "steps");
  }
  if (root.contains("base_x")) {
    c.base_x = length_value(root["base_x"], "base_x");
  }
  if (root.contains("detector_rule")) {
    const auto& v = root["detector_rule"];
    const std::string rule = v.is_string() ? v.get<std::string>() : "";
    if (rule == "PlusOffset") {
      c.detector_rule = OffsetRule::PlusOffset;
    } else if (rule == "MinusOffset") {
      c.detector_rule = OffsetRule::MinusOffset;
    } else {
      throw ConfigError(
          "detector_rule must be \"PlusOffset\" or \"MinusOffset\"");
    }
  }
  if (root.contains("oracle")) {
    c.oracle = parse_oracle(root["oracle"]);
  }
  if (root.contains("output_path")) {
    if (!root["output_path"].is_string()) {
      throw ConfigError("output_path must be a string");
    }
    c.output_path = root["output_path"].get<std::string>();
  }
  validate(c);
  return c;
}

ScanConfig load_config(const std::string& path) {
  return parse_config(read_file(path));
}

std::string config_to_json(const ScanConfig& c) {
  json doc;
  doc["scenario"] = std::string(to_string(c.scenario));
  doc["geometry"] = {{"wavelength", c.geometry.wavelength()},
                     {"source_distance", c.geometry.source_distance()},
                     {"detector_distance", c.geometry.detector_distance()},
                     {"amplitude", c.geometry.amplitude()}};
  json aperture = {{"height", c.aperture.height()},
                   {"width", c.aperture.width()}};
  if (c.aperture.kind() == ApertureKind::Grating) {
    aperture["kind"] = "grating";
    aperture["slit_separation"] = c.aperture.slit_separation();
    aperture["slit_count"] = c.aperture.slit_count();
  } else {
    aperture["kind"] = "rect";
  }
  doc["aperture"] = aperture;
  doc["scan_min"] = c.scan_min;
  doc["scan_max"] = c.scan_max;
  doc["steps"] = c.steps;
  doc["base_x"] = c.base_x;
  doc["detector_rule"] = std::string(rule_name(c.detector_rule));
  if (c.oracle) {
    doc["oracle"] = {{"points_per_axis", c.oracle->quadrature.points_per_axis},
                     {"subdivisions", c.oracle->quadrature.subdivisions},
                     {"tolerance", c.oracle->tolerance}};
  }
  doc["output_path"] = c.output_path;
  return doc.dump(2);
}

}  // namespace subrayleigh

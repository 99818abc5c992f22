#include "emskin/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace emskin {

namespace {

using nlohmann::json;

const json& field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw InputError(path + key + ": missing required field");
  }
  return obj.at(key);
}

double number(const json& obj, const std::string& key, const std::string& path) {
  const json& v = field(obj, key, path);
  if (!v.is_number()) {
    throw InputError(path + key + ": expected a number");
  }
  return v.get<double>();
}

double number_or(const json& obj, const std::string& key, const std::string& path, double fallback) {
  if (!obj.contains(key)) {
    return fallback;
  }
  return number(obj, key, path);
}

int integer(const json& obj, const std::string& key, const std::string& path) {
  const json& v = field(obj, key, path);
  if (!v.is_number_integer()) {
    throw InputError(path + key + ": expected an integer");
  }
  return v.get<int>();
}

std::vector<double> numbers(const json& obj, const std::string& key, const std::string& path, std::size_t count) {
  const json& v = field(obj, key, path);
  if (!v.is_array() || v.size() != count) {
    throw InputError(path + key + ": expected an array of " + std::to_string(count) + " numbers");
  }
  std::vector<double> out;
  for (const json& e : v) {
    if (!e.is_number()) {
      throw InputError(path + key + ": expected an array of " + std::to_string(count) + " numbers");
    }
    out.push_back(e.get<double>());
  }
  return out;
}

const json& section(const json& obj, const std::string& key) {
  const json& v = field(obj, key, "");
  if (!v.is_object()) {
    throw InputError(key + ": expected a section");
  }
  return v;
}

} // namespace

ScenarioConfig parse_scenario_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("scenario: malformed document: ") + e.what());
  }
  if (!doc.is_object()) {
    throw InputError("scenario: top level must be an object");
  }

  ScenarioConfig c;
  c.frequency_hz = number(doc, "frequency_hz", "");
  const auto bs = numbers(doc, "bs_position", "", 3);
  c.bs_position = {bs[0], bs[1], bs[2]};
  c.e_field_amplitude = number_or(doc, "e_field_amplitude", "", 1.0);

  const json& facade = section(doc, "facade");
  const auto yz = numbers(facade, "first_barycenter_yz", "facade.", 2);
  c.first_y = yz[0];
  c.first_z = yz[1];
  c.tile_side = number(facade, "tile_side_m", "facade.");
  c.ny = integer(facade, "ny", "facade.");
  c.nz = integer(facade, "nz", "facade.");
  if (facade.contains("mask")) {
    const json& m = facade.at("mask");
    if (m.is_string()) {
      c.mask = m.get<std::string>();
    } else if (m.is_array()) {
      // One string per facade row, top row first.
      for (const json& row : m) {
        if (!row.is_string()) {
          throw InputError("facade.mask: rows must be strings");
        }
        c.mask += row.get<std::string>();
      }
    } else {
      throw InputError("facade.mask: expected a bit string or an array of row strings");
    }
  }

  const json& aoi = section(doc, "aoi");
  const auto center = numbers(aoi, "center_xyz", "aoi.", 3);
  c.aoi_center = {center[0], center[1], center[2]};
  c.aoi_length = number(aoi, "length_m", "aoi.");
  c.aoi_width = number(aoi, "width_m", "aoi.");
  c.aoi_azimuth_deg = number(aoi, "azimuth_deg", "aoi.");
  const json& part = field(aoi, "partition", "aoi.");
  if (!part.is_array() || part.size() != 2 || !part[0].is_number_integer() || !part[1].is_number_integer()) {
    throw InputError("aoi.partition: expected [p_long, p_short] integers");
  }
  c.partition_long = part[0].get<int>();
  c.partition_short = part[1].get<int>();
  c.receiver_height = number(aoi, "receiver_height_m", "aoi.");
  c.receiver_density = number(aoi, "receiver_density_per_m2", "aoi.");

  const json& th = section(doc, "thresholds");
  c.p_th_db = number(th, "p_th_db", "thresholds.");
  c.p_bls_db = number(th, "p_bls_db", "thresholds.");
  return c;
}

std::string scenario_config_to_json(const ScenarioConfig& c) {
  json doc;
  doc["frequency_hz"] = c.frequency_hz;
  doc["bs_position"] = {c.bs_position.x, c.bs_position.y, c.bs_position.z};
  doc["e_field_amplitude"] = c.e_field_amplitude;
  doc["facade"] = {{"first_barycenter_yz", {c.first_y, c.first_z}},
                   {"tile_side_m", c.tile_side},
                   {"ny", c.ny},
                   {"nz", c.nz}};
  if (!c.mask.empty()) {
    doc["facade"]["mask"] = c.mask;
  }
  doc["aoi"] = {{"center_xyz", {c.aoi_center.x, c.aoi_center.y, c.aoi_center.z}},
                {"length_m", c.aoi_length},
                {"width_m", c.aoi_width},
                {"azimuth_deg", c.aoi_azimuth_deg},
                {"partition", {c.partition_long, c.partition_short}},
                {"receiver_height_m", c.receiver_height},
                {"receiver_density_per_m2", c.receiver_density}};
  doc["thresholds"] = {{"p_th_db", c.p_th_db}, {"p_bls_db", c.p_bls_db}};
  return doc.dump(2);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) {
    throw IoError("failed reading " + path.string());
  }
  return ss.str();
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw InputError("scenario file not found: " + path.string());
  }
  return build_scenario(parse_scenario_config(read_text_file(path)));
}

} // namespace emskin

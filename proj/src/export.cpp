#include "emskin/export.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace emskin {

namespace {

std::string join3(const Vec3& v) {
  return format_number(v.x) + "," + format_number(v.y) + "," + format_number(v.z);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = s.find(sep, pos);
    out.push_back(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
    if (next == std::string_view::npos) {
      break;
    }
    pos = next + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_double(std::string_view s, const char* what) {
  s = trim(s);
  if (s == "inf") {
    return std::numeric_limits<double>::infinity();
  }
  if (s == "-inf") {
    return -std::numeric_limits<double>::infinity();
  }
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) {
    throw InputError(std::string(what) + ": cannot parse number '" + std::string(s) + "'");
  }
  return v;
}

int parse_int(std::string_view s, const char* what) {
  s = trim(s);
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) {
    throw InputError(std::string(what) + ": cannot parse integer '" + std::string(s) + "'");
  }
  return v;
}

Vec3 parse_vec3(std::string_view s, const char* what) {
  const auto parts = split(s, ',');
  if (parts.size() != 3) {
    throw InputError(std::string(what) + ": expected three comma-separated numbers");
  }
  return {parse_double(parts[0], what), parse_double(parts[1], what), parse_double(parts[2], what)};
}

int class_code(CoverageClass c) {
  switch (c) {
  case CoverageClass::covered: return 2;
  case CoverageClass::connected: return 1;
  case CoverageClass::blackout: return 0;
  }
  return 0;
}

} // namespace

std::string format_number(double value) {
  if (std::isnan(value)) {
    return "nan";
  }
  if (std::isinf(value)) {
    return value > 0 ? "inf" : "-inf";
  }
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 6);
  (void)ec;
  return {buf, p};
}

std::string format_power_grid(const PowerGrid& g) {
  std::ostringstream out;
  out << "# emskin power grid\n";
  out << "# origin: " << join3(g.origin) << "\n";
  out << "# axis_u: " << join3(g.axis_u) << "\n";
  out << "# axis_v: " << join3(g.axis_v) << "\n";
  out << "# extent: " << format_number(g.extent_u) << "," << format_number(g.extent_v) << "\n";
  out << "# resolution: " << g.cells_u << "," << g.cells_v << "\n";
  out << "# height: " << format_number(g.height) << "\n";
  out << "# reference: dB re 1 (V/m)^2, floor " << format_number(kSentinelDb) << "\n";
  for (int iv = 0; iv < g.cells_v; ++iv) {
    for (int iu = 0; iu < g.cells_u; ++iu) {
      if (iu) {
        out << ',';
      }
      out << format_number(g.at(iu, iv));
    }
    out << '\n';
  }
  return out.str();
}

PowerGrid parse_power_grid(std::string_view text) {
  PowerGrid g;
  bool have_resolution = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) {
      end = text.size();
    }
    const std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    if (line.empty()) {
      continue;
    }
    if (line.front() == '#') {
      const std::string_view body = trim(line.substr(1));
      const std::size_t colon = body.find(':');
      if (colon == std::string_view::npos) {
        continue;
      }
      const std::string_view key = trim(body.substr(0, colon));
      const std::string_view val = trim(body.substr(colon + 1));
      if (key == "origin") {
        g.origin = parse_vec3(val, "grid origin");
      } else if (key == "axis_u") {
        g.axis_u = parse_vec3(val, "grid axis_u");
      } else if (key == "axis_v") {
        g.axis_v = parse_vec3(val, "grid axis_v");
      } else if (key == "extent") {
        const auto p = split(val, ',');
        if (p.size() != 2) {
          throw InputError("grid extent: expected two numbers");
        }
        g.extent_u = parse_double(p[0], "grid extent");
        g.extent_v = parse_double(p[1], "grid extent");
      } else if (key == "resolution") {
        const auto p = split(val, ',');
        if (p.size() != 2) {
          throw InputError("grid resolution: expected two integers");
        }
        g.cells_u = parse_int(p[0], "grid resolution");
        g.cells_v = parse_int(p[1], "grid resolution");
        have_resolution = true;
      } else if (key == "height") {
        g.height = parse_double(val, "grid height");
      }
      continue;
    }
    const auto cells = split(line, ',');
    if (have_resolution && static_cast<int>(cells.size()) != g.cells_u) {
      throw InputError("grid: row has " + std::to_string(cells.size()) + " values, expected " +
                       std::to_string(g.cells_u));
    }
    for (std::string_view c : cells) {
      g.values.push_back(parse_double(c, "grid value"));
    }
  }
  if (!have_resolution) {
    throw InputError("grid: missing resolution header");
  }
  if (g.values.size() != static_cast<std::size_t>(g.cells_u) * static_cast<std::size_t>(g.cells_v)) {
    throw InputError("grid: value count does not match the resolution");
  }
  return g;
}

std::string format_class_grid(const PowerGrid& g, double threshold_db, double blackout_db) {
  const double th = from_db(threshold_db);
  const double bl = from_db(blackout_db);
  std::ostringstream out;
  out << "# emskin connectivity classes: 2 covered, 1 connected, 0 blackout\n";
  out << "# resolution: " << g.cells_u << "," << g.cells_v << "\n";
  for (int iv = 0; iv < g.cells_v; ++iv) {
    for (int iu = 0; iu < g.cells_u; ++iu) {
      if (iu) {
        out << ',';
      }
      const double db = g.at(iu, iv);
      const double lin = db <= kSentinelDb ? 0.0 : from_db(db);
      out << class_code(classify(lin, th, bl));
    }
    out << '\n';
  }
  return out.str();
}

std::string format_coverage_report(const CoverageReport& r, const Scenario& scenario, std::string_view layout_bits) {
  std::ostringstream out;
  out << "layout: " << layout_bits << "\n";
  out << "receivers: " << r.power_db.size() << "\n";
  out << "min_db: " << format_number(r.min_db) << "\n";
  out << "max_db: " << format_number(r.max_db) << "\n";
  out << "avg_db: " << format_number(r.avg_db) << "\n";
  out << "phi1: " << format_number(r.phi1) << "\n";
  out << "phi2: " << format_number(r.phi2) << "\n";
  out << "p_th_db: " << format_number(scenario.power_threshold_db) << "\n";
  out << "p_bls_db: " << format_number(scenario.blackout_threshold_db) << "\n";
  out << "covered: " << r.covered << "\n";
  out << "connected: " << r.connected << "\n";
  out << "blackout: " << r.blackout << "\n";
  out << "# class grid (2 covered, 1 connected, 0 blackout), " << r.rows << " rows across x " << r.cols
      << " along the long axis\n";
  for (int row = 0; row < r.rows; ++row) {
    for (int col = 0; col < r.cols; ++col) {
      if (col) {
        out << ',';
      }
      out << class_code(r.classes[static_cast<std::size_t>(row) * r.cols + col]);
    }
    out << '\n';
  }
  return out.str();
}

std::string format_front(const ParetoFront& front) {
  std::ostringstream out;
  out << "index,phi1,phi2,M,bits\n";
  int o = 1;
  for (const Individual& s : front.solutions) {
    out << o++ << ',' << format_number(s.objectives.phi1) << ',' << format_number(s.objectives.phi2) << ','
        << s.layout.popcount() << ',' << to_bit_string(s.layout) << '\n';
  }
  return out.str();
}

std::string format_snapshot(const Snapshot& snap) {
  std::ostringstream out;
  out << "iteration,index,rank,phi1,phi2,M,bits\n";
  int p = 1;
  for (const Individual& s : snap.population) {
    out << snap.iteration << ',' << p++ << ',' << s.rank << ',' << format_number(s.objectives.phi1) << ','
        << format_number(s.objectives.phi2) << ',' << s.layout.popcount() << ',' << to_bit_string(s.layout) << '\n';
  }
  return out.str();
}

std::string format_layout_file(const Individual& s, int solution_index) {
  std::ostringstream out;
  out << "solution: " << solution_index << "\n";
  out << "bits: " << to_bit_string(s.layout) << "\n";
  out << "indices: ";
  const auto idx = to_indices(s.layout);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    out << (i ? "," : "") << idx[i];
  }
  out << "\n";
  out << "M: " << s.layout.popcount() << "\n";
  out << "phi1: " << format_number(s.objectives.phi1) << "\n";
  out << "phi2: " << format_number(s.objectives.phi2) << "\n";
  return out.str();
}

Layout parse_layout_file(std::string_view text, std::size_t n) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) {
      end = text.size();
    }
    const std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    if (line.starts_with("bits:")) {
      return parse_layout(trim(line.substr(5)), n);
    }
  }
  throw InputError("layout file: no 'bits:' line");
}

std::vector<FrontRow> parse_front(std::string_view text) {
  std::vector<FrontRow> rows;
  bool header = true;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) {
      end = text.size();
    }
    const std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    if (line.empty()) {
      continue;
    }
    if (header) {
      header = false;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 5) {
      throw InputError("front table: expected 5 columns");
    }
    rows.push_back({parse_int(f[0], "front index"), std::string(trim(f[1])), std::string(trim(f[2])),
                    parse_int(f[3], "front M"), std::string(trim(f[4]))});
  }
  return rows;
}

void Manifest::set(const std::string& key, const std::string& value) {
  for (auto& e : entries_) {
    if (e.first == key) {
      e.second = value;
      return;
    }
  }
  entries_.emplace_back(key, value);
}

std::string Manifest::format() const {
  std::string out;
  for (const auto& [k, v] : entries_) {
    out += k + ": " + v + "\n";
  }
  return out;
}

std::string content_hash(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  static constexpr char kHex[] = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    buf[i] = kHex[h & 0xF];
    h >>= 4;
  }
  buf[16] = '\0';
  return buf;
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) {
      throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    }
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) {
    throw IoError("failed writing " + path.string());
  }
}

} // namespace emskin

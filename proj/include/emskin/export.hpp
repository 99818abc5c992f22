#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "emskin/field.hpp"
#include "emskin/objectives.hpp"
#include "emskin/optimizer.hpp"

namespace emskin {

/// Six significant digits, locale independent ("-66.8012", "1e-05", "inf").
std::string format_number(double value);

/// Header lines prefixed with '#', then one comma-separated row per v index.
std::string format_power_grid(const PowerGrid& grid);
PowerGrid parse_power_grid(std::string_view text);

/// Per-cell class codes: 2 covered, 1 connected, 0 blackout.
std::string format_class_grid(const PowerGrid& grid, double threshold_db, double blackout_db);

std::string format_coverage_report(const CoverageReport& report, const Scenario& scenario, std::string_view layout_bits);

/// index,phi1,phi2,M,bits with 1-based solution index.
std::string format_front(const ParetoFront& front);

/// iteration,index,rank,phi1,phi2,M,bits for every individual of a snapshot.
std::string format_snapshot(const Snapshot& snapshot);

std::string format_layout_file(const Individual& solution, int solution_index);

/// Reads the "bits:" line of a layout file.
Layout parse_layout_file(std::string_view text, std::size_t n);

struct FrontRow {
  int index = 0;
  std::string phi1;
  std::string phi2;
  int tiles = 0;
  std::string bits;
};

std::vector<FrontRow> parse_front(std::string_view text);

/// Ordered key/value record written as "key: value" lines.
class Manifest {
public:
  void set(const std::string& key, const std::string& value);
  std::string format() const;

private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

/// FNV-1a 64-bit digest as 16 hex digits.
std::string content_hash(std::string_view bytes);

/// Writes `text` to `path`, creating parent directories. Throws IoError.
void write_text_file(const std::filesystem::path& path, std::string_view text);

} // namespace emskin

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "emskin/scene.hpp"

namespace emskin {

/// Binary tile selection, one flag per facade cell in raster order.
struct Layout {
  std::vector<unsigned char> bits;

  Layout() = default;
  explicit Layout(std::size_t n) : bits(n, 0) {}

  std::size_t size() const { return bits.size(); }
  std::size_t popcount() const;
  bool operator==(const Layout&) const = default;
};

/// "0011..." row-major.
std::string to_bit_string(const Layout& layout);

/// 1-based indices of installed tiles.
std::vector<int> to_indices(const Layout& layout);

/// Parses either a bit string ("0011...") of length n or a list of 1-based
/// indices ("3,4,5" or "{3, 4, 5}"). A comma-free string of 0/1 characters is
/// read as bits when its length is n or at least 4.
Layout parse_layout(std::string_view text, std::size_t n);

Layout layout_from_indices(const std::vector<int>& indices, std::size_t n);

/// All admissible cells set.
Layout full_layout(const FacadeGrid& facade);

/// Throws InputError on a length mismatch or a bit set on a masked cell.
void validate_layout(const Layout& layout, const FacadeGrid& facade);

} // namespace emskin

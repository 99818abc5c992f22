#include "emskin/layout.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace emskin {

std::size_t Layout::popcount() const {
  return static_cast<std::size_t>(std::count_if(bits.begin(), bits.end(), [](unsigned char b) { return b != 0; }));
}

std::string to_bit_string(const Layout& layout) {
  std::string s(layout.size(), '0');
  for (std::size_t i = 0; i < layout.size(); ++i) {
    if (layout.bits[i]) {
      s[i] = '1';
    }
  }
  return s;
}

std::vector<int> to_indices(const Layout& layout) {
  std::vector<int> out;
  for (std::size_t i = 0; i < layout.size(); ++i) {
    if (layout.bits[i]) {
      out.push_back(static_cast<int>(i) + 1);
    }
  }
  return out;
}

Layout layout_from_indices(const std::vector<int>& indices, std::size_t n) {
  Layout l(n);
  for (int idx : indices) {
    if (idx < 1 || static_cast<std::size_t>(idx) > n) {
      std::ostringstream msg;
      msg << "layout: tile index " << idx << " out of range [1, " << n << "]";
      throw InputError(msg.str());
    }
    l.bits[static_cast<std::size_t>(idx) - 1] = 1;
  }
  return l;
}

Layout parse_layout(std::string_view text, std::size_t n) {
  // Braces are optional; commas and whitespace both separate tokens.
  std::vector<std::string> tokens;
  std::string cur;
  for (char c : text) {
    if (c == ',' || c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '{' || c == '}') {
      if (!cur.empty()) {
        tokens.push_back(std::move(cur));
        cur.clear();
      }
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) {
    tokens.push_back(std::move(cur));
  }

  // A lone 0/1 token of four or more characters is a bit string; shorter
  // ones such as "11" are single indices.
  if (tokens.size() == 1) {
    const std::string& body = tokens.front();
    const bool only_bits = std::all_of(body.begin(), body.end(), [](char c) { return c == '0' || c == '1'; });
    if (only_bits && (body.size() == n || body.size() >= 4)) {
      if (body.size() != n) {
        std::ostringstream msg;
        msg << "layout: bit string has length " << body.size() << ", expected " << n;
        throw InputError(msg.str());
      }
      Layout l(n);
      for (std::size_t i = 0; i < n; ++i) {
        l.bits[i] = body[i] == '1' ? 1 : 0;
      }
      return l;
    }
  }

  std::vector<int> indices;
  for (const std::string& tok : tokens) {
    int value = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || p != tok.data() + tok.size()) {
      throw InputError("layout: cannot parse '" + std::string(text) + "' as a bit string of length " +
                       std::to_string(n) + " or an index list");
    }
    indices.push_back(value);
  }
  return layout_from_indices(indices, n);
}

Layout full_layout(const FacadeGrid& facade) {
  Layout l(facade.size());
  for (std::size_t i = 0; i < l.size(); ++i) {
    l.bits[i] = facade.admissible[i] ? 1 : 0;
  }
  return l;
}

void validate_layout(const Layout& layout, const FacadeGrid& facade) {
  if (layout.size() != facade.size()) {
    std::ostringstream msg;
    msg << "layout: length " << layout.size() << " does not match the " << facade.size() << " facade tiles";
    throw InputError(msg.str());
  }
  for (std::size_t i = 0; i < layout.size(); ++i) {
    if (layout.bits[i] && !facade.admissible[i]) {
      throw InputError("layout: tile " + std::to_string(i + 1) + " is set but masked out on the facade");
    }
  }
}

} // namespace emskin

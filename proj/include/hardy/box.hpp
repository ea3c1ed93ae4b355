// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hardy {

/// Axis-aligned box, one closed interval per ambient coordinate.
struct Box {
  std::vector<std::pair<double, double>> axes;

  std::size_t dim() const noexcept { return axes.size(); }
  double volume() const;
  bool contains(const std::vector<double>& x) const;

  /// Parse "lo,hi;lo,hi;..." .
  static Box parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const Box&, const Box&) = default;
};

}  // namespace hardy

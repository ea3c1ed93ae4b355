// SPDX-License-Identifier: Apache-2.0
#include "hardy/box.hpp"

#include <charconv>
#include <sstream>

#include "hardy/error.hpp"

namespace hardy {

namespace {

double parse_double(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ConfigError("malformed number '" + std::string(s) + "'");
  return v;
}

}  // namespace

double Box::volume() const {
  double v = 1.0;
  for (const auto& [lo, hi] : axes) v *= hi - lo;
  return v;
}

bool Box::contains(const std::vector<double>& x) const {
  if (x.size() != axes.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] < axes[i].first || x[i] > axes[i].second) return false;
  return true;
}

Box Box::parse(std::string_view text) {
  Box box;
  while (!text.empty()) {
    const auto semi = text.find(';');
    const std::string_view axis = text.substr(0, semi);
    const auto comma = axis.find(',');
    if (comma == std::string_view::npos) throw ConfigError("box axis needs 'lo,hi': '" + std::string(axis) + "'");
    const double lo = parse_double(axis.substr(0, comma));
    const double hi = parse_double(axis.substr(comma + 1));
    if (!(lo < hi)) throw ConfigError("degenerate box axis '" + std::string(axis) + "'");
    box.axes.emplace_back(lo, hi);
    if (semi == std::string_view::npos) break;
    text.remove_prefix(semi + 1);
  }
  if (box.axes.empty()) throw ConfigError("empty box");
  return box;
}

std::string Box::to_string() const {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < axes.size(); ++i) {
    if (i) os << ';';
    os << axes[i].first << ',' << axes[i].second;
  }
  return os.str();
}

}  // namespace hardy

#pragma once

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace definetti::cli {

inline double parse_number(std::string_view text) {
  const std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || std::isnan(v)) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  return v;
}

inline std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

/// Grid syntax:
///   "0,0.5,1"        explicit list
///   "lo:hi:n"        n evenly spaced points, endpoints included
///   "log:lo:hi:n"    n log-spaced points (lo, hi > 0)
inline std::vector<double> parse_grid(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty grid");
  std::vector<double> out;
  if (text.find(':') == std::string_view::npos) {
    for (std::string_view p : split(text, ',')) out.push_back(parse_number(p));
    return out;
  }
  std::vector<std::string_view> parts = split(text, ':');
  bool log_spaced = false;
  if (parts.size() == 4 && parts.front() == "log") {
    log_spaced = true;
    parts.erase(parts.begin());
  }
  if (parts.size() != 3) throw std::invalid_argument("range grid must be lo:hi:n");
  const double lo = parse_number(parts[0]);
  const double hi = parse_number(parts[1]);
  const double count = parse_number(parts[2]);
  if (!(count >= 1.0) || count != std::floor(count) || count > 1e7) {
    throw std::invalid_argument("grid point count must be a positive integer");
  }
  const auto n = static_cast<std::size_t>(count);
  if (log_spaced && !(lo > 0.0 && hi > 0.0)) {
    throw std::invalid_argument("log grid needs positive endpoints");
  }
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
    out.push_back(log_spaced ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)))
                             : lo + t * (hi - lo));
  }
  if (n > 1) out.back() = hi;
  return out;
}

inline bool strictly_increasing(const std::vector<double>& g) {
  for (std::size_t i = 1; i < g.size(); ++i) {
    if (!(g[i] > g[i - 1])) return false;
  }
  return !g.empty();
}

}  // namespace definetti::cli

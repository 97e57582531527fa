#pragma once

// Compares two texts token by token: numbers within a relative tolerance,
// everything else exactly.

#include <algorithm>
#include <cmath>
#include <optional>
#include <regex>
#include <string>

namespace topsurg::testing {

struct DiffResult {
  bool equal = true;
  std::string message;
};

inline DiffResult numeric_diff(const std::string& a, const std::string& b, double rel = 1e-10) {
  static const std::regex number(R"([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)");
  auto ia = std::sregex_iterator(a.begin(), a.end(), number);
  auto ib = std::sregex_iterator(b.begin(), b.end(), number);
  const std::sregex_iterator end;
  std::size_t pa = 0, pb = 0, count = 0;
  for (; ia != end && ib != end; ++ia, ++ib, ++count) {
    const auto& ma = *ia;
    const auto& mb = *ib;
    const std::string ta = a.substr(pa, static_cast<std::size_t>(ma.position()) - pa);
    const std::string tb = b.substr(pb, static_cast<std::size_t>(mb.position()) - pb);
    if (ta != tb) return {false, "text differs before number #" + std::to_string(count) + ": '" + ta + "' vs '" + tb + "'"};
    const double x = std::stod(ma.str()), y = std::stod(mb.str());
    if (std::abs(x - y) > rel * std::max(std::abs(x), std::abs(y)))
      return {false, "number #" + std::to_string(count) + " differs: " + ma.str() + " vs " + mb.str()};
    pa = static_cast<std::size_t>(ma.position() + ma.length());
    pb = static_cast<std::size_t>(mb.position() + mb.length());
  }
  if ((ia == end) != (ib == end)) return {false, "different number of numeric tokens"};
  if (a.substr(pa) != b.substr(pb)) return {false, "trailing text differs"};
  return {};
}

}  // namespace topsurg::testing

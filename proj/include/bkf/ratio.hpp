#pragma once

#include <cstdint>
#include <string>

namespace bkf {

// Exact quotient of two counts. Rounding happens only when formatted.
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 0;

  bool defined() const { return den != 0; }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  // num/den * scale to `decimals` places, rounded half up; "undefined" when den is 0.
  std::string format(int decimals, std::uint64_t scale = 1) const {
    if (!defined()) return "undefined";
    unsigned __int128 unit = 1;
    for (int i = 0; i < decimals; ++i) unit *= 10;
    unsigned __int128 n = static_cast<unsigned __int128>(num) * scale * unit;
    unsigned __int128 q = (2 * n + den) / (2 * static_cast<unsigned __int128>(den));
    auto whole = static_cast<std::uint64_t>(q / unit);
    auto frac = static_cast<std::uint64_t>(q % unit);
    std::string out = std::to_string(whole);
    if (decimals > 0) {
      std::string f = std::to_string(frac);
      out += '.' + std::string(static_cast<std::size_t>(decimals) - f.size(), '0') + f;
    }
    return out;
  }

  std::string percent(int decimals = 1) const { return format(decimals, 100); }
};

// "+6952", "-31041", "0"
inline std::string signed_str(std::int64_t v) {
  return v > 0 ? "+" + std::to_string(v) : std::to_string(v);
}

}  // namespace bkf

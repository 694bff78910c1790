#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bkf/aggregate.hpp"
#include "bkf/error.hpp"
#include "bkf/types.hpp"

namespace bkf {

using GainsGrid = std::vector<std::vector<std::uint64_t>>;  // [country][sc]

// Balassa revealed-comparative-advantage ratio, kept as an exact fraction:
//   (G_kj / R_k) / (W_j / W)  ==  (G_kj * W) / (R_k * W_j)
// where R_k is country k's row total and W_j, W are the rest-of-world column
// and grand totals (all countries except k).
struct BalassaRatio {
  enum class Kind { finite, infinite, undefined };
  Kind kind = Kind::undefined;
  unsigned __int128 num = 0;
  unsigned __int128 den = 1;

  bool defined() const { return kind != Kind::undefined; }
  double value() const {
    if (kind == Kind::infinite) return HUGE_VAL;
    if (kind == Kind::undefined) return std::nan("");
    return static_cast<double>(static_cast<long double>(num) / static_cast<long double>(den));
  }
};

inline BalassaRatio balassa_ratio(const GainsGrid& g, std::size_t k, std::size_t j,
                                  bool exclude_own_sc = false) {
  if (k >= g.size()) throw DataError("country index out of range");
  if (j >= g[k].size()) throw DataError("subject category index out of range");
  auto row_sum = [&](std::size_t z) {
    unsigned __int128 s = 0;
    for (std::size_t i = 0; i < g[z].size(); ++i)
      if (!(exclude_own_sc && i == j)) s += g[z][i];
    return s;
  };
  const unsigned __int128 own = g[k][j];
  const unsigned __int128 own_total = row_sum(k);
  unsigned __int128 world_j = 0, world_total = 0;
  for (std::size_t z = 0; z < g.size(); ++z) {
    if (z == k) continue;
    world_j += g[z][j];
    world_total += row_sum(z);
  }

  BalassaRatio r;
  if (own_total == 0 || world_total == 0) return r;
  if (world_j == 0) {
    if (own > 0) r.kind = BalassaRatio::Kind::infinite;
    return r;
  }
  r.kind = BalassaRatio::Kind::finite;
  r.num = own * world_total;
  r.den = own_total * world_j;
  return r;
}

// 100 * tanh(ln r) evaluated as 100 * (r^2 - 1) / (r^2 + 1).
inline double specialization_index(double ratio) {
  if (std::isnan(ratio) || ratio < 0) throw DataError("specialization ratio must be non-negative");
  if (std::isinf(ratio)) return 100.0;
  if (ratio <= 1e150) {
    const double sq = ratio * ratio;
    return 100.0 * (sq - 1.0) / (sq + 1.0);
  }
  const double inv = 1.0 / ratio;
  const double sq = inv * inv;
  return 100.0 * (1.0 - sq) / (1.0 + sq);
}

// Same closed form on an exact fraction num/den, so that 3 -> 80 and 1/3 -> -80 exactly.
inline double specialization_index(unsigned __int128 num, unsigned __int128 den) {
  if (den == 0) return 100.0;
  if (num == 0) return -100.0;
  auto gcd = [](unsigned __int128 a, unsigned __int128 b) {
    while (b != 0) {
      auto t = a % b;
      a = b;
      b = t;
    }
    return a;
  };
  auto d = gcd(num, den);
  num /= d;
  den /= d;
  constexpr unsigned __int128 kFits = static_cast<unsigned __int128>(1) << 63;
  if (num < kFits && den < kFits) {
    const unsigned __int128 n2 = num * num, d2 = den * den;
    const long double diff = n2 >= d2 ? static_cast<long double>(n2 - d2)
                                      : -static_cast<long double>(d2 - n2);
    return static_cast<double>(100.0L * diff / static_cast<long double>(n2 + d2));
  }
  return specialization_index(static_cast<double>(static_cast<long double>(num) /
                                                  static_cast<long double>(den)));
}

inline std::optional<double> specialization_index(const BalassaRatio& r) {
  switch (r.kind) {
    case BalassaRatio::Kind::undefined: return std::nullopt;
    case BalassaRatio::Kind::infinite: return 100.0;
    case BalassaRatio::Kind::finite: return specialization_index(r.num, r.den);
  }
  return std::nullopt;
}

enum class FlowDirection { outflow, inflow };  // KOSI, KISI

inline std::string_view to_string(FlowDirection d) {
  return d == FlowDirection::outflow ? "KOSI" : "KISI";
}

struct SpecializationTable {
  FlowDirection direction = FlowDirection::outflow;
  std::vector<CountryCode> countries;
  std::vector<std::string> scs;
  std::vector<std::vector<std::optional<double>>> values;  // [country][sc]; nullopt = undefined

  std::optional<double> at(const CountryCode& c, const std::string& sc) const {
    auto ki = std::find(countries.begin(), countries.end(), c);
    auto ji = std::find(scs.begin(), scs.end(), sc);
    if (ki == countries.end() || ji == scs.end()) throw DataError("unknown country or SC");
    return values[static_cast<std::size_t>(ki - countries.begin())]
                 [static_cast<std::size_t>(ji - scs.begin())];
  }
};

inline SpecializationTable specialization_table(const GainsGrid& grid,
                                                std::span<const CountryCode> countries,
                                                std::span<const std::string> scs,
                                                FlowDirection direction,
                                                bool exclude_own_sc = false) {
  SpecializationTable t;
  t.direction = direction;
  t.countries.assign(countries.begin(), countries.end());
  t.scs.assign(scs.begin(), scs.end());
  t.values.assign(countries.size(), std::vector<std::optional<double>>(scs.size()));
  for (std::size_t k = 0; k < countries.size(); ++k)
    for (std::size_t j = 0; j < scs.size(); ++j)
      t.values[k][j] = specialization_index(balassa_ratio(grid, k, j, exclude_own_sc));
  return t;
}

namespace detail {

// The "unassigned" bucket is not a field and does not enter the indexes.
inline std::pair<GainsGrid, std::vector<std::string>> assigned_columns(
    const ScGainTable& table, const GainsGrid& grid) {
  std::vector<std::string> scs(table.scs.begin(), table.scs.end() - 1);
  GainsGrid out;
  for (const auto& row : grid) out.emplace_back(row.begin(), row.end() - 1);
  return {std::move(out), std::move(scs)};
}

}  // namespace detail

// Outflow index from the per-SC gains each country generated for the others.
inline SpecializationTable kosi_table(const ScGainTable& table, bool exclude_own_sc = false) {
  auto [grid, scs] = detail::assigned_columns(table, table.generated);
  return specialization_table(grid, table.countries, scs, FlowDirection::outflow, exclude_own_sc);
}

// Inflow index from the per-SC gains each country earned from the others.
inline SpecializationTable kisi_table(const ScGainTable& table, bool exclude_own_sc = false) {
  auto [grid, scs] = detail::assigned_columns(table, table.earned);
  return specialization_table(grid, table.countries, scs, FlowDirection::inflow, exclude_own_sc);
}

// Highest defined values first, ties by SC code.
inline std::vector<std::pair<std::string, double>> top_specializations(
    const SpecializationTable& table, const CountryCode& country, std::size_t n) {
  auto ki = std::find(table.countries.begin(), table.countries.end(), country);
  if (ki == table.countries.end()) throw DataError("unknown country '" + country.str() + "'");
  const auto& row = table.values[static_cast<std::size_t>(ki - table.countries.begin())];
  std::vector<std::pair<std::string, double>> out;
  for (std::size_t j = 0; j < row.size(); ++j)
    if (row[j]) out.emplace_back(table.scs[j], *row[j]);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  if (out.size() > n) out.resize(n);
  return out;
}

}  // namespace bkf

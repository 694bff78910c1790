#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bkf/attribution.hpp"
#include "bkf/corpus.hpp"
#include "bkf/error.hpp"
#include "bkf/flow.hpp"
#include "bkf/ratio.hpp"

namespace bkf {

struct CountrySummary {
  CountryCode country;
  std::uint64_t publications = 0;         // candidates with at least one institution in the country
  std::uint64_t made_in = 0;              // candidates made in the country
  std::uint64_t cited_made_in = 0;        // made-in publications with at least one benefit
  std::uint64_t total_benefits = 0;
  std::uint64_t total_gains = 0;
  std::uint64_t domestic_gains = 0;

  Ratio made_in_share() const { return {made_in, publications}; }
  Ratio cited_share() const { return {cited_made_in, made_in}; }
  Ratio avg_benefits_per_cited() const { return {total_benefits, cited_made_in}; }
  Ratio domestic_share() const { return {domestic_gains, total_gains}; }
  Ratio avg_gains_per_benefit() const { return {total_gains, total_benefits}; }

  friend bool operator==(const CountrySummary&, const CountrySummary&) = default;
};

inline std::vector<CountrySummary> country_summary(const Corpus& corpus,
                                                   const Attribution& attribution,
                                                   const FlowMatrix& matrix) {
  const auto& countries = corpus.config().countries;
  std::vector<CountrySummary> rows(countries.size());
  for (std::size_t k = 0; k < countries.size(); ++k) rows[k].country = countries[k];

  for (PubIndex i = 0; i < corpus.size(); ++i) {
    if (!corpus.is_production_candidate(i)) continue;
    for (CountryIndex k : corpus.analysis_countries_of(i)) ++rows[k].publications;
    auto gens = attribution.generators_of(i);
    if (gens.empty()) continue;
    const auto benefits = benefits_of(i, corpus);
    for (CountryIndex k : gens) {
      ++rows[k].made_in;
      rows[k].total_benefits += benefits;
      if (benefits > 0) ++rows[k].cited_made_in;
    }
  }
  for (std::size_t k = 0; k < countries.size(); ++k) {
    rows[k].total_gains = matrix.row_total(k);
    rows[k].domestic_gains = matrix.at(k, k);
  }
  return rows;
}

struct BkfRow {
  CountryCode country;
  std::uint64_t foreign_gains_generated = 0;  // a
  std::uint64_t total_gains_generated = 0;    // denominator of a's share
  std::optional<std::uint64_t> cited_foreign_publications;
  std::uint64_t foreign_gains_by_foreign = 0;  // foreign gains generated by the other countries
  std::uint64_t earned_gains = 0;              // b
  std::int64_t balance = 0;                    // a - b

  Ratio generated_share() const { return {foreign_gains_generated, total_gains_generated}; }
  Ratio earned_share() const { return {earned_gains, foreign_gains_by_foreign}; }

  friend bool operator==(const BkfRow&, const BkfRow&) = default;
};

// One row per analysis country, in configuration order. When summaries are
// given, the "cited foreign publications" column is filled from them.
inline std::vector<BkfRow> bkf_overall(const FlowMatrix& matrix,
                                       std::span<const CountryCode> countries,
                                       std::span<const CountrySummary> summaries = {}) {
  if (countries.size() != matrix.size()) throw DataError("country list does not match matrix");
  auto split = domestic_split(matrix);
  std::uint64_t all_foreign = 0;
  for (const auto& s : split) all_foreign += s.foreign_gains_generated;

  std::vector<BkfRow> rows(matrix.size());
  for (std::size_t k = 0; k < matrix.size(); ++k) {
    auto& r = rows[k];
    r.country = countries[k];
    r.foreign_gains_generated = split[k].foreign_gains_generated;
    r.total_gains_generated = matrix.row_total(k);
    r.earned_gains = split[k].gains_earned;
    r.foreign_gains_by_foreign = all_foreign - split[k].foreign_gains_generated;
    r.balance = static_cast<std::int64_t>(r.foreign_gains_generated) -
                static_cast<std::int64_t>(r.earned_gains);
    if (summaries.size() == matrix.size()) {
      std::uint64_t cited = 0;
      for (std::size_t z = 0; z < summaries.size(); ++z)
        if (z != k) cited += summaries[z].cited_made_in;
      r.cited_foreign_publications = cited;
    }
  }
  return rows;
}

struct FieldBkfRow {
  std::string sc_code;
  std::string macro_area;
  std::uint64_t generated = 0;
  std::uint64_t earned = 0;
  std::int64_t balance = 0;

  friend bool operator==(const FieldBkfRow&, const FieldBkfRow&) = default;
};

inline FieldBkfRow make_field_row(std::string sc, std::string area, std::uint64_t generated,
                                  std::uint64_t earned) {
  return {std::move(sc), std::move(area), generated, earned,
          static_cast<std::int64_t>(generated) - static_cast<std::int64_t>(earned)};
}

// Per-country, per-SC gain counts under full counting. Gains of cited
// publications in unassigned journals go to the "unassigned" column, which is
// always the last one.
struct ScGainTable {
  std::vector<CountryCode> countries;
  std::vector<std::string> scs;
  std::vector<std::vector<std::uint64_t>> generated;  // [country][sc]
  std::vector<std::vector<std::uint64_t>> earned;

  std::size_t unassigned_column() const { return scs.size() - 1; }
};

inline ScGainTable sc_gain_table(std::span<const GainRecord> gains,
                                 const JournalCategoryMap& categories,
                                 std::span<const CountryCode> countries, bool include_domestic) {
  ScGainTable t;
  t.countries.assign(countries.begin(), countries.end());
  t.scs = categories.all_scs();
  t.scs.erase(std::remove(t.scs.begin(), t.scs.end(), std::string(kUnassigned)), t.scs.end());
  t.scs.emplace_back(kUnassigned);
  std::unordered_map<std::string, std::size_t> col;
  for (std::size_t j = 0; j < t.scs.size(); ++j) col.emplace(t.scs[j], j);

  const auto n = countries.size();
  t.generated.assign(n, std::vector<std::uint64_t>(t.scs.size(), 0));
  t.earned = t.generated;

  // Gains of one cited publication share the same span, so cache its columns.
  const std::string* last_data = nullptr;
  std::size_t last_size = static_cast<std::size_t>(-1);
  std::vector<std::size_t> cols;
  for (const auto& g : gains) {
    if (g.domestic && !include_domestic) continue;
    if (g.sc_codes.data() != last_data || g.sc_codes.size() != last_size) {
      last_data = g.sc_codes.data();
      last_size = g.sc_codes.size();
      cols.clear();
      for (const auto& sc : g.sc_codes) cols.push_back(col.at(sc));
      if (cols.empty()) cols.push_back(t.unassigned_column());
    }
    for (auto j : cols) {
      ++t.generated[g.generator][j];
      ++t.earned[g.earner][j];
    }
  }
  return t;
}

// Foreign gains generated and earned by `country`, one row per SC (sorted),
// with an "unassigned" row when that bucket is non-empty.
inline std::vector<FieldBkfRow> bkf_by_field(const ScGainTable& table,
                                             const JournalCategoryMap& categories,
                                             const CountryCode& country) {
  auto it = std::find(table.countries.begin(), table.countries.end(), country);
  if (it == table.countries.end()) throw DataError("unknown country '" + country.str() + "'");
  const auto k = static_cast<std::size_t>(it - table.countries.begin());
  std::vector<FieldBkfRow> rows;
  for (std::size_t j = 0; j < table.scs.size(); ++j) {
    auto a = table.generated[k][j], b = table.earned[k][j];
    if (j == table.unassigned_column() && a == 0 && b == 0) continue;
    rows.push_back(make_field_row(table.scs[j], categories.area_of(table.scs[j]), a, b));
  }
  std::sort(rows.begin(), rows.end(),
            [](const FieldBkfRow& x, const FieldBkfRow& y) { return x.sc_code < y.sc_code; });
  return rows;
}

inline std::vector<FieldBkfRow> bkf_by_field(std::span<const GainRecord> gains,
                                             const JournalCategoryMap& categories,
                                             const CountryCode& country,
                                             std::span<const CountryCode> countries) {
  return bkf_by_field(sc_gain_table(gains, categories, countries, false), categories, country);
}

enum class BilateralLevel { overall, per_sc };

struct BilateralRow {
  std::string sc_code;  // "ALL" for the overall row
  std::uint64_t k_to_l = 0;
  std::uint64_t l_to_k = 0;
  std::int64_t balance = 0;  // from k's perspective

  friend bool operator==(const BilateralRow&, const BilateralRow&) = default;
};

inline constexpr std::string_view kAllFields = "ALL";

// Gains flowing between k and l, from k's perspective. Per-SC rows (sorted by
// SC) come first when requested; the "ALL" row is always last.
inline std::vector<BilateralRow> bilateral_bkf(std::span<const GainRecord> gains,
                                               std::span<const CountryCode> countries,
                                               const CountryCode& k, const CountryCode& l,
                                               const JournalCategoryMap& categories,
                                               BilateralLevel level) {
  if (k == l) throw DataError("bilateral analysis needs two different countries");
  auto index = [&](const CountryCode& c) {
    auto it = std::find(countries.begin(), countries.end(), c);
    if (it == countries.end()) throw DataError("unknown country '" + c.str() + "'");
    return static_cast<CountryIndex>(it - countries.begin());
  };
  const auto ki = index(k), li = index(l);

  std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> per_sc;
  if (level == BilateralLevel::per_sc)
    for (const auto& sc : categories.all_scs()) per_sc[sc];
  std::uint64_t kl = 0, lk = 0;
  for (const auto& g : gains) {
    bool forward = g.generator == ki && g.earner == li;
    bool backward = g.generator == li && g.earner == ki;
    if (!forward && !backward) continue;
    (forward ? kl : lk) += 1;
    if (level != BilateralLevel::per_sc) continue;
    if (g.sc_codes.empty()) {
      auto& cell = per_sc[std::string(kUnassigned)];
      (forward ? cell.first : cell.second) += 1;
    }
    for (const auto& sc : g.sc_codes) {
      auto& cell = per_sc[sc];
      (forward ? cell.first : cell.second) += 1;
    }
  }

  std::vector<BilateralRow> rows;
  auto row = [](std::string sc, std::uint64_t a, std::uint64_t b) {
    return BilateralRow{std::move(sc), a, b,
                        static_cast<std::int64_t>(a) - static_cast<std::int64_t>(b)};
  };
  for (const auto& [sc, cell] : per_sc) rows.push_back(row(sc, cell.first, cell.second));
  rows.push_back(row(std::string(kAllFields), kl, lk));
  return rows;
}

// Area totals are plain sums of member-SC rows; every known area gets a row.
inline std::vector<FieldBkfRow> macro_area_rollup(std::span<const FieldBkfRow> field_rows,
                                                  const JournalCategoryMap& categories) {
  std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> areas;
  for (const auto& a : categories.all_areas()) areas[a];
  for (const auto& r : field_rows) {
    auto& cell = areas[r.macro_area];
    cell.first += r.generated;
    cell.second += r.earned;
  }
  std::vector<FieldBkfRow> out;
  for (const auto& [area, cell] : areas) out.push_back(make_field_row(area, area, cell.first, cell.second));
  return out;
}

// (n lowest balances ascending, n highest balances descending); ties by SC code.
inline std::pair<std::vector<FieldBkfRow>, std::vector<FieldBkfRow>> top_bottom_fields(
    std::span<const FieldBkfRow> rows, std::size_t n) {
  if (n < 1) throw DataError("n must be at least 1");
  std::vector<FieldBkfRow> asc(rows.begin(), rows.end()), desc(rows.begin(), rows.end());
  std::sort(asc.begin(), asc.end(), [](const FieldBkfRow& a, const FieldBkfRow& b) {
    return a.balance != b.balance ? a.balance < b.balance : a.sc_code < b.sc_code;
  });
  std::sort(desc.begin(), desc.end(), [](const FieldBkfRow& a, const FieldBkfRow& b) {
    return a.balance != b.balance ? a.balance > b.balance : a.sc_code < b.sc_code;
  });
  if (asc.size() > n) asc.resize(n);
  if (desc.size() > n) desc.resize(n);
  return {std::move(asc), std::move(desc)};
}

}  // namespace bkf

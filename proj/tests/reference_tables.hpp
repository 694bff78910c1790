#pragma once

// Reference four-country aggregates used as report-layer fixtures.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "bkf/aggregate.hpp"
#include "bkf/flow.hpp"
#include "bkf/types.hpp"

namespace bkf::reference {

inline std::vector<CountryCode> countries() {
  return {CountryCode("IL"), CountryCode("IT"), CountryCode("NZ"), CountryCode("NL")};
}

// Country production and citation totals.
struct Production {
  std::uint64_t publications, made_in, cited, benefits, gains, domestic;
};

inline constexpr std::array<Production, 4> kProduction{{
    {76509, 58725, 35546, 238025, 247128, 164688},
    {325504, 266350, 159484, 1280463, 1323487, 1136810},
    {39740, 28826, 17162, 116849, 120459, 85490},
    {181339, 130902, 81099, 737289, 766944, 571236},
}};

inline std::vector<CountrySummary> summaries() {
  auto cs = countries();
  std::vector<CountrySummary> out;
  for (std::size_t k = 0; k < 4; ++k) {
    const auto& p = kProduction[k];
    out.push_back({cs[k], p.publications, p.made_in, p.cited, p.benefits, p.gains, p.domestic});
  }
  return out;
}

// Printed per-country values of the overall balance table.
struct OverallRow {
  std::uint64_t foreign_generated;
  const char* generated_pct;
  std::uint64_t cited_foreign;
  std::uint64_t foreign_by_foreign;
  std::uint64_t earned;
  const char* earned_pct;
  std::int64_t balance;
};

inline constexpr std::array<OverallRow, 4> kOverall{{
    {82440, "33.4", 257745, 417354, 75488, "18.1", 6952},
    {186677, "14.1", 133807, 313117, 217718, "69.5", -31041},
    {34969, "29.0", 276129, 464825, 43238, "9.3", -8269},
    {195708, "25.5", 212192, 304086, 163350, "53.7", 32358},
}};

// Generator x earner matrix as printed; the Israel->NL cell is not printed.
inline constexpr std::uint64_t kMissing = UINT64_MAX;
inline constexpr std::array<std::array<std::uint64_t, 4>, 4> kPrintedMatrix{{
    {164688, 50675, 4777, kMissing},
    {43819, 1136810, 19909, 122949},
    {3403, 18153, 85490, 13413},
    {28266, 148890, 18552, 571236},
}};

// Israel->NL from the generator-row constraint (foreign generated minus the other two cells).
inline std::uint64_t israel_nl_from_row() {
  return kOverall[0].foreign_generated - kPrintedMatrix[0][1] - kPrintedMatrix[0][2];
}

// Israel->NL from the earner-column constraint (NL earned minus the other two foreign cells).
inline std::uint64_t israel_nl_from_column() {
  return kOverall[3].earned - kPrintedMatrix[1][3] - kPrintedMatrix[2][3];
}

inline FlowMatrix matrix() {
  FlowMatrix m(4);
  for (std::size_t g = 0; g < 4; ++g)
    for (std::size_t e = 0; e < 4; ++e)
      m.at(g, e) = kPrintedMatrix[g][e] == kMissing ? israel_nl_from_row() : kPrintedMatrix[g][e];
  return m;
}

struct ScRow {
  const char* sc;
  std::uint64_t a, b;
  std::int64_t balance;
};

// Italy, foreign gains by SC in Earth and Space Sciences.
inline const std::vector<ScRow>& italy_earth_space() {
  static const std::vector<ScRow> rows{
      {"Geochemistry & geophysics", 1857, 1345, 512},
      {"Geosciences, multidisciplinary", 3373, 2942, 431},
      {"Water resources", 1554, 1473, 81},
      {"Limnology", 397, 318, 79},
      {"Mineralogy", 183, 128, 55},
      {"Paleontology", 531, 505, 26},
      {"Meteorology & atmospheric sciences", 1240, 1273, -33},
      {"Geography, physical", 963, 998, -35},
      {"Geology", 464, 511, -47},
      {"Oceanography", 728, 985, -257},
      {"Environmental sciences", 3317, 4059, -742},
      {"Environmental studies", 658, 1765, -1107},
  };
  return rows;
}
inline constexpr ScRow kItalyEarthSpaceTotal{"Earth and Space Sciences", 15265, 16302, -1037};

// Italy, the ten lowest and ten highest balances over all SCs.
inline const std::vector<ScRow>& italy_extremes() {
  static const std::vector<ScRow> rows{
      {"Chemistry, multidisciplinary", 3576, 6498, -2922},
      {"Biochemistry & molecular biology", 11254, 13866, -2612},
      {"Genetics & heredity", 4249, 6571, -2322},
      {"Radiology, nuclear medicine & medical imaging", 3673, 5930, -2257},
      {"Psychiatry", 2916, 5123, -2207},
      {"Cardiac & cardiovascular systems", 8788, 10970, -2182},
      {"Chemistry, physical", 4455, 6488, -2033},
      {"Ecology", 1848, 3761, -1913},
      {"Materials science, multidisciplinary", 2306, 4004, -1698},
      {"Microbiology", 2974, 4663, -1689},
      {"Engineering, electrical & electronic", 3481, 3132, 349},
      {"Physics, fluids & plasmas", 1288, 936, 352},
      {"Physics, mathematical", 1334, 948, 386},
      {"Chemistry, medicinal", 1434, 1047, 387},
      {"Geosciences, multidisciplinary", 3373, 2942, 431},
      {"Geochemistry & geophysics", 1857, 1345, 512},
      {"Gastroenterology & hepatology", 4742, 4054, 688},
      {"Physics, nuclear", 1592, 597, 995},
      {"Physics, particles & fields", 5502, 2168, 3334},
      {"Astronomy & astrophysics", 10998, 5718, 5280},
  };
  return rows;
}

// Italy -> NL and NL -> Italy gains by SC in Biomedical Research.
inline const std::vector<ScRow>& italy_nl_biomedical() {
  static const std::vector<ScRow> rows{
      {"Radiology, nuclear medicine & medical imaging", 2926, 5064, -2138},
      {"Oncology", 7933, 9041, -1108},
      {"Infectious diseases", 1309, 1738, -429},
      {"Toxicology", 967, 1329, -362},
      {"Hematology", 5229, 5582, -353},
      {"Pathology", 1018, 1266, -248},
      {"Virology", 589, 807, -218},
      {"Pharmacology & pharmacy", 3976, 4189, -213},
      {"Medical laboratory technology", 526, 632, -106},
      {"Medicine, research & experimental", 1926, 2017, -91},
      {"Allergy", 726, 794, -68},
      {"Anatomy & morphology", 82, 50, 32},
      {"Chemistry, medicinal", 739, 570, 169},
      {"Immunology", 5036, 4772, 264},
  };
  return rows;
}
inline constexpr ScRow kItalyNlBiomedicalTotal{"Biomedical Research", 32982, 37851, -4869};

// Israel -> NZ and NZ -> Israel gains, ten lowest and ten highest Israeli balances.
inline const std::vector<ScRow>& israel_nz_extremes() {
  static const std::vector<ScRow> rows{
      {"Toxicology", 22, 82, -60},
      {"Endocrinology & metabolism", 88, 144, -56},
      {"Psychology", 44, 86, -42},
      {"Psychiatry", 108, 138, -30},
      {"Food Science & technology", 76, 98, -22},
      {"Nutrition & dietetics", 39, 61, -22},
      {"Pharmacology & pharmacy", 136, 155, -19},
      {"Psychology, clinical", 25, 44, -19},
      {"Substance abuse", 1, 20, -19},
      {"Parasitology", 33, 51, -18},
      {"Plant sciences", 172, 109, 63},
      {"Geography, physical", 84, 17, 67},
      {"Clinical neurology", 141, 69, 72},
      {"Microbiology", 151, 79, 72},
      {"Management", 115, 42, 73},
      {"Physics, multidisciplinary", 109, 20, 89},
      {"Neurosciences", 288, 195, 93},
      {"Chemistry, multidisciplinary", 132, 26, 106},
      {"Biochemistry & molecular biology", 390, 247, 143},
      {"Ecology", 378, 143, 235},
  };
  return rows;
}

// Gain records that realise per-SC flow counts between two countries: `a`
// records g -> e and `b` records e -> g for each SC row, each cited in a
// single-SC journal. `sc_sets` owns the spans the records point into.
struct SyntheticGains {
  std::vector<std::vector<std::string>> sc_sets;
  std::vector<GainRecord> gains;
};

inline SyntheticGains gains_for(const std::vector<ScRow>& rows, CountryIndex g, CountryIndex e) {
  SyntheticGains s;
  s.sc_sets.reserve(rows.size());
  for (const auto& r : rows) s.sc_sets.push_back({r.sc});
  PubIndex next = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::span<const std::string> scs(s.sc_sets[i]);
    for (std::uint64_t n = 0; n < rows[i].a; ++n) s.gains.push_back({next++, next, g, e, false, scs});
    for (std::uint64_t n = 0; n < rows[i].b; ++n) s.gains.push_back({next++, next, e, g, false, scs});
  }
  return s;
}

inline JournalCategoryMap categories_for(const std::vector<ScRow>& rows, const std::string& area) {
  JournalCategoryMap m;
  for (const auto& r : rows) m.set_area(r.sc, area);
  return m;
}

}  // namespace bkf::reference

#pragma once

#include <algorithm>
#include <chrono>
#include <compare>
#include <cstdint>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "bkf/error.hpp"

namespace bkf {

// Uppercase country identifier ("IT", "NL", ...).
class CountryCode {
 public:
  CountryCode() = default;
  explicit CountryCode(std::string code) : code_(std::move(code)) {
    if (code_.empty()) throw DataError("empty country code");
    for (char c : code_) {
      bool ok = (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '-';
      if (!ok) throw DataError("country code must be uppercase: '" + code_ + "'");
    }
  }

  const std::string& str() const { return code_; }

  friend auto operator<=>(const CountryCode&, const CountryCode&) = default;
  friend bool operator==(const CountryCode&, const CountryCode&) = default;

 private:
  std::string code_;
};

// Exact non-negative fraction, always stored in lowest terms.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  constexpr Rational() = default;
  constexpr Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw DataError("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    auto g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  // part/whole >= *this, compared by cross multiplication.
  constexpr bool reached_by(std::int64_t part, std::int64_t whole) const {
    return static_cast<__int128>(part) * den >= static_cast<__int128>(num) * whole;
  }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend constexpr bool operator==(const Rational&, const Rational&) = default;
  friend constexpr std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num) * b.den <=> static_cast<__int128>(b.num) * a.den;
  }
};

inline std::string to_string(const Rational& r) {
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

struct Date {
  int year = 0;
  unsigned month = 1;
  unsigned day = 1;

  bool valid() const {
    return std::chrono::year_month_day{std::chrono::year{year}, std::chrono::month{month},
                                       std::chrono::day{day}}
        .ok();
  }
  friend auto operator<=>(const Date&, const Date&) = default;
};

inline std::string to_string(const Date& d) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", d.year, d.month, d.day);
  return buf;
}

enum class DocType { article, review, letter, proceedings, other };

inline constexpr DocType kAllDocTypes[] = {DocType::article, DocType::review, DocType::letter,
                                           DocType::proceedings, DocType::other};

inline std::string_view to_string(DocType t) {
  switch (t) {
    case DocType::article: return "article";
    case DocType::review: return "review";
    case DocType::letter: return "letter";
    case DocType::proceedings: return "proceedings";
    case DocType::other: return "other";
  }
  return "other";
}

inline DocType parse_doc_type(std::string_view s) {
  for (DocType t : kAllDocTypes)
    if (to_string(t) == s) return t;
  throw DataError("unknown doc_type '" + std::string(s) + "'");
}

struct Affiliation {
  std::string institution_id;
  CountryCode country;

  friend bool operator==(const Affiliation&, const Affiliation&) = default;
};

struct PublicationRecord {
  std::string id;
  int year = 0;
  DocType doc_type = DocType::article;
  std::string journal_id;
  std::vector<Affiliation> affiliations;

  friend bool operator==(const PublicationRecord&, const PublicationRecord&) = default;
};

// Empty string when the record is well formed, otherwise the reason it is not.
inline std::string check_record(const PublicationRecord& p) {
  if (p.id.empty()) return "empty publication id";
  if (p.journal_id.empty()) return "empty journal_id";
  if (p.affiliations.empty()) return "empty affiliation list";
  std::set<std::string_view> seen;
  for (const auto& a : p.affiliations) {
    if (a.institution_id.empty()) return "empty institution_id";
    if (!seen.insert(a.institution_id).second) return "duplicate institution_id " + a.institution_id;
  }
  return {};
}

struct CitationLink {
  std::string citing_id;
  std::string cited_id;

  friend auto operator<=>(const CitationLink&, const CitationLink&) = default;
};

inline constexpr std::string_view kUnassigned = "unassigned";

// Journal -> subject categories (SCs), SC -> macro-area.
class JournalCategoryMap {
 public:
  void assign(const std::string& journal, std::vector<std::string> scs) {
    std::sort(scs.begin(), scs.end());
    scs.erase(std::unique(scs.begin(), scs.end()), scs.end());
    scs.erase(std::remove(scs.begin(), scs.end(), std::string{}), scs.end());
    auto& dst = journal_scs_[journal];
    std::vector<std::string> merged;
    std::set_union(dst.begin(), dst.end(), scs.begin(), scs.end(), std::back_inserter(merged));
    dst = std::move(merged);
  }

  // Throws if the SC already belongs to a different macro-area.
  void set_area(const std::string& sc, const std::string& area) {
    auto [it, inserted] = sc_area_.emplace(sc, area);
    if (!inserted && it->second != area)
      throw DataError("subject category '" + sc + "' assigned to two macro-areas: '" + it->second +
                      "' and '" + area + "'");
  }

  const std::vector<std::string>& lookup(const std::string& journal) const {
    static const std::vector<std::string> none;
    auto it = journal_scs_.find(journal);
    return it == journal_scs_.end() ? none : it->second;
  }

  std::string area_of(std::string_view sc) const {
    auto it = sc_area_.find(std::string(sc));
    return it == sc_area_.end() ? std::string(kUnassigned) : it->second;
  }

  // Every SC named by either file, sorted.
  std::vector<std::string> all_scs() const {
    std::set<std::string> out;
    for (const auto& [j, scs] : journal_scs_) out.insert(scs.begin(), scs.end());
    for (const auto& [sc, area] : sc_area_) out.insert(sc);
    return {out.begin(), out.end()};
  }

  // Every macro-area, sorted; "unassigned" included when some journal SC has no area.
  std::vector<std::string> all_areas() const {
    std::set<std::string> out;
    for (const auto& [sc, area] : sc_area_) out.insert(area);
    for (const auto& sc : all_scs())
      if (!sc_area_.count(sc)) out.insert(std::string(kUnassigned));
    return {out.begin(), out.end()};
  }

  const std::map<std::string, std::vector<std::string>>& journals() const { return journal_scs_; }
  const std::map<std::string, std::string>& areas() const { return sc_area_; }

 private:
  std::map<std::string, std::vector<std::string>> journal_scs_;
  std::map<std::string, std::string> sc_area_;
};

// Which per-SC gains feed the specialization indexes, and how row totals are formed.
struct SpecializationOptions {
  bool include_domestic = false;  // foreign gains only by default
  bool exclude_own_sc = false;    // row totals over i != j instead of all SCs
};

struct AnalysisConfig {
  std::vector<CountryCode> countries;
  int year_min = 0;
  int year_max = 0;
  Date citation_cutoff;
  std::set<DocType> doc_types{DocType::article, DocType::review, DocType::letter,
                              DocType::proceedings};
  Rational made_in_threshold{1, 2};
  SpecializationOptions specialization;

  void validate() const {
    if (countries.size() < 2) throw DataError("at least 2 analysis countries are required");
    std::set<CountryCode> uniq(countries.begin(), countries.end());
    if (uniq.size() != countries.size()) throw DataError("analysis countries must be distinct");
    if (year_min > year_max) throw DataError("period start after period end");
    if (!citation_cutoff.valid()) throw DataError("invalid citation cutoff date");
    if (made_in_threshold.num <= 0 || made_in_threshold > Rational{1, 1})
      throw DataError("made-in threshold must lie in (0, 1]");
    if (doc_types.empty()) throw DataError("doc_types must not be empty");
  }

  // Index of the country in the analysis set, or -1.
  int index_of(const CountryCode& c) const {
    auto it = std::find(countries.begin(), countries.end(), c);
    return it == countries.end() ? -1 : static_cast<int>(it - countries.begin());
  }
};

}  // namespace bkf

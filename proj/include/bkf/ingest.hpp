#pragma once

#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bkf/csv.hpp"
#include "bkf/diagnostics.hpp"
#include "bkf/error.hpp"
#include "bkf/types.hpp"

namespace bkf {

struct ParseIssue {
  std::size_t line = 0;
  std::string message;
};

template <typename T>
struct Parsed {
  std::vector<T> records;
  std::vector<ParseIssue> issues;
};

namespace detail {

inline void reject(std::vector<ParseIssue>& issues, ValidationReport* report,
                   const std::string& source, std::size_t line, std::string message) {
  if (report) report->rejected_records.note(source + ":" + std::to_string(line), report->max_samples);
  issues.push_back({line, std::move(message)});
}

inline bool blank(std::string_view s) {
  return s.find_first_not_of(" \t\r") == std::string_view::npos;
}

inline std::string json_string(const nlohmann::json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw DataError(std::string("missing field '") + key + "'");
  if (!it->is_string()) throw DataError(std::string("field '") + key + "' is not a string");
  return it->get<std::string>();
}

inline PublicationRecord publication_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw DataError("record is not a JSON object");
  PublicationRecord p;
  p.id = json_string(j, "id");
  auto year = j.find("year");
  if (year == j.end() || !year->is_number_integer()) throw DataError("missing or non-integer 'year'");
  p.year = year->get<int>();
  p.doc_type = parse_doc_type(json_string(j, "doc_type"));
  p.journal_id = json_string(j, "journal_id");
  auto affs = j.find("affiliations");
  if (affs == j.end() || !affs->is_array()) throw DataError("missing 'affiliations' array");
  for (const auto& a : *affs) {
    if (!a.is_object()) throw DataError("affiliation is not an object");
    p.affiliations.push_back({json_string(a, "institution_id"), CountryCode(json_string(a, "country"))});
  }
  if (auto why = check_record(p); !why.empty()) throw DataError(why);
  return p;
}

}  // namespace detail

// publications.jsonl: one JSON object per line. Bad lines are reported and skipped.
inline Parsed<PublicationRecord> parse_publications(std::istream& in,
                                                    ValidationReport* report = nullptr,
                                                    const std::string& source = "publications.jsonl") {
  Parsed<PublicationRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::blank(line)) continue;
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      detail::reject(out.issues, report, source, lineno, "invalid JSON");
      continue;
    }
    try {
      out.records.push_back(detail::publication_from_json(j));
    } catch (const DataError& e) {
      detail::reject(out.issues, report, source, lineno, e.what());
    }
  }
  return out;
}

// citations.csv: citing_id,cited_id with an optional header row.
inline Parsed<CitationLink> parse_citations(std::istream& in, ValidationReport* report = nullptr,
                                            const std::string& source = "citations.csv") {
  Parsed<CitationLink> out;
  std::string line;
  std::size_t lineno = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::blank(line)) continue;
    auto fields = csv::split(line);
    if (first) {
      first = false;
      if (fields && fields->size() == 2 && (*fields)[0] == "citing_id" && (*fields)[1] == "cited_id")
        continue;
    }
    if (!fields || fields->size() != 2) {
      detail::reject(out.issues, report, source, lineno, "expected 2 columns");
      continue;
    }
    auto citing = csv::trim((*fields)[0]), cited = csv::trim((*fields)[1]);
    if (citing.empty() || cited.empty()) {
      detail::reject(out.issues, report, source, lineno, "empty publication id");
      continue;
    }
    out.records.push_back({std::move(citing), std::move(cited)});
  }
  return out;
}

// journals.csv: journal_id,"SC;SC;..."   sc_areas.csv: sc_code,macro_area.
// An SC placed in two macro-areas is a hard error.
inline JournalCategoryMap parse_journal_categories(std::istream& journals, std::istream& areas,
                                                   ValidationReport* report = nullptr,
                                                   std::vector<ParseIssue>* issues = nullptr) {
  JournalCategoryMap map;
  std::vector<ParseIssue> local;
  auto& sink = issues ? *issues : local;
  std::string line;
  std::size_t lineno = 0;
  bool first = true;
  while (std::getline(journals, line)) {
    ++lineno;
    if (detail::blank(line)) continue;
    auto fields = csv::split(line);
    if (first) {
      first = false;
      if (fields && !fields->empty() && (*fields)[0] == "journal_id") continue;
    }
    if (!fields || fields->empty() || fields->size() > 2 || csv::trim((*fields)[0]).empty()) {
      detail::reject(sink, report, "journals.csv", lineno, "expected journal_id,sc_codes");
      continue;
    }
    auto scs = fields->size() == 2 ? csv::split_list((*fields)[1], ';') : std::vector<std::string>{};
    map.assign(csv::trim((*fields)[0]), std::move(scs));
  }

  lineno = 0;
  first = true;
  while (std::getline(areas, line)) {
    ++lineno;
    if (detail::blank(line)) continue;
    auto fields = csv::split(line);
    if (first) {
      first = false;
      if (fields && fields->size() == 2 && (*fields)[0] == "sc_code") continue;
    }
    if (!fields || fields->size() != 2 || csv::trim((*fields)[0]).empty() ||
        csv::trim((*fields)[1]).empty()) {
      detail::reject(sink, report, "sc_areas.csv", lineno, "expected sc_code,macro_area");
      continue;
    }
    map.set_area(csv::trim((*fields)[0]), csv::trim((*fields)[1]));
  }
  return map;
}

// Flat "key = value" text; '#' starts a comment. Later keys override earlier ones.
inline std::map<std::string, std::string> parse_key_values(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (detail::blank(line)) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw DataError("config line " + std::to_string(lineno) + ": expected key = value");
    auto key = csv::trim(std::string_view(line).substr(0, eq));
    if (key.empty()) throw DataError("config line " + std::to_string(lineno) + ": empty key");
    kv[key] = csv::trim(std::string_view(line).substr(eq + 1));
  }
  return kv;
}

inline Date parse_date(std::string_view s) {
  auto bad = [&] { return DataError("malformed date '" + std::string(s) + "' (expected YYYY-MM-DD)"); };
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') throw bad();
  auto num = [&](std::size_t pos, std::size_t len) {
    int v = 0;
    auto r = std::from_chars(s.data() + pos, s.data() + pos + len, v);
    if (r.ec != std::errc{} || r.ptr != s.data() + pos + len) throw bad();
    return v;
  };
  Date d{num(0, 4), static_cast<unsigned>(num(5, 2)), static_cast<unsigned>(num(8, 2))};
  if (!d.valid()) throw bad();
  return d;
}

// "1/2", "0.5" or "1".
inline Rational parse_rational(std::string_view s) {
  auto bad = [&] { return DataError("malformed fraction '" + std::string(s) + "'"); };
  auto integer = [&](std::string_view part) {
    std::int64_t v = 0;
    if (part.empty()) throw bad();
    auto r = std::from_chars(part.data(), part.data() + part.size(), v);
    if (r.ec != std::errc{} || r.ptr != part.data() + part.size() || v < 0) throw bad();
    return v;
  };
  if (auto slash = s.find('/'); slash != std::string_view::npos)
    return Rational(integer(s.substr(0, slash)), integer(s.substr(slash + 1)));
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto frac = s.substr(dot + 1);
    if (frac.size() > 15) throw bad();
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    auto whole = dot == 0 ? 0 : integer(s.substr(0, dot));
    return Rational(whole * den + (frac.empty() ? 0 : integer(frac)), den);
  }
  return Rational(integer(s), 1);
}

inline bool parse_bool(const std::string& key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw DataError("config key '" + key + "': expected true or false");
}

// Builds an analysis configuration from already-parsed keys. Keys that do not
// belong to the analysis (generator parameters, for instance) are ignored.
inline AnalysisConfig config_from_keys(const std::map<std::string, std::string>& kv) {
  auto require = [&](const char* key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end() || it->second.empty())
      throw DataError(std::string("config is missing '") + key + "'");
    return it->second;
  };
  AnalysisConfig c;
  for (const auto& code : csv::split_list(require("countries"), ',')) c.countries.emplace_back(code);

  std::vector<int> years;
  const auto& period = require("period");
  for (std::size_t i = 0; i < period.size();) {
    if (!std::isdigit(static_cast<unsigned char>(period[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < period.size() && std::isdigit(static_cast<unsigned char>(period[j]))) ++j;
    years.push_back(std::stoi(period.substr(i, j - i)));
    i = j;
  }
  if (years.size() != 2) throw DataError("period must hold two years, e.g. 2004..2008");
  c.year_min = years[0];
  c.year_max = years[1];
  c.citation_cutoff = parse_date(require("cutoff"));

  if (auto it = kv.find("threshold"); it != kv.end()) c.made_in_threshold = parse_rational(it->second);
  if (auto it = kv.find("doc_types"); it != kv.end()) {
    c.doc_types.clear();
    for (const auto& t : csv::split_list(it->second, ',')) c.doc_types.insert(parse_doc_type(t));
  }
  if (auto it = kv.find("specialization_include_domestic"); it != kv.end())
    c.specialization.include_domestic = parse_bool(it->first, it->second);
  if (auto it = kv.find("specialization_exclude_own_sc"); it != kv.end())
    c.specialization.exclude_own_sc = parse_bool(it->first, it->second);
  c.validate();
  return c;
}

inline AnalysisConfig parse_config(std::istream& in) { return config_from_keys(parse_key_values(in)); }

// ---- writers (canonical formats) ----

inline void write_publications_jsonl(std::ostream& os, const std::vector<PublicationRecord>& pubs) {
  for (const auto& p : pubs) {
    nlohmann::ordered_json j;
    j["id"] = p.id;
    j["year"] = p.year;
    j["doc_type"] = std::string(to_string(p.doc_type));
    j["journal_id"] = p.journal_id;
    j["affiliations"] = nlohmann::ordered_json::array();
    for (const auto& a : p.affiliations)
      j["affiliations"].push_back({{"institution_id", a.institution_id}, {"country", a.country.str()}});
    os << j.dump() << '\n';
  }
}

inline void write_citations_csv(std::ostream& os, const std::vector<CitationLink>& links) {
  os << "citing_id,cited_id\n";
  for (const auto& l : links) os << csv::escape(l.citing_id) << ',' << csv::escape(l.cited_id) << '\n';
}

inline void write_journals_csv(std::ostream& os, const JournalCategoryMap& map) {
  os << "journal_id,sc_codes\n";
  for (const auto& [journal, scs] : map.journals()) {
    std::string joined;
    for (std::size_t i = 0; i < scs.size(); ++i) joined += (i ? ";" : "") + scs[i];
    os << csv::escape(journal) << ',' << csv::escape(joined) << '\n';
  }
}

inline void write_sc_areas_csv(std::ostream& os, const JournalCategoryMap& map) {
  os << "sc_code,macro_area\n";
  for (const auto& [sc, area] : map.areas()) os << csv::escape(sc) << ',' << csv::escape(area) << '\n';
}

inline void write_config(std::ostream& os, const AnalysisConfig& c) {
  os << "countries = ";
  for (std::size_t i = 0; i < c.countries.size(); ++i) os << (i ? "," : "") << c.countries[i].str();
  os << "\nperiod = " << c.year_min << ".." << c.year_max << '\n';
  os << "cutoff = " << to_string(c.citation_cutoff) << '\n';
  os << "threshold = " << to_string(c.made_in_threshold) << '\n';
  os << "doc_types = ";
  bool first = true;
  for (auto t : c.doc_types) {
    os << (first ? "" : ",") << to_string(t);
    first = false;
  }
  os << "\nspecialization_include_domestic = " << (c.specialization.include_domestic ? "true" : "false")
     << "\nspecialization_exclude_own_sc = " << (c.specialization.exclude_own_sc ? "true" : "false")
     << '\n';
}

inline std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

}  // namespace bkf

#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bkf/aggregate.hpp"
#include "bkf/attribution.hpp"
#include "bkf/corpus.hpp"
#include "bkf/csv.hpp"
#include "bkf/flow.hpp"
#include "bkf/ingest.hpp"
#include "bkf/ratio.hpp"
#include "bkf/specialization.hpp"

namespace bkf {

struct InputPaths {
  std::filesystem::path publications;
  std::filesystem::path citations;
  std::filesystem::path journals;
  std::filesystem::path sc_areas;

  static InputPaths in_dir(const std::filesystem::path& dir) {
    return {dir / "publications.jsonl", dir / "citations.csv", dir / "journals.csv",
            dir / "sc_areas.csv"};
  }

  std::vector<std::filesystem::path> all() const { return {publications, citations, journals, sc_areas}; }
};

struct LoadedInputs {
  std::vector<PublicationRecord> publications;
  std::vector<CitationLink> citations;
  JournalCategoryMap categories;
  ValidationReport report;
  std::vector<std::string> issues;  // "file:line: message"
};

inline LoadedInputs load_inputs(const InputPaths& paths, std::size_t max_samples = 20) {
  for (const auto& p : paths.all())
    if (!std::filesystem::is_regular_file(p)) throw IoError("missing input file " + p.string());
  LoadedInputs in;
  in.report.max_samples = max_samples;
  auto note = [&](const std::filesystem::path& file, const std::vector<ParseIssue>& issues) {
    for (const auto& i : issues)
      in.issues.push_back(file.filename().string() + ":" + std::to_string(i.line) + ": " + i.message);
  };
  {
    auto s = open_input(paths.publications);
    auto parsed = parse_publications(s, &in.report, paths.publications.filename().string());
    in.publications = std::move(parsed.records);
    note(paths.publications, parsed.issues);
  }
  {
    auto s = open_input(paths.citations);
    auto parsed = parse_citations(s, &in.report, paths.citations.filename().string());
    in.citations = std::move(parsed.records);
    note(paths.citations, parsed.issues);
  }
  {
    auto j = open_input(paths.journals);
    auto a = open_input(paths.sc_areas);
    std::vector<ParseIssue> issues;
    in.categories = parse_journal_categories(j, a, &in.report, &issues);
    for (const auto& i : issues) in.issues.push_back("categories:" + std::to_string(i.line) + ": " + i.message);
  }
  return in;
}

inline AnalysisConfig load_config(const std::filesystem::path& path) {
  auto s = open_input(path);
  return parse_config(s);
}

// Every table of the report, computed from one corpus.
struct Results {
  Corpus corpus;
  Attribution attribution;
  std::vector<GainRecord> gains;
  FlowMatrix matrix;
  std::vector<CountrySummary> summaries;
  std::vector<BkfRow> bkf;
  ScGainTable field_gains;           // foreign gains only
  ScGainTable specialization_gains;  // per the configured specialization options
  SpecializationTable kosi;
  SpecializationTable kisi;
  ValidationReport diagnostics;
};

// Results hold spans into the corpus, so they live behind a stable pointer.
inline std::unique_ptr<Results> compute_all(LoadedInputs inputs, AnalysisConfig config,
                                            unsigned jobs = 1) {
  auto r = std::make_unique<Results>();
  r->corpus = build_corpus(std::move(inputs.publications), inputs.citations,
                           std::move(inputs.categories), std::move(config), inputs.report.max_samples);
  const auto& cfg = r->corpus.config();
  r->attribution = attribute_corpus(r->corpus);
  r->gains = collect_gains(r->corpus, r->attribution, jobs);
  r->matrix = compute_flow_matrix(r->corpus, r->attribution, jobs);
  if (r->matrix.total() != r->gains.size())
    throw DataError("internal error: flow matrix and gain records disagree");
  r->summaries = country_summary(r->corpus, r->attribution, r->matrix);
  r->bkf = bkf_overall(r->matrix, cfg.countries, r->summaries);
  r->field_gains = sc_gain_table(r->gains, r->corpus.categories(), cfg.countries, false);
  r->specialization_gains = cfg.specialization.include_domestic
                                ? sc_gain_table(r->gains, r->corpus.categories(), cfg.countries, true)
                                : r->field_gains;
  r->kosi = kosi_table(r->specialization_gains, cfg.specialization.exclude_own_sc);
  r->kisi = kisi_table(r->specialization_gains, cfg.specialization.exclude_own_sc);

  r->diagnostics = inputs.report;
  r->diagnostics.merge(r->corpus.diagnostics());
  r->diagnostics.merge(r->attribution.diagnostics());
  return r;
}

// One decimal; undefined stays explicit; never prints "-0.0".
inline std::string format_index(const std::optional<double>& v) {
  if (!v) return "undefined";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", *v);
  std::string s = buf;
  if (s == "-0.0") s = "0.0";
  return s;
}

inline std::vector<std::vector<FieldBkfRow>> field_rows_by_country(const Results& r) {
  std::vector<std::vector<FieldBkfRow>> out;
  for (const auto& c : r.corpus.config().countries)
    out.push_back(bkf_by_field(r.field_gains, r.corpus.categories(), c));
  return out;
}

namespace detail {

inline std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write " + path.string());
  return os;
}

inline nlohmann::ordered_json index_json(const std::optional<double>& v) {
  if (!v) return nullptr;
  return std::stod(format_index(v));
}

}  // namespace detail

inline void write_summary_csv(std::ostream& os, const std::vector<CountrySummary>& rows) {
  os << "country,publications,made_in,made_in_share_pct,cited_made_in,cited_share_pct,"
        "total_benefits,avg_benefits_per_cited,total_gains,domestic_gains,domestic_share_pct,"
        "avg_gains_per_benefit\n";
  for (const auto& s : rows)
    os << s.country.str() << ',' << s.publications << ',' << s.made_in << ','
       << s.made_in_share().percent() << ',' << s.cited_made_in << ',' << s.cited_share().percent()
       << ',' << s.total_benefits << ',' << s.avg_benefits_per_cited().format(2) << ','
       << s.total_gains << ',' << s.domestic_gains << ',' << s.domestic_share().percent() << ','
       << s.avg_gains_per_benefit().format(2) << '\n';
}

inline void write_bkf_csv(std::ostream& os, const std::vector<BkfRow>& rows) {
  os << "country,foreign_gains_generated,generated_share_pct,cited_foreign_publications,"
        "foreign_gains_by_foreign,earned_gains,earned_share_pct,balance\n";
  for (const auto& r : rows)
    os << r.country.str() << ',' << r.foreign_gains_generated << ',' << r.generated_share().percent()
       << ',' << (r.cited_foreign_publications ? std::to_string(*r.cited_foreign_publications) : "")
       << ',' << r.foreign_gains_by_foreign << ',' << r.earned_gains << ','
       << r.earned_share().percent() << ',' << signed_str(r.balance) << '\n';
}

inline void write_flow_matrix_csv(std::ostream& os, const FlowMatrix& m,
                                  std::span<const CountryCode> countries) {
  os << "generator,earner,gains,share_of_generator_pct\n";
  for (std::size_t g = 0; g < m.size(); ++g)
    for (std::size_t e = 0; e < m.size(); ++e)
      os << countries[g].str() << ',' << countries[e].str() << ',' << m.at(g, e) << ','
         << Ratio{m.at(g, e), m.row_total(g)}.percent() << '\n';
}

inline void write_field_csv(std::ostream& os, const char* key_column,
                            std::span<const CountryCode> countries,
                            const std::vector<std::vector<FieldBkfRow>>& per_country, bool with_area) {
  os << "country," << key_column << (with_area ? ",macro_area" : "")
     << ",foreign_gains_generated,earned_gains,balance\n";
  for (std::size_t k = 0; k < countries.size(); ++k)
    for (const auto& r : per_country[k]) {
      os << countries[k].str() << ',' << csv::escape(r.sc_code);
      if (with_area) os << ',' << csv::escape(r.macro_area);
      os << ',' << r.generated << ',' << r.earned << ',' << signed_str(r.balance) << '\n';
    }
}

inline void write_specialization_csv(std::ostream& os, const SpecializationTable& t) {
  os << "country,sc_code,value\n";
  for (std::size_t k = 0; k < t.countries.size(); ++k)
    for (std::size_t j = 0; j < t.scs.size(); ++j)
      os << t.countries[k].str() << ',' << csv::escape(t.scs[j]) << ','
         << format_index(t.values[k][j]) << '\n';
}

inline void write_bilateral_csv(std::ostream& os, const std::vector<BilateralRow>& rows,
                                const JournalCategoryMap& categories) {
  os << "sc_code,macro_area,gains_k_to_l,gains_l_to_k,balance\n";
  for (const auto& r : rows)
    os << csv::escape(r.sc_code) << ','
       << csv::escape(r.sc_code == kAllFields ? std::string(kAllFields) : categories.area_of(r.sc_code))
       << ',' << r.k_to_l << ',' << r.l_to_k << ',' << signed_str(r.balance) << '\n';
}

inline nlohmann::ordered_json results_json(const Results& r,
                                           const std::vector<std::vector<FieldBkfRow>>& fields,
                                           const std::vector<std::vector<FieldBkfRow>>& areas) {
  using nlohmann::ordered_json;
  const auto& cfg = r.corpus.config();
  ordered_json j;
  {
    ordered_json c;
    c["countries"] = ordered_json::array();
    for (const auto& k : cfg.countries) c["countries"].push_back(k.str());
    c["period"] = {cfg.year_min, cfg.year_max};
    c["cutoff"] = to_string(cfg.citation_cutoff);
    c["threshold"] = to_string(cfg.made_in_threshold);
    c["doc_types"] = ordered_json::array();
    for (auto t : cfg.doc_types) c["doc_types"].push_back(std::string(to_string(t)));
    c["specialization_include_domestic"] = cfg.specialization.include_domestic;
    c["specialization_exclude_own_sc"] = cfg.specialization.exclude_own_sc;
    j["config"] = c;
  }
  j["summary"] = ordered_json::array();
  for (const auto& s : r.summaries)
    j["summary"].push_back({{"country", s.country.str()},
                            {"publications", s.publications},
                            {"made_in", s.made_in},
                            {"cited_made_in", s.cited_made_in},
                            {"total_benefits", s.total_benefits},
                            {"avg_benefits_per_cited", s.avg_benefits_per_cited().format(2)},
                            {"total_gains", s.total_gains},
                            {"domestic_gains", s.domestic_gains},
                            {"avg_gains_per_benefit", s.avg_gains_per_benefit().format(2)}});
  j["bkf"] = ordered_json::array();
  for (const auto& b : r.bkf)
    j["bkf"].push_back({{"country", b.country.str()},
                        {"foreign_gains_generated", b.foreign_gains_generated},
                        {"earned_gains", b.earned_gains},
                        {"balance", b.balance}});
  j["flow_matrix"] = ordered_json::array();
  for (std::size_t g = 0; g < r.matrix.size(); ++g) {
    ordered_json row = ordered_json::array();
    for (std::size_t e = 0; e < r.matrix.size(); ++e) row.push_back(r.matrix.at(g, e));
    j["flow_matrix"].push_back(row);
  }
  auto field_json = [&](const std::vector<std::vector<FieldBkfRow>>& per_country) {
    ordered_json out = ordered_json::object();
    for (std::size_t k = 0; k < cfg.countries.size(); ++k) {
      ordered_json rows = ordered_json::array();
      for (const auto& f : per_country[k])
        rows.push_back({{"key", f.sc_code},
                        {"macro_area", f.macro_area},
                        {"generated", f.generated},
                        {"earned", f.earned},
                        {"balance", f.balance}});
      out[cfg.countries[k].str()] = rows;
    }
    return out;
  };
  j["bkf_by_sc"] = field_json(fields);
  j["bkf_by_area"] = field_json(areas);
  auto spec_json = [&](const SpecializationTable& t) {
    ordered_json out = ordered_json::object();
    for (std::size_t k = 0; k < t.countries.size(); ++k) {
      ordered_json row = ordered_json::object();
      for (std::size_t jj = 0; jj < t.scs.size(); ++jj) row[t.scs[jj]] = detail::index_json(t.values[k][jj]);
      out[t.countries[k].str()] = row;
    }
    return out;
  };
  j["kosi"] = spec_json(r.kosi);
  j["kisi"] = spec_json(r.kisi);
  j["diagnostics"] = r.diagnostics.to_json();
  return j;
}

// Writes every report table into `out_dir`; returns the file names in write order.
inline std::vector<std::string> write_outputs(const Results& r, const std::filesystem::path& out_dir,
                                              bool dump_gains = false) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (!std::filesystem::is_directory(out_dir)) throw IoError("cannot create " + out_dir.string());
  const auto& countries = r.corpus.config().countries;
  const auto fields = field_rows_by_country(r);
  std::vector<std::vector<FieldBkfRow>> areas;
  for (const auto& f : fields) areas.push_back(macro_area_rollup(f, r.corpus.categories()));

  std::vector<std::string> written;
  auto emit = [&](const std::string& name, auto&& body) {
    auto os = detail::open_output(out_dir / name);
    body(os);
    if (!os) throw IoError("write failed: " + (out_dir / name).string());
    written.push_back(name);
  };
  emit("summary.csv", [&](std::ostream& os) { write_summary_csv(os, r.summaries); });
  emit("bkf.csv", [&](std::ostream& os) { write_bkf_csv(os, r.bkf); });
  emit("flow_matrix.csv", [&](std::ostream& os) { write_flow_matrix_csv(os, r.matrix, countries); });
  emit("bkf_by_sc.csv", [&](std::ostream& os) { write_field_csv(os, "sc_code", countries, fields, true); });
  emit("bkf_by_area.csv",
       [&](std::ostream& os) { write_field_csv(os, "macro_area", countries, areas, false); });
  emit("kosi.csv", [&](std::ostream& os) { write_specialization_csv(os, r.kosi); });
  emit("kisi.csv", [&](std::ostream& os) { write_specialization_csv(os, r.kisi); });
  emit("bundle.json", [&](std::ostream& os) { os << results_json(r, fields, areas).dump(2) << '\n'; });
  if (dump_gains)
    emit("gains.csv", [&](std::ostream& os) { write_gains_csv(os, r.gains, r.corpus); });
  return written;
}

// bilateral_<k>_<l>.csv with per-SC rows and the overall row.
inline std::string write_bilateral(const Results& r, const CountryCode& k, const CountryCode& l,
                                   const std::filesystem::path& out_dir) {
  auto rows = bilateral_bkf(r.gains, r.corpus.config().countries, k, l, r.corpus.categories(),
                            BilateralLevel::per_sc);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  const std::string name = "bilateral_" + k.str() + "_" + l.str() + ".csv";
  auto os = detail::open_output(out_dir / name);
  write_bilateral_csv(os, rows, r.corpus.categories());
  if (!os) throw IoError("write failed: " + (out_dir / name).string());
  return name;
}

}  // namespace bkf

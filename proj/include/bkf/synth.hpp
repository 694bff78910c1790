#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "bkf/aggregate.hpp"
#include "bkf/corpus.hpp"
#include "bkf/error.hpp"
#include "bkf/flow.hpp"
#include "bkf/ingest.hpp"
#include "bkf/types.hpp"

namespace bkf::synth {

// ---------------------------------------------------------------------------
// Random numbers
//
// std::mt19937_64 seeded with the raw 64-bit seed. Only the engine's output
// sequence is used (it is fully specified by the standard); the mappings to
// integers and doubles below are written out so generated corpora do not
// depend on the standard library's distribution implementations.
// ---------------------------------------------------------------------------

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, bound), by rejection.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw DataError("empty range");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return x % bound;
  }

  // Uniform in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool chance(double p) { return unit() < p; }

  // Index drawn proportionally to non-negative weights.
  std::size_t weighted(const std::vector<double>& cumulative) {
    const double x = unit() * cumulative.back();
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), x);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()),
                                 cumulative.size() - 1);
  }

 private:
  std::mt19937_64 engine_;
};

struct CountryProfile {
  CountryCode code;
  std::uint64_t publications = 0;
};

struct GeneratorParams {
  std::uint64_t seed = 42;
  std::vector<CountryProfile> countries;  // the analysis set
  std::vector<CountryProfile> outside;    // publish and cite, but never earn or generate

  double home_bias = 0.5;           // share of links drawn inside one country's single-country pool
  double collaboration_rate = 0.2;  // multi-country publications with a clear made-in country (or none)
  double tie_rate = 0.05;           // two institutions in two countries: an exact 50/50 split
  double citation_density = 3.0;    // citation links per publication
  double out_of_scope_rate = 0.05;  // publications outside the period or document types
  double multi_sc_rate = 0.2;       // journals carrying a second SC
  double unassigned_journal_rate = 0.05;
  double sc_skew = 2.0;             // per-country SC weights are 1 + sc_skew * U(0,1)
  double dangling_rate = 0.0;       // links pointing at publications that do not exist

  std::uint64_t journals = 40;
  std::uint64_t subject_categories = 20;
  std::uint64_t macro_areas = 5;
  std::uint64_t institutions_per_country = 25;

  int year_min = 2004;
  int year_max = 2008;
  Date cutoff{2017, 6, 10};

  std::uint64_t total_publications() const {
    std::uint64_t n = 0;
    for (const auto& c : countries) n += c.publications;
    for (const auto& c : outside) n += c.publications;
    return n;
  }

  void validate() const {
    for (double p : {home_bias, collaboration_rate, tie_rate, out_of_scope_rate, multi_sc_rate,
                     unassigned_journal_rate, dangling_rate})
      if (!(p >= 0.0 && p <= 1.0)) throw DataError("generator probabilities must lie in [0, 1]");
    if (tie_rate + collaboration_rate > 1.0)
      throw DataError("tie_rate + collaboration_rate must not exceed 1");
    if (!(citation_density >= 0.0) || !(sc_skew >= 0.0))
      throw DataError("citation_density and sc_skew must be non-negative");
    if (countries.size() < 2) throw DataError("at least 2 analysis countries are required");
    if (citation_density > 0 && total_publications() == 0)
      throw DataError("citations requested but no publications");
    if (total_publications() > 0 && journals == 0) throw DataError("publications need journals");
    if (journals > 0 && subject_categories == 0) throw DataError("journals need subject categories");
    if (subject_categories > 0 && (macro_areas == 0 || macro_areas > subject_categories))
      throw DataError("macro_areas must lie in [1, subject_categories]");
    if (institutions_per_country < 3) throw DataError("institutions_per_country must be at least 3");
    if (year_min > year_max || !cutoff.valid()) throw DataError("invalid period or cutoff");
  }
};

struct GeneratedCorpus {
  std::vector<PublicationRecord> publications;
  std::vector<CitationLink> citations;
  JournalCategoryMap categories;
  AnalysisConfig config;
};

namespace detail {

inline std::string numbered(const std::string& prefix, std::uint64_t i, int width) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%0*llu", width, static_cast<unsigned long long>(i));
  return prefix + buf;
}

inline std::vector<double> cumulate(const std::vector<double>& w) {
  std::vector<double> c(w.size());
  double s = 0;
  for (std::size_t i = 0; i < w.size(); ++i) c[i] = (s += w[i]);
  return c;
}

}  // namespace detail

inline GeneratedCorpus generate_corpus(const GeneratorParams& params) {
  params.validate();
  Rng rng(params.seed);
  GeneratedCorpus out;

  // Subject categories and macro-areas.
  std::vector<std::string> scs;
  for (std::uint64_t j = 0; j < params.subject_categories; ++j) {
    scs.push_back(detail::numbered("SC", j + 1, 3));
    out.categories.set_area(scs.back(), detail::numbered("AREA", j % params.macro_areas + 1, 2));
  }

  // Journals.
  std::vector<std::string> journals;
  std::vector<std::vector<std::size_t>> journals_by_sc(scs.size());
  std::vector<std::size_t> unassigned_journals;
  for (std::uint64_t i = 0; i < params.journals; ++i) {
    journals.push_back(detail::numbered("J", i + 1, 4));
    std::vector<std::string> assigned;
    if (rng.chance(params.unassigned_journal_rate)) {
      unassigned_journals.push_back(i);
    } else {
      auto first = rng.below(scs.size());
      assigned.push_back(scs[first]);
      journals_by_sc[first].push_back(i);
      if (scs.size() > 1 && rng.chance(params.multi_sc_rate)) {
        auto second = (first + 1 + rng.below(scs.size() - 1)) % scs.size();
        assigned.push_back(scs[second]);
        journals_by_sc[second].push_back(i);
      }
    }
    out.categories.assign(journals.back(), assigned);
  }

  std::vector<CountryProfile> profiles = params.countries;
  profiles.insert(profiles.end(), params.outside.begin(), params.outside.end());
  const std::size_t n_analysis = params.countries.size();

  // pools[c]: publications whose institutions all lie in country c.
  std::vector<std::vector<std::size_t>> pools(profiles.size());

  for (std::size_t c = 0; c < profiles.size(); ++c) {
    const auto& home = profiles[c].code;
    std::vector<double> weights(scs.size());
    for (auto& w : weights) w = 1.0 + params.sc_skew * rng.unit();
    const auto cumulative = detail::cumulate(weights);

    auto institution = [&](const CountryCode& country) {
      return country.str() + "-I" + std::to_string(rng.below(params.institutions_per_country));
    };
    auto other_analysis = [&](std::size_t not_this) {
      std::size_t pick;
      do pick = rng.below(n_analysis);
      while (pick == not_this);
      return profiles[pick].code;
    };

    for (std::uint64_t n = 0; n < profiles[c].publications; ++n) {
      PublicationRecord p;
      p.id = "P-" + home.str() + "-" + detail::numbered("", n + 1, 6);

      std::vector<CountryCode> slots;
      const double kind = rng.unit();
      bool pure = false;
      if (kind < params.tie_rate) {
        slots = {home, other_analysis(c)};
      } else if (kind < params.tie_rate + params.collaboration_rate) {
        if (rng.chance(0.75)) {
          slots = {home, home, other_analysis(c)};
        } else {
          auto f1 = other_analysis(c);
          CountryCode f2;
          do f2 = other_analysis(c);
          while (f2 == f1 && n_analysis > 2);
          slots = {home, f1, f2};
        }
      } else {
        slots.assign(1 + rng.below(3), home);
        pure = true;
      }
      for (const auto& country : slots) {
        std::string inst;
        bool fresh;
        do {
          inst = institution(country);
          fresh = std::none_of(p.affiliations.begin(), p.affiliations.end(),
                               [&](const Affiliation& a) { return a.institution_id == inst; });
        } while (!fresh);
        p.affiliations.push_back({inst, country});
      }

      if (rng.chance(params.out_of_scope_rate)) {
        if (rng.chance(0.5)) {
          p.year = params.year_max + 1 +
                   static_cast<int>(rng.below(static_cast<std::uint64_t>(
                       std::max(1, params.cutoff.year + 1 - params.year_max))));
          p.doc_type = DocType::article;
        } else {
          p.year = params.year_min +
                   static_cast<int>(rng.below(static_cast<std::uint64_t>(params.year_max - params.year_min + 1)));
          p.doc_type = DocType::other;
        }
      } else {
        p.year = params.year_min +
                 static_cast<int>(rng.below(static_cast<std::uint64_t>(params.year_max - params.year_min + 1)));
        const double t = rng.unit();
        p.doc_type = t < 0.80 ? DocType::article
                     : t < 0.88 ? DocType::review
                     : t < 0.94 ? DocType::letter
                                : DocType::proceedings;
      }

      if (!unassigned_journals.empty() && rng.chance(params.unassigned_journal_rate)) {
        p.journal_id = journals[unassigned_journals[rng.below(unassigned_journals.size())]];
      } else {
        const auto& candidates = journals_by_sc[rng.weighted(cumulative)];
        p.journal_id = candidates.empty() ? journals[rng.below(journals.size())]
                                          : journals[candidates[rng.below(candidates.size())]];
      }

      if (pure) pools[c].push_back(out.publications.size());
      out.publications.push_back(std::move(p));
    }
  }

  // Citation links.
  const std::size_t total = out.publications.size();
  std::vector<std::size_t> pooled;
  std::vector<std::size_t> pool_of(total, SIZE_MAX);
  for (std::size_t c = 0; c < pools.size(); ++c)
    for (auto i : pools[c]) {
      pooled.push_back(i);
      pool_of[i] = c;
    }
  const auto links = static_cast<std::uint64_t>(params.citation_density * static_cast<double>(total) + 0.5);
  std::uint64_t missing = 0;
  for (std::uint64_t l = 0; l < links && total >= 2; ++l) {
    std::size_t citing, cited;
    if (rng.chance(params.home_bias) && !pooled.empty()) {
      citing = pooled[rng.below(pooled.size())];
      const auto& pool = pools[pool_of[citing]];
      if (pool.size() < 2) continue;
      do cited = pool[rng.below(pool.size())];
      while (cited == citing);
    } else {
      citing = rng.below(total);
      do cited = rng.below(total);
      while (cited == citing);
    }
    std::string cited_id = out.publications[cited].id;
    if (rng.chance(params.dangling_rate)) cited_id = detail::numbered("MISSING-", ++missing, 6);
    out.citations.push_back({out.publications[citing].id, std::move(cited_id)});
  }

  for (const auto& c : params.countries) out.config.countries.push_back(c.code);
  out.config.year_min = params.year_min;
  out.config.year_max = params.year_max;
  out.config.citation_cutoff = params.cutoff;
  return out;
}

// Generator parameters from the flat key-value format (see parse_key_values).
// "countries" and "publications" are parallel comma lists.
inline GeneratorParams params_from_keys(const std::map<std::string, std::string>& kv) {
  GeneratorParams p;
  auto get = [&](const char* key) -> const std::string* {
    auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };
  auto as_double = [&](const char* key, double& dst) {
    if (auto v = get(key)) try {
        std::size_t used = 0;
        dst = std::stod(*v, &used);
        if (used != v->size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        throw DataError(std::string("config key '") + key + "': expected a number");
      }
  };
  auto as_uint = [&](const char* key, std::uint64_t& dst) {
    if (auto v = get(key)) try {
        std::size_t used = 0;
        dst = std::stoull(*v, &used);
        if (used != v->size() || v->front() == '-') throw std::invalid_argument(key);
      } catch (const std::exception&) {
        throw DataError(std::string("config key '") + key + "': expected a non-negative integer");
      }
  };
  auto profiles = [&](const char* codes_key, const char* counts_key) {
    std::vector<CountryProfile> out;
    auto codes = get(codes_key) ? csv::split_list(*get(codes_key), ',') : std::vector<std::string>{};
    auto counts = get(counts_key) ? csv::split_list(*get(counts_key), ',') : std::vector<std::string>{};
    if (counts.size() == 1 && codes.size() > 1) counts.assign(codes.size(), counts[0]);
    if (codes.size() != counts.size())
      throw DataError(std::string("'") + codes_key + "' and '" + counts_key + "' differ in length");
    for (std::size_t i = 0; i < codes.size(); ++i) {
      std::uint64_t n = 0;
      try {
        n = std::stoull(counts[i]);
      } catch (const std::exception&) {
        throw DataError(std::string("config key '") + counts_key + "': expected integers");
      }
      out.push_back({CountryCode(codes[i]), n});
    }
    return out;
  };

  p.countries = profiles("countries", "publications");
  p.outside = profiles("outside_countries", "outside_publications");
  as_uint("seed", p.seed);
  as_double("home_bias", p.home_bias);
  as_double("collaboration_rate", p.collaboration_rate);
  as_double("tie_rate", p.tie_rate);
  as_double("citation_density", p.citation_density);
  as_double("out_of_scope_rate", p.out_of_scope_rate);
  as_double("multi_sc_rate", p.multi_sc_rate);
  as_double("unassigned_journal_rate", p.unassigned_journal_rate);
  as_double("sc_skew", p.sc_skew);
  as_double("dangling_rate", p.dangling_rate);
  as_uint("journals", p.journals);
  as_uint("subject_categories", p.subject_categories);
  as_uint("macro_areas", p.macro_areas);
  as_uint("institutions_per_country", p.institutions_per_country);
  if (get("period") || get("cutoff")) {
    auto tmp = kv;
    tmp["countries"] = get("countries") ? *get("countries") : "";
    if (!tmp.count("period")) tmp["period"] = std::to_string(p.year_min) + ".." + std::to_string(p.year_max);
    if (!tmp.count("cutoff")) tmp["cutoff"] = to_string(p.cutoff);
    auto c = config_from_keys(tmp);
    p.year_min = c.year_min;
    p.year_max = c.year_max;
    p.cutoff = c.citation_cutoff;
  }
  p.validate();
  return p;
}

inline void write_corpus(const GeneratedCorpus& g, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  auto open = [&](const char* name) {
    std::ofstream os(dir / name, std::ios::binary);
    if (!os) throw IoError("cannot write " + (dir / name).string());
    return os;
  };
  {
    auto os = open("publications.jsonl");
    write_publications_jsonl(os, g.publications);
  }
  {
    auto os = open("citations.csv");
    write_citations_csv(os, g.citations);
  }
  {
    auto os = open("journals.csv");
    write_journals_csv(os, g.categories);
  }
  {
    auto os = open("sc_areas.csv");
    write_sc_areas_csv(os, g.categories);
  }
  {
    auto os = open("config.txt");
    write_config(os, g.config);
  }
}

// ---------------------------------------------------------------------------
// Brute-force oracle
//
// Re-derives the counting rules by plain enumeration over the raw publication
// records and the deduplicated edge list. It uses none of the corpus indexes,
// the attribution results or the flow-engine accumulation.
// ---------------------------------------------------------------------------

namespace oracle {

inline constexpr std::size_t kDefaultMaxPublications = 10000;

namespace detail {

inline bool made_in_naive(const PublicationRecord& p, const CountryCode& c, Rational threshold) {
  std::int64_t distinct = 0, in_country = 0;
  for (std::size_t i = 0; i < p.affiliations.size(); ++i) {
    bool seen = false;
    for (std::size_t j = 0; j < i; ++j)
      if (p.affiliations[j].institution_id == p.affiliations[i].institution_id) seen = true;
    if (seen) continue;
    ++distinct;
    if (p.affiliations[i].country == c) ++in_country;
  }
  // in_country / distinct >= num / den
  return distinct > 0 && in_country * threshold.den >= threshold.num * distinct;
}

inline bool lists_country(const PublicationRecord& p, const CountryCode& c) {
  for (const auto& a : p.affiliations)
    if (a.country == c) return true;
  return false;
}

// Calls fn(cited, citing, generator, earner) for every (citation, generator,
// earner) triple that yields a gain.
template <typename Fn>
void enumerate_gains(const Corpus& corpus, std::size_t max_pubs, Fn&& fn) {
  if (corpus.size() > max_pubs)
    throw DataError("corpus exceeds the oracle size bound (" + std::to_string(max_pubs) + ")");
  const auto& cfg = corpus.config();
  const auto& pubs = corpus.publications();
  for (const auto& edge : corpus.edges()) {
    const auto& cited = pubs[edge.cited];
    const auto& citing = pubs[edge.citing];
    if (cited.year < cfg.year_min || cited.year > cfg.year_max) continue;
    if (!cfg.doc_types.count(cited.doc_type)) continue;
    if (citing.year > cfg.citation_cutoff.year) continue;
    for (std::size_t g = 0; g < cfg.countries.size(); ++g) {
      if (!made_in_naive(cited, cfg.countries[g], cfg.made_in_threshold)) continue;
      for (std::size_t e = 0; e < cfg.countries.size(); ++e)
        if (lists_country(citing, cfg.countries[e])) fn(cited, citing, g, e);
    }
  }
}

inline std::vector<std::string> sc_buckets(const Corpus& corpus, const PublicationRecord& p) {
  auto scs = corpus.categories().lookup(p.journal_id);
  if (scs.empty()) return {std::string(kUnassigned)};
  return scs;
}

}  // namespace detail

inline FlowMatrix oracle_flow_matrix(const Corpus& corpus,
                                     std::size_t max_pubs = kDefaultMaxPublications) {
  FlowMatrix m(corpus.config().countries.size());
  detail::enumerate_gains(corpus, max_pubs,
                          [&](const auto&, const auto&, std::size_t g, std::size_t e) { ++m.at(g, e); });
  return m;
}

inline std::vector<FieldBkfRow> oracle_field_table(const Corpus& corpus, const CountryCode& country,
                                                   std::size_t max_pubs = kDefaultMaxPublications) {
  const auto& countries = corpus.config().countries;
  std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> cells;
  for (const auto& sc : corpus.categories().all_scs()) cells[sc];
  detail::enumerate_gains(corpus, max_pubs,
                          [&](const PublicationRecord& cited, const auto&, std::size_t g, std::size_t e) {
                            if (g == e) return;
                            for (const auto& sc : detail::sc_buckets(corpus, cited)) {
                              if (countries[g] == country) cells[sc].first++;
                              if (countries[e] == country) cells[sc].second++;
                            }
                          });
  std::vector<FieldBkfRow> rows;
  for (const auto& [sc, cell] : cells) {
    if (sc == kUnassigned && cell.first == 0 && cell.second == 0) continue;
    rows.push_back({sc, corpus.categories().area_of(sc), cell.first, cell.second,
                    static_cast<std::int64_t>(cell.first) - static_cast<std::int64_t>(cell.second)});
  }
  return rows;
}

// Per-SC rows followed by the "ALL" row, from k's perspective.
inline std::vector<BilateralRow> oracle_bilateral(const Corpus& corpus, const CountryCode& k,
                                                  const CountryCode& l,
                                                  std::size_t max_pubs = kDefaultMaxPublications) {
  const auto& countries = corpus.config().countries;
  std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> cells;
  for (const auto& sc : corpus.categories().all_scs()) cells[sc];
  std::uint64_t kl = 0, lk = 0;
  detail::enumerate_gains(corpus, max_pubs,
                          [&](const PublicationRecord& cited, const auto&, std::size_t g, std::size_t e) {
                            bool forward = countries[g] == k && countries[e] == l;
                            bool backward = countries[g] == l && countries[e] == k;
                            if (!forward && !backward) return;
                            (forward ? kl : lk)++;
                            for (const auto& sc : detail::sc_buckets(corpus, cited))
                              (forward ? cells[sc].first : cells[sc].second)++;
                          });
  std::vector<BilateralRow> rows;
  for (const auto& [sc, cell] : cells)
    rows.push_back({sc, cell.first, cell.second,
                    static_cast<std::int64_t>(cell.first) - static_cast<std::int64_t>(cell.second)});
  rows.push_back({std::string(kAllFields), kl, lk,
                  static_cast<std::int64_t>(kl) - static_cast<std::int64_t>(lk)});
  return rows;
}

}  // namespace oracle
}  // namespace bkf::synth

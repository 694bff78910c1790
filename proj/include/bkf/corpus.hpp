#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bkf/diagnostics.hpp"
#include "bkf/error.hpp"
#include "bkf/types.hpp"

namespace bkf {

using PubIndex = std::uint32_t;
using CountryIndex = std::uint16_t;

struct Edge {
  PubIndex citing;
  PubIndex cited;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Indexed, immutable view over a validated bibliographic corpus.
//
// Publications are stored sorted by id, so every index below is independent of
// the order of the input lists. Citation edges are deduplicated and every
// endpoint resolves to a stored publication.
class Corpus {
 public:
  const std::vector<PublicationRecord>& publications() const { return pubs_; }
  const PublicationRecord& publication(PubIndex i) const { return pubs_[i]; }
  std::size_t size() const { return pubs_.size(); }

  std::optional<PubIndex> find(const std::string& id) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end()) return std::nullopt;
    return it->second;
  }

  // Deduplicated edges, sorted by (cited, citing).
  const std::vector<Edge>& edges() const { return edges_; }

  // Sorted indices of every publication citing `cited`.
  std::span<const PubIndex> citers_of(PubIndex cited) const {
    return {citers_.data() + citer_offsets_[cited], citers_.data() + citer_offsets_[cited + 1]};
  }

  // Sorted distinct analysis-country indices present in the affiliation list.
  std::span<const CountryIndex> analysis_countries_of(PubIndex i) const {
    return {presence_.data() + presence_offsets_[i], presence_.data() + presence_offsets_[i + 1]};
  }

  std::span<const std::string> sc_codes_of(PubIndex i) const {
    const auto& v = categories_.lookup(pubs_[i].journal_id);
    return {v.data(), v.size()};
  }

  // In the analysis period and of an analysed document type: may be "made in".
  bool is_production_candidate(PubIndex i) const { return candidate_[i] != 0; }

  // Citing publications count only up to the cutoff (year granularity, inclusive).
  bool within_cutoff(PubIndex i) const { return pubs_[i].year <= config_.citation_cutoff.year; }

  const AnalysisConfig& config() const { return config_; }
  const JournalCategoryMap& categories() const { return categories_; }
  const ValidationReport& diagnostics() const { return diagnostics_; }

 private:
  friend Corpus build_corpus(std::vector<PublicationRecord>, const std::vector<CitationLink>&,
                             JournalCategoryMap, AnalysisConfig, std::size_t);

  std::vector<PublicationRecord> pubs_;
  std::unordered_map<std::string, PubIndex> by_id_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> citer_offsets_;
  std::vector<PubIndex> citers_;
  std::vector<std::size_t> presence_offsets_;
  std::vector<CountryIndex> presence_;
  std::vector<std::uint8_t> candidate_;
  AnalysisConfig config_;
  JournalCategoryMap categories_;
  ValidationReport diagnostics_;
};

// Duplicate publication ids and malformed records are hard errors. Dangling
// links, self-citations and duplicate links are dropped and counted.
inline Corpus build_corpus(std::vector<PublicationRecord> publications,
                           const std::vector<CitationLink>& citations,
                           JournalCategoryMap categories, AnalysisConfig config,
                           std::size_t max_samples = 20) {
  config.validate();
  if (publications.size() >= UINT32_MAX) throw DataError("too many publications");

  Corpus c;
  c.diagnostics_.max_samples = max_samples;
  auto& diag = c.diagnostics_;

  for (const auto& p : publications) {
    if (auto why = check_record(p); !why.empty())
      throw DataError("malformed publication '" + p.id + "': " + why);
  }
  std::sort(publications.begin(), publications.end(),
            [](const PublicationRecord& a, const PublicationRecord& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < publications.size(); ++i)
    if (publications[i].id == publications[i - 1].id)
      throw DataError("duplicate publication id '" + publications[i].id + "'");

  c.pubs_ = std::move(publications);
  const auto n = c.pubs_.size();
  c.by_id_.reserve(n);
  for (PubIndex i = 0; i < n; ++i) c.by_id_.emplace(c.pubs_[i].id, i);

  std::vector<std::string> dangling, self;
  c.edges_.reserve(citations.size());
  for (const auto& link : citations) {
    if (link.citing_id == link.cited_id) {
      self.push_back(link.citing_id);
      continue;
    }
    auto citing = c.find(link.citing_id);
    auto cited = c.find(link.cited_id);
    if (!citing || !cited) {
      dangling.push_back(link.citing_id + "->" + link.cited_id);
      continue;
    }
    c.edges_.push_back({*citing, *cited});
  }
  std::sort(dangling.begin(), dangling.end());
  for (const auto& d : dangling) diag.dangling_links.note(d, max_samples);
  std::sort(self.begin(), self.end());
  for (const auto& s : self) diag.self_citations.note(s, max_samples);

  std::sort(c.edges_.begin(), c.edges_.end(), [](const Edge& a, const Edge& b) {
    return a.cited != b.cited ? a.cited < b.cited : a.citing < b.citing;
  });
  {
    std::size_t out = 0;
    for (std::size_t i = 0; i < c.edges_.size(); ++i) {
      if (out > 0 && c.edges_[out - 1] == c.edges_[i]) {
        const auto& e = c.edges_[i];
        diag.duplicate_links.note(c.pubs_[e.citing].id + "->" + c.pubs_[e.cited].id, max_samples);
        continue;
      }
      c.edges_[out++] = c.edges_[i];
    }
    c.edges_.resize(out);
  }

  c.citer_offsets_.assign(n + 1, 0);
  for (const auto& e : c.edges_) ++c.citer_offsets_[e.cited + 1];
  for (std::size_t i = 0; i < n; ++i) c.citer_offsets_[i + 1] += c.citer_offsets_[i];
  c.citers_.reserve(c.edges_.size());
  for (const auto& e : c.edges_) c.citers_.push_back(e.citing);

  std::unordered_map<std::string, CountryIndex> country_idx;
  for (std::size_t k = 0; k < config.countries.size(); ++k)
    country_idx.emplace(config.countries[k].str(), static_cast<CountryIndex>(k));
  c.presence_offsets_.reserve(n + 1);
  c.presence_offsets_.push_back(0);
  c.candidate_.resize(n);
  std::vector<std::string> unassigned;
  for (PubIndex i = 0; i < n; ++i) {
    const auto& p = c.pubs_[i];
    std::vector<CountryIndex> present;
    for (const auto& a : p.affiliations)
      if (auto it = country_idx.find(a.country.str()); it != country_idx.end())
        present.push_back(it->second);
    std::sort(present.begin(), present.end());
    present.erase(std::unique(present.begin(), present.end()), present.end());
    c.presence_.insert(c.presence_.end(), present.begin(), present.end());
    c.presence_offsets_.push_back(c.presence_.size());

    bool candidate = p.year >= config.year_min && p.year <= config.year_max &&
                     config.doc_types.count(p.doc_type) > 0;
    c.candidate_[i] = candidate ? 1 : 0;
    if (candidate && categories.lookup(p.journal_id).empty()) unassigned.push_back(p.journal_id);
  }
  std::sort(unassigned.begin(), unassigned.end());
  unassigned.erase(std::unique(unassigned.begin(), unassigned.end()), unassigned.end());
  for (const auto& j : unassigned) diag.unassigned_journals.note(j, max_samples);

  c.config_ = std::move(config);
  c.categories_ = std::move(categories);
  return c;
}

}  // namespace bkf

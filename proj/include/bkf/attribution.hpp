#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bkf/corpus.hpp"
#include "bkf/types.hpp"

namespace bkf {

struct MadeInResult {
  std::string publication_id;
  std::vector<CountryCode> countries;  // sorted
  bool tie = false;

  friend bool operator==(const MadeInResult&, const MadeInResult&) = default;
};

// Countries holding at least `threshold` of the publication's distinct
// institutions. Every institution counts, whether or not its country is in
// the analysis set.
inline MadeInResult made_in(const PublicationRecord& pub, Rational threshold = {1, 2}) {
  MadeInResult r{pub.id, {}, false};
  std::map<std::string_view, CountryCode> institutions;
  for (const auto& a : pub.affiliations) institutions.emplace(a.institution_id, a.country);
  if (institutions.empty()) return r;

  std::map<CountryCode, std::int64_t> per_country;
  for (const auto& [inst, country] : institutions) ++per_country[country];
  const auto total = static_cast<std::int64_t>(institutions.size());
  for (const auto& [country, count] : per_country)
    if (threshold.reached_by(count, total)) r.countries.push_back(country);
  r.tie = r.countries.size() >= 2;
  return r;
}

// Made-in results for the production candidates of a corpus.
class Attribution {
 public:
  // nullptr for publications outside the period or document types.
  const MadeInResult* result(PubIndex i) const {
    auto it = slot_[i];
    return it < 0 ? nullptr : &results_[static_cast<std::size_t>(it)];
  }

  // Analysis countries the publication is made in (empty if none).
  std::span<const CountryIndex> generators_of(PubIndex i) const {
    return {generators_.data() + offsets_[i], generators_.data() + offsets_[i + 1]};
  }

  bool is_production(PubIndex i) const { return offsets_[i + 1] > offsets_[i]; }

  std::size_t production_count() const { return production_; }
  std::size_t candidate_count() const { return results_.size(); }
  const ValidationReport& diagnostics() const { return diagnostics_; }

  std::map<std::string, MadeInResult> by_id() const {
    std::map<std::string, MadeInResult> out;
    for (const auto& r : results_) out.emplace(r.publication_id, r);
    return out;
  }

 private:
  friend Attribution attribute_corpus(const Corpus&);

  std::vector<MadeInResult> results_;
  std::vector<long> slot_;
  std::vector<std::size_t> offsets_;
  std::vector<CountryIndex> generators_;
  std::size_t production_ = 0;
  ValidationReport diagnostics_;
};

inline Attribution attribute_corpus(const Corpus& corpus) {
  const auto& config = corpus.config();
  Attribution a;
  a.diagnostics_.max_samples = corpus.diagnostics().max_samples;
  a.slot_.assign(corpus.size(), -1);
  a.offsets_.reserve(corpus.size() + 1);
  a.offsets_.push_back(0);
  for (PubIndex i = 0; i < corpus.size(); ++i) {
    if (corpus.is_production_candidate(i)) {
      auto r = made_in(corpus.publication(i), config.made_in_threshold);
      std::vector<CountryIndex> gens;
      for (const auto& c : r.countries)
        if (int k = config.index_of(c); k >= 0) gens.push_back(static_cast<CountryIndex>(k));
      std::sort(gens.begin(), gens.end());
      if (r.tie) a.diagnostics_.tie_attributions.note(r.publication_id, a.diagnostics_.max_samples);
      if (!gens.empty()) ++a.production_;
      a.generators_.insert(a.generators_.end(), gens.begin(), gens.end());
      a.slot_[i] = static_cast<long>(a.results_.size());
      a.results_.push_back(std::move(r));
    }
    a.offsets_.push_back(a.generators_.size());
  }
  return a;
}

}  // namespace bkf

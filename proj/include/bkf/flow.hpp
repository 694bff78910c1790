#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "bkf/attribution.hpp"
#include "bkf/corpus.hpp"
#include "bkf/csv.hpp"
#include "bkf/error.hpp"

namespace bkf {

// One unit of knowledge flow: a citation of `cited` by `citing`, earned by one
// analysis country present on the citing side.
struct GainRecord {
  PubIndex cited = 0;
  PubIndex citing = 0;
  CountryIndex generator = 0;
  CountryIndex earner = 0;
  bool domestic = false;
  std::span<const std::string> sc_codes;  // SCs of the cited publication's journal

  friend bool operator==(const GainRecord& a, const GainRecord& b) {
    return a.cited == b.cited && a.citing == b.citing && a.generator == b.generator &&
           a.earner == b.earner && a.domestic == b.domestic;
  }
};

// Square gains matrix over the analysis countries; rows generate, columns earn.
class FlowMatrix {
 public:
  FlowMatrix() = default;
  explicit FlowMatrix(std::size_t n) : n_(n), cells_(n * n, 0) {}

  std::size_t size() const { return n_; }
  std::uint64_t& at(std::size_t g, std::size_t e) { return cells_[g * n_ + e]; }
  std::uint64_t at(std::size_t g, std::size_t e) const { return cells_[g * n_ + e]; }

  std::uint64_t row_total(std::size_t g) const {
    std::uint64_t s = 0;
    for (std::size_t e = 0; e < n_; ++e) s += at(g, e);
    return s;
  }
  std::uint64_t column_total(std::size_t e) const {
    std::uint64_t s = 0;
    for (std::size_t g = 0; g < n_; ++g) s += at(g, e);
    return s;
  }
  std::uint64_t total() const {
    std::uint64_t s = 0;
    for (auto v : cells_) s += v;
    return s;
  }

  FlowMatrix& operator+=(const FlowMatrix& o) {
    if (o.n_ != n_) throw DataError("flow matrix size mismatch");
    for (std::size_t i = 0; i < cells_.size(); ++i) cells_[i] += o.cells_[i];
    return *this;
  }

  friend bool operator==(const FlowMatrix&, const FlowMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> cells_;
};

namespace detail {

inline bool is_benefit(const Corpus& corpus, PubIndex citer) {
  return corpus.within_cutoff(citer) && !corpus.analysis_countries_of(citer).empty();
}

inline PubIndex require_pub(const Corpus& corpus, const std::string& id) {
  auto i = corpus.find(id);
  if (!i) throw DataError("unknown publication id '" + id + "'");
  return *i;
}

// Splits [0, n) into `jobs` contiguous chunks and runs fn(begin, end, chunk) on each.
template <typename Fn>
void parallel_chunks(std::size_t n, unsigned jobs, Fn&& fn) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (jobs == 1) {
    fn(std::size_t{0}, n, 0u);
    return;
  }
  std::vector<std::thread> workers;
  const std::size_t step = (n + jobs - 1) / jobs;
  for (unsigned w = 0; w < jobs; ++w) {
    std::size_t b = std::min(n, w * step), e = std::min(n, b + step);
    workers.emplace_back([&fn, b, e, w] { fn(b, e, w); });
  }
  for (auto& t : workers) t.join();
}

}  // namespace detail

// Benefits of a publication: distinct citing publications up to the cutoff
// that list at least one analysis country (the world is closed).
inline std::uint64_t benefits_of(PubIndex cited, const Corpus& corpus) {
  std::uint64_t n = 0;
  for (PubIndex q : corpus.citers_of(cited))
    if (detail::is_benefit(corpus, q)) ++n;
  return n;
}

inline std::uint64_t benefits_of(const std::string& cited_id, const Corpus& corpus) {
  return benefits_of(detail::require_pub(corpus, cited_id), corpus);
}

// Appends the gains of one cited publication: for each citer and each made-in
// analysis country, one gain per distinct analysis country of the citer.
inline void append_gains(PubIndex cited, const Corpus& corpus, const Attribution& attribution,
                         std::vector<GainRecord>& out) {
  auto gens = attribution.generators_of(cited);
  if (gens.empty()) return;
  auto scs = corpus.sc_codes_of(cited);
  for (PubIndex q : corpus.citers_of(cited)) {
    if (!corpus.within_cutoff(q)) continue;
    for (CountryIndex g : gens)
      for (CountryIndex e : corpus.analysis_countries_of(q))
        out.push_back({cited, q, g, e, g == e, scs});
  }
}

inline std::vector<GainRecord> gains_of(PubIndex cited, const Corpus& corpus,
                                        const Attribution& attribution) {
  std::vector<GainRecord> out;
  append_gains(cited, corpus, attribution, out);
  return out;
}

inline std::vector<GainRecord> gains_of(const std::string& cited_id, const Corpus& corpus,
                                        const Attribution& attribution) {
  return gains_of(detail::require_pub(corpus, cited_id), corpus, attribution);
}

// All gain records, ordered by (cited, citing, generator, earner) whatever the job count.
inline std::vector<GainRecord> collect_gains(const Corpus& corpus, const Attribution& attribution,
                                             unsigned jobs = 1) {
  std::vector<std::vector<GainRecord>> parts(std::max(1u, jobs));
  detail::parallel_chunks(corpus.size(), jobs, [&](std::size_t b, std::size_t e, unsigned w) {
    for (auto i = b; i < e; ++i) append_gains(static_cast<PubIndex>(i), corpus, attribution, parts[w]);
  });
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  std::vector<GainRecord> out;
  out.reserve(total);
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

inline FlowMatrix accumulate_gains(std::span<const GainRecord> gains, std::size_t countries) {
  FlowMatrix m(countries);
  for (const auto& g : gains) ++m.at(g.generator, g.earner);
  return m;
}

// Per-worker partial matrices merged by addition, so the result does not
// depend on the number of jobs.
inline FlowMatrix compute_flow_matrix(const Corpus& corpus, const Attribution& attribution,
                                      unsigned jobs = 1) {
  const auto n = corpus.config().countries.size();
  std::vector<FlowMatrix> partial(std::max(1u, jobs), FlowMatrix(n));
  detail::parallel_chunks(corpus.size(), jobs, [&](std::size_t b, std::size_t e, unsigned w) {
    auto& m = partial[w];
    for (auto i = b; i < e; ++i) {
      auto cited = static_cast<PubIndex>(i);
      auto gens = attribution.generators_of(cited);
      if (gens.empty()) continue;
      for (PubIndex q : corpus.citers_of(cited)) {
        if (!corpus.within_cutoff(q)) continue;
        for (CountryIndex g : gens)
          for (CountryIndex earner : corpus.analysis_countries_of(q)) ++m.at(g, earner);
      }
    }
  });
  FlowMatrix out(n);
  for (const auto& m : partial) out += m;
  return out;
}

struct DomesticSplit {
  std::uint64_t domestic_gains = 0;
  std::uint64_t foreign_gains_generated = 0;
  std::uint64_t gains_earned = 0;

  friend bool operator==(const DomesticSplit&, const DomesticSplit&) = default;
};

inline std::vector<DomesticSplit> domestic_split(const FlowMatrix& m) {
  std::vector<DomesticSplit> out(m.size());
  for (std::size_t k = 0; k < m.size(); ++k) {
    out[k].domestic_gains = m.at(k, k);
    out[k].foreign_gains_generated = m.row_total(k) - m.at(k, k);
    out[k].gains_earned = m.column_total(k) - m.at(k, k);
  }
  return out;
}

// cited_id,citing_id,generator,earner,domestic,sc_codes
inline void write_gains_csv(std::ostream& os, std::span<const GainRecord> gains,
                            const Corpus& corpus) {
  const auto& countries = corpus.config().countries;
  os << "cited_id,citing_id,generator,earner,domestic,sc_codes\n";
  for (const auto& g : gains) {
    os << corpus.publication(g.cited).id << ',' << corpus.publication(g.citing).id << ','
       << countries[g.generator].str() << ',' << countries[g.earner].str() << ','
       << (g.domestic ? "true" : "false") << ',';
    std::string scs;
    for (std::size_t i = 0; i < g.sc_codes.size(); ++i) scs += (i ? ";" : "") + g.sc_codes[i];
    os << csv::escape(scs) << '\n';
  }
}

}  // namespace bkf

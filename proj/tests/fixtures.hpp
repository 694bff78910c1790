#pragma once

#include <string>
#include <vector>

#include "bkf/corpus.hpp"
#include "bkf/synth.hpp"
#include "bkf/types.hpp"

namespace bkf::testing {

inline Affiliation aff(std::string inst, const char* country) {
  return {std::move(inst), CountryCode(country)};
}

inline PublicationRecord pub(std::string id, int year, std::string journal,
                             std::vector<Affiliation> affs, DocType type = DocType::article) {
  return {std::move(id), year, type, std::move(journal), std::move(affs)};
}

inline AnalysisConfig config_ab(std::vector<std::string> countries = {"A", "B"}) {
  AnalysisConfig c;
  for (auto& k : countries) c.countries.emplace_back(k);
  c.year_min = 2004;
  c.year_max = 2008;
  c.citation_cutoff = {2017, 6, 10};
  return c;
}

// Hand-enumerated two-country world (X lies outside the analysis set).
//
//   P1 {A,A,B} made in A, journal J1 (SC1, SC2)
//   P2 {A,B}   50/50 tie, made in A and B, journal J2 (SC2)
//   P3 {X}     made in X only, journal J3 (unassigned)
//   Q1 {A,B} 2010, Q2 {B,B} 2012, Q3 {X} 2011, Q4 {A} 2020 (after the cutoff)
//
//   links: Q1->P1 Q2->P1 Q3->P1 Q4->P1 Q1->P2 Q2->P3 Q1->P3
//
// Gains: P1 gives A->A (Q1), A->B (Q1), A->B (Q2); P2 gives A->A, A->B, B->A,
// B->B (all Q1); P3 gives nothing. Matrix [[2,3],[1,1]].
struct HandFixture {
  std::vector<PublicationRecord> pubs;
  std::vector<CitationLink> links;
  JournalCategoryMap categories;
  AnalysisConfig config = config_ab();

  HandFixture() {
    pubs = {
        pub("P1", 2005, "J1", {aff("A1", "A"), aff("A2", "A"), aff("B1", "B")}),
        pub("P2", 2006, "J2", {aff("A1", "A"), aff("B1", "B")}),
        pub("P3", 2007, "J3", {aff("X1", "X")}),
        pub("Q1", 2010, "J1", {aff("A3", "A"), aff("B2", "B")}),
        pub("Q2", 2012, "J2", {aff("B3", "B"), aff("B4", "B")}),
        pub("Q3", 2011, "J2", {aff("X2", "X")}),
        pub("Q4", 2020, "J2", {aff("A4", "A")}),
    };
    links = {{"Q1", "P1"}, {"Q2", "P1"}, {"Q3", "P1"}, {"Q4", "P1"},
             {"Q1", "P2"}, {"Q2", "P3"}, {"Q1", "P3"}};
    categories.assign("J1", {"SC1", "SC2"});
    categories.assign("J2", {"SC2"});
    categories.set_area("SC1", "Area1");
    categories.set_area("SC2", "Area2");
  }

  Corpus corpus() const { return build_corpus(pubs, links, categories, config); }
};

inline synth::GeneratorParams small_params(std::uint64_t seed, std::uint64_t per_country = 45) {
  synth::GeneratorParams p;
  p.seed = seed;
  p.countries = {{CountryCode("IL"), per_country},
                 {CountryCode("IT"), per_country},
                 {CountryCode("NZ"), per_country},
                 {CountryCode("NL"), per_country}};
  p.outside = {{CountryCode("ZZ"), 20}};
  p.journals = 15;
  p.subject_categories = 8;
  p.macro_areas = 3;
  p.institutions_per_country = 6;
  p.tie_rate = 0.08;
  p.collaboration_rate = 0.3;
  p.dangling_rate = 0.02;
  p.citation_density = 4.0;
  return p;
}

inline Corpus corpus_of(const synth::GeneratedCorpus& g) {
  return build_corpus(g.publications, g.citations, g.categories, g.config);
}

}  // namespace bkf::testing

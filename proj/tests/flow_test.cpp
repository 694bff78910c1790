#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "bkf/flow.hpp"
#include "bkf/ratio.hpp"
#include "fixtures.hpp"
#include "reference_tables.hpp"

using namespace bkf;
using namespace bkf::testing;

TEST(Benefits, HandFixture) {
  HandFixture f;
  auto c = f.corpus();
  EXPECT_EQ(benefits_of("P1", c), 2u);  // Q1, Q2; Q3 lists no analysis country, Q4 is too late
  EXPECT_EQ(benefits_of("P2", c), 1u);
  EXPECT_EQ(benefits_of("P3", c), 2u);
  EXPECT_THROW(benefits_of("NOPE", c), DataError);
}

TEST(Benefits, ThreeDistinctCitersAndUncited) {
  auto pubs = std::vector<PublicationRecord>{
      pub("P", 2005, "J", {aff("A1", "A")}), pub("U", 2005, "J", {aff("A1", "A")}),
      pub("C1", 2010, "J", {aff("B1", "B")}), pub("C2", 2010, "J", {aff("B1", "B")}),
      pub("C3", 2010, "J", {aff("A1", "A")})};
  auto c = build_corpus(pubs, {{"C1", "P"}, {"C2", "P"}, {"C3", "P"}, {"C3", "P"}}, {}, config_ab());
  EXPECT_EQ(benefits_of("P", c), 3u);
  EXPECT_EQ(benefits_of("U", c), 0u);
}

TEST(Gains, OneBenefitTwoGains) {
  auto pubs = std::vector<PublicationRecord>{pub("P1", 2005, "J", {aff("A1", "A")}),
                                             pub("Q1", 2010, "J", {aff("A2", "A"), aff("B1", "B")})};
  auto c = build_corpus(pubs, {{"Q1", "P1"}}, {}, config_ab());
  auto a = attribute_corpus(c);
  auto g = gains_of("P1", c, a);
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[0].generator, 0);
  EXPECT_EQ(g[0].earner, 0);
  EXPECT_TRUE(g[0].domestic);
  EXPECT_EQ(g[1].earner, 1);
  EXPECT_FALSE(g[1].domestic);
  EXPECT_EQ(benefits_of("P1", c), 1u);
}

TEST(Gains, DistinctCountryRuleOnCitingSide) {
  auto pubs = std::vector<PublicationRecord>{
      pub("P1", 2005, "J", {aff("A1", "A")}),
      pub("Q1", 2010, "J", {aff("B1", "B"), aff("B2", "B"), aff("B3", "B")})};
  auto c = build_corpus(pubs, {{"Q1", "P1"}}, {}, config_ab());
  auto g = gains_of("P1", c, attribute_corpus(c));
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g[0].generator, 0);
  EXPECT_EQ(g[0].earner, 1);
}

TEST(Gains, CitationCutoffIsInclusiveByYear) {
  auto pubs = std::vector<PublicationRecord>{pub("P1", 2005, "J", {aff("A1", "A")}),
                                             pub("Q1", 2017, "J", {aff("B1", "B")}),
                                             pub("Q2", 2018, "J", {aff("B1", "B")})};
  auto c = build_corpus(pubs, {{"Q1", "P1"}, {"Q2", "P1"}}, {}, config_ab());
  EXPECT_EQ(gains_of("P1", c, attribute_corpus(c)).size(), 1u);
}

TEST(FlowMatrix, HandFixture) {
  HandFixture f;
  auto c = f.corpus();
  auto a = attribute_corpus(c);
  auto m = compute_flow_matrix(c, a);
  EXPECT_EQ(m.at(0, 0), 2u);
  EXPECT_EQ(m.at(0, 1), 3u);
  EXPECT_EQ(m.at(1, 0), 1u);
  EXPECT_EQ(m.at(1, 1), 1u);
  EXPECT_EQ(m.total(), 7u);
  EXPECT_EQ(m, accumulate_gains(collect_gains(c, a), 2));

  auto split = domestic_split(m);
  EXPECT_EQ(split[0], (DomesticSplit{2, 3, 1}));
  EXPECT_EQ(split[1], (DomesticSplit{1, 1, 3}));
}

TEST(FlowMatrix, SingleCountryCorpusIsAllDomestic) {
  auto pubs = std::vector<PublicationRecord>{pub("P1", 2005, "J", {aff("A1", "A")}),
                                             pub("P2", 2006, "J", {aff("A2", "A")}),
                                             pub("Q1", 2010, "J", {aff("A3", "A")})};
  auto c = build_corpus(pubs, {{"Q1", "P1"}, {"Q1", "P2"}, {"P2", "P1"}}, {}, config_ab());
  auto m = compute_flow_matrix(c, attribute_corpus(c));
  EXPECT_EQ(m.at(0, 0), 3u);
  EXPECT_EQ(m.total(), 3u);
  EXPECT_EQ((Ratio{m.at(0, 0), m.row_total(0)}).percent(), "100.0");
}

TEST(FlowMatrix, ZeroMatrixSplit) {
  for (const auto& s : domestic_split(FlowMatrix(3))) EXPECT_EQ(s, (DomesticSplit{0, 0, 0}));
}

TEST(ReferenceTotals, GainsPerBenefitAndBenefitsPerCited) {
  EXPECT_EQ((Ratio{247128, 238025}).format(2), "1.04");
  EXPECT_EQ((Ratio{238025, 35546}).format(2), "6.70");
}

TEST(ReferenceTotals, IsraelToNetherlandsDerivedBothWays) {
  EXPECT_EQ(reference::israel_nl_from_row(), 26988u);
  EXPECT_EQ(reference::israel_nl_from_column(), 26988u);
}

TEST(ReferenceTotals, SplitOfTheReferenceMatrix) {
  auto split = domestic_split(reference::matrix());
  EXPECT_EQ(split[0].foreign_gains_generated, 82440u);
  EXPECT_EQ(split[0].gains_earned, 75488u);
  EXPECT_EQ(split[1].gains_earned, 217718u);
  EXPECT_EQ(split[0].domestic_gains, 164688u);
  EXPECT_EQ((Ratio{164688, 247128}).percent(), "66.6");
}

TEST(GainsCsv, SemicolonJoinedScs) {
  HandFixture f;
  auto c = f.corpus();
  auto a = attribute_corpus(c);
  std::ostringstream os;
  write_gains_csv(os, gains_of("P1", c, a), c);
  EXPECT_EQ(os.str(),
            "cited_id,citing_id,generator,earner,domestic,sc_codes\n"
            "P1,Q1,A,A,true,SC1;SC2\n"
            "P1,Q1,A,B,false,SC1;SC2\n"
            "P1,Q2,A,B,false,SC1;SC2\n");
}

TEST(FlowProperty, BoundsConservationAndClosedWorld) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto g = synth::generate_corpus(small_params(seed));
    auto c = corpus_of(g);
    auto a = attribute_corpus(c);
    auto gains = collect_gains(c, a);
    const auto n = c.config().countries.size();
    for (PubIndex i = 0; i < c.size(); ++i) {
      if (!a.is_production(i)) continue;
      const auto gens = a.generators_of(i).size();
      const auto benefits = benefits_of(i, c);
      const auto count = gains_of(i, c, a).size();
      EXPECT_GE(count, benefits * gens);
      EXPECT_LE(count, benefits * gens * n);
    }
    auto m = compute_flow_matrix(c, a);
    EXPECT_EQ(m.total(), gains.size());
    std::uint64_t generated = 0, earned = 0;
    for (const auto& s : domestic_split(m)) {
      generated += s.foreign_gains_generated;
      earned += s.gains_earned;
    }
    EXPECT_EQ(generated, earned);
    for (const auto& r : gains) EXPECT_EQ(r.domestic, r.generator == r.earner);
  }
}

TEST(FlowProperty, RemovingACiterSubtractsItsContribution) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto g = synth::generate_corpus(small_params(seed));
    auto c = corpus_of(g);
    auto a = attribute_corpus(c);
    auto gains = collect_gains(c, a);
    auto full = accumulate_gains(gains, c.config().countries.size());

    const auto victim = c.publication(gains[gains.size() / 2].citing).id;
    FlowMatrix contribution(full.size());
    for (const auto& r : gains)
      if (c.publication(r.citing).id == victim) ++contribution.at(r.generator, r.earner);

    auto links = g.citations;
    std::erase_if(links, [&](const CitationLink& l) { return l.citing_id == victim; });
    auto c2 = build_corpus(g.publications, links, g.categories, g.config);
    auto reduced = compute_flow_matrix(c2, attribute_corpus(c2));
    reduced += contribution;
    EXPECT_EQ(reduced, full) << "seed " << seed;
  }
}

TEST(FlowProperty, JobCountDoesNotChangeResults) {
  auto g = synth::generate_corpus(small_params(3, 200));
  auto c = corpus_of(g);
  auto a = attribute_corpus(c);
  auto m1 = compute_flow_matrix(c, a, 1);
  auto g1 = collect_gains(c, a, 1);
  for (unsigned jobs : {2u, 3u, 8u}) {
    EXPECT_EQ(compute_flow_matrix(c, a, jobs), m1);
    EXPECT_EQ(collect_gains(c, a, jobs), g1);
  }
}

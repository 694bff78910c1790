#include <gtest/gtest.h>

#include <sstream>

#include "bkf/ingest.hpp"
#include "fixtures.hpp"

using namespace bkf;
using namespace bkf::testing;

namespace {

const char* kGoodLine =
    R"({"id":"P1","year":2005,"doc_type":"article","journal_id":"J1",)"
    R"("affiliations":[{"institution_id":"I1","country":"IT"},{"institution_id":"I2","country":"NL"}]})";

}  // namespace

TEST(ParsePublications, WellFormedLine) {
  std::istringstream in(kGoodLine);
  auto r = parse_publications(in);
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_TRUE(r.issues.empty());
  EXPECT_EQ(r.records[0].id, "P1");
  EXPECT_EQ(r.records[0].year, 2005);
  EXPECT_EQ(r.records[0].affiliations.size(), 2u);
  EXPECT_EQ(r.records[0].affiliations[1].country, CountryCode("NL"));
}

TEST(ParsePublications, MissingJournalRejected) {
  std::istringstream in(
      R"({"id":"P1","year":2005,"doc_type":"article","affiliations":[{"institution_id":"I1","country":"IT"}]})");
  ValidationReport report;
  auto r = parse_publications(in, &report);
  EXPECT_TRUE(r.records.empty());
  EXPECT_EQ(report.rejected_records.count, 1u);
}

TEST(ParsePublications, EmptyAffiliationsAndDuplicateInstitutionsRejected) {
  std::istringstream in(
      R"({"id":"P1","year":2005,"doc_type":"article","journal_id":"J","affiliations":[]})"
      "\n"
      R"({"id":"P2","year":2005,"doc_type":"article","journal_id":"J","affiliations":[{"institution_id":"I1","country":"IT"},{"institution_id":"I1","country":"IT"}]})"
      "\n"
      R"({"id":"P3","year":2005,"doc_type":"thesis","journal_id":"J","affiliations":[{"institution_id":"I1","country":"IT"}]})"
      "\n"
      R"({"id":"P4","year":2005,"doc_type":"article","journal_id":"J","affiliations":[{"institution_id":"I1","country":"it"}]})");
  ValidationReport report;
  auto r = parse_publications(in, &report);
  EXPECT_TRUE(r.records.empty());
  EXPECT_EQ(report.rejected_records.count, 4u);
}

TEST(ParsePublications, LargeFileWithThreeBadLines) {
  // 10,000 lines; lines 17, 5000 and 9999 are broken in three different ways.
  std::ostringstream os;
  for (int i = 1; i <= 10000; ++i) {
    if (i == 17) {
      os << "{not json\n";
    } else if (i == 5000) {
      os << R"({"id":"X","year":"2005","doc_type":"article","journal_id":"J","affiliations":[{"institution_id":"I","country":"IT"}]})"
         << '\n';
    } else if (i == 9999) {
      os << R"({"id":"Y","year":2005,"doc_type":"article","journal_id":"J"})" << '\n';
    } else {
      os << R"({"id":"P)" << i
         << R"(","year":2005,"doc_type":"article","journal_id":"J","affiliations":[{"institution_id":"I","country":"IT"}]})"
         << '\n';
    }
  }
  std::istringstream in(os.str());
  ValidationReport report;
  auto r = parse_publications(in, &report);
  EXPECT_EQ(r.records.size(), 9997u);
  ASSERT_EQ(r.issues.size(), 3u);
  EXPECT_EQ(r.issues[0].line, 17u);
  EXPECT_EQ(r.issues[1].line, 5000u);
  EXPECT_EQ(r.issues[2].line, 9999u);
  EXPECT_EQ(report.rejected_records.count, 3u);
  EXPECT_EQ(report.rejected_records.samples[0], "publications.jsonl:17");
}

TEST(ParseCitations, PlainRow) {
  std::istringstream in("Q1,P1\n");
  auto r = parse_citations(in);
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.records[0].citing_id, "Q1");
  EXPECT_EQ(r.records[0].cited_id, "P1");
}

TEST(ParseCitations, HeaderDetected) {
  std::istringstream in("citing_id,cited_id\nQ1,P1\n");
  auto r = parse_citations(in);
  EXPECT_EQ(r.records.size(), 1u);
  EXPECT_TRUE(r.issues.empty());
}

TEST(ParseCitations, WrongArityRowSkipped) {
  std::istringstream in("Q1,P1,extra\nQ2,P2\nlonely\n");
  ValidationReport report;
  auto r = parse_citations(in, &report);
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.records[0].citing_id, "Q2");
  ASSERT_EQ(r.issues.size(), 2u);
  EXPECT_EQ(r.issues[0].line, 1u);
  EXPECT_EQ(report.rejected_records.count, 2u);
}

TEST(ParseJournalCategories, MultiCategoryJournalKeepsAllScs) {
  std::istringstream journals("journal_id,sc_codes\nJ1,SC_a;SC_b\nJ2,\n");
  std::istringstream areas("sc_code,macro_area\nSC_a,Physics\n");
  auto m = parse_journal_categories(journals, areas);
  EXPECT_EQ(m.lookup("J1"), (std::vector<std::string>{"SC_a", "SC_b"}));
  EXPECT_TRUE(m.lookup("J2").empty());
  EXPECT_TRUE(m.lookup("J404").empty());
  EXPECT_EQ(m.area_of("SC_a"), "Physics");
  EXPECT_EQ(m.area_of("SC_b"), "unassigned");
}

TEST(ParseJournalCategories, QuotedScNamesWithCommas) {
  std::istringstream journals("J1,\"Chemistry, physical;Physics, nuclear\"\n");
  std::istringstream areas("\"Chemistry, physical\",Chemistry\n");
  auto m = parse_journal_categories(journals, areas);
  EXPECT_EQ(m.lookup("J1"), (std::vector<std::string>{"Chemistry, physical", "Physics, nuclear"}));
  EXPECT_EQ(m.area_of("Chemistry, physical"), "Chemistry");
}

TEST(ParseJournalCategories, ScUnderTwoAreasIsHardError) {
  std::istringstream journals("J1,SC_a\n");
  std::istringstream areas("SC_a,Physics\nSC_a,Biology\n");
  try {
    parse_journal_categories(journals, areas);
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("SC_a"), std::string::npos);
  }
}

TEST(ParseConfig, FourCountrySetup) {
  std::istringstream in(
      "# four-country world\n"
      "countries = IL,IT,NZ,NL\n"
      "period = 2004..2008\n"
      "cutoff = 2017-06-10\n");
  auto c = parse_config(in);
  ASSERT_EQ(c.countries.size(), 4u);
  EXPECT_EQ(c.countries[0], CountryCode("IL"));
  EXPECT_EQ(c.countries[3], CountryCode("NL"));
  EXPECT_EQ(c.year_min, 2004);
  EXPECT_EQ(c.year_max, 2008);
  EXPECT_EQ(c.citation_cutoff, (Date{2017, 6, 10}));
  EXPECT_EQ(c.made_in_threshold, (Rational{1, 2}));
  EXPECT_EQ(c.doc_types, (std::set<DocType>{DocType::article, DocType::review, DocType::letter,
                                            DocType::proceedings}));
}

TEST(ParseConfig, ExplicitValues) {
  std::istringstream in(
      "countries = IL, IT\nperiod = 2004 2008\ncutoff = 2017-06-10\nthreshold = 0.6\n"
      "doc_types = article\nspecialization_include_domestic = true\n");
  auto c = parse_config(in);
  EXPECT_EQ(c.made_in_threshold, (Rational{3, 5}));
  EXPECT_EQ(c.doc_types, (std::set<DocType>{DocType::article}));
  EXPECT_TRUE(c.specialization.include_domestic);
  EXPECT_FALSE(c.specialization.exclude_own_sc);
}

TEST(ParseConfig, HardErrors) {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
  };
  EXPECT_THROW(parse("countries = IL\nperiod = 2004..2008\ncutoff = 2017-06-10\n"), DataError);
  EXPECT_THROW(parse("countries = IL,IT\nperiod = 2004..2008\ncutoff = 2017-13-10\n"), DataError);
  EXPECT_THROW(parse("countries = IL,IT\nperiod = 2004..2008\ncutoff = 10/06/2017\n"), DataError);
  EXPECT_THROW(parse("countries = IL,IL\nperiod = 2004..2008\ncutoff = 2017-06-10\n"), DataError);
  EXPECT_THROW(parse("countries = IL,IT\nperiod = 2009..2008\ncutoff = 2017-06-10\n"), DataError);
  EXPECT_THROW(parse("countries = IL,IT\nperiod = 2004..2008\ncutoff = 2017-06-10\nthreshold = 3/2\n"),
               DataError);
  EXPECT_THROW(parse("countries = IL,IT\nperiod = 2004..2008\n"), DataError);
  EXPECT_THROW(parse("countries IL,IT\n"), DataError);
}

TEST(IngestProperty, SerializedCorpusParsesBackIdentically) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto g = synth::generate_corpus(small_params(seed));
    std::stringstream pubs, cites, journals, areas, config;
    write_publications_jsonl(pubs, g.publications);
    write_citations_csv(cites, g.citations);
    write_journals_csv(journals, g.categories);
    write_sc_areas_csv(areas, g.categories);
    write_config(config, g.config);

    auto p = parse_publications(pubs);
    auto c = parse_citations(cites);
    auto m = parse_journal_categories(journals, areas);
    auto cfg = parse_config(config);
    EXPECT_TRUE(p.issues.empty());
    EXPECT_TRUE(c.issues.empty());
    EXPECT_EQ(p.records, g.publications);
    EXPECT_EQ(c.records, g.citations);
    EXPECT_EQ(m.journals(), g.categories.journals());
    EXPECT_EQ(m.areas(), g.categories.areas());
    EXPECT_EQ(cfg.countries, g.config.countries);
    EXPECT_EQ(cfg.citation_cutoff, g.config.citation_cutoff);
    EXPECT_EQ(cfg.made_in_threshold, g.config.made_in_threshold);
  }
}

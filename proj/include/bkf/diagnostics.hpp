#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace bkf {

// One diagnostic class: a running count plus the first few offending ids.
struct DiagnosticClass {
  std::uint64_t count = 0;
  std::vector<std::string> samples;

  void note(const std::string& id, std::size_t max_samples) {
    ++count;
    if (samples.size() < max_samples) samples.push_back(id);
  }
};

struct ValidationReport {
  std::size_t max_samples = 20;

  DiagnosticClass dangling_links;
  DiagnosticClass duplicate_links;
  DiagnosticClass self_citations;
  DiagnosticClass unassigned_journals;
  DiagnosticClass tie_attributions;
  DiagnosticClass rejected_records;

  void merge(const ValidationReport& other) {
    auto add = [this](DiagnosticClass& dst, const DiagnosticClass& src) {
      dst.count += src.count;
      for (const auto& s : src.samples)
        if (dst.samples.size() < max_samples) dst.samples.push_back(s);
    };
    add(dangling_links, other.dangling_links);
    add(duplicate_links, other.duplicate_links);
    add(self_citations, other.self_citations);
    add(unassigned_journals, other.unassigned_journals);
    add(tie_attributions, other.tie_attributions);
    add(rejected_records, other.rejected_records);
  }

  template <typename F>
  void for_each(F&& f) const {
    f("dangling_links", dangling_links);
    f("duplicate_links", duplicate_links);
    f("self_citations", self_citations);
    f("unassigned_journals", unassigned_journals);
    f("tie_attributions", tie_attributions);
    f("rejected_records", rejected_records);
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for_each([&](const char* name, const DiagnosticClass& d) {
      j[name] = {{"count", d.count}, {"samples", d.samples}};
    });
    return j;
  }

  std::string to_text() const {
    std::ostringstream os;
    for_each([&](const char* name, const DiagnosticClass& d) {
      os << name << ": " << d.count;
      if (!d.samples.empty()) {
        os << " (";
        for (std::size_t i = 0; i < d.samples.size(); ++i) os << (i ? ", " : "") << d.samples[i];
        if (d.count > d.samples.size()) os << ", ...";
        os << ")";
      }
      os << '\n';
    });
    return os.str();
  }
};

}  // namespace bkf

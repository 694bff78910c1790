// bkf: balance-of-knowledge-flows command line.
//
//   bkf validate --data DIR --config FILE [--out DIR]
//   bkf compute  --data DIR --config FILE --out DIR [--jobs N] [--dump-gains]
//   bkf pair K L --data DIR --config FILE --out DIR
//   bkf top      --data DIR --config FILE --country C [--kind bkf|kosi|kisi] [-n N]
//   bkf generate --config PARAMS --out DIR [--seed S]
//
// Exit codes: 0 success, 1 data or semantic error, 2 environment or I/O error.
// BKF_LOG=debug|info|warn|error sets stderr verbosity (default warn).

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "bkf/pipeline.hpp"
#include "bkf/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

enum class Level { debug, info, warn, error };

Level log_level() {
  static const Level level = [] {
    const char* env = std::getenv("BKF_LOG");
    std::string v = env ? env : "warn";
    if (v == "debug") return Level::debug;
    if (v == "info") return Level::info;
    if (v == "error") return Level::error;
    return Level::warn;
  }();
  return level;
}

void log(Level level, const std::string& msg) {
  static const char* names[] = {"debug", "info", "warn", "error"};
  if (level >= log_level()) std::cerr << "[" << names[static_cast<int>(level)] << "] " << msg << '\n';
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw bkf::IoError("cannot read " + path.string());
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (in.gcount() > 0) EVP_DigestUpdate(ctx, buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  std::ostringstream os;
  for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return os.str();
}

struct Stopwatch {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double lap_ms() {
    auto now = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(now - start).count();
    start = now;
    return ms;
  }
};

struct CommonOptions {
  std::string data_dir;
  std::string publications, citations, journals, sc_areas;
  std::string config;
  std::string out_dir;
  std::string countries, cutoff, threshold;
  unsigned jobs = 1;
  std::size_t max_samples = 20;

  bkf::InputPaths paths() const {
    auto p = bkf::InputPaths::in_dir(data_dir.empty() ? fs::path(".") : fs::path(data_dir));
    if (!publications.empty()) p.publications = publications;
    if (!citations.empty()) p.citations = citations;
    if (!journals.empty()) p.journals = journals;
    if (!sc_areas.empty()) p.sc_areas = sc_areas;
    return p;
  }

  bkf::AnalysisConfig load_config() const {
    if (config.empty()) throw bkf::DataError("--config is required");
    if (!fs::is_regular_file(config)) throw bkf::IoError("missing config file " + config);
    auto c = bkf::load_config(config);
    if (!countries.empty()) {
      c.countries.clear();
      for (const auto& code : bkf::csv::split_list(countries, ',')) c.countries.emplace_back(code);
    }
    if (!cutoff.empty()) c.citation_cutoff = bkf::parse_date(cutoff);
    if (!threshold.empty()) c.made_in_threshold = bkf::parse_rational(threshold);
    c.validate();
    return c;
  }
};

void add_common(CLI::App* cmd, CommonOptions& o, bool needs_out) {
  cmd->add_option("--data", o.data_dir, "Directory holding the canonical input files");
  cmd->add_option("--publications", o.publications, "publications.jsonl (overrides --data)");
  cmd->add_option("--citations", o.citations, "citations.csv (overrides --data)");
  cmd->add_option("--journals", o.journals, "journals.csv (overrides --data)");
  cmd->add_option("--sc-areas", o.sc_areas, "sc_areas.csv (overrides --data)");
  cmd->add_option("--config", o.config, "Analysis configuration file");
  auto out = cmd->add_option("--out", o.out_dir, "Output directory");
  if (needs_out) out->required();
  cmd->add_option("--countries", o.countries, "Override the analysis countries (comma list)");
  cmd->add_option("--cutoff", o.cutoff, "Override the citation cutoff (YYYY-MM-DD)");
  cmd->add_option("--threshold", o.threshold, "Override the made-in threshold (e.g. 1/2)");
  cmd->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::Range(1u, 1024u));
  cmd->add_option("--max-samples", o.max_samples, "Offending ids kept per diagnostic class");
}

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw bkf::IoError("cannot write " + path.string());
  os << text;
  if (!os) throw bkf::IoError("write failed: " + path.string());
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::is_directory(dir)) throw bkf::IoError("cannot create output directory " + dir.string());
}

int cmd_validate(const CommonOptions& o) {
  auto config = o.load_config();
  auto inputs = bkf::load_inputs(o.paths(), o.max_samples);
  for (const auto& issue : inputs.issues) log(Level::info, issue);
  auto report = inputs.report;
  ordered_json j;
  int code = 0;
  std::string error;
  try {
    auto corpus = bkf::build_corpus(std::move(inputs.publications), inputs.citations,
                                    std::move(inputs.categories), config, o.max_samples);
    auto attribution = bkf::attribute_corpus(corpus);
    report.merge(corpus.diagnostics());
    report.merge(attribution.diagnostics());
    j["publications"] = corpus.size();
    j["citation_edges"] = corpus.edges().size();
    j["production_candidates"] = attribution.candidate_count();
    j["made_in_analysis_countries"] = attribution.production_count();
  } catch (const bkf::DataError& e) {
    code = 1;
    error = e.what();
  }
  j["status"] = code == 0 ? "ok" : "error";
  if (!error.empty()) j["error"] = error;
  j["diagnostics"] = report.to_json();

  std::cout << report.to_text();
  if (!error.empty()) std::cout << "error: " << error << '\n';
  std::cout << (code == 0 ? "validation passed" : "validation failed") << '\n';

  const fs::path out = o.out_dir.empty() ? fs::path(".") : fs::path(o.out_dir);
  ensure_dir(out);
  write_text_file(out / "validation.json", j.dump(2) + "\n");
  return code;
}

int cmd_compute(const CommonOptions& o, bool dump_gains) {
  Stopwatch clock;
  ordered_json timings = ordered_json::object();
  const fs::path out = o.out_dir;
  ensure_dir(out);

  auto config = o.load_config();
  auto paths = o.paths();
  auto inputs = bkf::load_inputs(paths, o.max_samples);
  for (const auto& issue : inputs.issues) log(Level::info, issue);
  timings["ingest_ms"] = clock.lap_ms();
  log(Level::info, "ingested " + std::to_string(inputs.publications.size()) + " publications, " +
                       std::to_string(inputs.citations.size()) + " citation links");

  auto results = bkf::compute_all(std::move(inputs), config, o.jobs);
  timings["compute_ms"] = clock.lap_ms();
  auto written = bkf::write_outputs(*results, out, dump_gains);
  timings["write_ms"] = clock.lap_ms();

  ordered_json manifest;
  {
    std::ostringstream cfg;
    bkf::write_config(cfg, results->corpus.config());
    manifest["config"] = cfg.str();
  }
  manifest["inputs"] = ordered_json::array();
  for (const auto& p : paths.all())
    manifest["inputs"].push_back({{"path", p.string()}, {"sha256", sha256_file(p)}});
  manifest["diagnostics"] = results->diagnostics.to_json();
  manifest["outputs"] = ordered_json::array();
  for (const auto& name : written)
    manifest["outputs"].push_back({{"file", name}, {"sha256", sha256_file(out / name)}});
  manifest["timings"] = timings;
  manifest["finished_at"] = static_cast<long long>(std::time(nullptr));
  write_text_file(out / "manifest.json", manifest.dump(2) + "\n");

  for (const auto& b : results->bkf)
    std::cout << b.country.str() << '\t' << bkf::signed_str(b.balance) << '\n';
  return 0;
}

int cmd_pair(const CommonOptions& o, const std::string& k, const std::string& l) {
  auto config = o.load_config();
  const bkf::CountryCode ck(k), cl(l);
  if (ck == cl) throw bkf::DataError("pair needs two different countries");
  for (const auto& c : {ck, cl})
    if (config.index_of(c) < 0) throw bkf::DataError("country '" + c.str() + "' is not in the analysis set");
  ensure_dir(o.out_dir);
  auto results = bkf::compute_all(bkf::load_inputs(o.paths(), o.max_samples), config, o.jobs);
  auto name = bkf::write_bilateral(*results, ck, cl, o.out_dir);
  std::cout << (fs::path(o.out_dir) / name).string() << '\n';
  return 0;
}

int cmd_top(const CommonOptions& o, const std::string& country, const std::string& kind, std::size_t n) {
  auto config = o.load_config();
  const bkf::CountryCode c(country);
  if (config.index_of(c) < 0) throw bkf::DataError("country '" + country + "' is not in the analysis set");
  auto results = bkf::compute_all(bkf::load_inputs(o.paths(), o.max_samples), config, o.jobs);
  if (kind == "bkf") {
    auto rows = bkf::bkf_by_field(results->field_gains, results->corpus.categories(), c);
    auto [low, high] = bkf::top_bottom_fields(rows, n);
    std::cout << "# lowest balance\n";
    for (const auto& r : low)
      std::cout << r.sc_code << '\t' << r.generated << '\t' << r.earned << '\t' << bkf::signed_str(r.balance) << '\n';
    std::cout << "# highest balance\n";
    for (const auto& r : high)
      std::cout << r.sc_code << '\t' << r.generated << '\t' << r.earned << '\t' << bkf::signed_str(r.balance) << '\n';
    return 0;
  }
  const auto& table = kind == "kosi" ? results->kosi : results->kisi;
  std::cout << "# " << bkf::to_string(table.direction) << " " << country << '\n';
  for (const auto& [sc, v] : bkf::top_specializations(table, c, n))
    std::cout << sc << '\t' << bkf::format_index(v) << '\n';
  return 0;
}

int cmd_generate(const std::string& params_path, const std::string& out_dir,
                 std::optional<std::uint64_t> seed) {
  if (!fs::is_regular_file(params_path)) throw bkf::IoError("missing parameter file " + params_path);
  auto in = bkf::open_input(params_path);
  auto params = bkf::synth::params_from_keys(bkf::parse_key_values(in));
  if (seed) params.seed = *seed;
  ensure_dir(out_dir);
  auto corpus = bkf::synth::generate_corpus(params);
  bkf::synth::write_corpus(corpus, out_dir);
  std::cout << corpus.publications.size() << " publications, " << corpus.citations.size()
            << " citation links written to " << out_dir << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Balance of knowledge flows from publication and citation records"};
  app.require_subcommand(1);

  CommonOptions validate_opts, compute_opts, pair_opts, top_opts;
  auto* validate = app.add_subcommand("validate", "Parse and check the input files");
  add_common(validate, validate_opts, false);

  auto* compute = app.add_subcommand("compute", "Compute every report table");
  add_common(compute, compute_opts, true);
  bool dump_gains = false;
  compute->add_flag("--dump-gains", dump_gains, "Also write gains.csv");

  auto* pair = app.add_subcommand("pair", "Bilateral balance between two countries");
  add_common(pair, pair_opts, true);
  std::string pair_k, pair_l;
  pair->add_option("k", pair_k, "First country (perspective)")->required();
  pair->add_option("l", pair_l, "Second country")->required();

  auto* top = app.add_subcommand("top", "Ranked field balances or specialization indexes");
  add_common(top, top_opts, false);
  std::string top_country, top_kind = "bkf";
  std::size_t top_n = 10;
  top->add_option("--country", top_country, "Country to rank")->required();
  top->add_option("--kind", top_kind, "bkf, kosi or kisi")->check(CLI::IsMember({"bkf", "kosi", "kisi"}));
  top->add_option("-n", top_n, "Rows per list")->check(CLI::PositiveNumber);

  auto* generate = app.add_subcommand("generate", "Write a synthetic corpus");
  std::string gen_config, gen_out;
  std::optional<std::uint64_t> gen_seed;
  generate->add_option("--config", gen_config, "Generator parameter file")->required();
  generate->add_option("--out", gen_out, "Output directory")->required();
  generate->add_option("--seed", gen_seed, "Override the seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*validate) return cmd_validate(validate_opts);
    if (*compute) return cmd_compute(compute_opts, dump_gains);
    if (*pair) return cmd_pair(pair_opts, pair_k, pair_l);
    if (*top) return cmd_top(top_opts, top_country, top_kind, top_n);
    if (*generate) return cmd_generate(gen_config, gen_out, gen_seed);
  } catch (const bkf::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const bkf::DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

// lnelab - numerical and exact experiments on Lipschitz normal embedding of
// real algebraic germs. One command per process; all file writes are atomic.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lnelab/classify.hpp"
#include "lnelab/corpus.hpp"
#include "lnelab/io.hpp"
#include "lnelab/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 2;
constexpr int kExitSamplingFailure = 3;
constexpr int kExitMissingArtifacts = 4;

constexpr std::uint64_t kDefaultSeed = 20240917;

std::uint64_t resolve_seed(std::optional<std::uint64_t> cli_seed) {
  if (cli_seed) return *cli_seed;
  if (const char* env = std::getenv("LNELAB_SEED")) return std::strtoull(env, nullptr, 10);
  return kDefaultSeed;
}

std::vector<double> parse_schedule(const std::string& text) {
  std::vector<double> out;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ',')) out.push_back(std::stod(item));
  return out;
}

lnelab::variety::ImplicitGerm resolve_germ(const std::string& germ_file,
                                           const std::string& corpus_name,
                                           double domain_radius) {
  if (!germ_file.empty()) return lnelab::harness::load_germ(germ_file);
  if (!corpus_name.empty())
    return lnelab::harness::corpus_germ(lnelab::harness::corpus_entry(corpus_name),
                                        domain_radius);
  throw std::invalid_argument("either --germ or --corpus is required");
}

int run_classify_brieskorn(int a, int b, int c, bool as_json) {
  const lnelab::classify::ExactVerdict v =
      lnelab::classify::classify_brieskorn(lnelab::classify::BrieskornParams(a, b, c));
  if (as_json) {
    std::cout << "{\"lne\": " << (v.lne ? "true" : "false") << ", \"clause\": \""
              << lnelab::classify::to_string(v.clause) << "\", \"description\": \""
              << v.description << "\"}\n";
  } else {
    std::cout << (v.lne ? "LNE" : "non-LNE") << " (clause "
              << lnelab::classify::to_string(v.clause) << ")\n"
              << v.description << "\n";
    if (v.witness) {
      std::cout << "witness arcs: " << v.witness->arc_minus.to_string() << " and "
                << v.witness->arc_plus.to_string()
                << "; predicted inner/outer ratio slope "
                << lnelab::harness::format_double(v.witness->ratio_slope) << "\n";
    }
  }
  return kExitOk;
}

int run_classify_horn(int m, int p, int n, bool as_json) {
  const lnelab::classify::HornVerdict v = lnelab::classify::classify_horn(m, p, n);
  if (as_json) {
    std::cout << "{\"applicable\": " << (v.applicable ? "true" : "false")
              << ", \"lne\": " << (v.lne ? "true" : "false") << ", \"description\": \""
              << v.description << "\"}\n";
    return kExitOk;
  }
  if (!v.applicable) {
    std::cout << "criterion inapplicable\n" << v.description << "\n";
    return kExitOk;
  }
  std::cout << "LNE\n" << v.description << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "lnelab: inner-vs-outer metric experiments on real algebraic germs.\n"
      "Seeds default to " +
      std::to_string(kDefaultSeed) +
      "; the LNELAB_SEED environment variable overrides the default when\n"
      "--seed is not given."};
  app.require_subcommand(1);

  // classify
  auto* classify_cmd = app.add_subcommand("classify", "exact LNE classifiers");
  classify_cmd->require_subcommand(1);
  int ba = 0, bb = 0, bc = 0;
  bool classify_json = false;
  auto* brieskorn_cmd =
      classify_cmd->add_subcommand("brieskorn", "classify x^a + y^b + z^c = 0");
  brieskorn_cmd->add_option("a", ba)->required();
  brieskorn_cmd->add_option("b", bb)->required();
  brieskorn_cmd->add_option("c", bc)->required();
  brieskorn_cmd->add_flag("--json", classify_json, "machine-readable output");
  int hm = 0, hp = 0, hn = 0;
  auto* horn_cmd = classify_cmd->add_subcommand(
      "horn", "classify x_n^m = x_0^p + ... + x_(n-1)^p");
  horn_cmd->add_option("m", hm)->required();
  horn_cmd->add_option("p", hp)->required();
  horn_cmd->add_option("n", hn)->required();
  horn_cmd->add_flag("--json", classify_json, "machine-readable output");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "link sweep over a radius schedule");
  std::string germ_file, corpus_name, norm_text = "euclidean", schedule_text;
  std::string csv_path, summary_path, section_text;
  double domain_radius = 1.0;
  int per_slice = 1200;
  std::optional<std::uint64_t> seed_opt;
  sweep_cmd->add_option("--germ", germ_file, "germ spec file (JSON)");
  sweep_cmd->add_option("--corpus", corpus_name, "named corpus entry");
  sweep_cmd->add_option("--norm", norm_text,
                        "euclidean | max:v1,v2,.. | one_p:p[:split] | b_one:b:split");
  sweep_cmd->add_option("--schedule", schedule_text,
                        "comma-separated decreasing radii (default: geometric)");
  sweep_cmd->add_option("--count", per_slice, "samples per slice");
  sweep_cmd->add_option("--seed", seed_opt, "RNG seed (overrides LNELAB_SEED)");
  sweep_cmd->add_option("--domain", domain_radius, "domain radius for corpus germs");
  sweep_cmd->add_option("--sections", section_text,
                        "sweep hyperplane sections along this direction (comma-separated)");
  sweep_cmd->add_option("--csv", csv_path, "write the per-radius table here")->required();
  sweep_cmd->add_option("--summary", summary_path, "write the verdict summary here");

  // crosscheck
  auto* cross_cmd =
      app.add_subcommand("crosscheck", "direct-ball route against link-sweep route");
  std::string cc_germ_file, cc_corpus, cc_schedule_text, cc_out;
  double cc_domain = 1.0;
  std::optional<std::uint64_t> cc_seed;
  cross_cmd->add_option("--germ", cc_germ_file, "germ spec file (JSON)");
  cross_cmd->add_option("--corpus", cc_corpus, "named corpus entry");
  cross_cmd->add_option("--schedule", cc_schedule_text, "comma-separated radii");
  cross_cmd->add_option("--seed", cc_seed, "RNG seed (overrides LNELAB_SEED)");
  cross_cmd->add_option("--domain", cc_domain, "domain radius for corpus germs");
  cross_cmd->add_option("--out", cc_out, "summary JSON path")->required();

  // corpus
  auto* corpus_cmd = app.add_subcommand("corpus", "list or emit corpus entries");
  corpus_cmd->require_subcommand(1);
  auto* list_cmd = corpus_cmd->add_subcommand("list", "list entries");
  std::string emit_name, emit_out;
  double emit_domain = 1.0;
  auto* emit_cmd = corpus_cmd->add_subcommand("emit", "write a germ spec or cloud CSV");
  emit_cmd->add_option("name", emit_name)->required();
  emit_cmd->add_option("--out", emit_out)->required();
  emit_cmd->add_option("--domain", emit_domain, "domain radius");

  // report
  auto* report_cmd = app.add_subcommand("report", "merge run summaries into one document");
  std::vector<std::string> report_inputs;
  std::string report_out;
  report_cmd->add_option("--inputs", report_inputs, "summary JSON files")->required();
  report_cmd->add_option("--out", report_out, "report path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadInput;
  }

  try {
    if (brieskorn_cmd->parsed())
      return run_classify_brieskorn(ba, bb, bc, classify_json);
    if (horn_cmd->parsed()) return run_classify_horn(hm, hp, hn, classify_json);

    if (sweep_cmd->parsed()) {
      const std::uint64_t seed = resolve_seed(seed_opt);
      const auto germ = resolve_germ(germ_file, corpus_name, domain_radius);
      lnelab::linkscan::SweepParams params;
      params.per_slice_count = per_slice;
      const std::vector<double> schedule = schedule_text.empty()
                                               ? lnelab::linkscan::default_schedule(germ)
                                               : parse_schedule(schedule_text);
      lnelab::linkscan::SliceSweep sw;
      if (!section_text.empty()) {
        const std::vector<double> wv = parse_schedule(section_text);
        lnelab::Vec w(wv.size());
        for (std::size_t i = 0; i < wv.size(); ++i) w[i] = wv[i];
        sw = lnelab::linkscan::section_sweep(germ, w, schedule, params, seed);
      } else {
        const auto norm = lnelab::harness::parse_norm(norm_text, germ.ambient_dim());
        sw = lnelab::linkscan::sweep(germ, norm, schedule, params, seed);
      }
      const bool all_empty =
          std::all_of(sw.records.begin(), sw.records.end(),
                      [](const auto& r) { return r.empty; });
      lnelab::harness::atomic_write(csv_path, lnelab::harness::sweep_csv(sw));
      const auto verdict = lnelab::linkscan::llne_verdict(sw);
      if (!summary_path.empty())
        lnelab::harness::atomic_write(
            summary_path, lnelab::harness::sweep_summary_json(sw, verdict, seed));
      if (all_empty) {
        std::cerr << "error: every slice came back below the minimum sample count; "
                     "the real locus is empty or too thin at these radii\n";
        return kExitSamplingFailure;
      }
      std::cout << "verdict: " << lnelab::linkscan::to_string(verdict.classification)
                << " (slope " << lnelab::harness::format_double(verdict.slope) << " +- "
                << lnelab::harness::format_double(verdict.slope_stderr) << ", K "
                << lnelab::harness::format_double(verdict.separation_K) << ")\n";
      return kExitOk;
    }

    if (cross_cmd->parsed()) {
      const std::uint64_t seed = resolve_seed(cc_seed);
      lnelab::classify::CrossCheckParams params;
      lnelab::classify::CrossCheckReport report;
      const lnelab::harness::CorpusEntry* entry = nullptr;
      std::string germ_name;
      if (!cc_corpus.empty()) entry = &lnelab::harness::corpus_entry(cc_corpus);
      if (entry && entry->generator == lnelab::harness::CorpusEntry::Generator::spiral) {
        const std::vector<double> schedule = cc_schedule_text.empty()
                                                 ? std::vector<double>{0.32, 0.16, 0.08, 0.04}
                                                 : parse_schedule(cc_schedule_text);
        report = lnelab::harness::spiral_cross_check(schedule, params.sweep.pair_budget, seed);
        germ_name = "spiral";
      } else if (entry &&
                 entry->generator == lnelab::harness::CorpusEntry::Generator::horns_union) {
        report = lnelab::harness::horns_union_cross_check(entry->int_params.at(0),
                                                          params.sweep.pair_budget, seed);
        germ_name = entry->name;
      } else {
        const auto germ = resolve_germ(cc_germ_file, cc_corpus, cc_domain);
        const std::vector<double> schedule = cc_schedule_text.empty()
                                                 ? lnelab::linkscan::default_schedule(germ)
                                                 : parse_schedule(cc_schedule_text);
        std::optional<bool> exact;
        if (entry) exact = lnelab::harness::corpus_exact_lne(*entry);
        report = lnelab::classify::cross_check_theorem(germ, schedule, params, seed, exact);
        germ_name = germ.name;
      }
      lnelab::harness::atomic_write(
          cc_out, lnelab::harness::crosscheck_summary_json(entry, germ_name, report, seed));
      std::cout << "route A: " << lnelab::linkscan::to_string(report.route_a.classification)
                << ", route B: " << lnelab::linkscan::to_string(report.route_b.classification)
                << (report.agree ? " (agree)" : " (disagree)") << "\n";
      return kExitOk;
    }

    if (list_cmd->parsed()) {
      for (const auto& entry : lnelab::harness::standard_corpus()) {
        std::cout << entry.name << ": " << (entry.lne ? "LNE" : "non-LNE")
                  << (entry.exact_classifier ? " [exact]" : "")
                  << (entry.llne_exception ? " [link-route exception]" : "") << " - "
                  << entry.rationale << "\n";
      }
      return kExitOk;
    }
    if (emit_cmd->parsed()) {
      const auto& entry = lnelab::harness::corpus_entry(emit_name);
      using G = lnelab::harness::CorpusEntry::Generator;
      if (entry.generator == G::spiral) {
        const auto sp = lnelab::harness::spiral_cloud_turns(entry.int_params.at(0));
        lnelab::harness::atomic_write(emit_out, lnelab::harness::cloud_csv(sp.cloud));
      } else if (entry.generator == G::horns_union) {
        const auto cloud =
            lnelab::harness::horns_union_cloud(entry.int_params.at(0), 1.0, 0.01);
        lnelab::harness::atomic_write(emit_out, lnelab::harness::cloud_csv(cloud));
      } else {
        lnelab::harness::save_germ(lnelab::harness::corpus_germ(entry, emit_domain),
                                   emit_out);
      }
      return kExitOk;
    }

    if (report_cmd->parsed()) {
      std::vector<std::string> docs;
      for (const auto& path : report_inputs) {
        std::ifstream in(path);
        if (!in) {
          std::cerr << "error: missing input " << path << "\n";
          return kExitMissingArtifacts;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        docs.push_back(buf.str());
      }
      const auto result = lnelab::harness::merge_reports(docs);
      lnelab::harness::atomic_write(report_out, result.document);
      std::cout << "rows: " << result.row_count << ", warnings: " << result.warning_count
                << "\n";
      return kExitOk;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSamplingFailure;
  }
  return kExitBadInput;
}

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lnelab/classify.hpp"
#include "lnelab/corpus.hpp"
#include "lnelab/sweep.hpp"

namespace lnelab::harness {

// Germ spec document:
// {ambient_dim, basepoint: [..], equations: [{terms: [{coeff, exponents: [..]}]}],
//  residual_tol, domain_radius} plus an optional name.
std::string germ_to_json(const variety::ImplicitGerm& germ);
variety::ImplicitGerm germ_from_json(const std::string& text);
variety::ImplicitGerm load_germ(const std::filesystem::path& path);
void save_germ(const variety::ImplicitGerm& germ, const std::filesystem::path& path);

/// Write-then-rename so readers never observe a partial file.
void atomic_write(const std::filesystem::path& path, const std::string& content);

/// Shortest round-trippable decimal form; infinities print as "inf".
std::string format_double(double v);

/// Sweep table, one row per radius: t,n_samples,n_components,C_t,d0,stable.
std::string sweep_csv(const linkscan::SliceSweep& sweep);

std::string cloud_csv(const variety::SampleCloud& cloud);

std::string sweep_summary_json(const linkscan::SliceSweep& sweep,
                               const linkscan::LlneVerdict& verdict, std::uint64_t seed);

std::string crosscheck_summary_json(const CorpusEntry* entry, const std::string& germ_name,
                                    const classify::CrossCheckReport& report,
                                    std::uint64_t seed);

struct ReportResult {
  std::string document;
  int warning_count = 0;
  int row_count = 0;
};

/// Merges sweep/crosscheck summary documents into one report with
/// exact-vs-numeric conflict flags.
ReportResult merge_reports(const std::vector<std::string>& summaries);

/// "euclidean" | "max:v1,v2,.." | "one_p:p[:split]" | "b_one:b:split"
linkscan::NormSpec parse_norm(const std::string& text, int ambient_dim);

}  // namespace lnelab::harness

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lnelab/lne.hpp"
#include "lnelab/norms.hpp"
#include "lnelab/sampling.hpp"

namespace lnelab::linkscan {

struct SweepRecord {
  double t = 0.0;
  int n_samples = 0;
  int n_components = 0;
  double constant = 1.0;  // max over components; a singleton component counts 1
  std::vector<double> component_constants;
  double d0 = geodesy::kNoSeparation;
  bool stable = false;
  bool empty = true;
};

struct SliceSweep {
  std::string germ_ref;
  NormSpec norm = NormSpec::euclidean();
  std::vector<double> schedule;
  std::vector<SweepRecord> records;
};

struct SweepParams {
  int per_slice_count = 1200;
  int min_slice_count = 8;
  std::int64_t pair_budget = 4'000'000;
  double stability_factor = 1.5;
};

/// Geometric radius schedule t0 * 2^-k, k = 0..count-1, t0 = domain/4.
std::vector<double> default_schedule(const variety::ImplicitGerm& germ, int count = 6);

SliceSweep sweep(const variety::ImplicitGerm& germ, const NormSpec& norm,
                 std::vector<double> schedule, const SweepParams& params,
                 std::uint64_t seed);

/// Same per-radius records over hyperplane sections {<x-p, w> = t}.
SliceSweep section_sweep(const variety::ImplicitGerm& germ, Vec w,
                         std::vector<double> schedule, const SweepParams& params,
                         std::uint64_t seed);

enum class LlneClass { bounded, diverging, inconclusive };
std::string to_string(LlneClass c);

struct VerdictThresholds {
  double bounded_slope = 0.1;
  double bounded_stderr = 0.05;
  double diverging_slope = -0.2;  // and |slope| > 2 stderr
  int min_records = 4;
};

struct LlneVerdict {
  LlneClass classification = LlneClass::inconclusive;
  double slope = 0.0;
  double slope_stderr = 0.0;
  double uniform_constant_estimate = 0.0;
  double separation_K = geodesy::kNoSeparation;  // min d0(t)/t over split slices
  int records_used = 0;
};

/// Classifies the trend of log C_t against log t over the stable, non-empty
/// records of a sweep.
LlneVerdict llne_verdict(const SliceSweep& sweep, const VerdictThresholds& thresholds = {});

struct NormAgreement {
  std::vector<NormSpec> norms;
  std::vector<LlneVerdict> verdicts;
  bool conclusive = false;
  bool agree = false;  // bounded/diverging classifications coincide
};

NormAgreement norm_invariance_check(const variety::ImplicitGerm& germ,
                                    const std::vector<NormSpec>& norms,
                                    std::vector<double> schedule, const SweepParams& params,
                                    std::uint64_t seed);

}  // namespace lnelab::linkscan

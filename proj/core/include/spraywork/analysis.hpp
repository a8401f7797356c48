#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "spraywork/metrizability.hpp"
#include "spraywork/sampling.hpp"

namespace spraywork {

inline constexpr const char* kReportSchemaVersion = "1";
inline constexpr const char* kToolVersion = "0.1.0";

struct AnalysisConfig {
  SprayModel model;
  std::vector<PointTM> explicit_points;  // used in addition to sampling
  SampleSpec sample;                     // sample.count == 0 disables sampling
  Tolerances tol;
  int order = 5;            // jet order; escalated automatically when the
                            // compatibility matrix needs one more derivative
  int threads = 1;
  bool skip_homogeneity = false;
};

struct AnalysisResult {
  std::vector<PointTM> points;
  std::vector<PointConditionReport> reports;  // aligned with `points`
  std::vector<int> skipped;  // indices whose expressions were singular
  AggregateVerdict verdict;
  std::vector<std::string> warnings;
  double elapsed_seconds = 0.0;
};

/// Full pipeline: homogeneity gate, per-point condition reports (parallel
/// over points, deterministic fold), aggregate verdict.
AnalysisResult run_analysis(const AnalysisConfig& cfg);

/// Versioned JSON report with stable key order.
nlohmann::ordered_json report_json(const AnalysisConfig& cfg,
                                   const AnalysisResult& res);

}  // namespace spraywork

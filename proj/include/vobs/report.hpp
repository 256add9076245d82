#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vobs/dataset.hpp"
#include "vobs/stats.hpp"

namespace vobs {
namespace report {

class ReportError : public std::runtime_error {
 public:
  ReportError(std::string code, const std::string& message);
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

struct ReportOptions {
  double alpha = 0.05;
  // With directional tails, the "larger/higher" hypothesis clauses use
  // one-tailed tests in their stated direction; otherwise everything is
  // two-sided.
  bool directional = true;
};

struct GroupSummary {
  std::string group;
  stats::Summary stats;  // n == 0 marks an absent group
};

struct DeltaSummary {
  std::string kind;
  int n = 0;
  int excluded = 0;
  Rat mean;
  double sd = 0.0;
};

struct TestRow {
  std::string id;
  std::string description;
  std::optional<stats::TestResult> result;
  std::string skip_reason;  // non-empty when the test could not run
};

struct HypothesisRow {
  std::string id;
  std::string statement;
  std::string test_id;
  bool directional = false;
  std::optional<double> p_value;
  std::string verdict;  // "supported" | "rejected" | "not_testable"
};

struct Flags {
  bool td_timing_effect = false;
  bool td_first_movers_toward_equilibrium = false;
  bool trust_timing_null = false;
};

struct AnalysisReport {
  double alpha = 0.05;
  bool directional_tails = true;
  int rows = 0;
  int subjects = 0;
  int sessions = 0;

  std::vector<GroupSummary> claims;                 // pooled panels
  std::map<std::string, std::vector<GroupSummary>> claims_by_sequence;
  std::vector<GroupSummary> investment;
  std::vector<GroupSummary> returns;
  std::vector<DeltaSummary> deltas;

  std::vector<TestRow> tests;
  std::vector<HypothesisRow> hypotheses;
  Flags flags;
};

// Runs the full battery: location tests of claims against the minimum,
// timing comparisons of claims / equilibrium-claim rates / investments /
// returns, and one-sample tests of the within-subject differences. Requires
// all four games in the dataset (IncompleteDesign otherwise).
AnalysisReport hypothesis_report(const data::ChoiceDataset& dataset, const ReportOptions& options);

std::string report_json(const AnalysisReport& report);
std::string report_text(const AnalysisReport& report);

struct EcdfSeries {
  std::string name;
  std::vector<stats::EcdfPoint> points;
};

// Distribution series for external plotting: claims by treatment and mover,
// investments and returns by timing, and the within-subject differences.
std::vector<EcdfSeries> ecdf_series(const data::ChoiceDataset& dataset);

// Writes report.json, report.txt, deltas.csv, and one ecdf_<name>.csv per
// series into the directory (created if needed). Output depends only on the
// dataset contents and options.
void write_analysis_artifacts(const data::ChoiceDataset& dataset, const AnalysisReport& report,
                              const std::filesystem::path& out_dir);

}  // namespace report
}  // namespace vobs

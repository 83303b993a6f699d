#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "formaltrip/metrics/metrics.hpp"

namespace formaltrip::metrics {

struct BatchRow {
  std::size_t batch_index = 1;
  std::size_t records = 0;
  std::size_t errored = 0;
  double compliance = 0.0;
  double accuracy = 0.0;
  double accuracy_excluding_unknown = 0.0;
  double unknown_rate = 0.0;
};

struct Report {
  std::vector<std::string> models;
  std::vector<std::string> formalisms;
  syntax::Metric metric = syntax::Metric::OperatorTotal;
  std::size_t records = 0;
  Compliance compliance;
  Accuracy accuracy;
  std::vector<BatchRow> batches;
  BatchStatistics compliance_stats;
  BatchStatistics accuracy_stats;
  BatchStatistics accuracy_excluding_unknown_stats;
  std::optional<JudgeScores> judge;
  std::size_t judge_records = 0;
};

/// Throws EmptyInput when there are no round-trip records.
Report build_report(std::span<const llm::RoundTripRecord> records,
                    std::span<const llm::JudgeRecord> judges, syntax::Metric by);

std::string summary_json(const Report& r);
std::string text_table(const Report& r);
/// metric_value,samples,compliance,accuracy,unknown_rate
std::string category_csv(const Report& r);

/// Writes summary.json, report.txt and categories.csv into `dir`.
void write_report(const Report& r, const std::filesystem::path& dir);

}  // namespace formaltrip::metrics

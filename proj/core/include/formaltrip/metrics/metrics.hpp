#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "formaltrip/common/error.hpp"
#include "formaltrip/llm/pipeline.hpp"
#include "formaltrip/syntax/complexity.hpp"

namespace formaltrip::metrics {

class EmptyInput : public Error {
 public:
  using Error::Error;
};

struct Bucket {
  std::size_t samples = 0;  // excludes errored records
  std::size_t compliant = 0;
  std::size_t equivalent = 0;
  std::size_t unknown = 0;
  std::size_t errored = 0;

  bool operator==(const Bucket&) const = default;
};

struct CategoryBreakdown {
  syntax::Metric metric = syntax::Metric::OperatorTotal;
  std::map<double, Bucket> buckets;

  Bucket total() const;
  bool operator==(const CategoryBreakdown&) const = default;
};

/// Category value of a record under `m`; the stored value when `m` is the dataset's
/// metric, otherwise recomputed from φ.
double category_of(const llm::RoundTripRecord& r, syntax::Metric m);

CategoryBreakdown breakdown(std::span<const llm::RoundTripRecord> records, syntax::Metric m);

struct Compliance {
  double value = 0.0;
  std::size_t compliant = 0;
  std::size_t total = 0;    // non-errored records
  std::size_t errored = 0;
  CategoryBreakdown by_category;
};

/// Compliant / non-errored records. Throws EmptyInput when no record is left.
Compliance compliance(std::span<const llm::RoundTripRecord> records,
                      syntax::Metric m = syntax::Metric::OperatorTotal);

struct Accuracy {
  double value = 0.0;                  // equivalent / non-errored records
  double value_excluding_unknown = 0.0;  // equivalent / (non-errored - unknown)
  double value_including_errored = 0.0;  // equivalent / all records
  double unknown_rate = 0.0;
  std::size_t equivalent = 0;
  std::size_t unknown = 0;
  std::size_t total = 0;
  std::size_t errored = 0;
  CategoryBreakdown by_category;
};

/// Throws EmptyInput when no non-errored record exists.
Accuracy accuracy(std::span<const llm::RoundTripRecord> records,
                  syntax::Metric m = syntax::Metric::OperatorTotal);

struct ConfusionMatrix {
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
  std::size_t unparseable = 0;  // already counted in fp or fn

  std::size_t total() const { return tp + fp + tn + fn; }
  bool operator==(const ConfusionMatrix&) const = default;
};

struct Ratio {
  double value = 0.0;
  bool zero_denominator = false;  // value reported as 1.0

  bool operator==(const Ratio&) const = default;
};

struct JudgeScores {
  ConfusionMatrix matrix;
  Ratio precision, sensitivity, specificity, f1;
  std::size_t errored = 0;  // provider failures, not scored
};

JudgeScores scores_from(const ConfusionMatrix& m);
/// Positive class: equivalent. Unparseable answers count as wrong predictions.
JudgeScores judge_scores(std::span<const llm::JudgeRecord> records);

/// 1 - C(n-c, k) / C(n, k) in product form. Throws ConfigError unless c <= n and k <= n.
double pass_at_k(std::size_t n, std::size_t c, std::size_t k);

struct TaskSamples {
  std::size_t n = 0;
  std::size_t c = 0;
};

/// Mean of pass_at_k over tasks. Throws EmptyInput for no tasks.
double pass_at_k(std::span<const TaskSamples> tasks, std::size_t k);

struct BatchStatistics {
  std::vector<double> values;
  double mean = 0.0;
  double std_population = 0.0;
  std::optional<double> std_sample;  // absent for a single batch
  bool single_sample = false;

  bool operator==(const BatchStatistics&) const = default;
};

/// Throws EmptyInput for an empty list.
BatchStatistics batch_stats(std::span<const double> values);

}  // namespace formaltrip::metrics

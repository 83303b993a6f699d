#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "formaltrip/grammar/derivation.hpp"
#include "formaltrip/grammar/grammar.hpp"
#include "formaltrip/grammar/vocabulary.hpp"
#include "formaltrip/syntax/complexity.hpp"
#include "formaltrip/syntax/expression.hpp"

namespace formaltrip::grammar {

/// Formalism produced by a built-in grammar; throws ConfigError for other ids.
syntax::Formalism builtin_formalism(std::string_view grammar_id);

/// cfg_depth for regex, operator_total otherwise.
syntax::Metric default_metric(syntax::Formalism f);

struct DatasetRecord {
  std::string id;
  syntax::Formalism formalism = syntax::Formalism::Prop;
  std::string grammar_id;
  std::size_t batch_index = 1;  // 1-based
  syntax::Metric category_metric = syntax::Metric::OperatorTotal;
  double category_value = 0.0;
  syntax::FormalExpression expression;
  std::string cfg_expression;
  std::size_t cfg_depth = 0;
  Vocabulary vocabulary;
  std::uint64_t seed = 0;

  /// Profile of the expression with cfg_depth and, for regexes, the DFA metrics filled in.
  syntax::ComplexityProfile profile() const;

  bool operator==(const DatasetRecord&) const = default;
};

struct CategoryFill {
  double value = 0.0;
  std::size_t available = 0;
  std::size_t taken = 0;

  bool operator==(const CategoryFill&) const = default;
};

struct BatchSummary {
  std::size_t index = 1;
  std::uint64_t seed = 0;
  std::size_t leaves = 0;
  std::vector<CategoryFill> categories;  // ascending by value

  bool operator==(const BatchSummary&) const = default;
};

struct Dataset {
  std::string grammar_id;
  syntax::Formalism formalism = syntax::Formalism::Prop;
  syntax::Metric metric = syntax::Metric::OperatorTotal;
  GenerationConfig config;
  Vocabulary vocabulary;
  std::vector<std::vector<DatasetRecord>> batches;
  std::vector<BatchSummary> summaries;  // parallel to batches

  std::size_t size() const;
  /// One line per category that held fewer than sample_count candidates.
  std::vector<std::string> underfilled() const;

  bool operator==(const Dataset&) const = default;
};

/// Runs the derivation walk once per batch with an independent derived seed, groups the
/// leaves by `config.metric`, samples up to `config.sample_count` leaves per value and
/// instantiates them. Operator and depth metrics group the uninstantiated leaves; DFA
/// metrics group the instantiated expressions. Records are ordered by category value.
Dataset generate_dataset(const Grammar& g, syntax::Formalism formalism,
                         const VocabularyConfig& vocab, const GenerationConfig& config);

/// Value of `m` for an uninstantiated terminal form reached at `depth`, or nullopt for
/// DFA metrics.
std::optional<double> leaf_metric(const Grammar& g, std::span<const Symbol> form,
                                  std::size_t depth, syntax::Metric m);

/// `<grammar_id>_<metric>_batch<k>.jsonl`
std::string batch_file_name(std::string_view grammar_id, syntax::Metric m, std::size_t k);

}  // namespace formaltrip::grammar

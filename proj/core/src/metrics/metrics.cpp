#include "formaltrip/metrics/metrics.hpp"

#include <cmath>
#include <numeric>

#include "formaltrip/verify/verify.hpp"

namespace formaltrip::metrics {

Bucket CategoryBreakdown::total() const {
  Bucket t;
  for (const auto& [value, b] : buckets) {
    t.samples += b.samples;
    t.compliant += b.compliant;
    t.equivalent += b.equivalent;
    t.unknown += b.unknown;
    t.errored += b.errored;
  }
  return t;
}

double category_of(const llm::RoundTripRecord& r, syntax::Metric m) {
  if (m == r.category_metric) return r.category_value;
  if (m == syntax::Metric::CfgDepth) return static_cast<double>(r.cfg_depth);
  syntax::ParseOptions opts;
  if (!r.alphabet.empty()) opts.alphabet = syntax::Alphabet(r.alphabet);
  const auto e = syntax::parse_expression(r.phi, r.formalism, opts);
  auto p = verify::full_profile(e, opts.alphabet);
  p.cfg_depth = r.cfg_depth;
  return syntax::metric_value(p, m);
}

CategoryBreakdown breakdown(std::span<const llm::RoundTripRecord> records, syntax::Metric m) {
  CategoryBreakdown out;
  out.metric = m;
  for (const auto& r : records) {
    Bucket& b = out.buckets[category_of(r, m)];
    if (r.error) {
      ++b.errored;
      continue;
    }
    ++b.samples;
    if (r.compliant()) ++b.compliant;
    if (r.equivalent()) ++b.equivalent;
    if (r.verdict && r.verdict->status == verify::Status::Unknown) ++b.unknown;
  }
  return out;
}

namespace {

double ratio(std::size_t a, std::size_t b) {
  return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b);
}

}  // namespace

Compliance compliance(std::span<const llm::RoundTripRecord> records, syntax::Metric m) {
  Compliance c;
  c.by_category = breakdown(records, m);
  const Bucket t = c.by_category.total();
  if (t.samples == 0) throw EmptyInput("no non-errored records to score");
  c.compliant = t.compliant;
  c.total = t.samples;
  c.errored = t.errored;
  c.value = ratio(t.compliant, t.samples);
  return c;
}

Accuracy accuracy(std::span<const llm::RoundTripRecord> records, syntax::Metric m) {
  Accuracy a;
  a.by_category = breakdown(records, m);
  const Bucket t = a.by_category.total();
  if (t.samples == 0) throw EmptyInput("no non-errored records to score");
  a.equivalent = t.equivalent;
  a.unknown = t.unknown;
  a.total = t.samples;
  a.errored = t.errored;
  a.value = ratio(t.equivalent, t.samples);
  a.value_excluding_unknown = ratio(t.equivalent, t.samples - t.unknown);
  a.value_including_errored = ratio(t.equivalent, t.samples + t.errored);
  a.unknown_rate = ratio(t.unknown, t.samples);
  return a;
}

namespace {

Ratio safe_ratio(double num, double den) {
  if (den == 0.0) return {1.0, true};
  return {num / den, false};
}

}  // namespace

JudgeScores scores_from(const ConfusionMatrix& m) {
  JudgeScores s;
  s.matrix = m;
  const auto tp = static_cast<double>(m.tp), fp = static_cast<double>(m.fp);
  const auto tn = static_cast<double>(m.tn), fn = static_cast<double>(m.fn);
  s.precision = safe_ratio(tp, tp + fp);
  s.sensitivity = safe_ratio(tp, tp + fn);
  s.specificity = safe_ratio(tn, tn + fp);
  s.f1 = safe_ratio(2 * tp, 2 * tp + fp + fn);
  return s;
}

JudgeScores judge_scores(std::span<const llm::JudgeRecord> records) {
  ConfusionMatrix m;
  std::size_t errored = 0;
  for (const auto& r : records) {
    if (r.error) {
      ++errored;
      continue;
    }
    const bool positive = r.pair.ground_truth == verify::Status::Equivalent;
    if (r.answer == llm::JudgeAnswer::Unparseable) {
      ++m.unparseable;
      ++(positive ? m.fn : m.fp);
      continue;
    }
    const bool said_yes = r.answer == llm::JudgeAnswer::Yes;
    if (positive) {
      ++(said_yes ? m.tp : m.fn);
    } else {
      ++(said_yes ? m.fp : m.tn);
    }
  }
  JudgeScores s = scores_from(m);
  s.errored = errored;
  return s;
}

double pass_at_k(std::size_t n, std::size_t c, std::size_t k) {
  if (c > n) throw ConfigError("pass@k needs c <= n");
  if (k > n) throw ConfigError("pass@k needs k <= n");
  if (k == 0) throw ConfigError("pass@k needs k >= 1");
  if (n - c < k) return 1.0;
  // C(n-c, k) / C(n, k) = prod_{i = n-c+1}^{n} (1 - k / i)
  double miss = 1.0;
  for (std::size_t i = n - c + 1; i <= n; ++i) {
    miss *= 1.0 - static_cast<double>(k) / static_cast<double>(i);
  }
  return 1.0 - miss;
}

double pass_at_k(std::span<const TaskSamples> tasks, std::size_t k) {
  if (tasks.empty()) throw EmptyInput("pass@k over no tasks");
  double sum = 0.0;
  for (const auto& t : tasks) sum += pass_at_k(t.n, t.c, k);
  return sum / static_cast<double>(tasks.size());
}

BatchStatistics batch_stats(std::span<const double> values) {
  if (values.empty()) throw EmptyInput("batch statistics over no batches");
  BatchStatistics s;
  s.values.assign(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.std_population = std::sqrt(ss / n);
  s.single_sample = values.size() == 1;
  if (!s.single_sample) s.std_sample = std::sqrt(ss / (n - 1));
  return s;
}

}  // namespace formaltrip::metrics

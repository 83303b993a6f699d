#include "formaltrip/metrics/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>

#include <json.hpp>

namespace formaltrip::metrics {

using ojson = nlohmann::ordered_json;

Report build_report(std::span<const llm::RoundTripRecord> records,
                    std::span<const llm::JudgeRecord> judges, syntax::Metric by) {
  if (records.empty()) throw EmptyInput("no round-trip records to report on");
  Report r;
  r.metric = by;
  r.records = records.size();
  std::set<std::string> models, formalisms;
  std::map<std::size_t, std::vector<llm::RoundTripRecord>> per_batch;
  for (const auto& rec : records) {
    models.insert(rec.model);
    formalisms.insert(std::string(syntax::to_string(rec.formalism)));
    per_batch[rec.batch_index].push_back(rec);
  }
  r.models.assign(models.begin(), models.end());
  r.formalisms.assign(formalisms.begin(), formalisms.end());
  r.compliance = compliance(records, by);
  r.accuracy = accuracy(records, by);

  std::vector<double> comp, acc, acc_known;
  for (const auto& [index, batch] : per_batch) {
    BatchRow row;
    row.batch_index = index;
    row.records = batch.size();
    const Bucket t = breakdown(batch, by).total();
    row.errored = t.errored;
    if (t.samples > 0) {
      const Accuracy a = accuracy(batch, by);
      row.compliance = static_cast<double>(t.compliant) / static_cast<double>(t.samples);
      row.accuracy = a.value;
      row.accuracy_excluding_unknown = a.value_excluding_unknown;
      row.unknown_rate = a.unknown_rate;
    }
    comp.push_back(row.compliance);
    acc.push_back(row.accuracy);
    acc_known.push_back(row.accuracy_excluding_unknown);
    r.batches.push_back(row);
  }
  r.compliance_stats = batch_stats(comp);
  r.accuracy_stats = batch_stats(acc);
  r.accuracy_excluding_unknown_stats = batch_stats(acc_known);
  if (!judges.empty()) {
    r.judge = judge_scores(judges);
    r.judge_records = judges.size();
  }
  return r;
}

namespace {

ojson stats_json(const BatchStatistics& s) {
  ojson j;
  j["values"] = s.values;
  j["mean"] = s.mean;
  j["std_population"] = s.std_population;
  j["std_sample"] = s.std_sample ? ojson(*s.std_sample) : ojson(nullptr);
  j["single_sample"] = s.single_sample;
  return j;
}

ojson ratio_json(const Ratio& r) {
  return ojson{{"value", r.value}, {"zero_denominator", r.zero_denominator}};
}

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string category_label(double v) { return fmt("%g", v); }

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? "," : "") + items[i];
  return out;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

}  // namespace

std::string summary_json(const Report& r) {
  ojson j;
  j["models"] = r.models;
  j["formalisms"] = r.formalisms;
  j["metric"] = std::string(syntax::to_string(r.metric));
  j["records"] = r.records;
  j["compliance"] = {{"value", r.compliance.value},
                     {"compliant", r.compliance.compliant},
                     {"total", r.compliance.total},
                     {"errored", r.compliance.errored}};
  j["accuracy"] = {{"value", r.accuracy.value},
                   {"value_excluding_unknown", r.accuracy.value_excluding_unknown},
                   {"value_including_errored", r.accuracy.value_including_errored},
                   {"equivalent", r.accuracy.equivalent},
                   {"unknown", r.accuracy.unknown},
                   {"total", r.accuracy.total},
                   {"errored", r.accuracy.errored}};
  ojson batches = ojson::array();
  for (const auto& b : r.batches) {
    batches.push_back({{"batch", b.batch_index},
                       {"records", b.records},
                       {"errored", b.errored},
                       {"compliance", b.compliance},
                       {"accuracy", b.accuracy},
                       {"accuracy_excluding_unknown", b.accuracy_excluding_unknown},
                       {"unknown_rate", b.unknown_rate}});
  }
  j["batches"] = batches;
  j["batch_statistics"] = {{"compliance", stats_json(r.compliance_stats)},
                           {"accuracy", stats_json(r.accuracy_stats)},
                           {"accuracy_excluding_unknown",
                            stats_json(r.accuracy_excluding_unknown_stats)}};
  ojson cats = ojson::array();
  for (const auto& [value, b] : r.accuracy.by_category.buckets) {
    cats.push_back({{"value", value},
                    {"samples", b.samples},
                    {"compliant", b.compliant},
                    {"equivalent", b.equivalent},
                    {"unknown", b.unknown},
                    {"errored", b.errored}});
  }
  j["categories"] = cats;
  if (r.judge) {
    const auto& s = *r.judge;
    j["judge"] = {{"records", r.judge_records},
                  {"errored", s.errored},
                  {"confusion_matrix",
                   {{"tp", s.matrix.tp},
                    {"fp", s.matrix.fp},
                    {"tn", s.matrix.tn},
                    {"fn", s.matrix.fn},
                    {"unparseable", s.matrix.unparseable}}},
                  {"precision", ratio_json(s.precision)},
                  {"sensitivity", ratio_json(s.sensitivity)},
                  {"specificity", ratio_json(s.specificity)},
                  {"f1", ratio_json(s.f1)}};
  }
  return j.dump(2) + "\n";
}

std::string text_table(const Report& r) {
  std::string out;
  out += "models: " + join(r.models) + "\n";
  out += "formalisms: " + join(r.formalisms) + "\n";
  out += "categorized by: " + std::string(syntax::to_string(r.metric)) + "\n";
  out += "records: " + std::to_string(r.records) + " (errored " +
         std::to_string(r.compliance.errored) + ")\n\n";

  out += "batch  records  compliance  accuracy  acc_known  unknown\n";
  for (const auto& b : r.batches) {
    out += pad(std::to_string(b.batch_index), 7) + pad(std::to_string(b.records), 9) +
           pad(fmt("%.4f", b.compliance), 12) + pad(fmt("%.4f", b.accuracy), 10) +
           pad(fmt("%.4f", b.accuracy_excluding_unknown), 11) + fmt("%.4f", b.unknown_rate) +
           "\n";
  }
  auto pm = [](const BatchStatistics& s) {
    return fmt("%.4f", s.mean) + " ± " + fmt("%.4f", s.std_population);
  };
  out += "mean ± std (population): compliance " + pm(r.compliance_stats) + ", accuracy " +
         pm(r.accuracy_stats) + ", acc_known " + pm(r.accuracy_excluding_unknown_stats) + "\n";
  if (r.accuracy_stats.std_sample) {
    out += "sample std: compliance " + fmt("%.4f", *r.compliance_stats.std_sample) +
           ", accuracy " + fmt("%.4f", *r.accuracy_stats.std_sample) + "\n";
  }
  out += "overall: compliance " + fmt("%.4f", r.compliance.value) + ", accuracy " +
         fmt("%.4f", r.accuracy.value) + ", excluding unknown " +
         fmt("%.4f", r.accuracy.value_excluding_unknown) + ", including errored " +
         fmt("%.4f", r.accuracy.value_including_errored) + "\n\n";

  out += pad(std::string(syntax::to_string(r.metric)), 16) +
         "samples  compliance  accuracy  unknown_rate\n";
  for (const auto& [value, b] : r.accuracy.by_category.buckets) {
    const double n = static_cast<double>(b.samples);
    out += pad(category_label(value), 16) + pad(std::to_string(b.samples), 9) +
           pad(fmt("%.4f", n ? b.compliant / n : 0.0), 12) +
           pad(fmt("%.4f", n ? b.equivalent / n : 0.0), 10) + fmt("%.4f", n ? b.unknown / n : 0.0) +
           "\n";
  }
  if (r.judge) {
    const auto& s = *r.judge;
    out += "\njudge pairs: " + std::to_string(r.judge_records) + " (errored " +
           std::to_string(s.errored) + ")\n";
    out += "tp " + std::to_string(s.matrix.tp) + "  fp " + std::to_string(s.matrix.fp) + "  tn " +
           std::to_string(s.matrix.tn) + "  fn " + std::to_string(s.matrix.fn) +
           "  unparseable " + std::to_string(s.matrix.unparseable) + "\n";
    auto show = [&](const char* name, const Ratio& q) {
      out += std::string(name) + " " + fmt("%.4f", q.value) +
             (q.zero_denominator ? " (zero denominator)" : "") + "\n";
    };
    show("precision", s.precision);
    show("sensitivity", s.sensitivity);
    show("specificity", s.specificity);
    show("f1", s.f1);
  }
  return out;
}

std::string category_csv(const Report& r) {
  std::string out = "metric_value,samples,compliance,accuracy,unknown_rate\n";
  for (const auto& [value, b] : r.accuracy.by_category.buckets) {
    const double n = static_cast<double>(b.samples);
    out += category_label(value) + "," + std::to_string(b.samples) + "," +
           fmt("%.6f", n ? b.compliant / n : 0.0) + "," + fmt("%.6f", n ? b.equivalent / n : 0.0) +
           "," + fmt("%.6f", n ? b.unknown / n : 0.0) + "\n";
  }
  return out;
}

void write_report(const Report& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const std::pair<const char*, std::string> files[] = {
      {"summary.json", summary_json(r)}, {"report.txt", text_table(r)},
      {"categories.csv", category_csv(r)}};
  for (const auto& [name, content] : files) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw IoError("cannot write " + (dir / name).string());
    out << content;
  }
}

}  // namespace formaltrip::metrics

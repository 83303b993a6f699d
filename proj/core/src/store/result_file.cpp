#include "formaltrip/store/result_file.hpp"

#include <cstdlib>
#include <ctime>
#include <sstream>

#include "formaltrip/common/error.hpp"
#include "formaltrip/common/hash.hpp"
#include "formaltrip/store/codec.hpp"
#include "formaltrip/store/dataset_io.hpp"
#include "store/json_codec.hpp"

namespace formaltrip::store {

namespace fs = std::filesystem;
using detail::ojson;

std::string_view to_string(ResultFormat f) {
  return f == ResultFormat::Judge ? "judge" : "round_trip";
}

ResultFormat result_format_from_string(std::string_view s) {
  if (s == "round_trip") return ResultFormat::RoundTrip;
  if (s == "judge") return ResultFormat::Judge;
  throw IoError("unknown result format '" + std::string(s) + "'");
}

std::string to_json_line(const ResultHeader& h) {
  ojson j;
  j["format"] = std::string(to_string(h.format));
  j["tool_version"] = h.tool_version;
  j["config_hash"] = h.config_hash;
  j["dataset_hash"] = h.dataset_hash;
  j["model"] = h.model;
  j["started_at"] = h.started_at;
  return j.dump();
}

ResultHeader result_header_from_json(std::string_view line) {
  const ojson j = detail::parse_line(line, "result header");
  if (!j.is_object() || !j.contains("format")) throw IoError("result file has no header line");
  try {
    ResultHeader h;
    h.format = result_format_from_string(j.at("format").get<std::string>());
    h.tool_version = j.at("tool_version").get<std::string>();
    h.config_hash = j.at("config_hash").get<std::string>();
    h.dataset_hash = j.at("dataset_hash").get<std::string>();
    h.model = j.at("model").get<std::string>();
    h.started_at = j.at("started_at").get<std::string>();
    return h;
  } catch (const ojson::exception& e) {
    throw IoError(std::string("incomplete result header: ") + e.what());
  }
}

std::string config_hash(const RunSettings& s) {
  const auto& p = s.provider;
  ojson j;
  j["format"] = std::string(to_string(s.format));
  j["provider"] = {{"kind", std::string(llm::to_string(p.kind))},
                   {"endpoint", p.kind == llm::ProviderKind::HttpChat ? p.endpoint : std::string()},
                   {"model", p.model_name()},
                   {"temperature", p.temperature},
                   {"max_tokens", p.max_tokens},
                   {"fixtures", s.fixtures_sha256},
                   {"fallback_reply", p.fallback_reply ? ojson(*p.fallback_reply) : ojson()},
                   {"corruption_probability", p.corruption_probability},
                   {"seed", p.seed}};
  auto prompt = [](const llm::PromptTemplate& t) { return ojson{{"id", t.id}, {"text", t.text}}; };
  if (s.format == ResultFormat::RoundTrip) {
    j["prompts"] = {prompt(s.templates.interpret), prompt(s.templates.compile)};
    const auto& v = s.verifier;
    j["verifier"] = {{"prop_exhaustive_limit", v.prop.exhaustive_limit},
                     {"fol_max_clauses", v.fol.budget.max_clauses},
                     {"fol_max_seconds", v.fol.budget.max_seconds},
                     {"fol_max_model_domain", v.fol.budget.max_model_domain},
                     {"fol_close_free_variables", v.fol.close_free_variables},
                     {"dfa_parallel_edges", v.dfa.count_parallel_edges}};
  } else {
    j["prompts"] = {prompt(s.templates.judge)};
    j["balance"] = s.balance;
  }
  return sha256_hex(j.dump());
}

std::string timestamp_now() {
  std::time_t t = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch && *epoch) {
    t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace {

struct Lines {
  std::vector<std::string> complete;
  std::string tail;  // text after the last newline
};

Lines split_lines(const std::string& text) {
  Lines out;
  std::size_t start = 0;
  while (true) {
    const auto nl = text.find('\n', start);
    if (nl == std::string::npos) break;
    out.complete.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  out.tail = text.substr(start);
  return out;
}

template <class Record, class Decode>
void read_records(const fs::path& path, ResultFormat expected, ResultHeader& header,
                  std::vector<Record>& records, bool& torn, Decode decode) {
  Lines lines = split_lines(read_text_file(path));
  if (!lines.tail.empty()) {
    try {
      decode(lines.tail);
      lines.complete.push_back(lines.tail);
    } catch (const Error&) {
      torn = true;
    }
  }
  if (lines.complete.empty()) throw IoError(path.string() + " is empty");
  header = result_header_from_json(lines.complete.front());
  if (header.format != expected) {
    throw IoError(path.string() + " holds " + std::string(to_string(header.format)) +
                  " results, expected " + std::string(to_string(expected)));
  }
  for (std::size_t i = 1; i < lines.complete.size(); ++i) {
    if (lines.complete[i].empty()) continue;
    try {
      records.push_back(decode(lines.complete[i]));
    } catch (const Error& e) {
      throw IoError(path.string() + ":" + std::to_string(i + 1) + ": " + e.what());
    }
  }
}

}  // namespace

RoundTripFile read_round_trip_file(const fs::path& path) {
  RoundTripFile f;
  read_records(path, ResultFormat::RoundTrip, f.header, f.records, f.torn_tail,
               [](std::string_view l) { return round_trip_record_from_json(l); });
  return f;
}

JudgeFile read_judge_file(const fs::path& path) {
  JudgeFile f;
  read_records(path, ResultFormat::Judge, f.header, f.records, f.torn_tail,
               [](std::string_view l) { return judge_record_from_json(l); });
  return f;
}

ResultHeader read_result_header(const fs::path& path) {
  const Lines lines = split_lines(read_text_file(path));
  if (lines.complete.empty()) throw IoError(path.string() + " has no header line");
  return result_header_from_json(lines.complete.front());
}

std::string render_result_file(const ResultHeader& h,
                               std::span<const llm::RoundTripRecord> records) {
  std::string out = to_json_line(h) + "\n";
  for (const auto& r : records) out += to_json_line(r) + "\n";
  return out;
}

std::string render_result_file(const ResultHeader& h, std::span<const llm::JudgeRecord> records) {
  std::string out = to_json_line(h) + "\n";
  for (const auto& r : records) out += to_json_line(r) + "\n";
  return out;
}

ResultWriter::ResultWriter(const fs::path& path, ResultHeader header, bool resume)
    : path_(path), header_(std::move(header)) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  if (resume && fs::exists(path) && fs::file_size(path) > 0) {
    const std::string text = read_text_file(path);
    const auto cut = text.rfind('\n');
    const std::string kept = cut == std::string::npos ? std::string() : text.substr(0, cut + 1);
    if (kept.empty()) {
      fs::remove(path);
    } else {
      const ResultHeader existing = result_header_from_json(kept.substr(0, kept.find('\n')));
      if (existing.format != header_.format) {
        throw IoError(path.string() + " holds a different result format");
      }
      if (existing.config_hash != header_.config_hash) {
        throw IoError(path.string() + " was produced with a different configuration (" +
                      existing.config_hash.substr(0, 12) + " vs " +
                      header_.config_hash.substr(0, 12) + ")");
      }
      if (existing.dataset_hash != header_.dataset_hash) {
        throw IoError(path.string() + " was produced from a different dataset");
      }
      header_ = existing;
      if (kept.size() != text.size()) fs::resize_file(path, kept.size());
      if (header_.format == ResultFormat::RoundTrip) {
        for (const auto& r : read_round_trip_file(path).records) completed_.insert(r.record_id);
      } else {
        for (const auto& r : read_judge_file(path).records) completed_.insert(r.pair.id);
      }
      file_ = std::fopen(path.c_str(), "ab");
      if (!file_) throw IoError("cannot append to " + path.string());
      return;
    }
  }
  file_ = std::fopen(path.c_str(), "wb");
  if (!file_) throw IoError("cannot write " + path.string());
  const std::string line = to_json_line(header_) + "\n";
  std::fwrite(line.data(), 1, line.size(), file_);
  std::fflush(file_);
}

ResultWriter::~ResultWriter() {
  if (file_) std::fclose(file_);
}

void ResultWriter::write_line(const std::string& id, const std::string& line) {
  const std::string text = line + "\n";
  if (std::fwrite(text.data(), 1, text.size(), file_) != text.size() || std::fflush(file_) != 0) {
    throw IoError("write failed for " + path_.string());
  }
  completed_.insert(id);
}

void ResultWriter::append(const llm::RoundTripRecord& r) {
  write_line(r.record_id, to_json_line(r));
}

void ResultWriter::append(const llm::JudgeRecord& r) { write_line(r.pair.id, to_json_line(r)); }

}  // namespace formaltrip::store

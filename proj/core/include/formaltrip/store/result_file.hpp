#pragma once

#include <cstdio>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "formaltrip/llm/pipeline.hpp"
#include "formaltrip/llm/prompt.hpp"
#include "formaltrip/llm/provider.hpp"
#include "formaltrip/verify/verify.hpp"

namespace formaltrip::store {

enum class ResultFormat { RoundTrip, Judge };

std::string_view to_string(ResultFormat f);
ResultFormat result_format_from_string(std::string_view s);

struct ResultHeader {
  ResultFormat format = ResultFormat::RoundTrip;
  std::string tool_version;
  std::string config_hash;
  std::string dataset_hash;
  std::string model;
  std::string started_at;

  bool operator==(const ResultHeader&) const = default;
};

std::string to_json_line(const ResultHeader& h);
ResultHeader result_header_from_json(std::string_view line);

/// Everything that changes what a run produces. Concurrency, retries, rate limits,
/// timeouts, credentials and output paths are left out of the hash.
struct RunSettings {
  ResultFormat format = ResultFormat::RoundTrip;
  llm::ProviderConfig provider;
  std::string fixtures_sha256;
  llm::TemplateSet templates;
  verify::VerifierOptions verifier;
  bool balance = false;
};

std::string config_hash(const RunSettings& s);

/// UTC ISO-8601; SOURCE_DATE_EPOCH overrides the clock when set.
std::string timestamp_now();

struct RoundTripFile {
  ResultHeader header;
  std::vector<llm::RoundTripRecord> records;
  bool torn_tail = false;
};

struct JudgeFile {
  ResultHeader header;
  std::vector<llm::JudgeRecord> records;
  bool torn_tail = false;
};

/// An unterminated final line that fails to parse is dropped and reported through
/// `torn_tail`; any other malformed line throws IoError.
RoundTripFile read_round_trip_file(const std::filesystem::path& path);
JudgeFile read_judge_file(const std::filesystem::path& path);
ResultHeader read_result_header(const std::filesystem::path& path);

std::string render_result_file(const ResultHeader& h,
                               std::span<const llm::RoundTripRecord> records);
std::string render_result_file(const ResultHeader& h, std::span<const llm::JudgeRecord> records);

/// Append-only writer. With `resume`, an existing file keeps its header and records after
/// its config and dataset hashes are checked against `header`; a torn last line is cut
/// off. Without `resume` an existing file is replaced.
class ResultWriter {
 public:
  ResultWriter(const std::filesystem::path& path, ResultHeader header, bool resume);
  ~ResultWriter();
  ResultWriter(const ResultWriter&) = delete;
  ResultWriter& operator=(const ResultWriter&) = delete;

  const ResultHeader& header() const { return header_; }
  /// Record or pair ids already present in the file.
  const std::set<std::string>& completed() const { return completed_; }
  bool done(const std::string& id) const { return completed_.count(id) > 0; }

  void append(const llm::RoundTripRecord& r);
  void append(const llm::JudgeRecord& r);

 private:
  void write_line(const std::string& id, const std::string& line);

  std::filesystem::path path_;
  ResultHeader header_;
  std::set<std::string> completed_;
  std::FILE* file_ = nullptr;
};

}  // namespace formaltrip::store

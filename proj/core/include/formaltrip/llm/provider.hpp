#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "formaltrip/common/error.hpp"
#include "formaltrip/llm/rate_limit.hpp"

namespace formaltrip::llm {

enum class ProviderKind { HttpChat, ScriptedReplay, PerfectOracle, CorruptingOracle };

std::string_view to_string(ProviderKind k);
/// Accepts the snake_case names and the dashed CLI spellings (perfect-oracle, replay, http).
ProviderKind provider_kind_from_string(std::string_view s);

struct RetryPolicy {
  int max_attempts = 3;
  double backoff_base_seconds = 1.0;

  bool operator==(const RetryPolicy&) const = default;
};

struct ProviderConfig {
  ProviderKind kind = ProviderKind::PerfectOracle;
  std::string endpoint = "https://api.openai.com/v1/chat/completions";
  std::string model;
  double temperature = 0.1;
  int max_tokens = 2048;
  double timeout_seconds = 120.0;
  RetryPolicy retry;
  double requests_per_minute = 60.0;
  /// Environment variable holding the API key; empty sends no Authorization header.
  std::string credential_env = "OPENAI_API_KEY";
  std::filesystem::path fixtures;  // scripted_replay
  std::optional<std::string> fallback_reply;
  double corruption_probability = 1.0;
  std::uint64_t seed = 0;
  bool debug = false;

  /// Model name recorded in results; defaults per kind when `model` is empty.
  std::string model_name() const;
  /// Throws ConfigError.
  void validate() const;

  bool operator==(const ProviderConfig&) const = default;
};

struct Completion {
  std::string text;
  std::optional<long> prompt_tokens;
  std::optional<long> completion_tokens;
  int attempts = 1;
  bool cached = false;
};

class ProviderError : public Error {
 public:
  enum class Kind { Timeout, RateLimited, ReplayMiss, Transport };

  ProviderError(Kind kind, const std::string& message, double retry_after_seconds = 0.0);

  Kind kind() const noexcept { return kind_; }
  double retry_after() const noexcept { return retry_after_; }
  bool retryable() const noexcept { return kind_ != Kind::ReplayMiss; }

 private:
  Kind kind_;
  double retry_after_;
};

std::string_view to_string(ProviderError::Kind k);

/// A single-turn text completion source. Implementations are safe to call concurrently.
class Provider {
 public:
  virtual ~Provider() = default;
  virtual Completion complete(const std::string& prompt) = 0;
  virtual std::string model() const = 0;
  virtual double temperature() const { return 0.0; }
};

/// One chat-completion request per call: a single user message, first choice returned.
class HttpChatProvider : public Provider {
 public:
  explicit HttpChatProvider(ProviderConfig config);
  Completion complete(const std::string& prompt) override;
  std::string model() const override { return config_.model_name(); }
  double temperature() const override { return config_.temperature; }

  /// Request body sent for `prompt`.
  std::string request_body(const std::string& prompt) const;

 private:
  ProviderConfig config_;
  std::string api_key_;
  TokenBucket limiter_;
};

class RetryingProvider : public Provider {
 public:
  using Sleeper = std::function<void(double seconds)>;

  RetryingProvider(std::unique_ptr<Provider> inner, RetryPolicy policy, Sleeper sleep = {});
  Completion complete(const std::string& prompt) override;
  std::string model() const override { return inner_->model(); }
  double temperature() const override { return inner_->temperature(); }

 private:
  std::unique_ptr<Provider> inner_;
  RetryPolicy policy_;
  Sleeper sleep_;
};

/// Replies keyed by the SHA-256 of the prompt, read from a JSONL file of
/// {"prompt_sha256": ..., "reply": ...} lines.
class ScriptedReplayProvider : public Provider {
 public:
  ScriptedReplayProvider(const std::filesystem::path& fixtures, std::string model,
                         std::optional<std::string> fallback_reply = std::nullopt);
  ScriptedReplayProvider(std::map<std::string, std::string> replies, std::string model,
                         std::optional<std::string> fallback_reply = std::nullopt);

  Completion complete(const std::string& prompt) override;
  std::string model() const override { return model_; }
  std::size_t size() const { return replies_.size(); }

 private:
  std::map<std::string, std::string> replies_;
  std::string model_;
  std::optional<std::string> fallback_;
};

/// Answers interpret prompts with describe(), compile prompts with the formula read back
/// from the description, and judge prompts with the formal verifier's verdict. With a
/// positive corruption probability the interpretation describes corrupt(φ) instead.
class OracleProvider : public Provider {
 public:
  OracleProvider(double corruption_probability, std::uint64_t seed, std::string model);
  Completion complete(const std::string& prompt) override;
  std::string model() const override { return model_; }

 private:
  double corruption_;
  std::uint64_t seed_;
  std::string model_;
};

/// Appends every prompt/reply pair it sees to a replay fixture file.
class RecordingProvider : public Provider {
 public:
  RecordingProvider(std::unique_ptr<Provider> inner, const std::filesystem::path& fixtures);
  Completion complete(const std::string& prompt) override;
  std::string model() const override { return inner_->model(); }
  double temperature() const override { return inner_->temperature(); }

 private:
  std::unique_ptr<Provider> inner_;
  std::filesystem::path path_;
  std::mutex mutex_;
};

/// Persistent reply cache keyed by (model, prompt hash, temperature).
class ResponseCache {
 public:
  /// Loads `file` when it exists; new entries are appended to it. An empty path keeps the
  /// cache in memory.
  explicit ResponseCache(std::filesystem::path file = {});

  static std::string key(std::string_view model, std::string_view prompt, double temperature);

  std::optional<Completion> find(const std::string& key) const;
  void put(const std::string& key, const Completion& c);
  std::size_t size() const;

 private:
  std::filesystem::path file_;
  mutable std::mutex mutex_;
  std::map<std::string, Completion> entries_;
};

class CachingProvider : public Provider {
 public:
  CachingProvider(std::unique_ptr<Provider> inner, std::shared_ptr<ResponseCache> cache);
  Completion complete(const std::string& prompt) override;
  std::string model() const override { return inner_->model(); }
  double temperature() const override { return inner_->temperature(); }

 private:
  std::unique_ptr<Provider> inner_;
  std::shared_ptr<ResponseCache> cache_;
};

/// Builds the provider for `config`; http_chat is wrapped in a RetryingProvider.
std::unique_ptr<Provider> make_provider(const ProviderConfig& config);

}  // namespace formaltrip::llm

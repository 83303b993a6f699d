#include "formaltrip/llm/provider.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "formaltrip/common/hash.hpp"
#include "formaltrip/common/rng.hpp"
#include "formaltrip/llm/oracle.hpp"
#include "formaltrip/verify/verify.hpp"

namespace formaltrip::llm {

using json = nlohmann::json;

std::string_view to_string(ProviderKind k) {
  switch (k) {
    case ProviderKind::HttpChat: return "http_chat";
    case ProviderKind::ScriptedReplay: return "scripted_replay";
    case ProviderKind::PerfectOracle: return "perfect_oracle";
    case ProviderKind::CorruptingOracle: return "corrupting_oracle";
  }
  return "?";
}

ProviderKind provider_kind_from_string(std::string_view s) {
  if (s == "http_chat" || s == "http-chat" || s == "http") return ProviderKind::HttpChat;
  if (s == "scripted_replay" || s == "scripted-replay" || s == "replay") {
    return ProviderKind::ScriptedReplay;
  }
  if (s == "perfect_oracle" || s == "perfect-oracle") return ProviderKind::PerfectOracle;
  if (s == "corrupting_oracle" || s == "corrupting-oracle") return ProviderKind::CorruptingOracle;
  throw ConfigError("unknown provider kind '" + std::string(s) + "'");
}

std::string ProviderConfig::model_name() const {
  if (!model.empty()) return model;
  switch (kind) {
    case ProviderKind::HttpChat: return "";
    case ProviderKind::ScriptedReplay: return "scripted-replay";
    case ProviderKind::PerfectOracle: return "perfect-oracle";
    case ProviderKind::CorruptingOracle: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "corrupting-oracle-p%g", corruption_probability);
      return buf;
    }
  }
  return "";
}

void ProviderConfig::validate() const {
  if (!(temperature >= 0.0)) throw ConfigError("temperature must be non-negative");
  if (max_tokens <= 0) throw ConfigError("max_tokens must be positive");
  if (!(timeout_seconds > 0.0)) throw ConfigError("request timeout must be positive");
  if (retry.max_attempts < 1) throw ConfigError("retry max_attempts must be at least 1");
  if (!(retry.backoff_base_seconds >= 0.0)) throw ConfigError("backoff base must be non-negative");
  switch (kind) {
    case ProviderKind::HttpChat:
      if (!(requests_per_minute > 0.0)) throw ConfigError("http_chat needs a positive rate limit");
      if (model.empty()) throw ConfigError("http_chat needs a model name");
      if (!endpoint.starts_with("http://") && !endpoint.starts_with("https://")) {
        throw ConfigError("endpoint must be an http(s) URL");
      }
      break;
    case ProviderKind::ScriptedReplay:
      if (fixtures.empty()) throw ConfigError("scripted_replay needs a fixtures file");
      break;
    case ProviderKind::CorruptingOracle:
      if (!(corruption_probability >= 0.0 && corruption_probability <= 1.0)) {
        throw ConfigError("corruption probability must lie in [0, 1]");
      }
      break;
    case ProviderKind::PerfectOracle:
      break;
  }
}

ProviderError::ProviderError(Kind kind, const std::string& message, double retry_after_seconds)
    : Error(message), kind_(kind), retry_after_(retry_after_seconds) {}

std::string_view to_string(ProviderError::Kind k) {
  switch (k) {
    case ProviderError::Kind::Timeout: return "timeout";
    case ProviderError::Kind::RateLimited: return "rate_limited";
    case ProviderError::Kind::ReplayMiss: return "replay_miss";
    case ProviderError::Kind::Transport: return "transport";
  }
  return "?";
}

// ---- http_chat

namespace {

struct Url {
  std::string base;  // scheme://host[:port]
  std::string path;
};

Url split_url(const std::string& url) {
  static const std::regex re(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(url, m, re)) throw ConfigError("malformed endpoint '" + url + "'");
  return {m[1].str(), m[2].matched ? m[2].str() : "/"};
}

std::string url_host(const std::string& base) {
  std::string host = base.substr(base.find("://") + 3);
  if (const auto at = host.rfind('@'); at != std::string::npos) host.erase(0, at + 1);
  if (const auto colon = host.rfind(':'); colon != std::string::npos) host.erase(colon);
  return host;
}

bool proxy_bypassed(const std::string& host) {
  if (host == "localhost" || host == "127.0.0.1" || host == "[::1]") return true;
  for (const char* name : {"NO_PROXY", "no_proxy"}) {
    const char* value = std::getenv(name);
    if (!value) continue;
    std::string list = value;
    std::size_t pos = 0;
    while (pos <= list.size()) {
      const auto end = std::min(list.find(',', pos), list.size());
      std::string entry = list.substr(pos, end - pos);
      entry.erase(0, entry.find_first_not_of(' '));
      entry.erase(entry.find_last_not_of(' ') + 1);
      if (!entry.empty() && entry.front() == '.') entry.erase(0, 1);
      if (entry == "*" || entry == host ||
          (!entry.empty() && host.size() > entry.size() && host.ends_with("." + entry))) {
        return true;
      }
      pos = end + 1;
    }
  }
  return false;
}

void apply_proxy(httplib::Client& cli, const std::string& base) {
  const bool https = base.starts_with("https");
  if (proxy_bypassed(url_host(base))) return;
  const char* names[] = {https ? "HTTPS_PROXY" : "HTTP_PROXY", https ? "https_proxy" : "http_proxy"};
  for (const char* name : names) {
    const char* value = std::getenv(name);
    if (!value || !*value) continue;
    static const std::regex re(R"(^(?:https?://)?(?:[^@/]*@)?([^:/]+)(?::(\d+))?/?$)");
    std::cmatch m;
    if (std::regex_match(value, m, re)) {
      cli.set_proxy(m[1].str(), m[2].matched ? std::stoi(m[2].str()) : 80);
    }
    return;
  }
}

}  // namespace

HttpChatProvider::HttpChatProvider(ProviderConfig config)
    : config_(std::move(config)), limiter_(config_.kind == ProviderKind::HttpChat
                                               ? config_.requests_per_minute
                                               : 60.0) {
  config_.validate();
  if (!config_.credential_env.empty()) {
    const char* key = std::getenv(config_.credential_env.c_str());
    if (!key || !*key) {
      throw ConfigError("environment variable " + config_.credential_env + " is not set");
    }
    api_key_ = key;
  }
}

std::string HttpChatProvider::request_body(const std::string& prompt) const {
  json body = {{"model", config_.model},
               {"messages", json::array({{{"role", "user"}, {"content", prompt}}})},
               {"temperature", config_.temperature},
               {"max_tokens", config_.max_tokens}};
  return body.dump();
}

Completion HttpChatProvider::complete(const std::string& prompt) {
  const Url url = split_url(config_.endpoint);
  limiter_.acquire();
  httplib::Client cli(url.base);
  const auto timeout = std::chrono::duration<double>(config_.timeout_seconds);
  cli.set_connection_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
  cli.set_read_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
  cli.set_write_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
  apply_proxy(cli, url.base);
  httplib::Headers headers;
  if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);
  const std::string body = request_body(prompt);
  if (config_.debug) {
    std::cerr << "POST " << config_.endpoint
              << (api_key_.empty() ? "" : " [Authorization: Bearer ***]") << "\n"
              << body << "\n";
  }
  auto res = cli.Post(url.path, headers, body, "application/json");
  if (!res) {
    const auto err = res.error();
    const std::string what = "request failed: " + httplib::to_string(err);
    if (err == httplib::Error::Read || err == httplib::Error::ConnectionTimeout) {
      throw ProviderError(ProviderError::Kind::Timeout, what);
    }
    throw ProviderError(ProviderError::Kind::Transport, what);
  }
  if (config_.debug) std::cerr << "HTTP " << res->status << "\n" << res->body << "\n";
  if (res->status == 429) {
    double after = 0.0;
    if (res->has_header("Retry-After")) {
      try {
        after = std::stod(res->get_header_value("Retry-After"));
      } catch (const std::exception&) {
      }
    }
    throw ProviderError(ProviderError::Kind::RateLimited, "rate limited (HTTP 429)", after);
  }
  if (res->status < 200 || res->status >= 300) {
    throw ProviderError(ProviderError::Kind::Transport,
                        "HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 200));
  }
  Completion c;
  try {
    const json reply = json::parse(res->body);
    const auto& content = reply.at("choices").at(0).at("message").at("content");
    c.text = content.is_null() ? "" : content.get<std::string>();
    if (reply.contains("usage")) {
      const auto& u = reply["usage"];
      if (u.contains("prompt_tokens")) c.prompt_tokens = u["prompt_tokens"].get<long>();
      if (u.contains("completion_tokens")) c.completion_tokens = u["completion_tokens"].get<long>();
    }
  } catch (const json::exception& e) {
    throw ProviderError(ProviderError::Kind::Transport,
                        std::string("malformed chat completion response: ") + e.what());
  }
  return c;
}

// ---- retry

RetryingProvider::RetryingProvider(std::unique_ptr<Provider> inner, RetryPolicy policy,
                                   Sleeper sleep)
    : inner_(std::move(inner)), policy_(policy), sleep_(std::move(sleep)) {
  if (!sleep_) {
    sleep_ = [](double s) { std::this_thread::sleep_for(std::chrono::duration<double>(s)); };
  }
}

Completion RetryingProvider::complete(const std::string& prompt) {
  for (int attempt = 1;; ++attempt) {
    try {
      Completion c = inner_->complete(prompt);
      c.attempts = attempt;
      return c;
    } catch (const ProviderError& e) {
      if (!e.retryable() || attempt >= policy_.max_attempts) throw;
      const double backoff = policy_.backoff_base_seconds * std::pow(2.0, attempt - 1);
      sleep_(std::max(backoff, e.retry_after()));
    }
  }
}

// ---- scripted replay

namespace {

Completion reply(std::string text) {
  Completion c;
  c.text = std::move(text);
  return c;
}

}  // namespace

ScriptedReplayProvider::ScriptedReplayProvider(const std::filesystem::path& fixtures,
                                               std::string model,
                                               std::optional<std::string> fallback_reply)
    : model_(std::move(model)), fallback_(std::move(fallback_reply)) {
  std::ifstream in(fixtures);
  if (!in) throw IoError("cannot read replay fixtures " + fixtures.string());
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      replies_[j.at("prompt_sha256").get<std::string>()] = j.at("reply").get<std::string>();
    } catch (const json::exception& e) {
      throw IoError(fixtures.string() + ":" + std::to_string(n) + ": " + e.what());
    }
  }
}

ScriptedReplayProvider::ScriptedReplayProvider(std::map<std::string, std::string> replies,
                                               std::string model,
                                               std::optional<std::string> fallback_reply)
    : replies_(std::move(replies)), model_(std::move(model)), fallback_(std::move(fallback_reply)) {}

Completion ScriptedReplayProvider::complete(const std::string& prompt) {
  const std::string key = sha256_hex(prompt);
  auto it = replies_.find(key);
  if (it != replies_.end()) return reply(it->second);
  if (fallback_) return reply(*fallback_);
  throw ProviderError(ProviderError::Kind::ReplayMiss, "no recorded reply for prompt " + key);
}

// ---- oracle

namespace {

std::string after_marker(const std::string& prompt, std::string_view marker) {
  const std::size_t at = prompt.rfind(marker);
  std::size_t start = at + marker.size();
  std::size_t end = prompt.size();
  while (start < end && std::isspace(static_cast<unsigned char>(prompt[start]))) ++start;
  while (end > start && std::isspace(static_cast<unsigned char>(prompt[end - 1]))) --end;
  return prompt.substr(start, end - start);
}

std::string between(const std::string& prompt, std::string_view from, std::string_view to) {
  const std::size_t a = prompt.rfind(from);
  const std::size_t b = prompt.rfind(to);
  std::string s = prompt.substr(a + from.size(), b - a - from.size());
  const auto first = s.find_first_not_of(" \t\r\n");
  const auto last = s.find_last_not_of(" \t\r\n");
  return first == std::string::npos ? "" : s.substr(first, last - first + 1);
}

bool contains_ci(std::string_view text, std::string_view needle) {
  auto it = std::search(text.begin(), text.end(), needle.begin(), needle.end(), [](char a, char b) {
    return std::tolower(static_cast<unsigned char>(a)) == std::tolower(static_cast<unsigned char>(b));
  });
  return it != text.end();
}

syntax::Formalism formalism_of(const std::string& prompt) {
  if (contains_ci(prompt, "regular expression")) return syntax::Formalism::Regex;
  if (contains_ci(prompt, "first-order logic") || contains_ci(prompt, "first order logic")) {
    return syntax::Formalism::Fol;
  }
  return syntax::Formalism::Prop;
}

}  // namespace

OracleProvider::OracleProvider(double corruption_probability, std::uint64_t seed,
                               std::string model)
    : corruption_(corruption_probability), seed_(seed), model_(std::move(model)) {}

Completion OracleProvider::complete(const std::string& prompt) {
  const syntax::Formalism f = formalism_of(prompt);
  if (prompt.find("[Formula 1]") != std::string::npos &&
      prompt.find("[Formula 2]") != std::string::npos) {
    const auto a = syntax::parse_expression(between(prompt, "[Formula 1]", "[Formula 2]"), f);
    const auto b = syntax::parse_expression(after_marker(prompt, "[Formula 2]"), f);
    const auto v = verify::verify(a, b);
    switch (v.status) {
      case verify::Status::Equivalent: return reply("The formulas are equivalent.\n[Answer] yes");
      case verify::Status::NotEquivalent: return reply("The formulas differ.\n[Answer] no");
      case verify::Status::Unknown: return reply("I cannot decide.");
    }
  }
  if (prompt.find("[NL DESCRIPTION]") != std::string::npos) {
    try {
      return reply(read_description(after_marker(prompt, "[NL DESCRIPTION]"), f).canonical_text);
    } catch (const Error&) {
      return reply("I could not reconstruct a formula from this description.");
    }
  }
  if (prompt.find("[FORMULA]") != std::string::npos) {
    syntax::FormalExpression e;
    try {
      e = syntax::parse_expression(after_marker(prompt, "[FORMULA]"), f);
    } catch (const Error&) {
      return reply("I could not read the formula.");
    }
    if (corruption_ > 0.0) {
      const std::string digest = sha256_hex(prompt);
      Rng rng(derive_seed(seed_, std::stoull(digest.substr(0, 15), nullptr, 16)));
      if (rng.bernoulli(corruption_)) e = corrupt(e, rng);
    }
    return reply(describe(e));
  }
  return reply("I do not understand the request.");
}

// ---- recording

RecordingProvider::RecordingProvider(std::unique_ptr<Provider> inner,
                                     const std::filesystem::path& fixtures)
    : inner_(std::move(inner)), path_(fixtures) {}

Completion RecordingProvider::complete(const std::string& prompt) {
  Completion c = inner_->complete(prompt);
  const json line = {{"prompt_sha256", sha256_hex(prompt)}, {"reply", c.text}};
  std::lock_guard lock(mutex_);
  std::ofstream out(path_, std::ios::app);
  if (!out) throw IoError("cannot append to " + path_.string());
  out << line.dump() << "\n";
  return c;
}

// ---- cache

ResponseCache::ResponseCache(std::filesystem::path file) : file_(std::move(file)) {
  if (file_.empty() || !std::filesystem::exists(file_)) return;
  std::ifstream in(file_);
  std::string line;
  while (std::getline(in, line)) {
    try {
      const json j = json::parse(line);
      Completion c;
      c.text = j.at("reply").get<std::string>();
      if (j.contains("prompt_tokens")) c.prompt_tokens = j["prompt_tokens"].get<long>();
      if (j.contains("completion_tokens")) c.completion_tokens = j["completion_tokens"].get<long>();
      entries_[j.at("key").get<std::string>()] = c;
    } catch (const json::exception&) {
      // torn final line from an interrupted run
    }
  }
}

std::string ResponseCache::key(std::string_view model, std::string_view prompt,
                               double temperature) {
  char t[32];
  std::snprintf(t, sizeof t, "%.6g", temperature);
  return sha256_hex(std::string(model) + "\n" + t + "\n" + sha256_hex(prompt));
}

std::optional<Completion> ResponseCache::find(const std::string& key) const {
  std::lock_guard lock(mutex_);
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void ResponseCache::put(const std::string& key, const Completion& c) {
  std::lock_guard lock(mutex_);
  entries_[key] = c;
  if (file_.empty()) return;
  json j = {{"key", key}, {"reply", c.text}};
  if (c.prompt_tokens) j["prompt_tokens"] = *c.prompt_tokens;
  if (c.completion_tokens) j["completion_tokens"] = *c.completion_tokens;
  std::ofstream out(file_, std::ios::app);
  if (!out) throw IoError("cannot append to " + file_.string());
  out << j.dump() << "\n";
}

std::size_t ResponseCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

CachingProvider::CachingProvider(std::unique_ptr<Provider> inner,
                                 std::shared_ptr<ResponseCache> cache)
    : inner_(std::move(inner)), cache_(std::move(cache)) {}

Completion CachingProvider::complete(const std::string& prompt) {
  const std::string key = ResponseCache::key(inner_->model(), prompt, inner_->temperature());
  if (auto hit = cache_->find(key)) {
    hit->cached = true;
    hit->attempts = 0;
    return *hit;
  }
  Completion c = inner_->complete(prompt);
  cache_->put(key, c);
  return c;
}

std::unique_ptr<Provider> make_provider(const ProviderConfig& config) {
  config.validate();
  switch (config.kind) {
    case ProviderKind::HttpChat:
      return std::make_unique<RetryingProvider>(std::make_unique<HttpChatProvider>(config),
                                                config.retry);
    case ProviderKind::ScriptedReplay:
      return std::make_unique<ScriptedReplayProvider>(config.fixtures, config.model_name(),
                                                      config.fallback_reply);
    case ProviderKind::PerfectOracle:
      return std::make_unique<OracleProvider>(0.0, config.seed, config.model_name());
    case ProviderKind::CorruptingOracle:
      return std::make_unique<OracleProvider>(config.corruption_probability, config.seed,
                                              config.model_name());
  }
  throw ConfigError("unsupported provider kind");
}

}  // namespace formaltrip::llm

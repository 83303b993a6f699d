#include <gtest/gtest.h>

#include <httplib.h>

#include <atomic>
#include <fstream>
#include <json.hpp>
#include <set>
#include <thread>

#include "formaltrip/common/error.hpp"
#include "formaltrip/common/hash.hpp"
#include "formaltrip/common/rng.hpp"
#include "formaltrip/llm/oracle.hpp"
#include "formaltrip/llm/prompt.hpp"
#include "formaltrip/llm/provider.hpp"
#include "formaltrip/llm/rate_limit.hpp"
#include "formaltrip/verify/verify.hpp"
#include "oracles.hpp"
#include "temp_dir.hpp"

using namespace formaltrip;
using namespace formaltrip::llm;
using syntax::Formalism;
using testing_support::TempDir;

namespace {

syntax::FormalExpression expr(std::string_view s, Formalism f) { return syntax::parse_expression(s, f); }

class ScriptedFailures : public Provider {
 public:
  explicit ScriptedFailures(std::vector<ProviderError::Kind> failures) : failures_(std::move(failures)) {}
  Completion complete(const std::string& prompt) override {
    const std::size_t n = calls++;
    if (n < failures_.size()) throw ProviderError(failures_[n], "scripted", 0.0);
    Completion c;
    c.text = "echo: " + prompt;
    return c;
  }
  std::string model() const override { return "scripted"; }
  std::atomic<std::size_t> calls{0};

 private:
  std::vector<ProviderError::Kind> failures_;
};

}  // namespace

TEST(Prompt, BundledTemplatesAreValid) {
  const auto all = bundled_templates();
  EXPECT_EQ(all.size(), 18u);
  for (const auto& t : all) EXPECT_NO_THROW(t.validate()) << t.id;
  std::set<std::string> ids;
  for (const auto& t : all) ids.insert(t.id);
  EXPECT_TRUE(ids.count("prop_interpret_2shot"));
  EXPECT_TRUE(ids.count("regex_judge_yesno_0shot"));
}

TEST(Prompt, TemplateIdParsing) {
  const auto t = make_template("fol_compile_2shot", "{description}");
  EXPECT_EQ(t.formalism, Formalism::Fol);
  EXPECT_EQ(t.direction, Direction::Compile);
  EXPECT_EQ(t.shot_count, 2);
  EXPECT_THROW(make_template("fol_compile", "{description}"), ConfigError);
  EXPECT_THROW(make_template("fol_compile_5shot", "{description}"), ConfigError);
  EXPECT_THROW(make_template("lisp_compile_0shot", "{description}"), ConfigError);
}

TEST(Prompt, MissingRequiredPlaceholder) {
  try {
    make_template("prop_interpret_0shot", "describe this");
    FAIL();
  } catch (const MissingPlaceholder& e) {
    EXPECT_EQ(e.name(), "formula");
  }
}

TEST(Prompt, RenderSubstitutesAndLeavesOtherBraces) {
  const auto t = make_template("prop_interpret_0shot", "{formula} | {vocabulary} | {other}");
  EXPECT_EQ(t.placeholders(), (std::vector<std::string>{"formula", "vocabulary"}));
  EXPECT_EQ(render_prompt(t, {{"formula", "p1"}, {"vocabulary", "v"}}), "p1 | v | {other}");
  EXPECT_THROW(render_prompt(t, {{"formula", "p1"}}), MissingPlaceholder);
}

TEST(Prompt, RenderedBundledPromptHasNoPlaceholdersLeft) {
  const auto phi = expr("(¬p1 ∧ p2)", Formalism::Prop);
  for (int shots : {0, 2}) {
    const auto set = TemplateSet::bundled(Formalism::Prop, shots);
    const auto text = render_prompt(set.interpret, interpret_context(phi));
    EXPECT_EQ(text.find("{formula}"), std::string::npos);
    EXPECT_EQ(text.find("{vocabulary}"), std::string::npos);
    EXPECT_NE(text.find("(¬p1 ∧ p2)"), std::string::npos);
  }
}

TEST(Prompt, VocabularyListing) {
  EXPECT_EQ(vocabulary_listing(expr("p2 ∧ ¬p1 ∧ p2", Formalism::Prop)), "The propositions are: p2, p1");
  const auto fol = vocabulary_listing(expr("∀x1. pred3(p5, x1)", Formalism::Fol));
  EXPECT_NE(fol.find("The objects are: p5"), std::string::npos);
  EXPECT_NE(fol.find("pred3(?p0,?p1)"), std::string::npos);
  EXPECT_NE(fol.find("x1"), std::string::npos);
  EXPECT_EQ(vocabulary_listing(expr("1*0", Formalism::Regex)), "");
}

TEST(Prompt, DirectoryOverridesBundledText) {
  TempDir dir;
  std::ofstream(dir / "prop_compile_2shot.txt") << "Write it: {description}";
  const auto set = TemplateSet::from_directory(dir.path(), Formalism::Prop, 2);
  EXPECT_EQ(set.compile.text, "Write it: {description}");
  EXPECT_EQ(set.interpret, bundled_template(Formalism::Prop, Direction::Interpret, 2));
}

TEST(Prompt, JudgeTemplateFollowsChainOfThoughtFlag) {
  EXPECT_EQ(TemplateSet::bundled(Formalism::Regex, 0, true).judge.direction, Direction::JudgeCot);
  EXPECT_EQ(TemplateSet::bundled(Formalism::Regex, 0, false).judge.direction, Direction::JudgeYesNo);
}

TEST(Oracle, DescribeReadsBackExactlyProperty) {
  Rng rng(73);
  for (int i = 0; i < 300; ++i) {
    const auto p = syntax::make_expression(gen::prop(rng, 5, 5));
    EXPECT_EQ(read_description(describe(p), Formalism::Prop), p);
    const auto r = syntax::make_expression(gen::regex(rng, "01", 5));
    EXPECT_EQ(read_description(describe(r), Formalism::Regex), r);
    const auto f = expr(gen::fol_text(rng, 4), Formalism::Fol);
    EXPECT_EQ(read_description(describe(f), Formalism::Fol), f);
  }
}

TEST(Oracle, CorruptChangesMeaningProperty) {
  Rng rng(79);
  for (int i = 0; i < 200; ++i) {
    for (const auto& e : {syntax::make_expression(gen::prop(rng, 4, 4)),
                          syntax::make_expression(gen::regex(rng, "01", 4)),
                          expr(gen::fol_text(rng, 3), Formalism::Fol)}) {
      const auto c = corrupt(e, rng);
      EXPECT_EQ(verify::verify(e, c).status, verify::Status::NotEquivalent)
          << e.canonical_text << " -> " << c.canonical_text;
    }
  }
}

TEST(Oracle, PerfectProviderAnswersEachDirection) {
  OracleProvider p(0.0, 1, "oracle");
  const auto phi = expr("(p1 ∨ ¬p2)", Formalism::Prop);
  const auto set = TemplateSet::bundled(Formalism::Prop, 2);
  const auto nl = p.complete(render_prompt(set.interpret, interpret_context(phi))).text;
  const auto back = p.complete(render_prompt(set.compile, compile_context(nl))).text;
  EXPECT_EQ(expr(back, Formalism::Prop), phi);
  const auto yes = p.complete(render_prompt(set.judge, judge_context(phi, expr("¬(¬p1 ∧ p2)", Formalism::Prop))));
  EXPECT_NE(yes.text.find("[Answer] yes"), std::string::npos);
  const auto no = p.complete(render_prompt(set.judge, judge_context(phi, expr("p1", Formalism::Prop))));
  EXPECT_NE(no.text.find("[Answer] no"), std::string::npos);
}

TEST(Oracle, CorruptionIsDeterministicPerPrompt) {
  const auto set = TemplateSet::bundled(Formalism::Regex, 2);
  const auto prompt = render_prompt(set.interpret, interpret_context(expr("(01*)*", Formalism::Regex)));
  OracleProvider a(0.5, 9, "m"), b(0.5, 9, "m");
  EXPECT_EQ(a.complete(prompt).text, b.complete(prompt).text);
}

TEST(Replay, HitMissAndFallback) {
  ScriptedReplayProvider p({{sha256_hex("hello"), "world"}}, "replayed");
  EXPECT_EQ(p.complete("hello").text, "world");
  try {
    p.complete("other");
    FAIL();
  } catch (const ProviderError& e) {
    EXPECT_EQ(e.kind(), ProviderError::Kind::ReplayMiss);
    EXPECT_FALSE(e.retryable());
  }
  ScriptedReplayProvider q(std::map<std::string, std::string>{}, "replayed", std::string("no idea"));
  EXPECT_EQ(q.complete("other").text, "no idea");
}

TEST(Replay, RecordingThenReplayReproducesReplies) {
  TempDir dir;
  const auto file = dir / "fixture.jsonl";
  RecordingProvider rec(std::make_unique<OracleProvider>(1.0, 3, "oracle"), file);
  const auto set = TemplateSet::bundled(Formalism::Prop, 0);
  std::vector<std::pair<std::string, std::string>> seen;
  for (const char* f : {"p1 ∧ p2", "¬p3", "(p1 ∨ p2) ∧ p3"}) {
    const auto prompt = render_prompt(set.interpret, interpret_context(expr(f, Formalism::Prop)));
    seen.emplace_back(prompt, rec.complete(prompt).text);
  }
  ScriptedReplayProvider replay(file, "oracle");
  EXPECT_EQ(replay.size(), 3u);
  for (const auto& [prompt, reply] : seen) EXPECT_EQ(replay.complete(prompt).text, reply);
}

TEST(Retry, BacksOffExponentiallyThenSucceeds) {
  std::vector<double> sleeps;
  auto inner = std::make_unique<ScriptedFailures>(
      std::vector{ProviderError::Kind::Timeout, ProviderError::Kind::RateLimited});
  RetryingProvider p(std::move(inner), {4, 0.5}, [&](double s) { sleeps.push_back(s); });
  const auto c = p.complete("x");
  EXPECT_EQ(c.text, "echo: x");
  EXPECT_EQ(c.attempts, 3);
  EXPECT_EQ(sleeps, (std::vector<double>{0.5, 1.0}));
}

TEST(Retry, GivesUpAfterMaxAttempts) {
  int sleeps = 0;
  auto inner = std::make_unique<ScriptedFailures>(std::vector<ProviderError::Kind>(5, ProviderError::Kind::Transport));
  RetryingProvider p(std::move(inner), {3, 0.1}, [&](double) { ++sleeps; });
  EXPECT_THROW(p.complete("x"), ProviderError);
  EXPECT_EQ(sleeps, 2);
}

TEST(Retry, ReplayMissIsNotRetried) {
  int sleeps = 0;
  auto inner = std::make_unique<ScriptedFailures>(std::vector{ProviderError::Kind::ReplayMiss});
  RetryingProvider p(std::move(inner), {3, 0.1}, [&](double) { ++sleeps; });
  EXPECT_THROW(p.complete("x"), ProviderError);
  EXPECT_EQ(sleeps, 0);
}

TEST(Cache, SecondCallIsServedFromCacheAndPersists) {
  TempDir dir;
  const auto file = dir / "cache.jsonl";
  auto inner = std::make_unique<ScriptedFailures>(std::vector<ProviderError::Kind>{});
  auto* raw = inner.get();
  CachingProvider p(std::move(inner), std::make_shared<ResponseCache>(file));
  EXPECT_FALSE(p.complete("a").cached);
  EXPECT_TRUE(p.complete("a").cached);
  EXPECT_EQ(raw->calls.load(), 1u);
  ResponseCache reloaded(file);
  EXPECT_EQ(reloaded.size(), 1u);
  EXPECT_EQ(reloaded.find(ResponseCache::key("scripted", "a", 0.0))->text, "echo: a");
}

TEST(Cache, KeyDependsOnModelPromptAndTemperature) {
  const auto k = ResponseCache::key("m", "p", 0.1);
  EXPECT_NE(k, ResponseCache::key("n", "p", 0.1));
  EXPECT_NE(k, ResponseCache::key("m", "q", 0.1));
  EXPECT_NE(k, ResponseCache::key("m", "p", 0.2));
  EXPECT_EQ(k, ResponseCache::key("m", "p", 0.1));
}

TEST(TokenBucket, BurstThenEmpty) {
  TokenBucket b(60.0, 2.0);
  EXPECT_TRUE(b.try_acquire());
  EXPECT_TRUE(b.try_acquire());
  EXPECT_FALSE(b.try_acquire());
}

TEST(TokenBucket, RefillsOverTime) {
  TokenBucket b(6000.0, 1.0);  // one token every 10 ms
  EXPECT_TRUE(b.try_acquire());
  std::this_thread::sleep_for(std::chrono::milliseconds(30));
  EXPECT_TRUE(b.try_acquire());
}

TEST(ProviderConfig, ValidationAndNames) {
  ProviderConfig c;
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(provider_kind_from_string("perfect-oracle"), ProviderKind::PerfectOracle);
  EXPECT_EQ(provider_kind_from_string("replay"), ProviderKind::ScriptedReplay);
  EXPECT_EQ(provider_kind_from_string("http"), ProviderKind::HttpChat);
  EXPECT_THROW(provider_kind_from_string("carrier-pigeon"), ConfigError);
  c.temperature = -1.0;
  EXPECT_THROW(c.validate(), ConfigError);
  c.temperature = 0.1;
  c.kind = ProviderKind::ScriptedReplay;
  EXPECT_THROW(c.validate(), ConfigError);  // no fixtures
}

class HttpChat : public ::testing::Test {
 protected:
  void SetUp() override {
    server_.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
      const int n = hits_++;
      last_body_ = req.body;
      last_auth_ = req.get_header_value("Authorization");
      if (n == 0 && rate_limit_first_) {
        res.status = 429;
        res.set_header("Retry-After", "0");
        return;
      }
      const auto body = nlohmann::json::parse(req.body);
      const std::string content = body["messages"][0]["content"];
      nlohmann::json reply = {
          {"choices", {{{"message", {{"role", "assistant"}, {"content", "re: " + content}}}}}},
          {"usage", {{"prompt_tokens", 7}, {"completion_tokens", 3}}}};
      res.set_content(reply.dump(), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  void TearDown() override {
    server_.stop();
    thread_.join();
  }

  ProviderConfig config() const {
    ProviderConfig c;
    c.kind = ProviderKind::HttpChat;
    c.endpoint = "http://127.0.0.1:" + std::to_string(port_) + "/v1/chat/completions";
    c.model = "test-model";
    c.credential_env = "";
    c.requests_per_minute = 6000.0;
    c.retry.backoff_base_seconds = 0.001;
    return c;
  }

  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<int> hits_{0};
  bool rate_limit_first_ = false;
  std::string last_body_;
  std::string last_auth_;
};

TEST_F(HttpChat, SingleUserMessageAndUsage) {
  HttpChatProvider p(config());
  const auto c = p.complete("ping");
  EXPECT_EQ(c.text, "re: ping");
  EXPECT_EQ(c.prompt_tokens, 7);
  EXPECT_EQ(c.completion_tokens, 3);
  const auto body = nlohmann::json::parse(last_body_);
  EXPECT_EQ(body["model"], "test-model");
  EXPECT_EQ(body["messages"].size(), 1u);
  EXPECT_EQ(body["messages"][0]["role"], "user");
  EXPECT_DOUBLE_EQ(body["temperature"].get<double>(), 0.1);
  EXPECT_TRUE(last_auth_.empty());
}

TEST_F(HttpChat, RateLimitIsRetried) {
  rate_limit_first_ = true;
  const auto p = make_provider(config());
  const auto c = p->complete("ping");
  EXPECT_EQ(c.text, "re: ping");
  EXPECT_EQ(c.attempts, 2);
  EXPECT_EQ(hits_.load(), 2);
}

TEST_F(HttpChat, BearerTokenFromEnvironment) {
  ::setenv("FORMALTRIP_TEST_KEY", "secret", 1);
  auto c = config();
  c.credential_env = "FORMALTRIP_TEST_KEY";
  HttpChatProvider p(c);
  p.complete("ping");
  EXPECT_EQ(last_auth_, "Bearer secret");
  ::unsetenv("FORMALTRIP_TEST_KEY");
  EXPECT_THROW(HttpChatProvider{c}, ConfigError);
}

TEST(HttpChatErrors, ConnectionRefusedIsTransport) {
  ProviderConfig c;
  c.kind = ProviderKind::HttpChat;
  c.endpoint = "http://127.0.0.1:1/v1/chat/completions";
  c.credential_env = "";
  c.model = "m";
  HttpChatProvider p(c);
  EXPECT_THROW(p.complete("x"), ProviderError);
}

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "formaltrip/grammar/derivation.hpp"
#include "formaltrip/grammar/vocabulary.hpp"
#include "formaltrip/llm/provider.hpp"
#include "formaltrip/verify/verify.hpp"

namespace formaltrip::store {

struct GenerateConfig {
  std::string grammar = "prop";  // built-in id or rule file
  std::optional<syntax::Formalism> formalism;  // required for rule files
  grammar::GenerationConfig generation;
  grammar::VocabularyConfig vocabulary;
};

/// Settings shared by the CLI subcommands. A JSON file supplies defaults and command-line
/// flags override individual fields.
struct RunConfig {
  std::uint64_t seed = 0;
  std::filesystem::path output_dir = "out";
  GenerateConfig generate;
  llm::ProviderConfig provider;
  std::vector<std::string> datasets;
  int shots = 2;
  bool chain_of_thought = true;
  std::filesystem::path templates_dir;
  verify::VerifierOptions verifier;
  std::size_t request_width = 4;
  std::size_t verifier_width = 2;
  bool resume = false;
  bool record_timings = false;
  std::filesystem::path cache;
  std::filesystem::path record_fixtures;

  /// Throws ConfigError.
  void validate() const;
};

/// Throws ConfigError on unknown keys or mistyped values. Credentials are never read from
/// the file; `provider.credential_env` names the environment variable instead.
RunConfig load_run_config(const std::filesystem::path& path);
RunConfig run_config_from_json(std::string_view text);

}  // namespace formaltrip::store

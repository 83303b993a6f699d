#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "formaltrip/common/error.hpp"
#include "formaltrip/syntax/expression.hpp"

namespace formaltrip::llm {

enum class Direction { Interpret, Compile, JudgeCot, JudgeYesNo };

std::string_view to_string(Direction d);
Direction direction_from_string(std::string_view s);

class MissingPlaceholder : public Error {
 public:
  explicit MissingPlaceholder(std::string name);
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// Placeholder names a template may use: vocabulary, formula, description, examples,
/// formula1, formula2.
const std::vector<std::string>& known_placeholders();
std::vector<std::string> required_placeholders(Direction d);

struct PromptTemplate {
  std::string id;  // <formalism>_<direction>_<shots>shot
  syntax::Formalism formalism = syntax::Formalism::Prop;
  Direction direction = Direction::Interpret;
  int shot_count = 0;
  std::string text;

  /// Known placeholders in order of first occurrence.
  std::vector<std::string> placeholders() const;
  /// Throws MissingPlaceholder when a placeholder required by the direction is absent.
  void validate() const;

  bool operator==(const PromptTemplate&) const = default;
};

/// Builds a template from its id and text. Throws ConfigError for a malformed id.
PromptTemplate make_template(std::string_view id, std::string text);

std::vector<PromptTemplate> bundled_templates();
/// Throws ConfigError when no bundled template matches.
PromptTemplate bundled_template(syntax::Formalism f, Direction d, int shots);
/// Reads `<id>.txt`; the id is the file stem.
PromptTemplate load_template(const std::filesystem::path& file);

struct TemplateSet {
  PromptTemplate interpret;
  PromptTemplate compile;
  PromptTemplate judge;

  static TemplateSet bundled(syntax::Formalism f, int shots, bool chain_of_thought = true);
  /// Like bundled(), but a file `<id>.txt` in `dir` replaces the bundled text.
  static TemplateSet from_directory(const std::filesystem::path& dir, syntax::Formalism f,
                                    int shots, bool chain_of_thought = true);
};

using PromptContext = std::map<std::string, std::string>;

/// Substitutes every `{name}` of a known placeholder. Throws MissingPlaceholder when the
/// context lacks one the template uses.
std::string render_prompt(const PromptTemplate& t, const PromptContext& ctx);

/// Vocabulary lines for the symbols occurring in `e`, in order of first occurrence:
/// propositions for propositional logic; objects, parameterized predicates and free
/// variables for first-order logic; nothing for regexes.
std::string vocabulary_listing(const syntax::FormalExpression& e);

PromptContext interpret_context(const syntax::FormalExpression& phi);
PromptContext compile_context(std::string description);
PromptContext judge_context(const syntax::FormalExpression& a, const syntax::FormalExpression& b);

}  // namespace formaltrip::llm

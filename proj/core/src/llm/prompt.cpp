#include "formaltrip/llm/prompt.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace formaltrip::llm {

namespace detail {
const std::map<std::string, std::string>& bundled_prompt_files();
}

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::Interpret: return "interpret";
    case Direction::Compile: return "compile";
    case Direction::JudgeCot: return "judge_cot";
    case Direction::JudgeYesNo: return "judge_yesno";
  }
  return "?";
}

Direction direction_from_string(std::string_view s) {
  if (s == "interpret") return Direction::Interpret;
  if (s == "compile") return Direction::Compile;
  if (s == "judge_cot") return Direction::JudgeCot;
  if (s == "judge_yesno") return Direction::JudgeYesNo;
  throw ConfigError("unknown prompt direction '" + std::string(s) + "'");
}

MissingPlaceholder::MissingPlaceholder(std::string name)
    : Error("missing placeholder {" + name + "}"), name_(std::move(name)) {}

const std::vector<std::string>& known_placeholders() {
  static const std::vector<std::string> names = {"vocabulary", "formula",  "description",
                                                 "examples",   "formula1", "formula2"};
  return names;
}

std::vector<std::string> required_placeholders(Direction d) {
  switch (d) {
    case Direction::Interpret: return {"formula"};
    case Direction::Compile: return {"description"};
    case Direction::JudgeCot:
    case Direction::JudgeYesNo: return {"formula1", "formula2"};
  }
  return {};
}

namespace {

// Calls visit(literal_text) and hole(name) over the template in order.
template <class Lit, class Hole>
void scan(const std::string& text, Lit visit, Hole hole) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t open = text.find('{', pos);
    if (open == std::string::npos) break;
    const std::size_t close = text.find('}', open);
    if (close == std::string::npos) break;
    const std::string name = text.substr(open + 1, close - open - 1);
    const auto& known = known_placeholders();
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      visit(std::string_view(text).substr(pos, open + 1 - pos));
      pos = open + 1;
      continue;
    }
    visit(std::string_view(text).substr(pos, open - pos));
    hole(name);
    pos = close + 1;
  }
  visit(std::string_view(text).substr(pos));
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

void collect_predicates(const syntax::FolNode& n,
                        std::vector<std::pair<std::string, std::size_t>>& out) {
  if (n.kind == syntax::FolNode::Kind::Atom) {
    const bool seen = std::any_of(out.begin(), out.end(),
                                  [&](const auto& p) { return p.first == n.predicate; });
    if (!seen) out.emplace_back(n.predicate, n.terms.size());
    return;
  }
  for (const auto& c : n.children) collect_predicates(c, out);
}

}  // namespace

std::vector<std::string> PromptTemplate::placeholders() const {
  std::vector<std::string> out;
  scan(
      text, [](std::string_view) {},
      [&](const std::string& name) {
        if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
      });
  return out;
}

void PromptTemplate::validate() const {
  const auto present = placeholders();
  for (const auto& name : required_placeholders(direction)) {
    if (std::find(present.begin(), present.end(), name) == present.end()) {
      throw MissingPlaceholder(name);
    }
  }
}

PromptTemplate make_template(std::string_view id, std::string text) {
  PromptTemplate t;
  t.id = std::string(id);
  t.text = std::move(text);
  const std::size_t first = id.find('_');
  const std::size_t last = id.rfind('_');
  if (first == std::string_view::npos || first == last || !id.ends_with("shot")) {
    throw ConfigError("template id '" + t.id + "' is not <formalism>_<direction>_<n>shot");
  }
  t.formalism = syntax::formalism_from_string(id.substr(0, first));
  t.direction = direction_from_string(id.substr(first + 1, last - first - 1));
  const std::string_view shots = id.substr(last + 1, id.size() - last - 1 - 4);
  if (shots != "0" && shots != "2") {
    throw ConfigError("template id '" + t.id + "' must use 0shot or 2shot");
  }
  t.shot_count = shots[0] - '0';
  t.validate();
  return t;
}

std::vector<PromptTemplate> bundled_templates() {
  std::vector<PromptTemplate> out;
  for (const auto& [id, text] : detail::bundled_prompt_files()) out.push_back(make_template(id, text));
  return out;
}

namespace {

std::string template_id(syntax::Formalism f, Direction d, int shots) {
  const bool judge = d == Direction::JudgeCot || d == Direction::JudgeYesNo;
  return std::string(syntax::to_string(f)) + "_" + std::string(to_string(d)) + "_" +
         std::to_string(judge ? 0 : shots) + "shot";
}

}  // namespace

PromptTemplate bundled_template(syntax::Formalism f, Direction d, int shots) {
  const std::string id = template_id(f, d, shots);
  const auto& files = detail::bundled_prompt_files();
  auto it = files.find(id);
  if (it == files.end()) throw ConfigError("no bundled prompt template '" + id + "'");
  return make_template(id, it->second);
}

PromptTemplate load_template(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cannot read template " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return make_template(file.stem().string(), ss.str());
}

TemplateSet TemplateSet::bundled(syntax::Formalism f, int shots, bool chain_of_thought) {
  const Direction judge = chain_of_thought ? Direction::JudgeCot : Direction::JudgeYesNo;
  return {bundled_template(f, Direction::Interpret, shots),
          bundled_template(f, Direction::Compile, shots), bundled_template(f, judge, shots)};
}

TemplateSet TemplateSet::from_directory(const std::filesystem::path& dir, syntax::Formalism f,
                                        int shots, bool chain_of_thought) {
  TemplateSet set = bundled(f, shots, chain_of_thought);
  for (PromptTemplate* t : {&set.interpret, &set.compile, &set.judge}) {
    const auto file = dir / (t->id + ".txt");
    if (std::filesystem::exists(file)) *t = load_template(file);
  }
  return set;
}

std::string render_prompt(const PromptTemplate& t, const PromptContext& ctx) {
  std::string out;
  scan(
      t.text, [&](std::string_view s) { out += s; },
      [&](const std::string& name) {
        auto it = ctx.find(name);
        if (it == ctx.end()) throw MissingPlaceholder(name);
        out += it->second;
      });
  return out;
}

std::string vocabulary_listing(const syntax::FormalExpression& e) {
  std::vector<std::string> lines;
  switch (e.formalism) {
    case syntax::Formalism::Prop:
      lines.push_back("The propositions are: " + join(syntax::prop_variables(e.prop()), ", "));
      break;
    case syntax::Formalism::Fol: {
      const auto objects = syntax::fol_atom_terms(e.fol());
      if (!objects.empty()) lines.push_back("The objects are: " + join(objects, ", "));
      std::vector<std::pair<std::string, std::size_t>> preds;
      collect_predicates(syntax::fol_tree(e.fol()), preds);
      std::vector<std::string> shown;
      for (const auto& [name, arity] : preds) {
        std::string s = name + "(";
        for (std::size_t i = 0; i < arity; ++i) s += (i ? ",?p" : "?p") + std::to_string(i);
        shown.push_back(s + ")");
      }
      lines.push_back("The parameterized predicates are: " + join(shown, ", "));
      const auto vars = syntax::fol_bound_variables(e.fol());
      if (!vars.empty()) lines.push_back("The free variables are: " + join(vars, ", "));
      break;
    }
    case syntax::Formalism::Regex:
      break;
  }
  return join(lines, "\n");
}

PromptContext interpret_context(const syntax::FormalExpression& phi) {
  return {{"formula", phi.canonical_text}, {"vocabulary", vocabulary_listing(phi)}};
}

PromptContext compile_context(std::string description) {
  return {{"description", std::move(description)}};
}

PromptContext judge_context(const syntax::FormalExpression& a, const syntax::FormalExpression& b) {
  return {{"formula1", a.canonical_text}, {"formula2", b.canonical_text}};
}

}  // namespace formaltrip::llm

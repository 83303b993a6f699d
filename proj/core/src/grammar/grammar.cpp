#include "formaltrip/grammar/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "formaltrip/common/error.hpp"

namespace formaltrip::grammar {

namespace {

// Productions of the four dataset grammars, symbol for symbol.
constexpr std::string_view kKsat3 =
    "S -> S \xE2\x88\xA7 S\n"
    "S -> ( P \xE2\x88\xA8 P \xE2\x88\xA8 P )\n"
    "P -> \xC2\xAC v | v\n";

constexpr std::string_view kProp =
    "S -> ( S \xE2\x88\xA7 S )\n"
    "S -> ( S \xE2\x88\xA8 S )\n"
    "S -> ( \xC2\xAC S )\n"
    "S -> \xC2\xAC v | v\n";

constexpr std::string_view kFol =
    "S -> Q\n"
    "Q -> F | ( \xE2\x88\x80 f . Q ) | ( \xE2\x88\x83 f . Q )\n"
    "F -> ( F \xE2\x88\xA7 F ) | ( F \xE2\x88\xA8 F )\n"
    "F -> ( \xC2\xAC F ) | \xC2\xAC p | p\n";

constexpr std::string_view kRegex =
    "S -> ( S ) K\n"
    "S -> S \xCE\xA3 K\n"
    "S -> \xCE\xA3 K\n"
    "K -> * | \xCE\xB5\n";

constexpr std::string_view kEpsilon = "\xCE\xB5";

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= s.size()) break;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string unquote(const std::string& tok) {
  if (tok.size() >= 3 && tok.front() == '\'' && tok.back() == '\'') {
    return tok.substr(1, tok.size() - 2);
  }
  return tok;
}

bool wordlike_edge(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
         static_cast<unsigned char>(c) >= 0x80;
}

bool is_binary_glyph(const std::string& t) {
  return t == "\xE2\x88\xA7" || t == "\xE2\x88\xA8";
}
bool is_quantifier_glyph(const std::string& t) {
  return t == "\xE2\x88\x80" || t == "\xE2\x88\x83";
}

}  // namespace

std::string render_tokens(std::span<const std::string> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& t = tokens[i];
    if (t.empty()) continue;
    if (is_binary_glyph(t)) {
      out += ' ';
      out += t;
      out += ' ';
      continue;
    }
    if (!out.empty()) {
      const char prev = out.back();
      const bool prev_quant = i > 0 && is_quantifier_glyph(tokens[i - 1]);
      const bool prev_dot = i > 0 && tokens[i - 1] == ".";
      if (prev_quant || prev_dot) {
        out += ' ';
      } else if (prev != ' ' && wordlike_edge(prev) && wordlike_edge(t.front()) &&
                 static_cast<unsigned char>(t.front()) < 0x80 &&
                 static_cast<unsigned char>(prev) < 0x80) {
        out += ' ';
      }
    }
    out += t;
  }
  return out;
}

Symbol Grammar::intern(const std::string& name) {
  if (auto s = find(name)) return *s;
  names_.push_back(name);
  is_nonterminal_.push_back(false);
  by_lhs_.emplace_back();
  return static_cast<Symbol>(names_.size() - 1);
}

std::optional<Symbol> Grammar::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<Symbol>(i);
  }
  return std::nullopt;
}

Grammar Grammar::from_rules(std::string_view text, std::string id) {
  Grammar g;
  g.id_ = std::move(id);
  struct RawRule {
    std::string lhs;
    std::vector<std::string> rhs;
    std::size_t line;
  };
  std::vector<RawRule> raw;
  std::optional<std::set<std::string>> declared;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = trim(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    if (line.substr(0, 10) == "%terminals") {
      if (!declared) declared.emplace();
      for (auto& t : split_ws(line.substr(10))) declared->insert(unquote(t));
      continue;
    }
    std::size_t arrow = line.find("->");
    std::size_t arrow_len = 2;
    if (arrow == std::string_view::npos) {
      arrow = line.find("\xE2\x86\x92");  // →
      arrow_len = 3;
    }
    if (arrow == std::string_view::npos) {
      throw ConfigError("grammar line " + std::to_string(line_no) + ": missing '->'");
    }
    const auto lhs_tokens = split_ws(line.substr(0, arrow));
    if (lhs_tokens.size() != 1) {
      throw ConfigError("grammar line " + std::to_string(line_no) +
                        ": left-hand side must be a single symbol");
    }
    std::vector<std::string> alt;
    auto flush = [&] {
      raw.push_back({lhs_tokens.front(), alt, line_no});
      alt.clear();
    };
    for (const auto& tok : split_ws(line.substr(arrow + arrow_len))) {
      if (tok == "|") {
        flush();
      } else if (tok != kEpsilon) {
        alt.push_back(unquote(tok));
      }
    }
    flush();
  }
  if (raw.empty()) throw ConfigError("grammar has no productions");

  std::set<std::string> lhs_names;
  for (const auto& r : raw) lhs_names.insert(r.lhs);
  // Intern in order of first appearance for stable symbol ids.
  for (const auto& r : raw) {
    g.intern(r.lhs);
    for (const auto& s : r.rhs) g.intern(s);
  }
  for (const auto& n : lhs_names) g.is_nonterminal_[static_cast<std::size_t>(*g.find(n))] = true;
  if (declared) {
    for (const auto& r : raw) {
      for (const auto& s : r.rhs) {
        if (!lhs_names.count(s) && !declared->count(s)) {
          throw ConfigError("grammar line " + std::to_string(r.line) + ": symbol '" + s +
                            "' is neither a nonterminal nor a declared terminal");
        }
      }
    }
  }
  for (const auto& r : raw) {
    Rule rule;
    rule.lhs = *g.find(r.lhs);
    for (const auto& s : r.rhs) rule.rhs.push_back(*g.find(s));
    g.by_lhs_[static_cast<std::size_t>(rule.lhs)].push_back(g.rules_.size());
    g.rules_.push_back(std::move(rule));
  }
  g.start_ = *g.find(raw.front().lhs);
  return g;
}

const Grammar& Grammar::builtin(std::string_view id) {
  static const std::map<std::string, Grammar, std::less<>> grammars = [] {
    std::map<std::string, Grammar, std::less<>> m;
    for (const auto& name : builtin_ids()) {
      m.emplace(name, from_rules(builtin_rule_text(name), name));
    }
    return m;
  }();
  auto it = grammars.find(id);
  if (it == grammars.end()) throw ConfigError("unknown grammar '" + std::string(id) + "'");
  return it->second;
}

std::vector<std::string> Grammar::builtin_ids() { return {"ksat3", "prop", "fol", "regex"}; }

std::string_view Grammar::builtin_rule_text(std::string_view id) {
  if (id == "ksat3") return kKsat3;
  if (id == "prop") return kProp;
  if (id == "fol") return kFol;
  if (id == "regex") return kRegex;
  throw ConfigError("unknown grammar '" + std::string(id) + "'");
}

const std::vector<std::size_t>& Grammar::rules_for(Symbol nonterminal) const {
  return by_lhs_[static_cast<std::size_t>(nonterminal)];
}

std::vector<std::string> Grammar::nonterminals() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (is_nonterminal_[i]) out.push_back(names_[i]);
  }
  return out;
}

std::vector<std::string> Grammar::terminals() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!is_nonterminal_[i]) out.push_back(names_[i]);
  }
  return out;
}

std::string Grammar::to_rule_text() const {
  std::string out;
  for (const auto& r : rules_) {
    out += name(r.lhs);
    out += " ->";
    if (r.rhs.empty()) out += " " + std::string(kEpsilon);
    for (Symbol s : r.rhs) {
      out += ' ';
      out += name(s);
    }
    out += '\n';
  }
  return out;
}

std::string Grammar::render(std::span<const Symbol> form) const {
  std::vector<std::string> tokens;
  tokens.reserve(form.size());
  for (Symbol s : form) tokens.push_back(name(s));
  return render_tokens(tokens);
}

}  // namespace formaltrip::grammar

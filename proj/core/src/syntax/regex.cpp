#include "formaltrip/syntax/regex.hpp"

#include <algorithm>
#include <cctype>

#include "formaltrip/common/error.hpp"

namespace formaltrip::syntax {

namespace {
constexpr std::string_view kSymbolOrder = "0123456789abcdefghijklmnopqrstuvwxyz";
}

Alphabet::Alphabet(std::string symbols) : symbols_(std::move(symbols)) {
  std::sort(symbols_.begin(), symbols_.end());
  symbols_.erase(std::unique(symbols_.begin(), symbols_.end()), symbols_.end());
}

Alphabet Alphabet::digits(std::size_t size) {
  if (size == 0 || size > kSymbolOrder.size()) {
    throw Error("alphabet size must be between 1 and " + std::to_string(kSymbolOrder.size()));
  }
  return Alphabet(std::string(kSymbolOrder.substr(0, size)));
}

Alphabet Alphabet::open() {
  Alphabet a;
  a.open_ = true;
  return a;
}

bool Alphabet::contains(char c) const {
  if (open_) return std::isalnum(static_cast<unsigned char>(c)) != 0;
  return std::binary_search(symbols_.begin(), symbols_.end(), c);
}

Alphabet Alphabet::merged_with(std::string_view extra) const {
  Alphabet a(symbols_ + std::string(extra));
  a.open_ = open_;
  return a;
}

RegexAst RegexAst::literal(char symbol) {
  RegexAst r;
  r.kind = Kind::Literal;
  r.symbol = symbol;
  return r;
}

RegexAst RegexAst::concat(std::vector<RegexAst> children) {
  RegexAst r;
  r.kind = Kind::Concat;
  for (auto& c : children) {
    if (c.kind == Kind::Concat) {
      for (auto& g : c.children) r.children.push_back(std::move(g));
    } else {
      r.children.push_back(std::move(c));
    }
  }
  if (r.children.size() == 1) return std::move(r.children.front());
  return r;
}

RegexAst RegexAst::star(RegexAst child) {
  RegexAst r;
  r.kind = Kind::Star;
  r.children.push_back(std::move(child));
  return r;
}

namespace {

class RegexParser {
 public:
  RegexParser(std::string_view text, const Alphabet& alphabet) : alphabet_(alphabet) {
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (!std::isspace(static_cast<unsigned char>(text[i]))) {
        chars_.push_back(text[i]);
        pos_.push_back(i);
      }
    }
    pos_.push_back(text.size());
  }

  RegexAst parse() {
    if (chars_.empty()) throw SyntaxError(0, "regular expression", "empty input");
    RegexAst r = parse_seq();
    if (i_ < chars_.size()) {
      if (chars_[i_] == ')') throw SyntaxError(pos_[i_], "end of input", "unbalanced ')'");
      throw SyntaxError(pos_[i_], "end of input");
    }
    return r;
  }

 private:
  bool at_end() const { return i_ >= chars_.size(); }

  RegexAst parse_seq() {
    std::vector<RegexAst> parts;
    while (!at_end() && chars_[i_] != ')') parts.push_back(parse_postfix());
    if (parts.empty()) {
      throw SyntaxError(pos_[i_], "symbol or '('", "empty group");
    }
    return RegexAst::concat(std::move(parts));
  }

  RegexAst parse_postfix() {
    RegexAst r = parse_atom();
    while (!at_end() && chars_[i_] == '*') {
      ++i_;
      r = RegexAst::star(std::move(r));
    }
    return r;
  }

  RegexAst parse_atom() {
    const char c = chars_[i_];
    if (c == '(') {
      ++i_;
      RegexAst inner = parse_seq();
      if (at_end() || chars_[i_] != ')') throw SyntaxError(pos_[i_], "')'");
      ++i_;
      return inner;
    }
    if (c == '*') throw SyntaxError(pos_[i_], "symbol or '('", "'*' has no operand");
    if (c == '+') throw SyntaxError(pos_[i_], "symbol, '(' or '*'", "'+' is not supported");
    if (!alphabet_.contains(c)) {
      throw SyntaxError(pos_[i_], "alphabet symbol",
                        std::string("'") + c + "' is not in the alphabet");
    }
    ++i_;
    return RegexAst::literal(c);
  }

  const Alphabet& alphabet_;
  std::string chars_;
  std::vector<std::size_t> pos_;
  std::size_t i_ = 0;
};

void print_into(const RegexAst& r, std::string& out) {
  switch (r.kind) {
    case RegexAst::Kind::Literal:
      out += r.symbol;
      return;
    case RegexAst::Kind::Concat:
      for (const auto& c : r.children) print_into(c, out);
      return;
    case RegexAst::Kind::Star: {
      const RegexAst& c = r.children.front();
      if (c.kind == RegexAst::Kind::Concat) {
        out += '(';
        print_into(c, out);
        out += ')';
      } else {
        print_into(c, out);
      }
      out += '*';
      return;
    }
  }
}

void collect(const RegexAst& r, std::string& out) {
  if (r.kind == RegexAst::Kind::Literal) {
    out += r.symbol;
    return;
  }
  for (const auto& c : r.children) collect(c, out);
}

}  // namespace

RegexAst parse_regex(std::string_view text, const Alphabet& alphabet) {
  return RegexParser(text, alphabet).parse();
}

std::string print_regex(const RegexAst& r) {
  std::string out;
  print_into(r, out);
  return out;
}

std::string regex_symbols(const RegexAst& r) {
  std::string out;
  collect(r, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace formaltrip::syntax

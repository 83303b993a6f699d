#include "formaltrip/grammar/recognize.hpp"

#include <cctype>
#include <set>
#include <string>
#include <tuple>

namespace formaltrip::grammar {

namespace {

struct Item {
  std::size_t rule;  // rules().size() is the augmented start rule
  std::size_t dot;
  std::size_t origin;
  bool operator<(const Item& o) const {
    return std::tie(rule, dot, origin) < std::tie(o.rule, o.dot, o.origin);
  }
};

class Earley {
 public:
  explicit Earley(const Grammar& g) : g_(g), augmented_{g.start()} {
    nullable_.assign(g.symbol_count(), false);
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& r : g.rules()) {
        if (nullable_[static_cast<std::size_t>(r.lhs)]) continue;
        bool all = true;
        for (Symbol s : r.rhs) all = all && nullable_[static_cast<std::size_t>(s)];
        if (all) {
          nullable_[static_cast<std::size_t>(r.lhs)] = true;
          changed = true;
        }
      }
    }
  }

  bool run(std::span<const Symbol> input) {
    const std::size_t n = input.size();
    std::vector<std::vector<Item>> sets(n + 1);
    std::vector<std::set<Item>> seen(n + 1);
    auto add = [&](std::size_t k, Item it) {
      if (seen[k].insert(it).second) sets[k].push_back(it);
    };
    const std::size_t aug = g_.rules().size();
    add(0, {aug, 0, 0});
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t w = 0; w < sets[i].size(); ++w) {
        const Item it = sets[i][w];
        const auto& body = rhs(it.rule);
        if (it.dot < body.size()) {
          const Symbol next = body[it.dot];
          if (g_.is_nonterminal(next)) {
            for (std::size_t r : g_.rules_for(next)) add(i, {r, 0, i});
            if (nullable_[static_cast<std::size_t>(next)]) add(i, {it.rule, it.dot + 1, it.origin});
          }
          if (i < n && input[i] == next) add(i + 1, {it.rule, it.dot + 1, it.origin});
        } else if (it.rule != aug) {
          const Symbol lhs = g_.rules()[it.rule].lhs;
          for (std::size_t w2 = 0; w2 < sets[it.origin].size(); ++w2) {
            const Item p = sets[it.origin][w2];
            const auto& pb = rhs(p.rule);
            if (p.dot < pb.size() && pb[p.dot] == lhs) add(i, {p.rule, p.dot + 1, p.origin});
          }
        }
      }
    }
    return seen[n].count({aug, 1, 0}) > 0;
  }

 private:
  const std::vector<Symbol>& rhs(std::size_t rule) const {
    return rule == g_.rules().size() ? augmented_ : g_.rules()[rule].rhs;
  }

  const Grammar& g_;
  std::vector<Symbol> augmented_;
  std::vector<bool> nullable_;
};

// Raw tokens: UTF-8 glyphs, single punctuation characters, and identifier runs.
std::vector<std::string> raw_tokens(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      ++i;
    } else if (std::isalnum(c) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) {
        ++j;
      }
      out.emplace_back(text.substr(i, j - i));
      i = j;
    } else if (c >= 0x80) {
      std::size_t len = c >= 0xF0 ? 4 : c >= 0xE0 ? 3 : 2;
      out.emplace_back(text.substr(i, len));
      i += len;
    } else {
      out.emplace_back(1, text[i]);
      ++i;
    }
  }
  return out;
}

bool is_identifier(const std::string& t) {
  return !t.empty() && (std::isalnum(static_cast<unsigned char>(t[0])) || t[0] == '_');
}

}  // namespace

bool recognize_symbols(const Grammar& g, std::span<const Symbol> input) {
  return Earley(g).run(input);
}

std::optional<std::vector<Symbol>> deinstantiate(const Grammar& g, std::string_view text) {
  const auto tokens = raw_tokens(text);
  const auto v = g.find("v");
  const auto p = g.find("p");
  const auto f = g.find("f");
  const auto sigma = g.find("\xCE\xA3");
  std::vector<Symbol> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& t = tokens[i];
    const bool after_quantifier =
        i > 0 && (tokens[i - 1] == "\xE2\x88\x80" || tokens[i - 1] == "\xE2\x88\x83");
    if (is_identifier(t) && p && i + 1 < tokens.size() && tokens[i + 1] == "(") {
      std::size_t j = i + 2;
      while (j < tokens.size() && tokens[j] != ")") ++j;
      if (j == tokens.size()) return std::nullopt;
      out.push_back(*p);
      i = j;
    } else if (is_identifier(t) && f && after_quantifier) {
      out.push_back(*f);
    } else if (auto s = g.find(t)) {
      out.push_back(*s);
    } else if (is_identifier(t) && v) {
      out.push_back(*v);
    } else if (is_identifier(t) && sigma) {
      for (std::size_t k = 0; k < t.size(); ++k) out.push_back(*sigma);
    } else if (is_identifier(t) && p) {
      out.push_back(*p);  // zero-arity atom
    } else {
      return std::nullopt;
    }
  }
  return out;
}

bool recognize(const Grammar& g, std::string_view text) {
  const auto symbols = deinstantiate(g, text);
  return symbols && recognize_symbols(g, *symbols);
}

}  // namespace formaltrip::grammar

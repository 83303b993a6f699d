#include "formaltrip/syntax/extract.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <vector>

#include "formaltrip/common/error.hpp"

namespace formaltrip::syntax {

namespace {

constexpr std::size_t kMaxSpanLine = 320;

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string strip_wrapping(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '$' || c == '`') continue;
    // LaTeX inline math delimiters \( \) and \[ \]
    if (c == '\\' && i + 1 < s.size() &&
        (s[i + 1] == '(' || s[i + 1] == ')' || s[i + 1] == '[' || s[i + 1] == ']')) {
      ++i;
      continue;
    }
    out += c;
  }
  std::string_view v = trim(out);
  // list markers "- " and "1. "
  if (v.size() > 2 && v[0] == '-' && v[1] == ' ') v = trim(v.substr(2));
  {
    std::size_t d = 0;
    while (d < v.size() && std::isdigit(static_cast<unsigned char>(v[d]))) ++d;
    if (d > 0 && d + 1 < v.size() && v[d] == '.' && v[d + 1] == ' ') v = trim(v.substr(d + 2));
  }
  bool changed = true;
  while (changed && !v.empty()) {
    changed = false;
    const char f = v.front();
    const char b = v.back();
    if ((f == '"' && b == '"' && v.size() > 1) || (f == '\'' && b == '\'' && v.size() > 1)) {
      v = trim(v.substr(1, v.size() - 2));
      changed = true;
    } else if (b == '.' || b == ';' || b == ',' || b == '"' || b == '\'') {
      v = trim(v.substr(0, v.size() - 1));
      changed = true;
    } else if (f == '"' || f == '\'') {
      v = trim(v.substr(1));
      changed = true;
    }
  }
  return std::string(v);
}

bool has_symbolic_operator(std::string_view s, Formalism formalism) {
  if (formalism == Formalism::Regex) {
    return s.find_first_of("*()") != std::string_view::npos;
  }
  static constexpr std::string_view kGlyphs[] = {
      "\xC2\xAC", "\xE2\x88\xA7", "\xE2\x88\xA8", "\xE2\x88\x80", "\xE2\x88\x83",
      "~", "&", "|", "!", "\\", "("};
  return std::any_of(std::begin(kGlyphs), std::end(kGlyphs),
                     [&](std::string_view g) { return s.find(g) != std::string_view::npos; });
}

bool span_start(std::string_view line, std::size_t i) {
  if (is_space(line[i])) return false;
  if (i == 0 || line[i] == '(') return true;
  const char p = line[i - 1];
  return is_space(p) || p == '"' || p == '\'' || p == ':' || p == '`' || p == '$';
}

bool span_end(std::string_view line, std::size_t j) {
  if (j == line.size()) return true;
  const char c = line[j];
  if (is_space(c)) return true;
  if (std::string_view(".,;:!?\"'`$").find(c) != std::string_view::npos) return true;
  return j > 0 && (line[j - 1] == ')' || line[j - 1] == '*');
}

class Extractor {
 public:
  Extractor(Formalism formalism, const ParseOptions& options)
      : formalism_(formalism), options_(options) {}

  std::optional<FormalExpression> try_parse(std::string_view candidate) {
    candidate = trim(candidate);
    if (candidate.empty()) return std::nullopt;
    try {
      return parse_expression(candidate, formalism_, options_);
    } catch (const Error& e) {
      last_error_ = e.what();
      return std::nullopt;
    }
  }

  /// Longest parseable candidate on one line.
  std::optional<FormalExpression> scan_line(std::string_view raw) {
    std::optional<FormalExpression> best;
    std::size_t best_len = 0;
    auto consider = [&](const std::string& cand) {
      if (cand.size() <= best_len) return;
      if (auto e = try_parse(cand)) {
        best = std::move(e);
        best_len = cand.size();
      }
    };

    const std::string whole = strip_wrapping(raw);
    consider(whole);
    if (best) {
      whole_line_error_.clear();
      return best;
    }
    whole_line_error_ = last_error_;

    if (auto colon = raw.rfind(':'); colon != std::string_view::npos) {
      consider(strip_wrapping(raw.substr(colon + 1)));
    }
    for (std::size_t open = raw.find('`'); open != std::string_view::npos;) {
      const std::size_t close = raw.find('`', open + 1);
      if (close == std::string_view::npos) break;
      consider(strip_wrapping(raw.substr(open + 1, close - open - 1)));
      open = raw.find('`', close + 1);
    }

    const std::string line = whole;
    if (line.size() <= kMaxSpanLine) {
      std::vector<std::size_t> starts;
      std::vector<std::size_t> ends;
      for (std::size_t i = 0; i < line.size(); ++i) {
        if (span_start(line, i)) starts.push_back(i);
      }
      for (std::size_t j = 1; j <= line.size(); ++j) {
        if (span_end(line, j)) ends.push_back(j);
      }
      std::vector<std::pair<std::size_t, std::size_t>> spans;
      for (std::size_t s : starts) {
        for (std::size_t e : ends) {
          if (e > s) spans.emplace_back(s, e);
        }
      }
      std::stable_sort(spans.begin(), spans.end(), [](const auto& a, const auto& b) {
        return a.second - a.first > b.second - b.first;
      });
      for (const auto& [s, e] : spans) {
        if (e - s <= best_len) break;
        const std::string_view cand(line.data() + s, e - s);
        if (!has_symbolic_operator(cand, formalism_)) continue;
        consider(std::string(cand));
      }
    }
    return best;
  }

  const std::string& whole_line_error() const { return whole_line_error_; }
  const std::string& last_error() const { return last_error_; }

 private:
  Formalism formalism_;
  const ParseOptions& options_;
  std::string last_error_;
  std::string whole_line_error_;
};

}  // namespace

Extraction extract_formal(std::string_view text, Formalism formalism,
                          const ParseOptions& options) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = trim(text.substr(start, end - start));
    const bool fence = line.substr(0, 3) == "```";
    if (!line.empty() && !fence) lines.push_back(line);
    start = end + 1;
  }
  if (lines.empty()) return NonCompliant{"empty reply"};

  Extractor ex(formalism, options);
  std::string innermost;
  for (auto it = lines.rbegin(); it != lines.rend(); ++it) {
    if (auto e = ex.scan_line(*it)) return std::move(*e);
    if (innermost.empty()) innermost = ex.whole_line_error();
  }
  if (lines.size() > 1) {
    std::string joined;
    for (auto l : lines) {
      if (!joined.empty()) joined += ' ';
      joined += l;
    }
    if (auto e = ex.try_parse(strip_wrapping(joined))) return std::move(*e);
  }
  if (innermost.empty()) innermost = ex.last_error();
  return NonCompliant{innermost.empty() ? "no formal expression found" : innermost};
}

}  // namespace formaltrip::syntax

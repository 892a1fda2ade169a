#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <unordered_set>
#include <vector>

#include "prarg/errors.hpp"
#include "prarg/graph.hpp"
#include "prarg/prag.hpp"

// Text format, one statement per "." (whitespace-insensitive, '#' starts a
// comment running to end of line):
//
//   arg(<id>).            argument with probability 1
//   parg(<id>,<prob>).    argument with probability prob ∈ [0,1]
//   att(<from>,<to>).     attack between declared arguments

namespace prarg {

struct GraphDocument {
  std::string source;  // path, or empty for inline text
  PrAG prag;

  const ArgumentGraph& graph() const noexcept { return prag.graph(); }
};

namespace detail {

class StatementLexer {
 public:
  explicit StatementLexer(std::string_view text) : text_(text) {}

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  std::size_t line() const noexcept { return line_; }

  std::string word() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_word_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  // A probability literal: digits, '.', exponent.
  std::string number() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      bool exp_sign = (c == '+' || c == '-') && pos_ > start && (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E');
      if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'e' || c == 'E' || exp_sign)) break;
      // A '.' not followed by a digit terminates the statement rather than the number.
      if (c == '.' && (pos_ + 1 >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) break;
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) {
      std::string got = pos_ >= text_.size() ? "end of input" : std::string("'") + text_[pos_] + "'";
      throw ParseError(line_, std::string("expected '") + c + "', got " + got);
    }
    ++pos_;
  }

 private:
  static bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

}  // namespace detail

inline GraphDocument parse_graph(std::string_view text, std::string source = {}) {
  detail::StatementLexer lex(text);
  std::vector<std::string> ids;
  std::vector<double> probs;
  std::unordered_set<std::string> declared;
  std::vector<std::pair<Attack, std::size_t>> attacks;

  auto read_id = [&]() {
    std::string id = lex.word();
    if (id.empty()) throw ParseError(lex.line(), "expected an argument id");
    return id;
  };

  while (!lex.at_end()) {
    const std::size_t line = lex.line();
    std::string head = lex.word();
    if (head.empty()) throw ParseError(line, "expected a statement");
    lex.expect('(');
    if (head == "arg" || head == "parg") {
      std::string id = read_id();
      double p = 1.0;
      if (head == "parg") {
        lex.expect(',');
        std::string lit = lex.number();
        auto [ptr, ec] = std::from_chars(lit.data(), lit.data() + lit.size(), p);
        if (lit.empty() || ec != std::errc{} || ptr != lit.data() + lit.size())
          throw ParseError(lex.line(), "malformed probability '" + lit + "'");
        if (!(p >= 0.0 && p <= 1.0))
          throw ParseError(lex.line(), "probability of '" + id + "' outside [0,1]");
      }
      lex.expect(')');
      lex.expect('.');
      if (!declared.insert(id).second) throw ParseError(line, "duplicate declaration of '" + id + "'");
      ids.push_back(id);
      probs.push_back(p);
    } else if (head == "att") {
      std::string from = read_id();
      lex.expect(',');
      std::string to = read_id();
      lex.expect(')');
      lex.expect('.');
      attacks.push_back({{from, to}, line});
    } else {
      throw ParseError(line, "unknown statement '" + head + "'");
    }
  }

  std::unordered_set<std::string> seen_attacks;
  std::vector<Attack> plain;
  plain.reserve(attacks.size());
  for (const auto& [a, line] : attacks) {
    for (const auto* end : {&a.from, &a.to})
      if (!declared.count(*end)) throw ParseError(line, "attack endpoint '" + *end + "' is not declared");
    if (!seen_attacks.insert(a.from + "," + a.to).second)
      throw ParseError(line, "duplicate declaration of att(" + a.from + "," + a.to + ")");
    plain.push_back(a);
  }

  std::vector<std::size_t> order(ids.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return ids[x] < ids[y]; });
  std::vector<double> sorted_probs;
  sorted_probs.reserve(ids.size());
  for (auto i : order) sorted_probs.push_back(probs[i]);

  ArgumentGraph g(ids, plain);
  return GraphDocument{std::move(source), PrAG(std::move(g), std::move(sorted_probs))};
}

inline GraphDocument load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str(), path);
}

// Shortest decimal that reads back to the same double.
inline std::string shortest_decimal(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed);
  if (ec != std::errc{}) return std::to_string(v);
  return std::string(buf, ptr);
}

inline std::string serialize(const PrAG& pg) {
  std::string out;
  const auto& g = pg.graph();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (pg.p(i) == 1.0)
      out += "arg(" + g.id(i) + ").\n";
    else
      out += "parg(" + g.id(i) + "," + shortest_decimal(pg.p(i)) + ").\n";
  }
  for (const auto& [f, t] : g.attacks()) out += "att(" + g.id(f) + "," + g.id(t) + ").\n";
  return out;
}

// Plain decimal (never scientific) with `digits` significant digits; zero is
// printed with digits decimal places.
inline std::string format_probability(double v, int digits = 12) {
  int decimals = digits;
  if (v != 0.0 && std::isfinite(v)) {
    int magnitude = static_cast<int>(std::floor(std::log10(std::fabs(v))));
    decimals = std::max(0, digits - 1 - magnitude);
  }
  char buf[512];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, decimals);
  if (ec != std::errc{}) return std::to_string(v);
  return std::string(buf, ptr);
}

// "{a,c}" with ids in lexicographic order.
inline std::string format_set(const ArgumentGraph& g, const ArgSet& s) {
  std::string out = "{";
  bool first = true;
  s.for_each([&](std::size_t i) {
    if (!first) out += ',';
    out += g.id(i);
    first = false;
  });
  return out + "}";
}

}  // namespace prarg

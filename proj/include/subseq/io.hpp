#pragma once

// Text formats for DFAs.
//
// Native format, one item per line, '#' starts a comment line:
//
//   alphabet: ab
//   states: 3
//   start: 0
//   accepting: 2
//   0 a 1
//   0 b 0
//   ...                      (exactly states × |alphabet| transition lines)
//
// Export writes transitions state-major in alphabet order, so a minimized
// automaton survives parse → export byte for byte.

#include <cctype>
#include <charconv>
#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "subseq/automaton.hpp"

namespace subseq {

/// Parse failure with a 1-based source position.
class ParseError : public InputError {
 public:
  enum class Kind { syntax, completeness, reference, conflict };

  ParseError(Kind kind, std::size_t line, std::size_t column, const std::string& message)
      : InputError(describe(kind) + " at " + std::to_string(line) + ":" + std::to_string(column) +
                   ": " + message),
        kind_(kind),
        line_(line),
        column_(column) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string describe(Kind kind) {
    switch (kind) {
      case Kind::syntax: return "syntax error";
      case Kind::completeness: return "completeness error";
      case Kind::reference: return "reference error";
      case Kind::conflict: return "conflict error";
    }
    return "error";
  }

  Kind kind_;
  std::size_t line_;
  std::size_t column_;
};

namespace detail {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

inline std::vector<Token> split_tokens(std::string_view line, std::size_t from = 0) {
  std::vector<Token> out;
  std::size_t i = from;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    const std::size_t begin = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({line.substr(begin, i - begin), begin + 1});
  }
  return out;
}

inline bool parse_index(std::string_view text, std::size_t& value) {
  if (text.empty()) return false;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  return ec == std::errc{} && ptr == end;
}

}  // namespace detail

inline Dfa parse_dfa(std::string_view text) {
  using Kind = ParseError::Kind;
  struct Line {
    std::string_view text;
    std::size_t number;
  };
  std::vector<Line> lines;
  {
    std::size_t number = 0, pos = 0;
    while (pos <= text.size()) {
      const std::size_t nl = text.find('\n', pos);
      std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
      ++number;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      const auto first = line.find_first_not_of(" \t");
      if (first != std::string_view::npos && line[first] != '#') lines.push_back({line, number});
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
  }

  std::size_t cursor = 0;
  const std::size_t last_line = lines.empty() ? 1 : lines.back().number;
  auto header = [&](std::string_view key) -> std::pair<Line, std::size_t> {
    if (cursor >= lines.size()) {
      throw ParseError(Kind::syntax, last_line, 1, "missing '" + std::string(key) + ":' line");
    }
    const Line line = lines[cursor++];
    const auto first = line.text.find_first_not_of(" \t");
    const std::string prefix = std::string(key) + ":";
    if (line.text.substr(first, prefix.size()) != prefix) {
      throw ParseError(Kind::syntax, line.number, first + 1, "expected '" + prefix + "'");
    }
    return {line, first + prefix.size()};
  };

  // alphabet
  Alphabet alphabet;
  {
    auto [line, from] = header("alphabet");
    const auto tokens = detail::split_tokens(line.text, from);
    if (tokens.empty()) throw ParseError(Kind::syntax, line.number, from + 1, "empty alphabet");
    if (tokens.size() > 1) {
      throw ParseError(Kind::syntax, line.number, tokens[1].column, "alphabet letters must not be separated");
    }
    try {
      alphabet = Alphabet(tokens[0].text);
    } catch (const InputError& e) {
      throw ParseError(Kind::syntax, line.number, tokens[0].column, e.what());
    }
  }

  auto single_index = [&](std::string_view key) -> std::pair<std::size_t, Line> {
    auto [line, from] = header(key);
    const auto tokens = detail::split_tokens(line.text, from);
    std::size_t value = 0;
    if (tokens.size() != 1 || !detail::parse_index(tokens[0].text, value)) {
      throw ParseError(Kind::syntax, line.number, from + 1,
                       "expected a single non-negative integer after '" + std::string(key) + ":'");
    }
    return {value, line};
  };

  const auto [num_states, states_line] = single_index("states");
  if (num_states == 0) throw ParseError(Kind::syntax, states_line.number, 1, "a dfa needs at least one state");
  const auto [start, start_line] = single_index("start");
  if (start >= num_states) {
    throw ParseError(Kind::reference, start_line.number, 1,
                     "start state " + std::to_string(start) + " does not exist");
  }

  std::vector<bool> accepting(num_states, false);
  {
    auto [line, from] = header("accepting");
    for (const auto& tok : detail::split_tokens(line.text, from)) {
      std::size_t s = 0;
      if (!detail::parse_index(tok.text, s)) {
        throw ParseError(Kind::syntax, line.number, tok.column, "expected a state index");
      }
      if (s >= num_states) {
        throw ParseError(Kind::reference, line.number, tok.column,
                         "accepting state " + std::to_string(s) + " does not exist");
      }
      accepting[s] = true;
    }
  }

  const std::size_t k = alphabet.size();
  constexpr State unset = static_cast<State>(-1);
  std::vector<State> next(num_states * k, unset);
  for (; cursor < lines.size(); ++cursor) {
    const Line& line = lines[cursor];
    const auto tokens = detail::split_tokens(line.text);
    if (tokens.size() != 3) {
      throw ParseError(Kind::syntax, line.number, 1, "expected '<state> <letter> <state>'");
    }
    std::size_t from = 0, to = 0;
    if (!detail::parse_index(tokens[0].text, from)) {
      throw ParseError(Kind::syntax, line.number, tokens[0].column, "expected a state index");
    }
    if (!detail::parse_index(tokens[2].text, to)) {
      throw ParseError(Kind::syntax, line.number, tokens[2].column, "expected a state index");
    }
    if (from >= num_states) {
      throw ParseError(Kind::reference, line.number, tokens[0].column,
                       "state " + std::to_string(from) + " does not exist");
    }
    if (to >= num_states) {
      throw ParseError(Kind::reference, line.number, tokens[2].column,
                       "state " + std::to_string(to) + " does not exist");
    }
    if (tokens[1].text.size() != 1 || !alphabet.contains(tokens[1].text[0])) {
      throw ParseError(Kind::reference, line.number, tokens[1].column,
                       "letter '" + std::string(tokens[1].text) + "' is not in the alphabet");
    }
    State& slot = next[from * k + *alphabet.index_of(tokens[1].text[0])];
    if (slot != unset) {
      throw ParseError(Kind::conflict, line.number, 1,
                       "duplicate transition for (state " + std::to_string(from) + ", letter '" +
                           std::string(tokens[1].text) + "')");
    }
    slot = static_cast<State>(to);
  }

  for (std::size_t s = 0; s < num_states; ++s) {
    for (std::size_t c = 0; c < k; ++c) {
      if (next[s * k + c] == unset) {
        throw ParseError(Kind::completeness, last_line, 1,
                         "missing transition for (state " + std::to_string(s) + ", letter '" +
                             std::string(1, alphabet[c]) + "')");
      }
    }
  }
  return Dfa(alphabet, num_states, static_cast<State>(start), std::move(next), std::move(accepting));
}

inline std::string export_native(const Dfa& dfa) {
  std::ostringstream out;
  out << "alphabet: " << dfa.alphabet().letters() << '\n';
  out << "states: " << dfa.num_states() << '\n';
  out << "start: " << dfa.start() << '\n';
  out << "accepting:";
  for (State s = 0; s < dfa.num_states(); ++s) {
    if (dfa.is_accepting(s)) out << ' ' << s;
  }
  out << '\n';
  for (State s = 0; s < dfa.num_states(); ++s) {
    for (std::size_t c = 0; c < dfa.num_letters(); ++c) {
      out << s << ' ' << dfa.alphabet()[c] << ' ' << dfa.next(s, c) << '\n';
    }
  }
  return out.str();
}

/// Graphviz rendering: one edge per (state, letter), accepting states
/// double-circled.
inline std::string export_dot(const Dfa& dfa, std::string_view name = "dfa") {
  std::ostringstream out;
  out << "digraph " << name << " {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=circle];\n";
  out << "  __start [shape=point];\n";
  for (State s = 0; s < dfa.num_states(); ++s) {
    if (dfa.is_accepting(s)) out << "  " << s << " [shape=doublecircle];\n";
  }
  out << "  __start -> " << dfa.start() << ";\n";
  for (State s = 0; s < dfa.num_states(); ++s) {
    for (std::size_t c = 0; c < dfa.num_letters(); ++c) {
      const char letter = dfa.alphabet()[c];
      out << "  " << s << " -> " << dfa.next(s, c) << " [label=\"";
      if (letter == '"' || letter == '\\') out << '\\';
      out << letter << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

enum class ExportFormat { native, dot };

inline std::string export_dfa(const Dfa& dfa, ExportFormat format) {
  return format == ExportFormat::dot ? export_dot(dfa) : export_native(dfa);
}

}  // namespace subseq

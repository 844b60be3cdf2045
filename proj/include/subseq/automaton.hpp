#pragma once

// Core value types: alphabets, words, complete DFAs and NFAs.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace subseq {

/// Malformed or inconsistent input (unknown letter, bad reference, alphabet mismatch).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operation precondition on the language itself does not hold.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A configured resource cap (word enumeration) would be exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using State = std::uint32_t;

/// Words are sequences of single-character letters.
using Word = std::string;

/// Ordered finite set of printable single-character letters.
class Alphabet {
 public:
  Alphabet() = default;

  explicit Alphabet(std::string_view letters) : letters_(letters) {
    if (letters_.empty()) throw InputError("alphabet must not be empty");
    index_.fill(-1);
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      const auto c = static_cast<unsigned char>(letters_[i]);
      if (c <= 0x20 || c >= 0x7f) {
        throw InputError("alphabet letter is not a printable character");
      }
      if (index_[c] != -1) {
        throw InputError(std::string("duplicate alphabet letter '") + letters_[i] + "'");
      }
      index_[c] = static_cast<int>(i);
    }
  }

  std::size_t size() const noexcept { return letters_.size(); }
  char operator[](std::size_t i) const { return letters_[i]; }
  const std::string& letters() const noexcept { return letters_; }

  std::optional<std::size_t> index_of(char c) const noexcept {
    const int i = index_[static_cast<unsigned char>(c)];
    if (i < 0) return std::nullopt;
    return static_cast<std::size_t>(i);
  }

  bool contains(char c) const noexcept { return index_of(c).has_value(); }

  std::size_t require(char c) const {
    if (auto i = index_of(c)) return *i;
    throw InputError(std::string("letter '") + c + "' is not in alphabet \"" + letters_ + "\"");
  }

  void check_word(std::string_view w) const {
    for (char c : w) require(c);
  }

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.letters_ == b.letters_; }

 private:
  std::string letters_;
  std::array<int, 256> index_{};
};

inline void require_same_alphabet(const Alphabet& a, const Alphabet& b) {
  if (!(a == b)) {
    throw InputError("alphabet mismatch: \"" + a.letters() + "\" vs \"" + b.letters() + "\"");
  }
}

/// Complete deterministic automaton. States are 0..n-1; the transition
/// table is total and stored row-major as next[state * |A| + letter].
class Dfa {
 public:
  Dfa(Alphabet alphabet, std::size_t num_states, State start, std::vector<State> next,
      std::vector<bool> accepting)
      : alphabet_(std::move(alphabet)),
        num_states_(num_states),
        start_(start),
        next_(std::move(next)),
        accepting_(std::move(accepting)) {
    if (alphabet_.size() == 0) throw InputError("dfa needs a non-empty alphabet");
    if (num_states_ == 0) throw InputError("dfa needs at least one state");
    if (start_ >= num_states_) throw InputError("start state out of range");
    if (next_.size() != num_states_ * alphabet_.size()) {
      throw InputError("transition table is not complete");
    }
    for (State t : next_) {
      if (t >= num_states_) throw InputError("transition target out of range");
    }
    if (accepting_.size() != num_states_) throw InputError("accepting vector has wrong size");
  }

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t num_states() const noexcept { return num_states_; }
  std::size_t num_letters() const noexcept { return alphabet_.size(); }
  State start() const noexcept { return start_; }
  bool is_accepting(State s) const { return accepting_[s]; }
  const std::vector<bool>& accepting() const noexcept { return accepting_; }
  const std::vector<State>& table() const noexcept { return next_; }

  State next(State s, std::size_t letter) const { return next_[s * alphabet_.size() + letter]; }

  /// Runs from `from` on w; throws InputError for letters outside the alphabet.
  State run_from(State from, std::string_view w) const {
    State s = from;
    for (char c : w) s = next(s, alphabet_.require(c));
    return s;
  }

  friend bool operator==(const Dfa&, const Dfa&) = default;

 private:
  Alphabet alphabet_;
  std::size_t num_states_ = 0;
  State start_ = 0;
  std::vector<State> next_;
  std::vector<bool> accepting_;
};

inline State run(const Dfa& dfa, std::string_view w) { return dfa.run_from(dfa.start(), w); }

inline bool accepts(const Dfa& dfa, std::string_view w) { return dfa.is_accepting(run(dfa, w)); }

/// Builds a DFA from a transition callback; convenient for small hand-made automata.
template <class NextFn, class AcceptFn>
Dfa make_dfa(const Alphabet& alphabet, std::size_t n, State start, NextFn&& next_fn,
             AcceptFn&& accept_fn) {
  std::vector<State> next(n * alphabet.size());
  std::vector<bool> acc(n);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t c = 0; c < alphabet.size(); ++c) {
      next[s * alphabet.size() + c] = static_cast<State>(next_fn(static_cast<State>(s), alphabet[c]));
    }
    acc[s] = accept_fn(static_cast<State>(s));
  }
  return Dfa(alphabet, n, start, std::move(next), std::move(acc));
}

/// Nondeterministic automaton; successor sets are kept sorted and may be empty.
class Nfa {
 public:
  Nfa(Alphabet alphabet, std::size_t num_states)
      : alphabet_(std::move(alphabet)),
        num_states_(num_states),
        succ_(num_states * alphabet_.size()),
        accepting_(num_states, false) {}

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t num_states() const noexcept { return num_states_; }
  std::size_t num_letters() const noexcept { return alphabet_.size(); }

  const std::vector<State>& starts() const noexcept { return starts_; }
  bool is_accepting(State s) const { return accepting_[s]; }

  const std::vector<State>& successors(State s, std::size_t letter) const {
    return succ_[s * alphabet_.size() + letter];
  }

  State add_state(bool accepting = false) {
    const auto s = static_cast<State>(num_states_++);
    succ_.resize(num_states_ * alphabet_.size());
    accepting_.push_back(accepting);
    return s;
  }

  void add_start(State s) {
    check(s);
    insert_sorted(starts_, s);
  }

  void set_accepting(State s, bool value = true) {
    check(s);
    accepting_[s] = value;
  }

  void add_transition(State from, std::size_t letter, State to) {
    check(from);
    check(to);
    if (letter >= alphabet_.size()) throw InputError("letter index out of range");
    insert_sorted(succ_[from * alphabet_.size() + letter], to);
  }

  /// Set of states reachable on w from the start set (sorted).
  std::vector<State> run(std::string_view w) const {
    std::vector<State> cur = starts_;
    for (char c : w) {
      const std::size_t l = alphabet_.require(c);
      std::vector<State> nxt;
      for (State s : cur) {
        const auto& ts = successors(s, l);
        nxt.insert(nxt.end(), ts.begin(), ts.end());
      }
      std::sort(nxt.begin(), nxt.end());
      nxt.erase(std::unique(nxt.begin(), nxt.end()), nxt.end());
      cur = std::move(nxt);
    }
    return cur;
  }

  bool accepts(std::string_view w) const {
    const auto reached = run(w);
    return std::any_of(reached.begin(), reached.end(), [&](State s) { return accepting_[s]; });
  }

 private:
  void check(State s) const {
    if (s >= num_states_) throw InputError("nfa state out of range");
  }

  static void insert_sorted(std::vector<State>& v, State s) {
    auto it = std::lower_bound(v.begin(), v.end(), s);
    if (it == v.end() || *it != s) v.insert(it, s);
  }

  Alphabet alphabet_;
  std::size_t num_states_ = 0;
  std::vector<std::vector<State>> succ_;
  std::vector<State> starts_;
  std::vector<bool> accepting_;
};

/// Views a DFA as an NFA with singleton successor sets.
inline Nfa to_nfa(const Dfa& dfa) {
  Nfa nfa(dfa.alphabet(), dfa.num_states());
  nfa.add_start(dfa.start());
  for (State s = 0; s < dfa.num_states(); ++s) {
    nfa.set_accepting(s, dfa.is_accepting(s));
    for (std::size_t c = 0; c < dfa.num_letters(); ++c) nfa.add_transition(s, c, dfa.next(s, c));
  }
  return nfa;
}

}  // namespace subseq

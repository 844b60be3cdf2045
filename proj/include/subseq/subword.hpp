#pragma once

// The subword (scattered subsequence) order, shuffle ideals, upward
// closure, and the upward-closed ("level 1/2") languages.

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "subseq/automaton.hpp"
#include "subseq/ops.hpp"

namespace subseq {

/// True iff w embeds into v in order. The empty word embeds everywhere.
inline bool is_subword(std::string_view w, std::string_view v) noexcept {
  std::size_t i = 0;
  for (char c : v) {
    if (i < w.size() && w[i] == c) ++i;
  }
  return i == w.size();
}

/// Minimal DFA for A*w₁A*w₂⋯A*wₙA*. State i: the longest embedded prefix
/// of w has length i; state |w| is accepting and absorbing.
inline Dfa shuffle_ideal(std::string_view w, const Alphabet& alphabet) {
  alphabet.check_word(w);
  const std::size_t n = w.size() + 1;
  return make_dfa(
      alphabet, n, 0,
      [&](State s, char c) -> State {
        if (s < w.size() && w[s] == c) return s + 1;
        return s;
      },
      [&](State s) { return s == w.size(); });
}

/// Minimal DFA for the set of words having a subword in L(dfa): every state
/// gets a self-loop on every letter, then determinize and minimize.
inline Dfa upward_closure(const Dfa& dfa) {
  Nfa nfa = to_nfa(dfa);
  for (State s = 0; s < dfa.num_states(); ++s) {
    for (std::size_t c = 0; c < dfa.num_letters(); ++c) nfa.add_transition(s, c, s);
  }
  return minimize(determinize(nfa));
}

inline bool is_level_one_half(const Dfa& dfa) { return equivalent(upward_closure(dfa), dfa); }

inline bool is_co_level_one_half(const Dfa& dfa) { return is_level_one_half(complement(dfa)); }

/// A finite antichain of words whose shuffle ideals union to a language.
struct IdealDecomposition {
  std::vector<Word> words;  // antichain, ordered by length then alphabet order

  friend bool operator==(const IdealDecomposition&, const IdealDecomposition&) = default;
};

/// Minimal DFA for the union of the shuffle ideals of `words` (∅ if none).
inline Dfa union_of_ideals(const std::vector<Word>& words, const Alphabet& alphabet) {
  Dfa result = empty_language(alphabet);
  for (const auto& w : words) result = minimize(unite(result, shuffle_ideal(w, alphabet)));
  return result;
}

/// Orders words by length, then letter by letter in alphabet order.
inline bool shortlex_less(const Alphabet& alphabet, std::string_view x, std::string_view y) {
  if (x.size() != y.size()) return x.size() < y.size();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto a = *alphabet.index_of(x[i]);
    const auto b = *alphabet.index_of(y[i]);
    if (a != b) return a < b;
  }
  return false;
}

/// Removes duplicates and every word that has a proper subword in the set.
inline std::vector<Word> subword_antichain(std::vector<Word> words, const Alphabet& alphabet) {
  std::sort(words.begin(), words.end(),
            [&](const Word& x, const Word& y) { return shortlex_less(alphabet, x, y); });
  words.erase(std::unique(words.begin(), words.end()), words.end());
  std::vector<Word> kept;
  for (auto& w : words) {
    const bool dominated = std::any_of(kept.begin(), kept.end(),
                                       [&](const Word& k) { return is_subword(k, w); });
    if (!dominated) kept.push_back(std::move(w));
  }
  return kept;
}

/// Exception carrying a word that lies in the upward closure of L but not in L.
class NotUpwardClosed : public DomainError {
 public:
  NotUpwardClosed(Word counterexample)
      : DomainError("language is not upward closed; counterexample \"" + counterexample + "\""),
        counterexample_(std::move(counterexample)) {}
  const Word& counterexample() const noexcept { return counterexample_; }

 private:
  Word counterexample_;
};

/// Finite set of words w with L(dfa) = ⋃ [w]. Requires L(dfa) upward closed.
///
/// Labels of simple paths (no repeated state) from the start state to an
/// accepting state, pruned to a subword antichain. Path length is below
/// the state count so the enumeration is finite, but it can be exponential
/// in the number of states.
inline IdealDecomposition decompose_level_half(const Dfa& input) {
  const Dfa closure = upward_closure(input);
  if (auto cex = difference_witness(closure, input)) throw NotUpwardClosed(*cex);

  const Dfa dfa = minimize(input);
  std::vector<Word> found;
  std::vector<bool> on_path(dfa.num_states(), false);
  Word label;

  auto dfs = [&](auto& self, State s) -> void {
    if (dfa.is_accepting(s)) {
      found.push_back(label);
      return;
    }
    on_path[s] = true;
    for (std::size_t c = 0; c < dfa.num_letters(); ++c) {
      const State t = dfa.next(s, c);
      if (on_path[t]) continue;
      label.push_back(dfa.alphabet()[c]);
      self(self, t);
      label.pop_back();
    }
    on_path[s] = false;
  };
  dfs(dfs, dfa.start());

  return IdealDecomposition{subword_antichain(std::move(found), dfa.alphabet())};
}

}  // namespace subseq

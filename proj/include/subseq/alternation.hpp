#pragma once

// Alternating subword chains w₀ ⊑ w₁ ⊑ ⋯ ⊑ w_m ⊑ v whose membership in L
// flips at every step. L⁺(m) (resp. L⁻(m)) holds the words v reachable by
// such a chain starting inside (resp. outside) L; m⁺(L), m⁻(L) are the
// largest m for which these sets are non-empty.

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "subseq/automaton.hpp"
#include "subseq/ops.hpp"
#include "subseq/patterns.hpp"
#include "subseq/subword.hpp"

namespace subseq {

/// Value of m⁺ or m⁻: a finite integer ≥ -1 or infinity. Finite(-1) is the
/// maximum over an empty index set, i.e. m⁺(∅) and m⁻(A*).
class AlternationMeasure {
 public:
  static constexpr AlternationMeasure finite(int value) { return AlternationMeasure(value, false); }
  static constexpr AlternationMeasure infinite() { return AlternationMeasure(0, true); }

  constexpr bool is_finite() const noexcept { return !infinite_; }
  constexpr bool is_infinite() const noexcept { return infinite_; }

  int value() const {
    if (infinite_) throw DomainError("alternation measure is infinite");
    return value_;
  }

  constexpr friend bool operator==(const AlternationMeasure&, const AlternationMeasure&) = default;
  constexpr friend std::strong_ordering operator<=>(const AlternationMeasure& a,
                                                    const AlternationMeasure& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    return a.value_ <=> b.value_;
  }

  std::string to_string() const { return infinite_ ? "inf" : std::to_string(value_); }

 private:
  constexpr AlternationMeasure(int value, bool infinite) : value_(value), infinite_(infinite) {}
  int value_ = 0;
  bool infinite_ = false;
};

enum class ChainEngine {
  iterate,    ///< Y-iteration over minimized DFAs
  chain_nfa,  ///< tuple-guessing NFA, determinized
};

enum class Side { plus, co };

/// Tuple NFA guessing an m-alternating chain of subwords of its input.
///
/// States are (m+1)-tuples of DFA states, one run per chain element. On
/// each letter some suffix of the tuple advances (possibly none, possibly
/// all), which keeps the guessed words nested. A tuple accepts when its
/// components alternate accept/reject starting with accept. Only tuples
/// reachable from (s₀,…,s₀) are built.
inline Nfa build_chain_nfa(const Dfa& dfa, std::size_t m) {
  const std::size_t k = dfa.num_letters();
  const std::size_t width = m + 1;
  std::map<std::vector<State>, State> ids;
  std::vector<std::vector<State>> tuples;
  Nfa nfa(dfa.alphabet(), 0);

  auto intern = [&](std::vector<State> tuple) {
    auto [it, inserted] = ids.try_emplace(tuple, static_cast<State>(tuples.size()));
    if (inserted) {
      bool acc = true;
      for (std::size_t i = 0; i < width; ++i) acc = acc && (dfa.is_accepting(tuple[i]) == (i % 2 == 0));
      nfa.add_state(acc);
      tuples.push_back(std::move(tuple));
    }
    return it->second;
  };

  nfa.add_start(intern(std::vector<State>(width, dfa.start())));
  for (std::size_t t = 0; t < tuples.size(); ++t) {
    for (std::size_t c = 0; c < k; ++c) {
      std::vector<State> moved = tuples[t];
      // i = number of leading components that stay put
      for (std::size_t i = width + 1; i-- > 0;) {
        if (i < width) moved[i] = dfa.next(tuples[t][i], c);
        nfa.add_transition(static_cast<State>(t), c, intern(moved));
      }
    }
  }
  return nfa;
}

/// Incremental Y-iteration: Y₀ = L, Y_{i+1} = ⟨Yᵢ⟩ ∩ L̄ for even i and
/// ⟨Yᵢ⟩ ∩ L for odd i. Yᵢ holds the last elements of i-alternating chains
/// that start in L, so L⁺(i) = ⟨Yᵢ⟩.
class ChainIteration {
 public:
  explicit ChainIteration(const Dfa& dfa) : language_(minimize(dfa)), current_(language_) {}

  std::size_t index() const noexcept { return index_; }
  const Dfa& chain_ends() const noexcept { return current_; }
  Dfa level() const { return upward_closure(current_); }

  void advance() {
    const Dfa closed = upward_closure(current_);
    current_ = (index_ % 2 == 0) ? minimize(difference(closed, language_))
                                 : minimize(intersect(closed, language_));
    ++index_;
  }

 private:
  Dfa language_;
  Dfa current_;
  std::size_t index_ = 0;
};

/// Minimal DFA for ⟨Y_m⟩, i.e. L⁺(m), computed by Y-iteration.
inline Dfa chain_core_iterate(const Dfa& dfa, std::size_t m) {
  ChainIteration it(dfa);
  while (it.index() < m) it.advance();
  return it.level();
}

inline Dfa l_plus(const Dfa& dfa, std::size_t m, ChainEngine engine = ChainEngine::iterate) {
  if (engine == ChainEngine::chain_nfa) return minimize(determinize(build_chain_nfa(dfa, m)));
  return chain_core_iterate(dfa, m);
}

/// L⁻(m) is L⁺(m) of the complement.
inline Dfa l_minus(const Dfa& dfa, std::size_t m, ChainEngine engine = ChainEngine::iterate) {
  return l_plus(complement(dfa), m, engine);
}

/// m⁺(L). Infinity is decided by the P3 pattern test; otherwise chains are
/// extended until L⁺(m+1) becomes empty, which must happen for piecewise
/// testable languages.
inline AlternationMeasure m_plus(const Dfa& dfa, ChainEngine engine = ChainEngine::iterate) {
  if (detect_p3(dfa)) return AlternationMeasure::infinite();
  if (is_empty(dfa)) return AlternationMeasure::finite(-1);
  if (engine == ChainEngine::chain_nfa) {
    int m = 0;
    while (!is_empty(build_chain_nfa(dfa, static_cast<std::size_t>(m) + 1))) ++m;
    return AlternationMeasure::finite(m);
  }
  ChainIteration it(dfa);
  while (true) {
    it.advance();
    if (is_empty(it.chain_ends())) return AlternationMeasure::finite(static_cast<int>(it.index()) - 1);
  }
}

inline AlternationMeasure m_minus(const Dfa& dfa, ChainEngine engine = ChainEngine::iterate) {
  return m_plus(complement(dfa), engine);
}

/// L ∈ L_{1/2}(k) (side plus) or co-L_{1/2}(k) (side co), via m± < k.
inline bool in_boolean_level(const Dfa& dfa, int k, Side side,
                             ChainEngine engine = ChainEngine::iterate) {
  if (k < 1) throw InputError("boolean hierarchy level must be at least 1");
  const auto measure = side == Side::plus ? m_plus(dfa, engine) : m_minus(dfa, engine);
  return measure < AlternationMeasure::finite(k);
}

/// Where the language sits relative to L_{1/2}(k) and co-L_{1/2}(k) at its
/// least level.
enum class LevelSide {
  plus,  ///< in L_{1/2}(k) but not co-L_{1/2}(k)
  co,    ///< in co-L_{1/2}(k) but not L_{1/2}(k)
  both,  ///< in both (only ∅ and A*, at k = 1)
  none,  ///< not in the boolean closure at all
};

inline const char* to_string(LevelSide s) {
  switch (s) {
    case LevelSide::plus: return "plus";
    case LevelSide::co: return "co";
    case LevelSide::both: return "both";
    case LevelSide::none: return "none";
  }
  return "?";
}

struct BooleanLevel {
  AlternationMeasure m_plus = AlternationMeasure::finite(-1);
  AlternationMeasure m_minus = AlternationMeasure::finite(-1);
  std::optional<int> k_plus;  ///< least k ≥ 1 with L ∈ L_{1/2}(k)
  std::optional<int> k_co;    ///< least k ≥ 1 with L ∈ co-L_{1/2}(k)
  LevelSide side = LevelSide::none;

  bool in_boolean_closure() const noexcept { return k_plus.has_value(); }
};

/// Least boolean-hierarchy level from the measures: k = max(1, m + 1).
inline BooleanLevel level_from_measures(AlternationMeasure plus, AlternationMeasure minus) {
  BooleanLevel level;
  level.m_plus = plus;
  level.m_minus = minus;
  if (plus.is_infinite() || minus.is_infinite()) return level;
  level.k_plus = std::max(1, plus.value() + 1);
  level.k_co = std::max(1, minus.value() + 1);
  if (*level.k_plus < *level.k_co) {
    level.side = LevelSide::plus;
  } else if (*level.k_co < *level.k_plus) {
    level.side = LevelSide::co;
  } else {
    level.side = LevelSide::both;
  }
  return level;
}

inline BooleanLevel minimal_boolean_level(const Dfa& dfa, ChainEngine engine = ChainEngine::iterate) {
  return level_from_measures(m_plus(dfa, engine), m_minus(dfa, engine));
}

/// M_k: words whose number of a's is odd or exceeds k (k odd), or is odd
/// and at most k (k even). Counter DFA over min(|w|_a, k+1).
inline Dfa mk_witness(int k, const Alphabet& alphabet, char a) {
  if (k < 1) throw InputError("M_k needs k >= 1");
  const std::size_t a_idx = alphabet.require(a);
  const State cap = static_cast<State>(k + 1);
  return make_dfa(
      alphabet, static_cast<std::size_t>(k) + 2, 0,
      [&](State s, char c) -> State {
        if (*alphabet.index_of(c) == a_idx && s < cap) return s + 1;
        return s;
      },
      [&](State s) {
        const bool odd = s % 2 == 1;
        if (s == cap) return k % 2 == 1;  // count > k
        return odd;
      });
}

/// The descending chain L⁻(0) ⊇ L⁻(1) ⊇ ⋯ ⊇ L⁻(m⁻) of upward-closed
/// languages, from which L = (A* ∖ L⁻(0)) ∪ ⋃_{i≥1} (L⁻(2i-1) ∖ L⁻(2i)).
/// Requires a finite measure.
inline std::vector<Dfa> normal_form_decomposition(const Dfa& dfa) {
  if (detect_p3(dfa)) throw DomainError("language is not piecewise testable; no finite normal form");
  std::vector<Dfa> chain;
  const Dfa outside = complement(dfa);
  if (is_empty(outside)) return chain;
  ChainIteration it(outside);
  while (!is_empty(it.chain_ends())) {
    chain.push_back(it.level());
    it.advance();
  }
  return chain;
}

/// Rebuilds the language described by a normal-form chain L⁻(0), L⁻(1), …
/// (missing members count as ∅).
inline Dfa reassemble_normal_form(const std::vector<Dfa>& chain, const Alphabet& alphabet) {
  auto member = [&](std::size_t i) { return i < chain.size() ? chain[i] : empty_language(alphabet); };
  Dfa result = complement(member(0));
  for (std::size_t i = 1; i < chain.size(); i += 2) {
    result = minimize(unite(result, difference(member(i), member(i + 1))));
  }
  return minimize(result);
}

}  // namespace subseq

#pragma once

// Automata algebra over complete DFAs: subset construction, canonical
// minimization, boolean products, reversal, emptiness and equivalence.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "subseq/automaton.hpp"

namespace subseq {

/// Subset construction. Only subsets reachable from the start set are
/// materialized; the empty subset becomes an explicit sink when reached.
/// States are numbered in breadth-first discovery order.
inline Dfa determinize(const Nfa& nfa) {
  const std::size_t k = nfa.num_letters();
  std::map<std::vector<State>, State> ids;
  std::vector<std::vector<State>> subsets;
  std::vector<State> next;

  auto intern = [&](std::vector<State> subset) {
    auto [it, inserted] = ids.try_emplace(subset, static_cast<State>(subsets.size()));
    if (inserted) subsets.push_back(std::move(subset));
    return it->second;
  };

  intern(nfa.starts());
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    for (std::size_t c = 0; c < k; ++c) {
      std::vector<State> target;
      for (State s : subsets[i]) {
        const auto& ts = nfa.successors(s, c);
        target.insert(target.end(), ts.begin(), ts.end());
      }
      std::sort(target.begin(), target.end());
      target.erase(std::unique(target.begin(), target.end()), target.end());
      next.push_back(intern(std::move(target)));
    }
  }

  std::vector<bool> acc(subsets.size());
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    acc[i] = std::any_of(subsets[i].begin(), subsets[i].end(),
                         [&](State s) { return nfa.is_accepting(s); });
  }
  return Dfa(nfa.alphabet(), subsets.size(), 0, std::move(next), std::move(acc));
}

/// States reachable from the start state, in breadth-first order using
/// alphabet order for successors.
inline std::vector<State> bfs_order(const Dfa& dfa) {
  std::vector<State> order{dfa.start()};
  std::vector<bool> seen(dfa.num_states(), false);
  seen[dfa.start()] = true;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t c = 0; c < dfa.num_letters(); ++c) {
      const State t = dfa.next(order[i], c);
      if (!seen[t]) {
        seen[t] = true;
        order.push_back(t);
      }
    }
  }
  return order;
}

/// Minimal complete DFA, renumbered breadth-first from the start state so
/// that equal languages give structurally identical automata.
///
/// Partition refinement (Moore): states start split by acceptance and are
/// repeatedly split by the classes of their successors until stable.
inline Dfa minimize(const Dfa& dfa) {
  const std::size_t k = dfa.num_letters();
  const std::vector<State> reach = bfs_order(dfa);
  const std::size_t n = reach.size();

  std::vector<std::size_t> local(dfa.num_states(), 0);
  for (std::size_t i = 0; i < n; ++i) local[reach[i]] = i;

  std::vector<std::size_t> cls(n);
  for (std::size_t i = 0; i < n; ++i) cls[i] = dfa.is_accepting(reach[i]) ? 1 : 0;
  std::size_t num_classes = 0;
  {
    bool any_acc = false, any_rej = false;
    for (std::size_t i = 0; i < n; ++i) (cls[i] ? any_acc : any_rej) = true;
    num_classes = std::size_t{any_acc} + std::size_t{any_rej};
    if (!any_rej) std::fill(cls.begin(), cls.end(), 0);
  }

  while (true) {
    std::map<std::vector<std::size_t>, std::size_t> sig_ids;
    std::vector<std::size_t> refined(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::size_t> sig;
      sig.reserve(k + 1);
      sig.push_back(cls[i]);
      for (std::size_t c = 0; c < k; ++c) sig.push_back(cls[local[dfa.next(reach[i], c)]]);
      refined[i] = sig_ids.try_emplace(std::move(sig), sig_ids.size()).first->second;
    }
    const std::size_t count = sig_ids.size();
    cls = std::move(refined);
    if (count == num_classes) break;
    num_classes = count;
  }

  // Canonical renumbering: BFS over the quotient from the start class.
  std::vector<State> rep(num_classes, 0);
  std::vector<bool> have(num_classes, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (!have[cls[i]]) {
      have[cls[i]] = true;
      rep[cls[i]] = reach[i];
    }
  }
  constexpr State unset = static_cast<State>(-1);
  std::vector<State> canon(num_classes, unset);
  std::vector<std::size_t> order{cls[0]};
  canon[cls[0]] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t c = 0; c < k; ++c) {
      const std::size_t t = cls[local[dfa.next(rep[order[i]], c)]];
      if (canon[t] == unset) {
        canon[t] = static_cast<State>(order.size());
        order.push_back(t);
      }
    }
  }

  std::vector<State> next(num_classes * k);
  std::vector<bool> acc(num_classes);
  for (std::size_t q = 0; q < num_classes; ++q) {
    const State r = rep[order[q]];
    acc[q] = dfa.is_accepting(r);
    for (std::size_t c = 0; c < k; ++c) next[q * k + c] = canon[cls[local[dfa.next(r, c)]]];
  }
  return Dfa(dfa.alphabet(), num_classes, 0, std::move(next), std::move(acc));
}

/// Reachable-pair product; `combine(in_left, in_right)` decides acceptance.
template <class Combine>
Dfa product(const Dfa& left, const Dfa& right, Combine&& combine) {
  require_same_alphabet(left.alphabet(), right.alphabet());
  const std::size_t k = left.num_letters();
  const std::size_t width = right.num_states();
  constexpr State unset = static_cast<State>(-1);
  std::vector<State> id(left.num_states() * width, unset);
  std::vector<std::pair<State, State>> pairs;
  std::vector<State> next;

  auto intern = [&](State p, State q) {
    State& slot = id[p * width + q];
    if (slot == unset) {
      slot = static_cast<State>(pairs.size());
      pairs.emplace_back(p, q);
    }
    return slot;
  };

  intern(left.start(), right.start());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t c = 0; c < k; ++c) {
      const auto [p, q] = pairs[i];
      next.push_back(intern(left.next(p, c), right.next(q, c)));
    }
  }
  std::vector<bool> acc(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    acc[i] = static_cast<bool>(combine(left.is_accepting(pairs[i].first),
                                       right.is_accepting(pairs[i].second)));
  }
  return Dfa(left.alphabet(), pairs.size(), 0, std::move(next), std::move(acc));
}

inline Dfa intersect(const Dfa& a, const Dfa& b) {
  return product(a, b, [](bool x, bool y) { return x && y; });
}
inline Dfa unite(const Dfa& a, const Dfa& b) {
  return product(a, b, [](bool x, bool y) { return x || y; });
}
inline Dfa difference(const Dfa& a, const Dfa& b) {
  return product(a, b, [](bool x, bool y) { return x && !y; });
}
inline Dfa symmetric_difference(const Dfa& a, const Dfa& b) {
  return product(a, b, [](bool x, bool y) { return x != y; });
}

inline Dfa complement(const Dfa& dfa) {
  std::vector<bool> acc(dfa.num_states());
  for (State s = 0; s < dfa.num_states(); ++s) acc[s] = !dfa.is_accepting(s);
  return Dfa(dfa.alphabet(), dfa.num_states(), dfa.start(), dfa.table(), std::move(acc));
}

/// Edge reversal with start and accepting states swapped.
inline Nfa reverse(const Dfa& dfa) {
  Nfa nfa(dfa.alphabet(), dfa.num_states());
  for (State s = 0; s < dfa.num_states(); ++s) {
    if (dfa.is_accepting(s)) nfa.add_start(s);
    for (std::size_t c = 0; c < dfa.num_letters(); ++c) nfa.add_transition(dfa.next(s, c), c, s);
  }
  nfa.set_accepting(dfa.start());
  return nfa;
}

inline Dfa reverse_det(const Dfa& dfa) { return minimize(determinize(reverse(dfa))); }

/// Shortest accepted word, least in alphabet order among the shortest.
inline std::optional<Word> shortest_accepted(const Dfa& dfa) {
  constexpr State unset = static_cast<State>(-1);
  std::vector<State> parent(dfa.num_states(), unset);
  std::vector<char> via(dfa.num_states(), 0);
  std::vector<State> queue{dfa.start()};
  parent[dfa.start()] = dfa.start();
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const State s = queue[i];
    if (dfa.is_accepting(s)) {
      Word w;
      for (State t = s; t != dfa.start(); t = parent[t]) w.push_back(via[t]);
      std::reverse(w.begin(), w.end());
      return w;
    }
    for (std::size_t c = 0; c < dfa.num_letters(); ++c) {
      const State t = dfa.next(s, c);
      if (parent[t] == unset) {
        parent[t] = s;
        via[t] = dfa.alphabet()[c];
        queue.push_back(t);
      }
    }
  }
  return std::nullopt;
}

inline bool is_empty(const Dfa& dfa) {
  for (State s : bfs_order(dfa)) {
    if (dfa.is_accepting(s)) return false;
  }
  return true;
}

inline bool is_empty(const Nfa& nfa) {
  std::vector<bool> seen(nfa.num_states(), false);
  std::deque<State> queue;
  for (State s : nfa.starts()) {
    seen[s] = true;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    const State s = queue.front();
    queue.pop_front();
    if (nfa.is_accepting(s)) return false;
    for (std::size_t c = 0; c < nfa.num_letters(); ++c) {
      for (State t : nfa.successors(s, c)) {
        if (!seen[t]) {
          seen[t] = true;
          queue.push_back(t);
        }
      }
    }
  }
  return true;
}

inline bool equivalent(const Dfa& a, const Dfa& b) { return is_empty(symmetric_difference(a, b)); }

/// L(sub) ⊆ L(sup).
inline bool is_subset(const Dfa& sub, const Dfa& sup) { return is_empty(difference(sub, sup)); }

/// Shortest word on which the two automata disagree, if any.
inline std::optional<Word> difference_witness(const Dfa& a, const Dfa& b) {
  return shortest_accepted(symmetric_difference(a, b));
}

inline Dfa empty_language(const Alphabet& alphabet) {
  return Dfa(alphabet, 1, 0, std::vector<State>(alphabet.size(), 0), {false});
}

inline Dfa universal_language(const Alphabet& alphabet) {
  return Dfa(alphabet, 1, 0, std::vector<State>(alphabet.size(), 0), {true});
}

/// Pairwise distinguishability with shortest separating suffixes.
///
/// A pair (p,q) is distinguishable when some z has exactly one of
/// δ(p,z), δ(q,z) accepting. Levels are computed as a backward
/// breadth-first fixpoint from the pairs whose acceptance differs, so
/// witness(p,q) is a shortest separating word, least in alphabet order.
class Distinguishability {
 public:
  explicit Distinguishability(const Dfa& dfa) : n_(dfa.num_states()), alphabet_(dfa.alphabet()) {
    const std::size_t k = dfa.num_letters();
    level_.assign(n_ * n_, -1);
    letter_.assign(n_ * n_, 0);
    next_ = dfa.table();
    k_ = k;

    // inverse[c][t] = states s with δ(s,c) = t
    std::vector<std::vector<std::vector<State>>> inverse(k, std::vector<std::vector<State>>(n_));
    for (State s = 0; s < n_; ++s) {
      for (std::size_t c = 0; c < k; ++c) inverse[c][dfa.next(s, c)].push_back(s);
    }

    std::vector<std::pair<State, State>> frontier;
    for (State p = 0; p < n_; ++p) {
      for (State q = p + 1; q < n_; ++q) {
        if (dfa.is_accepting(p) != dfa.is_accepting(q)) {
          set_level(p, q, 0);
          frontier.emplace_back(p, q);
        }
      }
    }
    for (int r = 1; !frontier.empty(); ++r) {
      std::vector<std::pair<State, State>> fresh;
      for (auto [p2, q2] : frontier) {
        for (std::size_t c = 0; c < k; ++c) {
          for (State p : inverse[c][p2]) {
            for (State q : inverse[c][q2]) {
              if (p == q || level(p, q) != -1) continue;
              set_level(p, q, r);
              fresh.emplace_back(std::min(p, q), std::max(p, q));
            }
          }
        }
      }
      for (auto [p, q] : fresh) {
        for (std::size_t c = 0; c < k; ++c) {
          if (level(next(p, c), next(q, c)) == r - 1) {
            letter_[p * n_ + q] = letter_[q * n_ + p] = static_cast<std::uint8_t>(c);
            break;
          }
        }
      }
      frontier = std::move(fresh);
    }
  }

  bool distinguishable(State p, State q) const { return level(p, q) >= 0; }

  /// Length of the shortest separating word, or -1.
  int level(State p, State q) const { return level_[p * n_ + q]; }

  /// Shortest separating word; requires distinguishable(p, q).
  Word witness(State p, State q) const {
    Word z;
    while (level(p, q) > 0) {
      const std::size_t c = letter_[p * n_ + q];
      z.push_back(alphabet_[c]);
      p = next(p, c);
      q = next(q, c);
    }
    return z;
  }

  /// Unordered distinguishable pairs as (p, q) with p < q, in index order.
  std::vector<std::pair<State, State>> pairs() const {
    std::vector<std::pair<State, State>> out;
    for (State p = 0; p < n_; ++p) {
      for (State q = p + 1; q < n_; ++q) {
        if (distinguishable(p, q)) out.emplace_back(p, q);
      }
    }
    return out;
  }

 private:
  void set_level(State p, State q, int r) { level_[p * n_ + q] = level_[q * n_ + p] = r; }
  State next(State s, std::size_t c) const { return next_[s * k_ + c]; }

  std::size_t n_;
  std::size_t k_ = 0;
  Alphabet alphabet_;
  std::vector<State> next_;
  std::vector<int> level_;
  std::vector<std::uint8_t> letter_;
};

inline std::vector<std::pair<State, State>> distinguishable_pairs(const Dfa& dfa) {
  return Distinguishability(dfa).pairs();
}

}  // namespace subseq

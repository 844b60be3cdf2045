#pragma once

// Forbidden patterns P1, P2, P3 in DFA transition graphs.
//
// P1: x, v, y, z, a and states s1..s3 with ya ⊑ v, δ(s0,x) = δ(s1,v) = s1,
//     δ(s1,y) = s2, δ(s2,a) = s3, and z separating s2 from s3.
// P2: x, z, u, z', a and states s1..s4 with az ⊑ u, δ(s0,x) = s1,
//     δ(s1,a) = s2, δ(s1,z) = δ(s3,u) = s3, δ(s2,z) = δ(s4,u) = s4, and z'
//     separating s3 from s4.
// P3: the common generalisation (ya ⊑ v or az ⊑ u) over states s1..s5.
//
// A DFA (with any DFA for the reversed language) has P3 exactly when its
// language is not piecewise testable. Searches run over product graphs and
// return shortest witnesses; letters are tried in alphabet order and
// states in index order, so results are reproducible.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "subseq/automaton.hpp"
#include "subseq/ops.hpp"
#include "subseq/subword.hpp"

namespace subseq {

enum class PatternKind { p1, p2, p3 };

inline const char* to_string(PatternKind k) {
  switch (k) {
    case PatternKind::p1: return "P1";
    case PatternKind::p2: return "P2";
    case PatternKind::p3: return "P3";
  }
  return "?";
}

/// Concrete instance of a pattern. Word slots a pattern does not use stay
/// empty; state slots it does not use stay unset.
struct PatternWitness {
  PatternKind kind = PatternKind::p3;
  char letter = 0;
  Word x, v, y, z, u, z_prime;
  std::array<std::optional<State>, 5> states{};  // s1..s5

  State s(std::size_t i) const { return states.at(i - 1).value(); }
};

namespace detail {

inline bool separates(const Dfa& dfa, State p, State q, std::string_view z) {
  return dfa.is_accepting(dfa.run_from(p, z)) != dfa.is_accepting(dfa.run_from(q, z));
}

/// Shortest words from the start state to every reachable state.
inline std::vector<std::optional<Word>> access_words(const Dfa& dfa) {
  std::vector<std::optional<Word>> words(dfa.num_states());
  words[dfa.start()] = Word{};
  std::vector<State> queue{dfa.start()};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (std::size_t c = 0; c < dfa.num_letters(); ++c) {
      const State t = dfa.next(queue[i], c);
      if (!words[t]) {
        words[t] = *words[queue[i]] + dfa.alphabet()[c];
        queue.push_back(t);
      }
    }
  }
  return words;
}

/// reach[p * n + q]: q reachable from p.
inline std::vector<bool> reachability(const Dfa& dfa) {
  const std::size_t n = dfa.num_states();
  std::vector<bool> reach(n * n, false);
  for (State p = 0; p < n; ++p) {
    std::vector<State> stack{p};
    reach[p * n + p] = true;
    while (!stack.empty()) {
      const State s = stack.back();
      stack.pop_back();
      for (std::size_t c = 0; c < dfa.num_letters(); ++c) {
        const State t = dfa.next(s, c);
        if (!reach[p * n + t]) {
          reach[p * n + t] = true;
          stack.push_back(t);
        }
      }
    }
  }
  return reach;
}

}  // namespace detail

/// Checks every defining equation of the witness's pattern against `dfa`.
inline bool validate_witness(const Dfa& dfa, const PatternWitness& w) {
  const auto& alphabet = dfa.alphabet();
  for (const Word* word : {&w.x, &w.v, &w.y, &w.z, &w.u, &w.z_prime}) {
    for (char c : *word) {
      if (!alphabet.contains(c)) return false;
    }
  }
  if (!alphabet.contains(w.letter)) return false;
  const std::string a(1, w.letter);
  const std::size_t used = w.kind == PatternKind::p1 ? 3 : w.kind == PatternKind::p2 ? 4 : 5;
  for (std::size_t i = 0; i < 5; ++i) {
    if (w.states[i].has_value() != (i < used)) return false;
    if (w.states[i] && *w.states[i] >= dfa.num_states()) return false;
  }
  auto d = [&](State s, const Word& word) { return dfa.run_from(s, word); };
  const State s0 = dfa.start();

  switch (w.kind) {
    case PatternKind::p1: {
      const State s1 = w.s(1), s2 = w.s(2), s3 = w.s(3);
      return w.u.empty() && w.z_prime.empty() && is_subword(w.y + a, w.v) && d(s0, w.x) == s1 &&
             d(s1, w.v) == s1 && d(s1, w.y) == s2 && d(s2, a) == s3 &&
             detail::separates(dfa, s2, s3, w.z);
    }
    case PatternKind::p2: {
      const State s1 = w.s(1), s2 = w.s(2), s3 = w.s(3), s4 = w.s(4);
      return w.v.empty() && w.y.empty() && is_subword(a + w.z, w.u) && d(s0, w.x) == s1 &&
             d(s1, a) == s2 && d(s1, w.z) == s3 && d(s3, w.u) == s3 && d(s2, w.z) == s4 &&
             d(s4, w.u) == s4 && detail::separates(dfa, s3, s4, w.z_prime);
    }
    case PatternKind::p3: {
      const State s1 = w.s(1), s2 = w.s(2), s3 = w.s(3), s4 = w.s(4), s5 = w.s(5);
      return (is_subword(w.y + a, w.v) || is_subword(a + w.z, w.u)) && d(s0, w.x) == s1 &&
             d(s1, w.v) == s1 && d(s1, w.y) == s2 && d(s2, a) == s3 && d(s2, w.z) == s4 &&
             d(s4, w.u) == s4 && d(s3, w.z) == s5 && d(s5, w.u) == s5 &&
             detail::separates(dfa, s4, s5, w.z_prime);
    }
  }
  return false;
}

/// Words v, y with δ(s1,v) = s1, δ(s1,y) = s2 and ya ⊑ v, shortest v first.
///
/// Search graph nodes are (p, q, φ): p follows v from s1, q follows the
/// embedded prefix y from s1, φ records whether the trailing a has been
/// embedded. Each letter b of v is skipped, appended to y (φ = 0 only), or
/// used as the embedded a (b = a, φ = 0, q = s2).
inline std::optional<std::pair<Word, Word>> find_loop_with_embedded_extension(const Dfa& dfa,
                                                                              State s1, State s2,
                                                                              char a) {
  const std::size_t n = dfa.num_states();
  if (s1 >= n || s2 >= n) throw InputError("state out of range");
  const std::size_t a_idx = dfa.alphabet().require(a);
  auto id = [n](State p, State q, int phi) { return (static_cast<std::size_t>(p) * n + q) * 2 + phi; };

  enum Move : std::uint8_t { skip, embed_y, embed_a };
  struct Back {
    std::size_t parent;
    std::uint8_t letter;
    Move move;
  };
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<Back> back(n * n * 2, Back{unset, 0, skip});
  const std::size_t start = id(s1, s1, 0);
  const std::size_t goal = id(s1, s2, 1);
  back[start].parent = start;
  std::vector<std::size_t> queue{start};

  for (std::size_t i = 0; i < queue.size(); ++i) {
    const std::size_t node = queue[i];
    const State p = static_cast<State>(node / 2 / n);
    const State q = static_cast<State>(node / 2 % n);
    const int phi = static_cast<int>(node % 2);
    for (std::size_t c = 0; c < dfa.num_letters(); ++c) {
      const State pn = dfa.next(p, c);
      auto visit = [&](std::size_t target, Move move) {
        if (back[target].parent != unset) return false;
        back[target] = Back{node, static_cast<std::uint8_t>(c), move};
        queue.push_back(target);
        return target == goal;
      };
      bool done = visit(id(pn, q, phi), skip);
      if (phi == 0) {
        done = visit(id(pn, dfa.next(q, c), 0), embed_y) || done;
        if (c == a_idx && q == s2) done = visit(id(pn, s2, 1), embed_a) || done;
      }
      if (done) {
        Word v, y;
        for (std::size_t t = goal; t != start; t = back[t].parent) {
          const char letter = dfa.alphabet()[back[t].letter];
          v.push_back(letter);
          if (back[t].move == embed_y) y.push_back(letter);
        }
        return std::pair{Word(v.rbegin(), v.rend()), Word(y.rbegin(), y.rend())};
      }
    }
  }
  return std::nullopt;
}

/// First P1 instance in (letter, s1, s2) order, if any.
inline std::optional<PatternWitness> detect_p1(const Dfa& dfa) {
  const std::size_t n = dfa.num_states();
  const Distinguishability dist(dfa);
  const auto access = detail::access_words(dfa);
  const auto reach = detail::reachability(dfa);

  for (std::size_t c = 0; c < dfa.num_letters(); ++c) {
    const char a = dfa.alphabet()[c];
    for (State s1 = 0; s1 < n; ++s1) {
      if (!access[s1]) continue;
      for (State s2 = 0; s2 < n; ++s2) {
        const State s3 = dfa.next(s2, c);
        if (!reach[s1 * n + s2] || !dist.distinguishable(s2, s3)) continue;
        auto found = find_loop_with_embedded_extension(dfa, s1, s2, a);
        if (!found) continue;
        PatternWitness w;
        w.kind = PatternKind::p1;
        w.letter = a;
        w.x = *access[s1];
        w.v = std::move(found->first);
        w.y = std::move(found->second);
        w.z = dist.witness(s2, s3);
        w.states = {s1, s2, s3, std::nullopt, std::nullopt};
        return w;
      }
    }
  }
  return std::nullopt;
}

namespace detail {

/// Component ids (Tarjan, iterative) of a graph on `count` nodes where
/// node v has successors succ(v, 0..degree-1).
template <class Succ>
std::vector<std::size_t> scc_ids(std::size_t count, std::size_t degree, Succ succ) {
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(count, unset), low(count, 0), comp(count, unset);
  std::vector<std::size_t> stack;
  std::vector<std::pair<std::size_t, std::size_t>> call;
  std::size_t next_index = 0, next_comp = 0;
  auto open = [&](std::size_t v) {
    index[v] = low[v] = next_index++;
    stack.push_back(v);
    call.emplace_back(v, 0);
  };
  for (std::size_t root = 0; root < count; ++root) {
    if (index[root] != unset) continue;
    open(root);
    while (!call.empty()) {
      const std::size_t v = call.back().first;
      if (call.back().second < degree) {
        const std::size_t w = succ(v, call.back().second++);
        if (index[w] == unset) {
          open(w);
        } else if (comp[w] == unset) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          comp[w] = next_comp;
        } while (w != v);
        ++next_comp;
      }
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[v]);
    }
  }
  return comp;
}

/// Pair graph: node g * n + h moves to δ(g,c) * n + δ(h,c).
struct PairGraph {
  const Dfa& dfa;
  std::size_t n;

  std::size_t id(State g, State h) const { return static_cast<std::size_t>(g) * n + h; }
  std::size_t next(std::size_t node, std::size_t c) const {
    return id(dfa.next(static_cast<State>(node / n), c), dfa.next(static_cast<State>(node % n), c));
  }
};

/// Shortest word over the allowed letters leading `from` to `to` in the pair graph.
inline std::optional<Word> pair_path(const PairGraph& graph, const std::vector<char>& allowed, std::size_t from,
                                     std::size_t to) {
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> parent(graph.n * graph.n, unset);
  std::vector<std::size_t> via(graph.n * graph.n, 0);
  parent[from] = from;
  std::vector<std::size_t> queue{from};
  for (std::size_t i = 0; i < queue.size() && parent[to] == unset; ++i) {
    for (std::size_t c = 0; c < graph.dfa.num_letters(); ++c) {
      if (!allowed[c]) continue;
      const std::size_t t = graph.next(queue[i], c);
      if (parent[t] != unset) continue;
      parent[t] = queue[i];
      via[t] = c;
      queue.push_back(t);
    }
  }
  if (parent[to] == unset) return std::nullopt;
  Word z;
  for (std::size_t t = to; t != from; t = parent[t]) z.push_back(graph.dfa.alphabet()[via[t]]);
  return Word(z.rbegin(), z.rend());
}

/// Shortest u returning to `loop` in the pair graph with `pattern` ⊑ u,
/// for non-empty `pattern`. The matched prefix is tracked greedily.
inline std::optional<Word> pair_loop_embedding(const PairGraph& graph, std::size_t loop, const Word& pattern) {
  const std::size_t m = pattern.size() + 1;
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> parent(graph.n * graph.n * m, unset);
  std::vector<std::size_t> via(parent.size(), 0);
  const std::size_t start = loop * m, goal = loop * m + pattern.size();
  parent[start] = start;
  std::vector<std::size_t> queue{start};
  for (std::size_t i = 0; i < queue.size() && parent[goal] == unset; ++i) {
    const std::size_t node = queue[i], j = node % m;
    for (std::size_t c = 0; c < graph.dfa.num_letters(); ++c) {
      const bool match = j < pattern.size() && graph.dfa.alphabet()[c] == pattern[j];
      const std::size_t t = graph.next(node / m, c) * m + j + (match ? 1 : 0);
      if (parent[t] != unset) continue;
      parent[t] = node;
      via[t] = c;
      queue.push_back(t);
    }
  }
  if (parent[goal] == unset) return std::nullopt;
  Word u;
  for (std::size_t t = goal; t != start; t = parent[t]) u.push_back(graph.dfa.alphabet()[via[t]]);
  return Word(u.rbegin(), u.rend());
}

}  // namespace detail

/// First P2 instance in (s1, letter, (s3, s4)) order, if any. Loop pairs
/// are ordered pairs drawn from the distinguishable pairs.
///
/// A common loop u at (s3, s4) can embed az exactly when a and every letter
/// of z label edges inside the strongly connected component of (s3, s4) in
/// the pair graph. So z is searched with those letters only, then u is the
/// shortest loop embedding az.
inline std::optional<PatternWitness> detect_p2(const Dfa& dfa) {
  const std::size_t n = dfa.num_states();
  const std::size_t k = dfa.num_letters();
  const Distinguishability dist(dfa);
  const auto access = detail::access_words(dfa);
  const detail::PairGraph graph{dfa, n};
  const std::size_t pairs = n * n;

  const auto comp = detail::scc_ids(pairs, k, [&](std::size_t v, std::size_t c) { return graph.next(v, c); });
  const std::size_t comps = pairs == 0 ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  std::vector<char> inner(comps * k, 0);  // letters labelling edges inside a component
  for (std::size_t v = 0; v < pairs; ++v) {
    for (std::size_t c = 0; c < k; ++c) {
      if (comp[graph.next(v, c)] == comp[v]) inner[comp[v] * k + c] = 1;
    }
  }

  std::vector<std::vector<std::size_t>> inverse(k, std::vector<std::size_t>());
  std::vector<std::vector<std::size_t>> pred_start(k, std::vector<std::size_t>(pairs + 1, 0));
  for (std::size_t c = 0; c < k; ++c) {
    auto& start = pred_start[c];
    for (std::size_t v = 0; v < pairs; ++v) ++start[graph.next(v, c) + 1];
    for (std::size_t v = 0; v < pairs; ++v) start[v + 1] += start[v];
    inverse[c].resize(pairs);
    auto fill = start;
    for (std::size_t v = 0; v < pairs; ++v) inverse[c][fill[graph.next(v, c)]++] = v;
  }

  struct Loop {
    std::size_t node;
    std::vector<bool> reaches;  // pairs with a path to node over inner letters
  };
  std::vector<Loop> loops;
  for (State t3 = 0; t3 < n; ++t3) {
    for (State t4 = 0; t4 < n; ++t4) {
      if (t3 == t4 || !dist.distinguishable(t3, t4)) continue;
      const std::size_t node = graph.id(t3, t4);
      const char* allowed = &inner[comp[node] * k];
      if (std::find(allowed, allowed + k, 1) == allowed + k) continue;
      Loop loop{node, std::vector<bool>(pairs, false)};
      loop.reaches[node] = true;
      std::vector<std::size_t> stack{node};
      while (!stack.empty()) {
        const std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t c = 0; c < k; ++c) {
          if (!allowed[c]) continue;
          for (std::size_t i = pred_start[c][v]; i < pred_start[c][v + 1]; ++i) {
            const std::size_t p = inverse[c][i];
            if (!loop.reaches[p]) {
              loop.reaches[p] = true;
              stack.push_back(p);
            }
          }
        }
      }
      loops.push_back(std::move(loop));
    }
  }

  for (State s1 = 0; s1 < n; ++s1) {
    if (!access[s1]) continue;
    for (std::size_t c = 0; c < k; ++c) {
      const State s2 = dfa.next(s1, c);
      for (const auto& loop : loops) {
        const std::size_t base = comp[loop.node] * k;
        if (!inner[base + c] || !loop.reaches[graph.id(s1, s2)]) continue;
        const std::vector<char> allowed(inner.begin() + base, inner.begin() + base + k);
        const auto z = detail::pair_path(graph, allowed, graph.id(s1, s2), loop.node);
        const auto u = detail::pair_loop_embedding(graph, loop.node, dfa.alphabet()[c] + *z);
        const State t3 = static_cast<State>(loop.node / n), t4 = static_cast<State>(loop.node % n);
        PatternWitness w;
        w.kind = PatternKind::p2;
        w.letter = dfa.alphabet()[c];
        w.x = *access[s1];
        w.z = *z;
        w.u = *u;
        w.z_prime = dist.witness(t3, t4);
        w.states = {s1, s2, t3, t4, std::nullopt};
        return w;
      }
    }
  }
  return std::nullopt;
}

/// Re-reads a P1 instance as P3 with u = z' = ε.
inline PatternWitness p3_from_p1(const Dfa& dfa, const PatternWitness& p1) {
  PatternWitness w = p1;
  w.kind = PatternKind::p3;
  w.u.clear();
  w.z_prime.clear();
  w.states[3] = dfa.run_from(p1.s(2), p1.z);
  w.states[4] = dfa.run_from(p1.s(3), p1.z);
  return w;
}

/// Re-reads a P2 instance as P3 with v = y = ε (its s1 doubles as s2).
inline PatternWitness p3_from_p2(const PatternWitness& p2) {
  PatternWitness w = p2;
  w.kind = PatternKind::p3;
  w.v.clear();
  w.y.clear();
  w.states = {p2.s(1), p2.s(1), p2.s(2), p2.s(3), p2.s(4)};
  return w;
}

/// A P3 instance obtained from P1 or, failing that, from P2 on the same DFA.
inline std::optional<PatternWitness> detect_p3(const Dfa& dfa) {
  if (auto p1 = detect_p1(dfa)) return p3_from_p1(dfa, *p1);
  if (auto p2 = detect_p2(dfa)) return p3_from_p2(*p2);
  return std::nullopt;
}

/// Level 1 membership: the DFA contains no P3 instance.
inline bool is_piecewise_testable(const Dfa& dfa) { return !detect_p3(dfa).has_value(); }

}  // namespace subseq

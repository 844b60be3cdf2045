#pragma once

// Brute-force ground truth for alternation chains on short words. Nothing
// here touches automata: languages are membership predicates and chains
// are explored by dynamic programming over the subword order.

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "subseq/automaton.hpp"

namespace subseq::oracle {

using Membership = std::function<bool(const Word&)>;

inline constexpr std::size_t default_word_cap = 1'000'000;

/// Word cap from SUBSEQ_WORD_CAP, or the default when unset or malformed.
inline std::size_t word_cap_from_env() {
  if (const char* env = std::getenv("SUBSEQ_WORD_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return default_word_cap;
}

/// Number of words of length ≤ n, or throws ResourceError above `cap`.
inline std::size_t count_words(const Alphabet& alphabet, std::size_t n, std::size_t cap) {
  std::size_t total = 0, layer = 1;
  for (std::size_t len = 0; len <= n; ++len) {
    total += layer;
    if (total > cap) {
      throw ResourceError("enumerating words up to length " + std::to_string(n) +
                          " exceeds the word cap of " + std::to_string(cap));
    }
    if (len < n) {
      if (layer > cap / alphabet.size() + 1) {
        throw ResourceError("enumerating words up to length " + std::to_string(n) +
                            " exceeds the word cap of " + std::to_string(cap));
      }
      layer *= alphabet.size();
    }
  }
  return total;
}

/// All words of length ≤ n, by length and then in alphabet order.
inline std::vector<Word> enumerate_words(const Alphabet& alphabet, std::size_t n,
                                         std::size_t cap = default_word_cap) {
  std::vector<Word> words;
  words.reserve(count_words(alphabet, n, cap));
  words.emplace_back();
  for (std::size_t begin = 0, len = 0; len < n; ++len) {
    const std::size_t end = words.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t c = 0; c < alphabet.size(); ++c) words.push_back(words[i] + alphabet[c]);
    }
    begin = end;
  }
  return words;
}

/// Chain depths for every word of length ≤ n.
///
/// end_plus[i]: the largest j such that a j-alternating chain starting in L
/// ends exactly at words[i], or -1. end_minus: same for chains starting
/// outside L. up_plus / up_minus: the maximum of end_* over all subwords
/// (so words[i] ∈ L⁺(m) iff up_plus[i] ≥ m).
struct BoundedChainTable {
  Alphabet alphabet;
  std::size_t bound = 0;
  std::vector<Word> words;
  std::vector<bool> member;
  std::vector<int> end_plus, end_minus;
  std::vector<int> up_plus, up_minus;
};

namespace detail {

/// Index of a word in enumerate_words order.
class WordIndex {
 public:
  WordIndex(const Alphabet& alphabet, std::size_t n) : alphabet_(alphabet), offset_(n + 2, 0) {
    std::size_t layer = 1;
    for (std::size_t len = 0; len <= n; ++len) {
      offset_[len + 1] = offset_[len] + layer;
      layer *= alphabet.size();
    }
  }

  std::size_t operator()(const Word& w) const {
    std::size_t rank = 0;
    for (char c : w) rank = rank * alphabet_.size() + *alphabet_.index_of(c);
    return offset_[w.size()] + rank;
  }

 private:
  const Alphabet& alphabet_;
  std::vector<std::size_t> offset_;
};

}  // namespace detail

/// Fills the table by increasing length. For each word, the best depth over
/// its proper subwords is the best over its one-letter deletions, since
/// every proper subword is a subword of some deletion.
inline BoundedChainTable chain_table(const Membership& in_language, const Alphabet& alphabet,
                                     std::size_t n, std::size_t cap = default_word_cap) {
  BoundedChainTable t;
  t.alphabet = alphabet;
  t.bound = n;
  t.words = enumerate_words(alphabet, n, cap);
  const std::size_t count = t.words.size();
  t.member.resize(count);
  t.end_plus.assign(count, -1);
  t.end_minus.assign(count, -1);
  t.up_plus.assign(count, -1);
  t.up_minus.assign(count, -1);

  // best_*[i] = max end_* over subwords of words[i] (including itself)
  // split by the subword's membership.
  std::vector<int> best_plus_in(count, -1), best_plus_out(count, -1);
  std::vector<int> best_minus_in(count, -1), best_minus_out(count, -1);
  const detail::WordIndex index(alphabet, n);

  for (std::size_t i = 0; i < count; ++i) {
    const Word& w = t.words[i];
    const bool in = in_language(w);
    t.member[i] = in;

    int sub_plus_in = -1, sub_plus_out = -1, sub_minus_in = -1, sub_minus_out = -1;
    for (std::size_t pos = 0; pos < w.size(); ++pos) {
      if (pos > 0 && w[pos] == w[pos - 1]) continue;  // same deletion result
      Word shorter = w;
      shorter.erase(pos, 1);
      const std::size_t j = index(shorter);
      sub_plus_in = std::max(sub_plus_in, best_plus_in[j]);
      sub_plus_out = std::max(sub_plus_out, best_plus_out[j]);
      sub_minus_in = std::max(sub_minus_in, best_minus_in[j]);
      sub_minus_out = std::max(sub_minus_out, best_minus_out[j]);
    }

    // A chain ending at w steps from a proper subword of opposite membership.
    const int from_plus = in ? sub_plus_out : sub_plus_in;
    const int from_minus = in ? sub_minus_out : sub_minus_in;
    t.end_plus[i] = from_plus >= 0 ? from_plus + 1 : (in ? 0 : -1);
    t.end_minus[i] = from_minus >= 0 ? from_minus + 1 : (in ? -1 : 0);

    best_plus_in[i] = in ? std::max(sub_plus_in, t.end_plus[i]) : sub_plus_in;
    best_plus_out[i] = in ? sub_plus_out : std::max(sub_plus_out, t.end_plus[i]);
    best_minus_in[i] = in ? std::max(sub_minus_in, t.end_minus[i]) : sub_minus_in;
    best_minus_out[i] = in ? sub_minus_out : std::max(sub_minus_out, t.end_minus[i]);
    t.up_plus[i] = std::max(best_plus_in[i], best_plus_out[i]);
    t.up_minus[i] = std::max(best_minus_in[i], best_minus_out[i]);
  }
  return t;
}

/// Largest alternation count realizable with words of length ≤ n (-1 when
/// no chain exists). Non-decreasing in n; never exceeds the true measure.
inline int m_plus_lower_bound(const Membership& in_language, const Alphabet& alphabet, std::size_t n,
                              std::size_t cap = default_word_cap) {
  const auto t = chain_table(in_language, alphabet, n, cap);
  return *std::max_element(t.end_plus.begin(), t.end_plus.end());
}

inline int m_minus_lower_bound(const Membership& in_language, const Alphabet& alphabet,
                               std::size_t n, std::size_t cap = default_word_cap) {
  const auto t = chain_table(in_language, alphabet, n, cap);
  return *std::max_element(t.end_minus.begin(), t.end_minus.end());
}

/// {v : |v| ≤ n, v ∈ L⁺(m)} in enumeration order.
inline std::vector<Word> l_plus_bounded(const Membership& in_language, const Alphabet& alphabet,
                                        int m, std::size_t n, std::size_t cap = default_word_cap) {
  const auto t = chain_table(in_language, alphabet, n, cap);
  std::vector<Word> out;
  for (std::size_t i = 0; i < t.words.size(); ++i) {
    if (t.up_plus[i] >= m) out.push_back(t.words[i]);
  }
  return out;
}

inline std::vector<Word> l_minus_bounded(const Membership& in_language, const Alphabet& alphabet,
                                         int m, std::size_t n, std::size_t cap = default_word_cap) {
  const auto t = chain_table(in_language, alphabet, n, cap);
  std::vector<Word> out;
  for (std::size_t i = 0; i < t.words.size(); ++i) {
    if (t.up_minus[i] >= m) out.push_back(t.words[i]);
  }
  return out;
}

}  // namespace subseq::oracle

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "test_support.hpp"

namespace subseq {
namespace {

using testing::ab;
using testing::words_up_to;

Dfa m2() { return mk_witness(2, ab(), 'a'); }

TEST(Run, EmptyWordStaysAtStart) {
  const Dfa ideal = shuffle_ideal("a", ab());
  EXPECT_EQ(run(ideal, ""), ideal.start());
  EXPECT_FALSE(accepts(ideal, ""));
}

TEST(Run, SubwordOccurrenceAccepts) { EXPECT_TRUE(accepts(shuffle_ideal("a", ab()), "ba")); }

TEST(Run, M2RejectsEvenCount) {
  EXPECT_EQ(accepts(m2(), "aa"), testing::in_mk(2, "aa"));
  EXPECT_FALSE(accepts(m2(), "aa"));
}

TEST(Run, UnknownLetterIsInputError) {
  EXPECT_THROW(run(m2(), "abc"), InputError);
  EXPECT_THROW(to_nfa(m2()).accepts("c"), InputError);
}

TEST(Alphabet, RejectsEmptyAndDuplicates) {
  EXPECT_THROW(Alphabet(""), InputError);
  EXPECT_THROW(Alphabet("aba"), InputError);
  EXPECT_THROW(Alphabet("a b"), InputError);
  const Alphabet one("x");
  EXPECT_EQ(one.size(), 1u);
}

TEST(Dfa, ConstructorValidates) {
  EXPECT_THROW(Dfa(ab(), 2, 0, {0, 1, 1}, {false, true}), InputError);
  EXPECT_THROW(Dfa(ab(), 2, 2, {0, 1, 1, 0}, {false, true}), InputError);
  EXPECT_THROW(Dfa(ab(), 2, 0, {0, 1, 1, 5}, {false, true}), InputError);
}

TEST(Determinize, NoAcceptingStateGivesEmptyLanguage) {
  Nfa nfa(ab(), 2);
  nfa.add_start(0);
  nfa.add_transition(0, 0, 1);
  nfa.add_transition(1, 1, 0);
  const Dfa dfa = determinize(nfa);
  EXPECT_TRUE(is_empty(dfa));
  EXPECT_TRUE(equivalent(dfa, empty_language(ab())));
}

TEST(Determinize, DeterministicInputKeepsLanguage) {
  const Dfa d = testing::ab_star_dfa();
  EXPECT_TRUE(equivalent(determinize(to_nfa(d)), d));
}

TEST(Determinize, GuessingNfaForIdealGivesTwoStates) {
  // A*aA*: loop on everything, guess the a, loop on everything.
  Nfa nfa(ab(), 2);
  nfa.add_start(0);
  nfa.set_accepting(1);
  for (std::size_t c = 0; c < 2; ++c) {
    nfa.add_transition(0, c, 0);
    nfa.add_transition(1, c, 1);
  }
  nfa.add_transition(0, 0, 1);
  const Dfa dfa = minimize(determinize(nfa));
  EXPECT_EQ(dfa.num_states(), 2u);
  EXPECT_EQ(dfa, shuffle_ideal("a", ab()));
}

TEST(Determinize, MaterializesSinkForEmptySubset) {
  Nfa nfa(ab(), 1);
  nfa.add_start(0);
  nfa.set_accepting(0);
  nfa.add_transition(0, 0, 0);  // no 'b' move
  const Dfa dfa = determinize(nfa);
  EXPECT_EQ(dfa.num_states(), 2u);
  EXPECT_TRUE(accepts(dfa, "aaa"));
  EXPECT_FALSE(accepts(dfa, "ab"));
}

TEST(Minimize, RemovesUnreachableStates) {
  // State 2 is unreachable.
  const Dfa d(ab(), 3, 0, {1, 0, 0, 1, 2, 2}, {false, true, true});
  const Dfa m = minimize(d);
  EXPECT_EQ(m.num_states(), 2u);
  EXPECT_TRUE(equivalent(m, d));
}

/// Number of Myhill-Nerode classes, observed on prefixes and suffixes of bounded length.
std::size_t observed_classes(const Dfa& d, std::size_t prefix_len, std::size_t suffix_len) {
  const auto prefixes = words_up_to(d.alphabet(), prefix_len);
  const auto suffixes = words_up_to(d.alphabet(), suffix_len);
  std::set<std::vector<bool>> rows;
  for (const auto& p : prefixes) {
    std::vector<bool> row;
    for (const auto& s : suffixes) row.push_back(accepts(d, p + s));
    rows.insert(row);
  }
  return rows.size();
}

TEST(Minimize, DistinctAutomataForSameIdealCoincide) {
  const Dfa direct = shuffle_ideal("ab", ab());
  // Redundant 5-state automaton for A*aA*bA*: two copies of the waiting state.
  const Dfa redundant = make_dfa(
      ab(), 5, 0,
      [](State s, char c) -> State {
        switch (s) {
          case 0: return c == 'a' ? 2 : 1;
          case 1: return c == 'a' ? 3 : 0;
          case 2: return c == 'b' ? 4 : 3;
          case 3: return c == 'b' ? 4 : 2;
          default: return 4;
        }
      },
      [](State s) { return s == 4; });
  const Dfa m1 = minimize(direct);
  const Dfa m2 = minimize(redundant);
  EXPECT_EQ(m1, m2);
  EXPECT_EQ(m1.num_states(), 3u);
  EXPECT_EQ(observed_classes(redundant, 6, 6), 3u);
}

TEST(Minimize, IdempotentOnMinimalInput) {
  const Dfa m = minimize(testing::ab_star_dfa());
  EXPECT_EQ(minimize(m), m);
}

TEST(Minimize, CanonicalNumberingIsBreadthFirst) {
  const Dfa m = minimize(mk_witness(3, ab(), 'a'));
  EXPECT_EQ(m.start(), 0u);
  const auto order = bfs_order(m);
  for (std::size_t i = 0; i < order.size(); ++i) EXPECT_EQ(order[i], i);
}

TEST(Product, XorWithSelfIsEmpty) {
  const Dfa d = testing::ab_star_dfa();
  EXPECT_TRUE(is_empty(symmetric_difference(d, d)));
}

TEST(Product, AndOfIdealsMatchesBruteForce) {
  const Dfa both = intersect(shuffle_ideal("a", ab()), shuffle_ideal("b", ab()));
  EXPECT_TRUE(testing::same_on_words(
      both, [](const Word& w) { return w.find('a') != Word::npos && w.find('b') != Word::npos; }, 4));
}

TEST(Product, OrWithComplementIsUniversal) {
  const Dfa d = m2();
  EXPECT_TRUE(equivalent(unite(d, complement(d)), universal_language(ab())));
}

TEST(Product, AlphabetMismatchIsInputError) {
  EXPECT_THROW(intersect(m2(), shuffle_ideal("a", Alphabet("abc"))), InputError);
  EXPECT_THROW(equivalent(m2(), shuffle_ideal("a", Alphabet("ba"))), InputError);
}

TEST(Complement, Involution) {
  const Dfa d = testing::ab_star_dfa();
  const Dfa cc = complement(complement(d));
  for (const auto& w : words_up_to(ab(), 6)) EXPECT_EQ(accepts(cc, w), accepts(d, w));
}

TEST(Complement, OfEmptyAcceptsEpsilon) { EXPECT_TRUE(accepts(complement(empty_language(ab())), "")); }

TEST(Complement, OfM2MatchesBruteForce) {
  EXPECT_TRUE(testing::same_on_words(complement(m2()),
                                     [](const Word& w) { return !testing::in_mk(2, w); }, 5));
}

TEST(Reverse, TwiceIsIdentityOnLanguage) {
  const Dfa d = m2();
  EXPECT_TRUE(equivalent(reverse_det(reverse_det(d)), d));
}

TEST(Reverse, IdealAbBecomesIdealBa) {
  const Dfa r = reverse_det(shuffle_ideal("ab", ab()));
  EXPECT_TRUE(testing::same_on_words(r, [](const Word& w) { return is_subword("ba", w); }, 5));
  EXPECT_EQ(r, minimize(shuffle_ideal("ba", ab())));
}

TEST(Reverse, ReversalClosedLanguageUnchanged) {
  const Dfa d = shuffle_ideal("a", ab());
  EXPECT_TRUE(equivalent(reverse_det(d), d));
}

TEST(Reverse, NfaAcceptsReversedWords) {
  const Dfa d = testing::ab_star_dfa();
  const Nfa r = reverse(d);
  for (auto w : words_up_to(ab(), 6)) {
    Word rev(w.rbegin(), w.rend());
    EXPECT_EQ(r.accepts(w), accepts(d, rev)) << w;
  }
}

TEST(IsEmpty, AcceptingStart) { EXPECT_FALSE(is_empty(universal_language(ab()))); }

TEST(IsEmpty, NoAcceptingStates) {
  EXPECT_TRUE(is_empty(empty_language(ab())));
  EXPECT_TRUE(is_empty(to_nfa(empty_language(ab()))));
}

TEST(IsEmpty, UnreachableAcceptingStateIgnored) {
  const Dfa d(ab(), 2, 0, {0, 0, 1, 1}, {false, true});
  EXPECT_TRUE(is_empty(d));
}

TEST(Equivalent, Examples) {
  const Dfa d = mk_witness(4, ab(), 'b');
  EXPECT_TRUE(equivalent(d, minimize(d)));
  const Dfa ia = shuffle_ideal("a", ab());
  EXPECT_FALSE(equivalent(ia, complement(ia)));
  EXPECT_EQ(difference_witness(ia, complement(ia)), Word{});
}

TEST(ShortestAccepted, ShortlexLeast) {
  EXPECT_EQ(shortest_accepted(shuffle_ideal("ba", ab())), Word("ba"));
  EXPECT_EQ(shortest_accepted(empty_language(ab())), std::nullopt);
  EXPECT_EQ(shortest_accepted(complement(testing::ab_star_dfa())), Word("a"));
}

TEST(Distinguishable, NeverReflexive) {
  const Dfa d = testing::ab_star_dfa();
  for (auto [p, q] : distinguishable_pairs(d)) EXPECT_NE(p, q);
}

TEST(Distinguishable, MinimalDfaAllPairs) {
  const Dfa d = minimize(mk_witness(5, ab(), 'a'));
  const std::size_t n = d.num_states();
  EXPECT_EQ(distinguishable_pairs(d).size(), n * (n - 1) / 2);
}

TEST(Distinguishable, M2CountOneVersusTwo) {
  const Dfa d = m2();  // state = min(#a, 3)
  const Distinguishability dist(d);
  ASSERT_TRUE(dist.distinguishable(1, 2));
  EXPECT_EQ(dist.witness(1, 2), "");
  EXPECT_EQ(dist.level(1, 2), 0);
  // 0 and 2 both reject now; "a" separates them.
  EXPECT_EQ(dist.witness(0, 2), "a");
  // 2 and 3 both reject forever.
  EXPECT_FALSE(dist.distinguishable(2, 3));
}

TEST(Distinguishable, MatchesBruteForceOnRandomDfas) {
  std::mt19937 rng(7);
  for (int iter = 0; iter < 100; ++iter) {
    const Dfa d = testing::random_dfa(rng, 1, 5);
    const Distinguishability dist(d);
    const auto suffixes = words_up_to(ab(), d.num_states());
    for (State p = 0; p < d.num_states(); ++p) {
      for (State q = 0; q < d.num_states(); ++q) {
        bool brute = false;
        for (const auto& z : suffixes) {
          brute = brute || d.is_accepting(d.run_from(p, z)) != d.is_accepting(d.run_from(q, z));
        }
        ASSERT_EQ(dist.distinguishable(p, q), brute);
        if (brute) {
          const Word z = dist.witness(p, q);
          EXPECT_NE(d.is_accepting(d.run_from(p, z)), d.is_accepting(d.run_from(q, z)));
          EXPECT_EQ(static_cast<int>(z.size()), dist.level(p, q));
        }
      }
    }
  }
}

// Structural completeness and pointwise semantics of every constructor.
TEST(Properties, ProductsReversalMinimizationOnRandomDfas) {
  std::mt19937 rng(11);
  const auto words = words_up_to(ab(), 6);
  for (int iter = 0; iter < 150; ++iter) {
    const Dfa d1 = testing::random_dfa(rng, 1, 5);
    const Dfa d2 = testing::random_dfa(rng, 1, 5);
    const Dfa conj = intersect(d1, d2), disj = unite(d1, d2), x = symmetric_difference(d1, d2);
    const Dfa rd = reverse_det(d1);
    const Dfa m = minimize(d1);
    for (const Dfa* built : {&conj, &disj, &x, &rd, &m}) {
      EXPECT_EQ(built->table().size(), built->num_states() * built->num_letters());
    }
    for (const auto& w : words) {
      const bool a = accepts(d1, w), b = accepts(d2, w);
      ASSERT_EQ(accepts(conj, w), a && b);
      ASSERT_EQ(accepts(disj, w), a || b);
      ASSERT_EQ(accepts(x, w), a != b);
      ASSERT_EQ(accepts(rd, Word(w.rbegin(), w.rend())), a);
      ASSERT_EQ(accepts(m, w), a);
    }
    EXPECT_EQ(minimize(m), m);
    EXPECT_TRUE(equivalent(m, d1));
    EXPECT_LE(m.num_states(), d1.num_states());

    bool short_word = false;
    for (const auto& w : words_up_to(ab(), d1.num_states() - 1)) short_word = short_word || accepts(d1, w);
    EXPECT_EQ(is_empty(d1), !short_word);
  }
}

TEST(Properties, EqualLanguagesGiveIdenticalMinimalDfas) {
  std::mt19937 rng(5);
  for (int iter = 0; iter < 100; ++iter) {
    const Dfa d = testing::random_dfa(rng, 1, 5);
    // Same language via a different route.
    const Dfa other = determinize(reverse(reverse_det(d)));
    EXPECT_EQ(minimize(d), minimize(other));
  }
}

}  // namespace
}  // namespace subseq

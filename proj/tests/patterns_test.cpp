#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

namespace subseq {
namespace {

using testing::ab;

/// Piecewise testability via the minimal DFA: no cycles other than
/// self-loops, and for every state q and letters a, b some w ∈ {a,b}*
/// gives q·a·w = q·b·w. Shares nothing with the pattern searches.
bool pt_by_confluence(const Dfa& input) {
  const Dfa d = minimize(input);
  const std::size_t n = d.num_states(), k = d.num_letters();

  std::vector<int> color(n, 0);
  std::function<bool(State)> cyclic = [&](State s) {
    color[s] = 1;
    for (std::size_t c = 0; c < k; ++c) {
      const State t = d.next(s, c);
      if (t == s) continue;
      if (color[t] == 1 || (color[t] == 0 && cyclic(t))) return true;
    }
    color[s] = 2;
    return false;
  };
  for (State s = 0; s < n; ++s) {
    if (color[s] == 0 && cyclic(s)) return false;
  }

  for (State q = 0; q < n; ++q) {
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = a + 1; b < k; ++b) {
        std::vector<bool> seen(n * n, false);
        std::vector<std::pair<State, State>> queue{{d.next(q, a), d.next(q, b)}};
        seen[queue[0].first * n + queue[0].second] = true;
        bool meet = false;
        for (std::size_t i = 0; i < queue.size() && !meet; ++i) {
          const auto [p, r] = queue[i];
          if (p == r) meet = true;
          for (std::size_t c : {a, b}) {
            const State pn = d.next(p, c), rn = d.next(r, c);
            if (!seen[pn * n + rn]) {
              seen[pn * n + rn] = true;
              queue.emplace_back(pn, rn);
            }
          }
        }
        if (!meet) return false;
      }
    }
  }
  return true;
}

/// Y-chain runs dry within `limit` steps.
bool chain_runs_dry(const Dfa& d, std::size_t limit) {
  ChainIteration it(d);
  while (it.index() <= limit) {
    if (is_empty(it.chain_ends())) return true;
    it.advance();
  }
  return false;
}

void expect_valid(const Dfa& d, const std::optional<PatternWitness>& w) {
  if (w) {
    EXPECT_TRUE(validate_witness(d, *w)) << export_native(d);
  }
}

struct Occupancy {
  bool p1, p1_rev, p2, p2_rev, p3;
};

Occupancy check_equivalences(const Dfa& d) {
  const Dfa rev = reverse_det(d);
  const auto p1 = detect_p1(d), p1r = detect_p1(rev), p2 = detect_p2(d), p2r = detect_p2(rev), p3 = detect_p3(d);
  expect_valid(d, p1);
  expect_valid(rev, p1r);
  expect_valid(d, p2);
  expect_valid(rev, p2r);
  expect_valid(d, p3);
  const Occupancy o{p1.has_value(), p1r.has_value(), p2.has_value(), p2r.has_value(), p3.has_value()};
  EXPECT_EQ(o.p3, o.p1 || o.p1_rev) << export_native(d);
  EXPECT_EQ(o.p3, o.p2 || o.p2_rev) << export_native(d);
  EXPECT_EQ(o.p3, !pt_by_confluence(d)) << export_native(d);
  return o;
}

Dfa ideal_ab_dfa() { return shuffle_ideal("ab", ab()); }

TEST(ConfluenceOracle, SanityOnKnownLanguages) {
  EXPECT_TRUE(pt_by_confluence(ideal_ab_dfa()));
  EXPECT_TRUE(pt_by_confluence(mk_witness(4, ab(), 'a')));
  EXPECT_FALSE(pt_by_confluence(testing::ab_star_dfa()));
  EXPECT_FALSE(pt_by_confluence(testing::ba_star_dfa()));
  // A*a: the two states swap on a and b
  const Dfa ends_in_a =
      make_dfa(ab(), 2, 0, [](State, char c) -> State { return c == 'a' ? 1 : 0; }, [](State s) { return s == 1; });
  EXPECT_FALSE(pt_by_confluence(ends_in_a));
}

TEST(FindLoop, AbStarAfterA) {
  const Dfa d = testing::ab_star_dfa();
  const auto found = find_loop_with_embedded_extension(d, 0, 1, 'a');
  ASSERT_TRUE(found);
  const auto& [v, y] = *found;
  EXPECT_EQ(d.run_from(0, v), 0u);
  EXPECT_EQ(d.run_from(0, y), 1u);
  EXPECT_TRUE(is_subword(y + "a", v));
  EXPECT_EQ(v, "abab");
  EXPECT_EQ(y, "a");
}

TEST(FindLoop, AbsorbingStateLoopsOnEverything) {
  const Dfa d = shuffle_ideal("a", ab());
  const auto found = find_loop_with_embedded_extension(d, 1, 1, 'a');
  ASSERT_TRUE(found);
  EXPECT_EQ(found->first, "a");
  EXPECT_EQ(found->second, "");
  // the step on a stays in the sink, so no P1 results
  EXPECT_FALSE(detect_p1(d));
}

TEST(FindLoop, UnreachableTarget) {
  const Dfa d = testing::ab_star_dfa();
  EXPECT_FALSE(find_loop_with_embedded_extension(d, 2, 0, 'a'));
  EXPECT_THROW(find_loop_with_embedded_extension(d, 3, 0, 'a'), InputError);
}

TEST(DetectP1, Examples) {
  const auto w = detect_p1(testing::ab_star_dfa());
  ASSERT_TRUE(w);
  EXPECT_EQ(w->kind, PatternKind::p1);
  EXPECT_TRUE(validate_witness(testing::ab_star_dfa(), *w));
  EXPECT_FALSE(detect_p1(ideal_ab_dfa()));
  EXPECT_FALSE(detect_p1(empty_language(ab())));
}

TEST(DetectP2, Examples) {
  const auto w = detect_p2(testing::ba_star_dfa());
  ASSERT_TRUE(w);
  EXPECT_EQ(w->kind, PatternKind::p2);
  EXPECT_TRUE(validate_witness(testing::ba_star_dfa(), *w));
  EXPECT_FALSE(detect_p2(mk_witness(3, ab(), 'a')));
  EXPECT_FALSE(detect_p2(universal_language(ab())));
  EXPECT_FALSE(detect_p2(empty_language(ab())));
}

TEST(DetectP3, Examples) {
  const Dfa ab_star = testing::ab_star_dfa(), ba_star = testing::ba_star_dfa();
  const auto w1 = detect_p3(ab_star);
  ASSERT_TRUE(w1);
  EXPECT_EQ(w1->kind, PatternKind::p3);
  EXPECT_TRUE(validate_witness(ab_star, *w1));
  EXPECT_TRUE(w1->u.empty());  // loop slot u unused: came from P1

  // (ba)* carries both shapes; P1 is tried first
  EXPECT_TRUE(detect_p1(ba_star));
  EXPECT_TRUE(detect_p2(ab_star));
  const auto w2 = detect_p3(ba_star);
  ASSERT_TRUE(w2);
  EXPECT_TRUE(validate_witness(ba_star, *w2));

  for (int k = 1; k <= 6; ++k) EXPECT_FALSE(detect_p3(mk_witness(k, ab(), 'a'))) << k;
}

TEST(Validate, RejectsTamperedWitness) {
  const Dfa d = testing::ab_star_dfa();
  auto w = *detect_p1(d);
  EXPECT_TRUE(validate_witness(d, w));
  auto bad = w;
  bad.z = "aa";  // both sides fall into the sink
  EXPECT_FALSE(validate_witness(d, bad));
  bad = w;
  bad.states[3] = 0;
  EXPECT_FALSE(validate_witness(d, bad));
  bad = w;
  bad.letter = 'c';
  EXPECT_FALSE(validate_witness(d, bad));
}

TEST(PiecewiseTestable, Examples) {
  const Dfa combo = symmetric_difference(shuffle_ideal("ab", ab()), shuffle_ideal("ba", ab()));
  EXPECT_TRUE(is_piecewise_testable(combo));
  EXPECT_TRUE(is_piecewise_testable(difference(shuffle_ideal("a", ab()), shuffle_ideal("bb", ab()))));
  EXPECT_FALSE(is_piecewise_testable(testing::ab_star_dfa()));
  for (int k = 1; k <= 6; ++k) EXPECT_TRUE(is_piecewise_testable(mk_witness(k, ab(), 'b')));
}

TEST(Equivalences, AllTwoStateDfas) {
  testing::for_each_dfa(2, [](const Dfa& d) { check_equivalences(d); });
}

TEST(Equivalences, AllThreeStateDfas) {
  std::size_t with_pattern = 0;
  testing::for_each_dfa(3, [&](const Dfa& d) { with_pattern += check_equivalences(d).p3; });
  EXPECT_GT(with_pattern, 0u);
}

TEST(Equivalences, RandomLargerDfas) {
  std::mt19937 rng(2024);
  std::size_t with_pattern = 0;
  for (int i = 0; i < 500; ++i) {
    const Dfa d = testing::random_dfa(rng, 4, 6);
    const auto o = check_equivalences(d);
    with_pattern += o.p3;
    if (!o.p3) {
      EXPECT_TRUE(chain_runs_dry(d, 40)) << export_native(d);
    } else {
      EXPECT_FALSE(is_empty(chain_core_iterate(d, 8))) << export_native(d);
    }
  }
  EXPECT_GT(with_pattern, 50u);
  EXPECT_LT(with_pattern, 450u);
}

TEST(Invariance, MinimizeAndReverse) {
  std::mt19937 rng(77);
  for (int i = 0; i < 300; ++i) {
    const Dfa d = testing::random_dfa(rng, 1, 6);
    const bool pt = is_piecewise_testable(d);
    EXPECT_EQ(pt, is_piecewise_testable(minimize(d)));
    EXPECT_EQ(pt, is_piecewise_testable(reverse_det(d)));
  }
}

TEST(Witness, ThreeLetterAlphabet) {
  // (abc)* over {a,b,c}
  const Alphabet abc("abc");
  const Dfa d = make_dfa(
      abc, 4, 0,
      [](State s, char c) -> State {
        if (s == 3) return 3;
        const char expected = "abc"[s];
        return c == expected ? (s + 1) % 3 : 3;
      },
      [](State s) { return s == 0; });
  const auto w = detect_p3(d);
  ASSERT_TRUE(w);
  EXPECT_TRUE(validate_witness(d, *w));
  EXPECT_FALSE(pt_by_confluence(d));
}

}  // namespace
}  // namespace subseq

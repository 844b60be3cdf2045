// Walks a few languages through the library: the M_k ladder, a normal
// form, an ideal decomposition and a forbidden-pattern witness.

#include <iostream>

#include "subseq/subseq.hpp"

using namespace subseq;

namespace {

void show_words(const std::vector<Word>& words) {
  if (words.empty()) std::cout << "(nothing)";
  for (const auto& w : words) std::cout << ' ' << quote_word(w);
  std::cout << '\n';
}

}  // namespace

int main() {
  const Alphabet ab("ab");

  std::cout << "M_k ladder\n";
  for (int k = 1; k <= 5; ++k) {
    const auto level = minimal_boolean_level(mk_witness(k, ab, 'a'));
    std::cout << "  k=" << k << "  m+=" << level.m_plus.to_string() << "  m-=" << level.m_minus.to_string()
              << "  least k: " << *level.k_plus << " / co " << *level.k_co << '\n';
  }

  // nested chain for M_4: L = ∁L-(0) ∪ (L-(1) ∖ L-(2)) ∪ (L-(3) ∖ L-(4))
  std::cout << "\nnormal form of M_4\n";
  const auto chain = normal_form_decomposition(mk_witness(4, ab, 'a'));
  for (std::size_t i = 0; i < chain.size(); ++i) {
    std::cout << "  L-(" << i << ") = union of ideals of";
    show_words(decompose_level_half(chain[i]).words);
  }

  const Dfa two = unite(shuffle_ideal("ab", ab), unite(shuffle_ideal("bba", ab), shuffle_ideal("aab", ab)));
  std::cout << "\n[ab] + [bba] + [aab] reduces to";
  show_words(decompose_level_half(two).words);

  // (ab)*
  const Dfa ab_star = make_dfa(
      ab, 3, 0,
      [](State s, char c) -> State {
        if (s == 0) return c == 'a' ? 1 : 2;
        if (s == 1) return c == 'b' ? 0 : 2;
        return 2;
      },
      [](State s) { return s == 0; });
  std::cout << "\n(ab)*: m+ = " << m_plus(ab_star).to_string() << '\n';
  if (auto w = detect_p3(ab_star)) std::cout << "  " << render_witness(*w) << '\n';

  std::cout << "\nbrute-force depth of (ab)* by word length:";
  const oracle::Membership in_ab_star = [&](const Word& w) { return accepts(ab_star, w); };
  for (std::size_t n = 0; n <= 10; n += 2) std::cout << ' ' << oracle::m_plus_lower_bound(in_ab_star, ab, n);
  std::cout << '\n';
}

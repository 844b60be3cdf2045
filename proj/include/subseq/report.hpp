#pragma once

// Full classification of a regular language and its text / JSON rendering.

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "subseq/alternation.hpp"
#include "subseq/automaton.hpp"
#include "subseq/oracle.hpp"
#include "subseq/ops.hpp"
#include "subseq/patterns.hpp"
#include "subseq/subword.hpp"

namespace subseq {

struct ClassifyOptions {
  ChainEngine engine = ChainEngine::iterate;
  bool include_witness = false;          ///< render the witness words
  std::optional<std::size_t> oracle_check;  ///< cross-check against brute force up to this length
  std::size_t oracle_max_m = 3;
  std::size_t word_cap = oracle::default_word_cap;
};

struct OracleCheck {
  std::size_t length = 0;
  int m_plus_lower_bound = -1;
  int m_minus_lower_bound = -1;
  bool l_plus_agrees = true;   ///< bounded L⁺(m) slices match, m ≤ oracle_max_m
  bool l_minus_agrees = true;
  bool bounds_consistent = true;  ///< lower bounds do not exceed the measures

  bool passed() const noexcept { return l_plus_agrees && l_minus_agrees && bounds_consistent; }
};

struct ClassificationReport {
  std::string language;
  std::size_t states = 0;  ///< states of the minimal DFA
  bool in_level_one_half = false;
  bool in_co_level_one_half = false;
  std::optional<IdealDecomposition> ideal_decomposition;
  AlternationMeasure m_plus = AlternationMeasure::finite(-1);
  AlternationMeasure m_minus = AlternationMeasure::finite(-1);
  std::optional<int> minimal_k_plus;
  std::optional<int> minimal_k_co;
  LevelSide level_side = LevelSide::none;
  bool piecewise_testable = false;
  std::optional<PatternWitness> pattern_witness;
  std::optional<OracleCheck> oracle;
  bool include_witness = false;
};

/// Throws std::logic_error when the report contradicts itself.
inline void check_consistency(const ClassificationReport& r, bool is_empty_or_universal) {
  auto fail = [](const std::string& what) { throw std::logic_error("inconsistent report: " + what); };
  if (r.piecewise_testable != r.m_plus.is_finite()) fail("piecewise testability vs finite m+");
  if (r.m_plus.is_finite() != r.m_minus.is_finite()) fail("m+ and m- finiteness differ");
  if (r.piecewise_testable == r.pattern_witness.has_value()) fail("witness presence");
  if (r.m_plus.is_finite()) {
    if (r.minimal_k_plus != std::max(1, r.m_plus.value() + 1)) fail("minimal_k_plus");
    if (r.minimal_k_co != std::max(1, r.m_minus.value() + 1)) fail("minimal_k_co");
    if (!is_empty_or_universal && std::abs(r.m_plus.value() - r.m_minus.value()) != 1) {
      fail("|m+ - m-| != 1");
    }
    if (r.in_level_one_half != (r.m_plus.value() < 1)) fail("level 1/2 vs m+ < 1");
    if (r.in_co_level_one_half != (r.m_minus.value() < 1)) fail("co-level 1/2 vs m- < 1");
  } else if (r.minimal_k_plus || r.minimal_k_co || r.in_level_one_half || r.in_co_level_one_half) {
    fail("levels reported for an infinite measure");
  }
  if (r.in_level_one_half != r.ideal_decomposition.has_value()) fail("ideal decomposition presence");
}

inline OracleCheck run_oracle_check(const Dfa& dfa, AlternationMeasure plus, AlternationMeasure minus,
                                    const ClassifyOptions& options) {
  OracleCheck check;
  check.length = *options.oracle_check;
  const oracle::Membership member = [&](const Word& w) { return accepts(dfa, w); };
  const auto table = oracle::chain_table(member, dfa.alphabet(), check.length, options.word_cap);
  for (std::size_t i = 0; i < table.words.size(); ++i) {
    check.m_plus_lower_bound = std::max(check.m_plus_lower_bound, table.end_plus[i]);
    check.m_minus_lower_bound = std::max(check.m_minus_lower_bound, table.end_minus[i]);
  }
  check.bounds_consistent = AlternationMeasure::finite(check.m_plus_lower_bound) <= plus &&
                            AlternationMeasure::finite(check.m_minus_lower_bound) <= minus;
  for (std::size_t m = 0; m <= options.oracle_max_m; ++m) {
    const Dfa lp = l_plus(dfa, m, options.engine);
    const Dfa lm = l_minus(dfa, m, options.engine);
    for (std::size_t i = 0; i < table.words.size(); ++i) {
      const int mi = static_cast<int>(m);
      if (accepts(lp, table.words[i]) != (table.up_plus[i] >= mi)) check.l_plus_agrees = false;
      if (accepts(lm, table.words[i]) != (table.up_minus[i] >= mi)) check.l_minus_agrees = false;
    }
  }
  return check;
}

inline ClassificationReport classify(const Dfa& input, const ClassifyOptions& options = {},
                                     std::string language = "") {
  const Dfa dfa = minimize(input);
  ClassificationReport r;
  r.language = std::move(language);
  r.states = dfa.num_states();
  r.include_witness = options.include_witness;

  r.in_level_one_half = is_level_one_half(dfa);
  r.in_co_level_one_half = is_co_level_one_half(dfa);
  if (r.in_level_one_half) r.ideal_decomposition = decompose_level_half(dfa);

  if (auto witness = detect_p3(dfa)) {
    r.pattern_witness = std::move(witness);
    r.m_plus = r.m_minus = AlternationMeasure::infinite();
  } else {
    r.m_plus = m_plus(dfa, options.engine);
    r.m_minus = m_minus(dfa, options.engine);
  }
  r.piecewise_testable = !r.pattern_witness.has_value();
  const BooleanLevel level = level_from_measures(r.m_plus, r.m_minus);
  r.minimal_k_plus = level.k_plus;
  r.minimal_k_co = level.k_co;
  r.level_side = level.side;

  if (options.oracle_check) r.oracle = run_oracle_check(dfa, r.m_plus, r.m_minus, options);

  if (r.pattern_witness && !validate_witness(dfa, *r.pattern_witness)) {
    throw std::logic_error("pattern witness failed replay");
  }
  check_consistency(r, is_empty(dfa) || is_empty(complement(dfa)));
  return r;
}

inline nlohmann::ordered_json measure_json(AlternationMeasure m) {
  if (m.is_infinite()) return "inf";
  return m.value();
}

inline nlohmann::ordered_json witness_json(const PatternWitness& w, bool with_words) {
  nlohmann::ordered_json j;
  j["kind"] = to_string(w.kind);
  if (!with_words) return j;
  j["letter"] = std::string(1, w.letter);
  j["x"] = w.x;
  j["v"] = w.v;
  j["y"] = w.y;
  j["z"] = w.z;
  j["u"] = w.u;
  j["z_prime"] = w.z_prime;
  nlohmann::ordered_json states = nlohmann::ordered_json::array();
  for (const auto& s : w.states) {
    if (s) states.push_back(*s);
  }
  j["states"] = states;
  return j;
}

inline nlohmann::ordered_json to_json(const ClassificationReport& r) {
  using json = nlohmann::ordered_json;
  json j;
  j["language"] = r.language;
  j["states"] = r.states;
  j["in_level_one_half"] = r.in_level_one_half;
  j["in_co_level_one_half"] = r.in_co_level_one_half;
  j["ideal_decomposition"] = r.ideal_decomposition ? json(r.ideal_decomposition->words) : json(nullptr);
  j["m_plus"] = measure_json(r.m_plus);
  j["m_minus"] = measure_json(r.m_minus);
  j["minimal_k_plus"] = r.minimal_k_plus ? json(*r.minimal_k_plus) : json(nullptr);
  j["minimal_k_co"] = r.minimal_k_co ? json(*r.minimal_k_co) : json(nullptr);
  j["level_side"] = to_string(r.level_side);
  j["piecewise_testable"] = r.piecewise_testable;
  j["pattern_witness"] =
      r.pattern_witness ? witness_json(*r.pattern_witness, r.include_witness) : json(nullptr);
  if (r.oracle) {
    json o;
    o["length"] = r.oracle->length;
    o["m_plus_lower_bound"] = r.oracle->m_plus_lower_bound;
    o["m_minus_lower_bound"] = r.oracle->m_minus_lower_bound;
    o["l_plus_agrees"] = r.oracle->l_plus_agrees;
    o["l_minus_agrees"] = r.oracle->l_minus_agrees;
    o["bounds_consistent"] = r.oracle->bounds_consistent;
    o["passed"] = r.oracle->passed();
    j["oracle_check"] = o;
  }
  return j;
}

inline std::string quote_word(const Word& w) { return w.empty() ? "ε" : "\"" + w + "\""; }

inline std::string render_witness(const PatternWitness& w) {
  std::ostringstream out;
  out << to_string(w.kind) << " on letter '" << w.letter << "': x=" << quote_word(w.x);
  if (w.kind != PatternKind::p2) out << " v=" << quote_word(w.v) << " y=" << quote_word(w.y);
  out << " z=" << quote_word(w.z);
  if (w.kind != PatternKind::p1) out << " u=" << quote_word(w.u) << " z'=" << quote_word(w.z_prime);
  out << " states=(";
  bool first = true;
  for (const auto& s : w.states) {
    if (!s) continue;
    out << (first ? "" : ", ") << *s;
    first = false;
  }
  out << ")";
  return out.str();
}

inline std::string to_text(const ClassificationReport& r) {
  std::ostringstream out;
  auto yes = [](bool b) { return b ? "yes" : "no"; };
  if (!r.language.empty()) out << "language:            " << r.language << '\n';
  out << "minimal states:      " << r.states << '\n';
  out << "level 1/2:           " << yes(r.in_level_one_half) << '\n';
  out << "co-level 1/2:        " << yes(r.in_co_level_one_half) << '\n';
  if (r.ideal_decomposition) {
    out << "ideal decomposition:";
    if (r.ideal_decomposition->words.empty()) out << " (empty union)";
    for (const auto& w : r.ideal_decomposition->words) out << ' ' << quote_word(w);
    out << '\n';
  }
  out << "m+:                  " << r.m_plus.to_string() << '\n';
  out << "m-:                  " << r.m_minus.to_string() << '\n';
  if (r.minimal_k_plus) {
    out << "least k (L1/2(k)):   " << *r.minimal_k_plus << '\n';
    out << "least k (coL1/2(k)): " << *r.minimal_k_co << '\n';
    out << "strict side:         " << to_string(r.level_side) << '\n';
  } else {
    out << "boolean level:       not in BC(L1/2)\n";
  }
  out << "piecewise testable:  " << yes(r.piecewise_testable) << '\n';
  if (r.pattern_witness) {
    out << "pattern:             "
        << (r.include_witness ? render_witness(*r.pattern_witness) : to_string(r.pattern_witness->kind))
        << '\n';
  }
  if (r.oracle) {
    out << "oracle check (n=" << r.oracle->length << "): " << (r.oracle->passed() ? "pass" : "FAIL")
        << " (m+ >= " << r.oracle->m_plus_lower_bound << ", m- >= " << r.oracle->m_minus_lower_bound
        << ")\n";
  }
  return out.str();
}

}  // namespace subseq

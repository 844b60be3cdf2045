// subseq: classify regular languages in the boolean hierarchy over
// level 1/2 and test piecewise testability.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "subseq/subseq.hpp"

namespace fs = std::filesystem;
using namespace subseq;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_input = 1;
constexpr int exit_resource = 2;
constexpr int exit_check_failed = 3;

std::string read_input(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Dfa load(const std::string& path) {
  try {
    return parse_dfa(read_input(path));
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  }
}

ChainEngine parse_engine(const std::string& name) {
  return name == "chain-nfa" ? ChainEngine::chain_nfa : ChainEngine::iterate;
}

ExportFormat parse_format(const std::string& name) {
  return name == "dot" ? ExportFormat::dot : ExportFormat::native;
}

std::string words_text(const std::vector<Word>& words) {
  if (words.empty()) return "(empty union)";
  std::string out;
  for (const auto& w : words) out += (out.empty() ? "" : " ") + quote_word(w);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boolean-hierarchy classifier for regular languages given as DFAs"};
  app.require_subcommand(1);

  std::string file, engine_name = "iterate", format_name = "native", batch_dir, alphabet_text = "ab";
  bool json_out = false, witness = false, minimize_first = false, normal_form = false;
  std::size_t oracle_n = 0, max_m = 3, k = 0;
  char letter = 'a';

  const std::vector<std::string> engines{"iterate", "chain-nfa"};
  const std::vector<std::string> formats{"native", "dot"};

  auto* classify_cmd = app.add_subcommand("classify", "Full classification report");
  auto* file_opt = classify_cmd->add_option("file", file, "DFA file ('-' for stdin)");
  classify_cmd->add_option("--batch", batch_dir, "Classify every *.dfa file in a directory")
      ->excludes(file_opt);
  classify_cmd->add_flag("--json", json_out, "JSON output");
  classify_cmd->add_flag("--witness", witness, "Include pattern witness words");
  classify_cmd->add_option("--engine", engine_name, "m+/m- engine")->check(CLI::IsMember(engines));
  classify_cmd->add_option("--oracle-check", oracle_n, "Cross-check against brute force up to this length");

  auto* mplus_cmd = app.add_subcommand("mplus", "Alternation measures m+ and m-");
  mplus_cmd->add_option("file", file, "DFA file")->required();
  mplus_cmd->add_option("--engine", engine_name, "m+/m- engine")->check(CLI::IsMember(engines));
  mplus_cmd->add_flag("--json", json_out, "JSON output");

  auto* patterns_cmd = app.add_subcommand("patterns", "Detect P1/P2/P3 in the DFA and its reversal");
  patterns_cmd->add_option("file", file, "DFA file")->required();
  patterns_cmd->add_flag("--json", json_out, "JSON output");

  auto* closure_cmd = app.add_subcommand("closure", "Upward closure of the language");
  closure_cmd->add_option("file", file, "DFA file")->required();
  closure_cmd->add_option("--format", format_name, "Output format")->check(CLI::IsMember(formats));

  auto* decompose_cmd = app.add_subcommand("decompose", "Shuffle-ideal decomposition of a level-1/2 language");
  decompose_cmd->add_option("file", file, "DFA file")->required();
  decompose_cmd->add_flag("--normal-form", normal_form,
                          "Print the nested L-(i) chain of the boolean normal form instead");
  decompose_cmd->add_flag("--json", json_out, "JSON output");

  auto* oracle_cmd = app.add_subcommand("oracle-check", "Brute-force cross-validation on short words");
  oracle_cmd->add_option("file", file, "DFA file")->required();
  oracle_cmd->add_option("--length,-n", oracle_n, "Maximal word length")->required();
  oracle_cmd->add_option("--max-m", max_m, "Largest chain index compared");
  oracle_cmd->add_option("--engine", engine_name, "m+/m- engine")->check(CLI::IsMember(engines));

  auto* export_cmd = app.add_subcommand("export", "Re-emit a DFA");
  export_cmd->add_option("file", file, "DFA file")->required();
  export_cmd->add_option("--format", format_name, "Output format")->check(CLI::IsMember(formats));
  export_cmd->add_flag("--minimize", minimize_first, "Minimize (canonical numbering) first");

  auto* genmk_cmd = app.add_subcommand("gen-mk", "Emit the counting automaton M_k");
  genmk_cmd->add_option("k", k, "Index k >= 1")->required()->check(CLI::PositiveNumber);
  genmk_cmd->add_option("--alphabet", alphabet_text, "Alphabet letters");
  genmk_cmd->add_option("--letter", letter, "Counted letter");
  genmk_cmd->add_option("--format", format_name, "Output format")->check(CLI::IsMember(formats));

  CLI11_PARSE(app, argc, argv);

  try {
    const std::size_t cap = oracle::word_cap_from_env();

    if (*classify_cmd) {
      ClassifyOptions options;
      options.engine = parse_engine(engine_name);
      options.include_witness = witness;
      options.word_cap = cap;
      if (classify_cmd->count("--oracle-check")) options.oracle_check = oracle_n;

      if (!batch_dir.empty()) {
        std::vector<fs::path> paths;
        for (const auto& entry : fs::directory_iterator(batch_dir)) {
          if (entry.is_regular_file() && entry.path().extension() == ".dfa") paths.push_back(entry.path());
        }
        std::sort(paths.begin(), paths.end());
        std::vector<std::future<std::string>> jobs;
        for (const auto& p : paths) {
          jobs.push_back(std::async(std::launch::async, [p, options, json_out] {
            try {
              const auto report = classify(load(p.string()), options, p.filename().string());
              return json_out ? to_json(report).dump() : to_text(report);
            } catch (const std::exception& e) {
              return json_out ? nlohmann::ordered_json{{"language", p.filename().string()},
                                                       {"error", e.what()}}
                                    .dump()
                              : p.filename().string() + ": error: " + e.what() + "\n";
            }
          }));
        }
        if (json_out) std::cout << "[\n";
        for (std::size_t i = 0; i < jobs.size(); ++i) {
          const std::string out = jobs[i].get();
          if (json_out) {
            std::cout << "  " << out << (i + 1 < jobs.size() ? ",\n" : "\n");
          } else {
            std::cout << out << (i + 1 < jobs.size() ? "\n" : "");
          }
        }
        if (json_out) std::cout << "]\n";
        return exit_ok;
      }

      if (file.empty()) throw InputError("classify needs a DFA file or --batch DIR");
      const auto report = classify(load(file), options, file == "-" ? "stdin" : fs::path(file).filename().string());
      std::cout << (json_out ? to_json(report).dump(2) + "\n" : to_text(report));
      if (report.oracle && !report.oracle->passed()) return exit_check_failed;
      return exit_ok;
    }

    if (*mplus_cmd) {
      const Dfa dfa = load(file);
      const auto engine = parse_engine(engine_name);
      const auto plus = m_plus(dfa, engine);
      const auto minus = m_minus(dfa, engine);
      if (json_out) {
        nlohmann::ordered_json j;
        j["m_plus"] = measure_json(plus);
        j["m_minus"] = measure_json(minus);
        std::cout << j.dump(2) << '\n';
      } else {
        std::cout << "m+ = " << plus.to_string() << "\nm- = " << minus.to_string() << '\n';
      }
      return exit_ok;
    }

    if (*patterns_cmd) {
      const Dfa dfa = load(file);
      const Dfa reversed = reverse_det(dfa);
      struct Row {
        const char* name;
        std::optional<PatternWitness> witness;
      };
      const std::vector<Row> rows{{"P1(F)", detect_p1(dfa)},       {"P1(F^R)", detect_p1(reversed)},
                                  {"P2(F)", detect_p2(dfa)},       {"P2(F^R)", detect_p2(reversed)},
                                  {"P3(F)", detect_p3(dfa)}};
      if (json_out) {
        nlohmann::ordered_json j;
        for (const auto& row : rows) {
          j[row.name] = row.witness ? witness_json(*row.witness, true) : nlohmann::ordered_json(nullptr);
        }
        j["piecewise_testable"] = !rows.back().witness.has_value();
        std::cout << j.dump(2) << '\n';
      } else {
        for (const auto& row : rows) {
          std::cout << row.name << ": " << (row.witness ? render_witness(*row.witness) : "none") << '\n';
        }
        std::cout << "piecewise testable: " << (rows.back().witness ? "no" : "yes") << '\n';
      }
      return exit_ok;
    }

    if (*closure_cmd) {
      std::cout << export_dfa(upward_closure(load(file)), parse_format(format_name));
      return exit_ok;
    }

    if (*decompose_cmd) {
      const Dfa dfa = load(file);
      if (normal_form) {
        const auto chain = normal_form_decomposition(dfa);
        nlohmann::ordered_json j = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < chain.size(); ++i) {
          const auto words = decompose_level_half(chain[i]).words;
          if (json_out) {
            j.push_back(words);
          } else {
            std::cout << "L-(" << i << "): " << words_text(words) << '\n';
          }
        }
        if (json_out) std::cout << j.dump(2) << '\n';
        return exit_ok;
      }
      const auto decomposition = decompose_level_half(dfa);
      if (json_out) {
        std::cout << nlohmann::ordered_json(decomposition.words).dump(2) << '\n';
      } else {
        std::cout << words_text(decomposition.words) << '\n';
      }
      return exit_ok;
    }

    if (*oracle_cmd) {
      const Dfa dfa = load(file);
      ClassifyOptions options;
      options.engine = parse_engine(engine_name);
      options.oracle_check = oracle_n;
      options.oracle_max_m = max_m;
      options.word_cap = cap;
      const auto plus = m_plus(dfa, options.engine);
      const auto minus = m_minus(dfa, options.engine);
      const auto check = run_oracle_check(dfa, plus, minus, options);
      std::cout << "m+ = " << plus.to_string() << " (brute force >= " << check.m_plus_lower_bound << ")\n"
                << "m- = " << minus.to_string() << " (brute force >= " << check.m_minus_lower_bound << ")\n"
                << "L+(m) slices, m <= " << max_m << ": " << (check.l_plus_agrees ? "agree" : "DISAGREE") << '\n'
                << "L-(m) slices, m <= " << max_m << ": " << (check.l_minus_agrees ? "agree" : "DISAGREE") << '\n'
                << "result: " << (check.passed() ? "pass" : "FAIL") << '\n';
      return check.passed() ? exit_ok : exit_check_failed;
    }

    if (*export_cmd) {
      Dfa dfa = load(file);
      if (minimize_first) dfa = minimize(dfa);
      std::cout << export_dfa(dfa, parse_format(format_name));
      return exit_ok;
    }

    if (*genmk_cmd) {
      std::cout << export_dfa(mk_witness(static_cast<int>(k), Alphabet(alphabet_text), letter),
                              parse_format(format_name));
      return exit_ok;
    }
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_resource;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_input;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_input;
  }
  return exit_ok;
}

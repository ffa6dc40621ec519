#include <unistd.h>

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "prooftk/apds.hpp"
#include "prooftk/calculi.hpp"
#include "prooftk/fdl.hpp"
#include "prooftk/natded.hpp"
#include "prooftk/oracle.hpp"
#include "prooftk/textio.hpp"

using namespace prooftk;

namespace {

// Exit codes: 0 success/true/provable, 1 false/unprovable, 2 budget,
// 3 input error, 4 internal invariant violation.
constexpr int kTrue = 0;
constexpr int kFalse = 1;
constexpr int kBudget = 2;
constexpr int kInput = 3;
constexpr int kInternal = 4;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Inline text, or the contents of a file when prefixed with '@'.
std::string inline_or_file(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') return slurp(arg.substr(1));
  return arg;
}

std::string trimmed(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r' ||
                        s.back() == ' '))
    s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  return s.substr(i);
}

// A bare term has no parser entry point of its own; wrapping it in an
// atom's argument position borrows the formula grammar.
Term parse_term_arg(const std::string& text) {
  FormulaRef f = textio::parse_formula("W(" + text + ")");
  if (f->kind() != Conn::Atom || f->args().size() != 1)
    throw InputError("bad witness term: " + text);
  return f->args()[0];
}

std::shared_ptr<const RuleTable> table_for(const std::string& calculus,
                                           const std::string& model_path,
                                           const std::string& system_path) {
  if (calculus == "g") return calculi::g_rule_table();
  if (calculus == "k") return calculi::k_rule_table();
  if (calculus == "d") return calculi::d_rule_table();
  if (calculus == "nd") return nd::nd_rule_table();
  if (calculus == "delay") return nd::pseudo_table();
  if (calculus == "fdl") {
    if (model_path.empty())
      throw InputError("--calculus fdl needs --model");
    return fdl::rule_table(textio::parse_fdl_model(slurp(model_path)));
  }
  if (calculus == "apds") {
    if (system_path.empty())
      throw InputError("--calculus apds needs --system");
    return apds::rule_table(
        apds::saturate(textio::parse_apds(slurp(system_path))));
  }
  throw InputError("unknown calculus: " + calculus);
}

std::string path_string(const std::vector<std::size_t>& path) {
  if (path.empty()) return "root";
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i)
    out += (i ? "." : "") + std::to_string(path[i]);
  return out;
}

void report_cuts(const Proof& node, const RuleTable& table,
                 std::vector<std::size_t>& path) {
  if (is_general_cut(node, table))
    std::cout << "general cut at " << path_string(path) << '\n';
  if (table.calculus_id() == "nd" && nd::is_specific_cut(node))
    std::cout << "specific cut at " << path_string(path) << '\n';
  for (std::size_t i = 0; i < node.premises().size(); ++i) {
    path.push_back(i);
    report_cuts(*node.premises()[i], table, path);
    path.pop_back();
  }
}

int run_prove(const std::string& calculus, const std::string& seq_arg,
              const std::string& model_path, int depth,
              const std::string& witnesses, const std::string& format) {
  textio::ProofStyle style = format == "tree" ? textio::ProofStyle::Tree
                                              : textio::ProofStyle::Records;
  Sequent s = textio::parse_sequent(trimmed(inline_or_file(seq_arg)));

  if (calculus == "fdl") {
    if (model_path.empty()) throw InputError("--calculus fdl needs --model");
    if (!s.context().empty())
      throw InputError("fdl proves closed formulas, not sequents with "
                       "hypotheses");
    fdl::FdlModel model = textio::parse_fdl_model(slurp(model_path));
    ProofRef p = fdl::prove(model, fdl::normalize(s.goal()));
    if (!p) {
      std::cout << "UNPROVABLE\n";
      return kFalse;
    }
    std::cout << textio::print_proof(*p, style);
    return kTrue;
  }

  std::vector<Term> universe;
  if (!witnesses.empty()) {
    std::stringstream ss(witnesses);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!trimmed(item).empty()) universe.push_back(parse_term_arg(trimmed(item)));
  }

  if (calculus == "delay") {
    auto res = nd::prove_delay(s, universe);
    if (!res) {
      std::cout << "UNPROVABLE\n";
      return kFalse;
    }
    std::cout << textio::print_proof(*res->proof, style);
    for (const auto& leaf : res->leaves)
      std::cout << "delayed at " << path_string(leaf.location) << " :: "
                << textio::print_sequent(leaf.sequent) << '\n';
    return kTrue;
  }

  calculi::SearchBudget budget;
  if (depth > 0) budget.max_depth = depth;
  budget.witness_universe = std::move(universe);
  calculi::SearchResult res;
  if (calculus == "g") res = calculi::prove_g(s, budget);
  else if (calculus == "k") res = calculi::prove_k(s, budget);
  else if (calculus == "d") res = calculi::prove_d(s, budget);
  else throw InputError("unknown calculus: " + calculus);

  switch (res.outcome) {
    case calculi::Outcome::Proved:
      std::cout << textio::print_proof(*res.proof, style);
      return kTrue;
    case calculi::Outcome::Unprovable:
      std::cout << "UNPROVABLE\n";
      return kFalse;
    default:
      std::cout << "BUDGET\n";
      return kBudget;
  }
}

int run_check(const std::string& calculus, const std::string& file,
              const std::string& model_path, const std::string& system_path,
              bool cuts) {
  auto table = table_for(calculus, model_path, system_path);
  ProofRef p = textio::parse_proof(slurp(file));
  if (auto err = check_proof(*p, *table)) {
    std::cout << err->to_string() << '\n';
    return kFalse;
  }
  std::cout << "OK\n";
  if (cuts) {
    std::vector<std::size_t> path;
    report_cuts(*p, *table, path);
  }
  return kTrue;
}

int run_saturate(const std::string& in, const std::string& out) {
  apds::ApdsSystem base = textio::parse_apds(slurp(in));
  apds::ApdsSystem sat = apds::saturate(base);
  std::string text = textio::print_apds_saturated(sat, base);
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream os(out, std::ios::binary);
    if (!os) throw InputError("cannot write " + out);
    os << text;
  }
  return kTrue;
}

int run_decide(const std::string& in, const std::string& query,
               bool with_proof) {
  apds::ApdsSystem sys = textio::parse_apds(slurp(in));
  auto [pred, word] = textio::parse_word_query(trimmed(query));
  if (!sys.predicates().count(pred))
    throw InputError("unknown predicate: " + pred);
  for (const auto& g : word)
    if (!sys.symbols().count(g)) throw InputError("unknown symbol: " + g);
  bool yes = apds::decide(sys, pred, word);
  std::cout << (yes ? "TRUE" : "FALSE") << '\n';
  if (yes && with_proof) {
    ProofRef p = apds::prove(sys, pred, word);
    if (!p) throw std::logic_error("decide true but no proof");
    std::cout << textio::print_proof(*p);
  }
  return yes ? kTrue : kFalse;
}

int run_fdl_eval(const std::string& model_path, const std::string& arg) {
  fdl::FdlModel model = textio::parse_fdl_model(slurp(model_path));
  FormulaRef f = textio::parse_formula(trimmed(inline_or_file(arg)));
  bool v = fdl::eval(model, fdl::normalize(f));
  std::cout << (v ? "TRUE" : "FALSE") << '\n';
  return v ? kTrue : kFalse;
}

int run_compare(const std::string& atoms_arg, int max_connectives,
                const std::string& file) {
  std::vector<Sequent> inputs;
  if (!file.empty()) {
    std::istringstream in(slurp(file));
    std::string line;
    while (std::getline(in, line)) {
      line = trimmed(line);
      if (line.empty() || line[0] == '#') continue;
      inputs.push_back(textio::parse_sequent(line));
    }
  } else {
    std::vector<std::string> atoms;
    std::stringstream ss(atoms_arg.empty() ? std::string("p,q") : atoms_arg);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!trimmed(item).empty()) atoms.push_back(trimmed(item));
    for (const auto& f : oracle::enumerate_formulas(atoms, max_connectives))
      inputs.emplace_back(std::vector<FormulaRef>{}, f);
  }
  bool disagreement = false;
  for (const auto& s : inputs) {
    calculi::EquivReport r = calculi::equiv_check(s);
    std::cout << calculi::equiv_report_line(s, r) << '\n';
    if (!r.agree()) disagreement = true;
  }
  return disagreement ? kInternal : kTrue;
}

int run_fsa(const std::string& file, const std::string& word_arg,
            const std::string& state) {
  apds::Fsa m = textio::parse_fsa(slurp(file));
  if (!m.states.count(state)) throw InputError("unknown state: " + state);
  std::vector<std::string> word;
  std::stringstream ss(word_arg);
  std::string sym;
  while (ss >> sym) {
    if (sym == "eps") continue;
    if (!m.alphabet.count(sym)) throw InputError("unknown symbol: " + sym);
    word.push_back(sym);
  }
  bool yes = m.accepts(state, word);
  std::cout << (yes ? "ACCEPT" : "REJECT") << '\n';
  return yes ? kTrue : kFalse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"prooftk: saturation, sequent calculi, and proof checking"};
  app.require_subcommand(1);

  std::string calculus = "d", seq, model_path, system_path, witnesses;
  std::string format = isatty(STDOUT_FILENO) ? "tree" : "records";
  int depth = 0;

  auto* prove = app.add_subcommand("prove", "search for a proof");
  prove->add_option("--calculus", calculus)
      ->check(CLI::IsMember({"g", "k", "d", "fdl", "delay"}));
  prove->add_option("--model", model_path);
  prove->add_option("--depth", depth);
  prove->add_option("--witnesses", witnesses);
  prove->add_option("--format", format)
      ->check(CLI::IsMember({"tree", "records"}));
  prove->add_option("sequent", seq)->required();

  std::string check_file;
  bool cuts = false;
  auto* check = app.add_subcommand("check", "validate a proof file");
  check->add_option("--calculus", calculus)
      ->check(CLI::IsMember({"g", "k", "d", "nd", "delay", "fdl", "apds"}));
  check->add_option("--model", model_path);
  check->add_option("--system", system_path);
  check->add_flag("--report-cuts", cuts);
  check->add_option("file", check_file)->required();

  std::string sat_in, sat_out;
  auto* saturate = app.add_subcommand("saturate", "saturate an APDS");
  saturate->add_option("input", sat_in)->required();
  saturate->add_option("-o,--output", sat_out);

  std::string dec_in, dec_query;
  bool dec_proof = false;
  auto* decide = app.add_subcommand("decide", "decide a word query");
  decide->add_option("input", dec_in)->required();
  decide->add_option("query", dec_query)->required();
  decide->add_flag("--proof", dec_proof);

  std::string eval_formula;
  auto* fdl_eval = app.add_subcommand("fdl-eval", "evaluate in a model");
  fdl_eval->add_option("--model", model_path)->required();
  fdl_eval->add_option("formula", eval_formula)->required();

  std::string cmp_atoms, cmp_file;
  int cmp_max = 2;
  auto* compare = app.add_subcommand("compare", "provers vs oracle");
  compare->add_option("--atoms", cmp_atoms);
  compare->add_option("--max-connectives", cmp_max);
  compare->add_option("--file", cmp_file);

  std::string fsa_file, fsa_word, fsa_state;
  auto* fsa = app.add_subcommand("fsa", "run a finite automaton");
  fsa->add_option("--file", fsa_file)->required();
  fsa->add_option("--word", fsa_word);
  fsa->add_option("--state", fsa_state)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kInput;
  }

  try {
    if (prove->parsed())
      return run_prove(calculus, seq, model_path, depth, witnesses, format);
    if (check->parsed())
      return run_check(calculus, check_file, model_path, system_path, cuts);
    if (saturate->parsed()) return run_saturate(sat_in, sat_out);
    if (decide->parsed()) return run_decide(dec_in, dec_query, dec_proof);
    if (fdl_eval->parsed()) return run_fdl_eval(model_path, eval_formula);
    if (compare->parsed()) return run_compare(cmp_atoms, cmp_max, cmp_file);
    if (fsa->parsed()) return run_fsa(fsa_file, fsa_word, fsa_state);
  } catch (const textio::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const fdl::FdlError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const oracle::QuantifiedInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const nd::NonAtomicContext& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kInput;
}

#ifndef PROOFTK_CALCULI_HPP
#define PROOFTK_CALCULI_HPP

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "prooftk/rule_table.hpp"

namespace prooftk::calculi {

// The three constructive sequent calculi.
//   G: Gentzen style, axiom restricted to atoms, explicit contraction.
//   K: Kleene style, contraction folded into contr-=>-left/contr-forall-left.
//   D: Vorob'ev-Hudelmaier-Dyckhoff-Negri style, contr-=>-left replaced by
//      the seven =>-left case rules; introductions under the multiset order.
std::shared_ptr<const RuleTable> g_rule_table();
std::shared_ptr<const RuleTable> k_rule_table();
std::shared_ptr<const RuleTable> d_rule_table();

struct SearchBudget {
  int max_depth = 100000;
  // Terms tried for witness rules; empty means: closed subterms of the
  // input plus one fresh constant.
  std::vector<Term> witness_universe;
  bool history = true;
  // contr-forall-left applications per universal hypothesis per branch.
  int forall_reuse = 3;
};

enum class Outcome { Proved, Unprovable, Budget };

struct SearchResult {
  Outcome outcome = Outcome::Unprovable;
  ProofRef proof;  // set iff outcome == Proved

  bool proved() const { return outcome == Outcome::Proved; }
};

// Backward root-first search. On propositional inputs all three are
// decision procedures: G and K by visited-sequent loop checking (G also
// caps contraction at multiplicity 2), D because every propositional rule
// strictly decreases the multiset measure. With quantifiers the searches
// are budget-bounded semi-decisions.
SearchResult prove_g(const Sequent& s, const SearchBudget& budget = {});
SearchResult prove_k(const Sequent& s, const SearchBudget& budget = {});
SearchResult prove_d(const Sequent& s, const SearchBudget& budget = {});

struct TransformError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Kleene's inversion lemma, as height-nonincreasing proof rewrites on valid
// K proofs. The And variant turns a proof of ctx, A&B |- G into one of
// ctx, A, B |- G; the Exists variant needs the bound variable free for the
// result (target exists x A becomes hypothesis A).
ProofRef invert_k_and(const ProofRef& proof, const FormulaRef& target);
std::pair<ProofRef, ProofRef> invert_k_or(const ProofRef& proof,
                                          const FormulaRef& target);
ProofRef invert_k_exists(const ProofRef& proof, const FormulaRef& target);

// From ctx, C=>D |- G to ctx, D |- G (height nonincreasing).
ProofRef strip_imp_k(const ProofRef& proof, const FormulaRef& target);

// Contraction admissibility: from ctx, A, A |- G to ctx, A |- G.
ProofRef contract_k(const ProofRef& proof, const FormulaRef& target);

// Weakening for D: pointwise context extension, eigenvariables renamed
// when they occur free in the extra hypothesis.
ProofRef weaken_d(const ProofRef& proof, const FormulaRef& extra);

struct EquivReport {
  bool g = false, k = false, d = false, oracle = false;

  bool agree() const { return g == k && k == d && d == oracle; }
};

// Runs all three provers plus the independent brute-force decider on a
// propositional sequent.
EquivReport equiv_check(const Sequent& s);
std::string equiv_report_line(const Sequent& s, const EquivReport& r);

}  // namespace prooftk::calculi

#endif

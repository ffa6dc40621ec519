#ifndef PROOFTK_NATDED_HPP
#define PROOFTK_NATDED_HPP

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "prooftk/rule_table.hpp"

namespace prooftk::nd {

// Constructive Natural Deduction: introductions (axiom included) plus the
// eliminations, each with its leftmost premise major.
std::shared_ptr<const RuleTable> nd_rule_table();

// The pseudo-automaton: the introduction rules and the axiom, plus the
// zero-premise delay rule closing any sequent with a frozen hypothesis.
std::shared_ptr<const RuleTable> pseudo_table();

// An elimination whose major premise ends with the matching introduction
// (and-elim over and-intro, and so on). Axiom-topped eliminations are
// general cuts but not specific ones.
bool is_specific_cut(const Proof& node);

// Wraps the non-atomic antecedent of every implication in the [.] modality,
// leaving the antecedent itself untouched; unfreeze strips the modality
// everywhere. unfreeze(freeze(a)) == a.
FormulaRef freeze(const FormulaRef& f);
FormulaRef unfreeze(const FormulaRef& f);
Sequent unfreeze(const Sequent& s);

struct NonAtomicContext : std::runtime_error {
  NonAtomicContext() : std::runtime_error("context must be atomic") {}
};

struct DelayedLeaf {
  Sequent sequent;
  std::vector<std::size_t> location;  // premise indices from the root
};

struct DelayResult {
  ProofRef proof;
  std::vector<DelayedLeaf> leaves;
};

// Backward search in the pseudo-automaton. The context must contain atomic
// formulas only; the goal is expected frozen. Existential witnesses range
// over the given universe (default: constants of the sequent, or one fresh
// constant). The delay rule fires as soon as a frozen hypothesis appears.
std::optional<DelayResult> prove_delay(const Sequent& s,
                                       std::vector<Term> witnesses = {});

enum class DisjStatus {
  WitnessedLeft,
  WitnessedRight,
  NotApplicable,
  Violation,
  Unsupported,
};

// A decision procedure: true/false when it can decide |- s, nullopt when
// the instance is outside its fragment.
using Decider = std::function<std::optional<bool>(const Sequent&)>;

// For a provable goal of the form B1 | B2, possibly under a forall prefix,
// reports which disjunct is provable. Violation would refute the
// disjunction property and is never expected.
DisjStatus check_disjunction_property(const FormulaRef& goal,
                                      const Decider& prover);

}  // namespace prooftk::nd

#endif

#ifndef PROOFTK_PROOF_HPP
#define PROOFTK_PROOF_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "prooftk/sequent.hpp"

namespace prooftk {

// The data making one rule application concrete: which rule, which context
// formula it acts on, which witness term / eigenvariable it uses.
struct RuleInstance {
  std::string rule_id;
  FormulaRef principal;                  // null when the rule has none
  std::optional<Term> witness;           // the (t/x) term of witness rules
  std::optional<std::string> fresh_var;  // eigenvariable of freshness rules
};

class Proof;
using ProofRef = std::shared_ptr<const Proof>;

// A rule-labelled finite tree. Every node stores its full conclusion; trust
// comes only from check_proof against a calculus table.
class Proof {
 public:
  Proof(RuleInstance rule, Sequent conclusion, std::vector<ProofRef> premises)
      : rule_(std::move(rule)),
        conclusion_(std::move(conclusion)),
        premises_(std::move(premises)) {}

  const RuleInstance& rule() const { return rule_; }
  const Sequent& conclusion() const { return conclusion_; }
  const std::vector<ProofRef>& premises() const { return premises_; }

  int height() const;
  int node_count() const;

 private:
  RuleInstance rule_;
  Sequent conclusion_;
  std::vector<ProofRef> premises_;
};

ProofRef make_proof(RuleInstance rule, Sequent conclusion,
                    std::vector<ProofRef> premises = {});

}  // namespace prooftk

#endif

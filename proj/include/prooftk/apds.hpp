#ifndef PROOFTK_APDS_HPP
#define PROOFTK_APDS_HPP

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "prooftk/rule_table.hpp"

namespace prooftk::apds {

// The four rule shapes over unary predicates:
//   IntroPush:  Q(g x) <- P1(x) ... Pn(x)        n >= 0
//   IntroEps:   Q(eps) <-
//   Elim:       Q(x)   <- P1(g x), P2(x) ... Pn(x)   n >= 1
//   Neutral:    Q(x)   <- P1(x) ... Pn(x)        n >= 0
enum class RuleKind { IntroPush, IntroEps, Elim, Neutral };

struct ApdsRule {
  RuleKind kind = RuleKind::Neutral;
  std::string symbol;  // the gamma of IntroPush/Elim
  std::string head;    // conclusion predicate Q
  std::string elim_first;            // Elim only: the P1 of P1(g x)
  std::vector<std::string> premises;  // canonical: sorted, deduplicated
  std::string name;

  bool is_intro() const {
    return kind == RuleKind::IntroPush || kind == RuleKind::IntroEps;
  }
  // Identity under canonicalization; names are ignored.
  auto key() const {
    return std::tie(kind, symbol, head, elim_first, premises);
  }
};

class ApdsSystem {
 public:
  ApdsSystem() = default;

  const std::set<std::string>& predicates() const { return predicates_; }
  const std::set<std::string>& symbols() const { return symbols_; }
  const std::vector<ApdsRule>& rules() const { return rules_; }

  void declare_predicate(const std::string& p) { predicates_.insert(p); }
  void declare_symbol(const std::string& s) { symbols_.insert(s); }

  // Canonicalizes the premise list, declares referenced names, and inserts
  // unless an equal rule is already present. Returns true if added.
  bool add_rule(ApdsRule rule);

  bool operator==(const ApdsSystem& o) const;

 private:
  std::set<std::string> predicates_;
  std::set<std::string> symbols_;
  std::vector<ApdsRule> rules_;
  std::set<std::tuple<RuleKind, std::string, std::string, std::string,
                      std::vector<std::string>>>
      index_;
};

struct Fsa {
  std::set<std::string> states;
  std::set<std::string> alphabet;
  // state -> symbol -> successor states
  std::map<std::string, std::map<std::string, std::set<std::string>>> trans;
  std::set<std::string> finals;

  bool accepts(const std::string& start,
               const std::vector<std::string>& word) const;
};

// One introduction rule per transition, one eps rule per final state.
ApdsSystem from_fsa(const Fsa& machine);

// Least fixpoint of the three saturation clauses; contains the input rule
// set and is idempotent.
ApdsSystem saturate(const ApdsSystem& system);

struct NotAWord {};

// Decides Q(w) by saturating, dropping non-introduction rules, and running
// the alternating-automaton pass right-to-left over the word.
bool decide(const ApdsSystem& system, const std::string& predicate,
            const std::vector<std::string>& word);

// Reconstructs a cut-free proof in the saturated system, or nullptr.
ProofRef prove(const ApdsSystem& system, const std::string& predicate,
               const std::vector<std::string>& word);

// Bottom-up fixpoint of the ORIGINAL rules, restricted to words of length
// <= max_len. Independent oracle for the decidability theorem.
std::set<std::pair<std::string, std::vector<std::string>>> naive_fixpoint(
    const ApdsSystem& system, int max_len);

// Checker table for proofs in the given (possibly saturated) system.
std::shared_ptr<const RuleTable> rule_table(const ApdsSystem& system);

// Number of worklist passes the last saturate() call needed; exposed for
// the termination-bound assertion in tests.
int last_saturation_passes();

// Upper bound on the number of distinct rules over the system's predicate
// and symbol alphabets.
long rule_space_bound(const ApdsSystem& system);

FormulaRef word_atom(const std::string& predicate,
                     const std::vector<std::string>& word);

}  // namespace prooftk::apds

#endif

#ifndef PROOFTK_RULE_TABLE_HPP
#define PROOFTK_RULE_TABLE_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "prooftk/proof.hpp"

namespace prooftk {

enum class OrderKind { Size, Multiset };

// A calculus: which rules exist, how a single node is validated, which
// premises are major, and whether each rule counts as an introduction.
class RuleTable {
 public:
  virtual ~RuleTable() = default;

  virtual std::string calculus_id() const = 0;
  virtual OrderKind order() const { return OrderKind::Size; }

  // Static intro/non-intro classification of a rule.
  virtual bool is_intro(const std::string& rule_id) const = 0;

  // Indices of the major premises of this node's rule.
  virtual std::vector<std::size_t> major_premises(const Proof& node) const = 0;

  // Local validation of one node (shape of premises, side conditions).
  // Returns a reason on failure, nullopt on success.
  virtual std::optional<std::string> check_node(const Proof& node) const = 0;
};

struct CheckError {
  std::vector<std::size_t> path;  // premise indices from the root
  std::string reason;
  std::string to_string() const;
};

// Validates every node of the tree against the table.
std::optional<CheckError> check_proof(const Proof& proof,
                                      const RuleTable& table);

// True iff every premise is strictly below the conclusion in the calculus's
// order (size order, or multiset order for D).
bool is_introduction(const Proof& node, const RuleTable& table);

// A general cut: a non-introduction node whose every major premise is
// proved by a subproof ending with an introduction rule.
bool is_general_cut(const Proof& node, const RuleTable& table);

bool is_cut_free(const Proof& proof, const RuleTable& table);

bool contains_only_intros(const Proof& proof, const RuleTable& table);

}  // namespace prooftk

#endif

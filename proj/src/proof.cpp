#include "prooftk/proof.hpp"

#include <algorithm>

#include "prooftk/rule_table.hpp"

namespace prooftk {

int Proof::height() const {
  int h = 0;
  for (const auto& p : premises_) h = std::max(h, p->height());
  return 1 + h;
}

int Proof::node_count() const {
  int n = 1;
  for (const auto& p : premises_) n += p->node_count();
  return n;
}

ProofRef make_proof(RuleInstance rule, Sequent conclusion,
                    std::vector<ProofRef> premises) {
  return std::make_shared<Proof>(std::move(rule), std::move(conclusion),
                                 std::move(premises));
}

std::string CheckError::to_string() const {
  std::string s = "at node [";
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(path[i]);
  }
  s += "]: " + reason;
  return s;
}

namespace {

std::optional<CheckError> check_rec(const Proof& node, const RuleTable& table,
                                    std::vector<std::size_t>& path) {
  if (auto reason = table.check_node(node))
    return CheckError{path, *reason};
  for (std::size_t i = 0; i < node.premises().size(); ++i) {
    path.push_back(i);
    if (auto err = check_rec(*node.premises()[i], table, path)) return err;
    path.pop_back();
  }
  return std::nullopt;
}

}  // namespace

std::optional<CheckError> check_proof(const Proof& proof,
                                      const RuleTable& table) {
  std::vector<std::size_t> path;
  return check_rec(proof, table, path);
}

bool is_introduction(const Proof& node, const RuleTable& table) {
  for (const auto& p : node.premises()) {
    bool below = table.order() == OrderKind::Size
                     ? size_order_less(p->conclusion(), node.conclusion())
                     : multiset_order_less(p->conclusion(), node.conclusion());
    if (!below) return false;
  }
  return true;
}

bool is_general_cut(const Proof& node, const RuleTable& table) {
  if (table.is_intro(node.rule().rule_id)) return false;
  for (std::size_t i : table.major_premises(node)) {
    if (i >= node.premises().size()) return false;
    if (!table.is_intro(node.premises()[i]->rule().rule_id)) return false;
  }
  return true;
}

bool is_cut_free(const Proof& proof, const RuleTable& table) {
  if (is_general_cut(proof, table)) return false;
  for (const auto& p : proof.premises())
    if (!is_cut_free(*p, table)) return false;
  return true;
}

bool contains_only_intros(const Proof& proof, const RuleTable& table) {
  if (!table.is_intro(proof.rule().rule_id)) return false;
  for (const auto& p : proof.premises())
    if (!contains_only_intros(*p, table)) return false;
  return true;
}

}  // namespace prooftk

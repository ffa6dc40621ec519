#ifndef PROOFTK_SEQUENT_HPP
#define PROOFTK_SEQUENT_HPP

#include <optional>
#include <string>
#include <vector>

#include "prooftk/formula.hpp"

namespace prooftk {

// A sequent Gamma |- G. The context is a multiset: it is kept sorted under
// the alpha-class order, so two sequents are equal iff their canonical
// renderings coincide, regardless of insertion order. Duplicates are
// significant (contraction matters in G).
class Sequent {
 public:
  Sequent() : goal_(Formula::top()) {}
  Sequent(std::vector<FormulaRef> context, FormulaRef goal);

  const std::vector<FormulaRef>& context() const { return ctx_; }
  const FormulaRef& goal() const { return goal_; }

  bool contains(const FormulaRef& f) const;
  int count(const FormulaRef& f) const;

  Sequent with_added(const FormulaRef& f) const;
  Sequent with_added(const FormulaRef& f, const FormulaRef& g) const;
  // Removes one occurrence; nullopt if absent.
  std::optional<Sequent> with_removed(const FormulaRef& f) const;
  Sequent with_goal(FormulaRef g) const;

  std::set<std::string> free_vars() const;
  std::set<std::string> context_free_vars() const;

  bool operator==(const Sequent& o) const;
  bool operator!=(const Sequent& o) const { return !(*this == o); }
  // Total order for use as a map key / canonical hashing.
  bool operator<(const Sequent& o) const;

  // Total connective/quantifier count over context plus goal.
  int size() const;

 private:
  std::vector<FormulaRef> ctx_;  // sorted by compare()
  FormulaRef goal_;
};

// Strict size order on formulas / sequents.
bool size_order_less(const FormulaRef& a, const FormulaRef& b);
bool size_order_less(const Sequent& a, const Sequent& b);

// Dershowitz-Manna multiset extension of the formula size order, viewing a
// sequent as the multiset of its context formulas plus its goal.
bool multiset_order_less(const Sequent& a, const Sequent& b);

}  // namespace prooftk

#endif

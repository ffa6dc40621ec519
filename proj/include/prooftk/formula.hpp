#ifndef PROOFTK_FORMULA_HPP
#define PROOFTK_FORMULA_HPP

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "prooftk/term.hpp"

namespace prooftk {

class Formula;
using FormulaRef = std::shared_ptr<const Formula>;

enum class Conn {
  Atom,
  NegAtom,  // FDL only: negation pushed to atoms
  Top,
  Bot,
  And,
  Or,
  Imp,
  Forall,
  Exists,
  Frozen,  // the [.] modality of the freeze translation
};

// Immutable formula tree. Structure sharing through FormulaRef; all
// traversals below are pure.
class Formula {
 public:
  Conn kind() const { return kind_; }
  const std::string& name() const { return name_; }  // predicate or bound var
  const std::vector<Term>& args() const { return args_; }
  const FormulaRef& left() const { return left_; }   // also: quantifier body, frozen inner
  const FormulaRef& right() const { return right_; }

  // Number of connectives and quantifiers; Frozen is transparent.
  int size() const { return size_; }

  static FormulaRef atom(std::string pred, std::vector<Term> args = {});
  static FormulaRef neg_atom(std::string pred, std::vector<Term> args = {});
  static FormulaRef top();
  static FormulaRef bot();
  static FormulaRef conj(FormulaRef l, FormulaRef r);
  static FormulaRef disj(FormulaRef l, FormulaRef r);
  static FormulaRef imp(FormulaRef l, FormulaRef r);
  static FormulaRef forall(std::string var, FormulaRef body);
  static FormulaRef exists(std::string var, FormulaRef body);
  static FormulaRef frozen(FormulaRef inner);

 private:
  friend struct FormulaBuilder;
  Formula() = default;

  Conn kind_ = Conn::Top;
  std::string name_;
  std::vector<Term> args_;
  FormulaRef left_, right_;
  int size_ = 0;
};

bool is_atomic(const FormulaRef& f);  // Atom or NegAtom

// Total order on alpha-equivalence classes: bound variables are compared by
// binder index, free variables and constants by name. Returns <0, 0, >0.
int compare(const FormulaRef& a, const FormulaRef& b);
bool alpha_equal(const FormulaRef& a, const FormulaRef& b);

std::set<std::string> free_vars(const FormulaRef& f);
bool is_closed(const FormulaRef& f);
void collect_constants(const FormulaRef& f, std::set<std::string>& out);

// Capture-avoiding substitution of `repl` for the free variable `var`.
FormulaRef subst(const FormulaRef& f, const std::string& var, const Term& repl);

// Renames every free occurrence of variable `from` to variable `to`
// (capture-avoiding, via subst).
FormulaRef rename_var(const FormulaRef& f, const std::string& from,
                      const std::string& to);

// Picks an identifier not occurring (free, bound, or as constant) in any of
// the given formulas, derived from `base`.
std::string fresh_name(const std::string& base,
                       const std::vector<FormulaRef>& avoid);

}  // namespace prooftk

#endif

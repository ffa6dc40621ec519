#ifndef PROOFTK_FDL_HPP
#define PROOFTK_FDL_HPP

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "prooftk/rule_table.hpp"

namespace prooftk::fdl {

// A finite model: ordered domain constants plus relation tables. The
// literal set P is derivable from it: for each ground atom exactly one of
// the atom or its negation is in P.
class FdlModel {
 public:
  FdlModel() = default;
  FdlModel(std::vector<std::string> domain,
           std::map<std::pair<std::string, int>,
                    std::set<std::vector<std::string>>>
               relations);

  const std::vector<std::string>& domain() const { return domain_; }
  const std::map<std::pair<std::string, int>,
                 std::set<std::vector<std::string>>>&
  relations() const {
    return relations_;
  }

  bool has_constant(const std::string& c) const;
  bool has_relation(const std::string& pred, int arity) const;
  bool holds(const std::string& pred,
             const std::vector<std::string>& tuple) const;

  // Membership of a ground literal (Atom or NegAtom) in the set P.
  bool literal_in_p(const FormulaRef& literal) const;

 private:
  std::vector<std::string> domain_;
  std::map<std::pair<std::string, int>, std::set<std::vector<std::string>>>
      relations_;
};

struct FdlError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotClosed : FdlError {
  NotClosed() : FdlError("formula is not closed") {}
};
struct NotFdlNormalized : FdlError {
  explicit NotFdlNormalized(const std::string& what) : FdlError(what) {}
};

// Expands Imp to ~A | B and pushes negation down to atoms (de Morgan).
// Rejects Frozen.
FormulaRef normalize(const FormulaRef& f);

// Tarskian truth value of a closed, normalized formula in the model.
bool eval(const FdlModel& model, const FormulaRef& formula);

// Intro-only context-free proof search; nullptr when unprovable.
// Deterministic: domain order for exists, left branch first for or.
ProofRef prove(const FdlModel& model, const FormulaRef& goal);

// The full two-column checker table (eliminations and axiom included).
std::shared_ptr<const RuleTable> rule_table(const FdlModel& model);

}  // namespace prooftk::fdl

#endif

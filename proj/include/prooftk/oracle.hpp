#ifndef PROOFTK_ORACLE_HPP
#define PROOFTK_ORACLE_HPP

#include <stdexcept>
#include <vector>

#include "prooftk/sequent.hpp"

namespace prooftk::oracle {

struct QuantifiedInput : std::runtime_error {
  QuantifiedInput() : std::runtime_error("oracle handles propositional sequents only") {}
};

// Brute-force intuitionistic provability for propositional sequents:
// exhaustive backward search with contraction built in by capping every
// hypothesis at multiplicity 2 and pruning repeated sequents per branch.
// Deliberately shares nothing with the calculi provers beyond the syntax
// types, so it can serve as independent ground truth.
bool decide_ipl(const Sequent& s);

// Every propositional formula over the given atoms, top, bot, and the
// three binary connectives, with at most max_connectives connectives.
// Deterministic order, no duplicates.
std::vector<FormulaRef> enumerate_formulas(const std::vector<std::string>& atoms,
                                           int max_connectives);

// The count the enumeration must match:
//   C(0) = #atoms + 2,  C(k) = 3 * sum_{i+j=k-1} C(i) * C(j),
// summed over sizes 0..max_connectives.
long long count_formulas(int n_atoms, int max_connectives);

}  // namespace prooftk::oracle

#endif

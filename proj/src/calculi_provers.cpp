#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "prooftk/calculi.hpp"
#include "prooftk/oracle.hpp"
#include "prooftk/textio.hpp"

namespace prooftk::calculi {

namespace {

enum class Calc { G, K, D };

bool term_closed(const Term& t) {
  if (t.kind == Term::Kind::Var) return false;
  return std::all_of(t.args.begin(), t.args.end(), term_closed);
}

void collect_subterms(const Term& t, std::set<Term>& out) {
  out.insert(t);
  for (const auto& a : t.args) collect_subterms(a, out);
}

void collect_atom_terms(const FormulaRef& f, std::set<Term>& out) {
  if (!f) return;
  if (f->kind() == Conn::Atom || f->kind() == Conn::NegAtom) {
    for (const auto& a : f->args()) collect_subterms(a, out);
    return;
  }
  collect_atom_terms(f->left(), out);
  collect_atom_terms(f->right(), out);
}

std::vector<Term> default_universe(const Sequent& s) {
  std::set<Term> all;
  for (const auto& f : s.context()) collect_atom_terms(f, all);
  collect_atom_terms(s.goal(), all);
  std::vector<Term> out;
  for (const auto& t : all)
    if (term_closed(t)) out.push_back(t);
  if (out.empty()) out.push_back(Term::cst("c0"));
  return out;
}

std::vector<FormulaRef> all_formulas(const Sequent& s) {
  std::vector<FormulaRef> fs = s.context();
  fs.push_back(s.goal());
  return fs;
}

bool has_quantifier(const FormulaRef& f) {
  if (!f) return false;
  if (f->kind() == Conn::Forall || f->kind() == Conn::Exists) return true;
  return has_quantifier(f->left()) || has_quantifier(f->right());
}

// Provability only depends on whether a hypothesis occurs zero, one, or
// many times, so loop checking and failure caching work on the sequent with
// every multiplicity capped at two. Exact sequents keep growing through
// rules like imp-right, and would never trigger the loop check.
Sequent capped_key(const Sequent& s) {
  std::vector<FormulaRef> ctx;
  for (const auto& f : s.context()) {
    int n = 0;
    for (const auto& g : ctx)
      if (compare(f, g) == 0) ++n;
    if (n < 2) ctx.push_back(f);
  }
  return Sequent(std::move(ctx), s.goal());
}

struct Prover {
  static constexpr int kNoLoop = std::numeric_limits<int>::max();

  Calc calc;
  SearchBudget budget;
  std::vector<Term> universe;
  std::map<Sequent, int> path;  // sequent -> frame index, current branch
  // contr-forall-left uses on the current branch, per instantiated pair
  std::map<std::pair<Sequent, Term>, int> forall_uses;
  std::map<Sequent, ProofRef> proved;
  std::set<Sequent> failed;  // failures independent of the path
  // Frame index of the shallowest ancestor whose loop cut (or whose budget
  // cap) the current failure leaned on; such failures are path-relative and
  // are not cached. -1 taints every open frame.
  int loop_frame = kNoLoop;
  int frame = 0;
  bool budget_hit = false;

  // Witness candidates: the closed universe plus the free variables of the
  // sequent (eigenvariables introduced higher up).
  std::vector<Term> witnesses(const Sequent& s) const {
    std::vector<Term> out = universe;
    for (const auto& v : s.free_vars()) out.push_back(Term::var(v));
    return out;
  }

  ProofRef prove(const Sequent& s, int depth) {
    if (auto it = proved.find(s); it != proved.end()) return it->second;
    Sequent key = capped_key(s);
    if (failed.count(key)) return nullptr;
    if (depth <= 0) {
      budget_hit = true;
      loop_frame = -1;
      return nullptr;
    }
    if (budget.history) {
      if (auto it = path.find(key); it != path.end()) {
        loop_frame = std::min(loop_frame, it->second);
        return nullptr;
      }
      path.emplace(key, frame);
    }
    int saved = loop_frame;
    loop_frame = kNoLoop;
    ++frame;
    ProofRef out = step(s, depth);
    --frame;
    if (budget.history) path.erase(key);
    if (out) {
      proved.emplace(s, out);
      loop_frame = saved;
    } else {
      if (loop_frame >= frame) {  // no open frame was involved in the cut
        failed.insert(std::move(key));
        loop_frame = kNoLoop;
      }
      loop_frame = std::min(loop_frame, saved);
    }
    return out;
  }

  // Tries one rule: builds each premise proof in turn.
  ProofRef apply(const Sequent& s, RuleInstance rule,
                 const std::vector<Sequent>& premises, int depth) {
    std::vector<ProofRef> sub;
    for (const auto& p : premises) {
      ProofRef pi = prove(p, depth - 1);
      if (!pi) return nullptr;
      sub.push_back(std::move(pi));
    }
    return make_proof(std::move(rule), s, std::move(sub));
  }

  ProofRef step(const Sequent& s, int depth) {
    const FormulaRef& goal = s.goal();

    // Invertible rules first; the leftmost matching hypothesis is taken and
    // the search commits to the rule.
    if (goal->kind() == Conn::Top)
      return make_proof({"top-right", nullptr, {}, {}}, s);
    if (s.contains(Formula::bot()))
      return make_proof({"bot-left", nullptr, {}, {}}, s);
    if (is_atomic(goal) && s.contains(goal))
      return make_proof({"axiom", nullptr, {}, {}}, s);
    for (const auto& h : s.context()) {
      if (h->kind() == Conn::And)
        return apply(s, {"and-left", h, {}, {}},
                     {s.with_removed(h)->with_added(h->left(), h->right())},
                     depth);
      if (h->kind() == Conn::Exists) {
        std::string y = fresh_name(h->name(), all_formulas(s));
        return apply(s, {"exists-left", h, {}, y},
                     {s.with_removed(h)->with_added(
                         subst(h->left(), h->name(), Term::var(y)))},
                     depth);
      }
      if (calc == Calc::D && h->kind() == Conn::Imp) {
        Sequent rest = *s.with_removed(h);
        if (h->left()->kind() == Conn::Top)
          return apply(s, {"imp-left-top", h, {}, {}},
                       {rest.with_added(h->right())}, depth);
        if (is_atomic(h->left()) && rest.contains(h->left()))
          return apply(s, {"imp-left-axiom", h, {}, {}},
                       {rest.with_added(h->right())}, depth);
      }
    }
    if (goal->kind() == Conn::And)
      return apply(s, {"and-right", nullptr, {}, {}},
                   {s.with_goal(goal->left()), s.with_goal(goal->right())},
                   depth);
    if (goal->kind() == Conn::Imp)
      return apply(s, {"imp-right", nullptr, {}, {}},
                   {s.with_added(goal->left()).with_goal(goal->right())},
                   depth);
    if (goal->kind() == Conn::Forall) {
      std::string y = fresh_name(goal->name(), all_formulas(s));
      return apply(s, {"forall-right", nullptr, {}, y},
                   {s.with_goal(subst(goal->left(), goal->name(),
                                      Term::var(y)))},
                   depth);
    }
    for (const auto& h : s.context())
      if (h->kind() == Conn::Or) {
        Sequent rest = *s.with_removed(h);
        return apply(s, {"or-left", h, {}, {}},
                     {rest.with_added(h->left()), rest.with_added(h->right())},
                     depth);
      }

    // Backtracking alternatives.
    if (goal->kind() == Conn::Or) {
      if (ProofRef pi = apply(s, {"or-right-1", nullptr, {}, {}},
                              {s.with_goal(goal->left())}, depth))
        return pi;
      if (ProofRef pi = apply(s, {"or-right-2", nullptr, {}, {}},
                              {s.with_goal(goal->right())}, depth))
        return pi;
    }
    if (goal->kind() == Conn::Exists) {
      for (const Term& t : witnesses(s))
        if (ProofRef pi = apply(s, {"exists-right", nullptr, t, {}},
                                {s.with_goal(subst(goal->left(), goal->name(),
                                                   t))},
                                depth))
          return pi;
      budget_hit = true;  // a witness outside the universe could still work
    }

    for (const auto& h : s.context()) {
      if (h->kind() == Conn::Imp) {
        if (calc == Calc::G) {
          // Contract the implication, then imp-left on the fresh copy; this
          // subsumes a plain imp-left and is the only place the search needs
          // contraction.
          if (ProofRef a = prove(s.with_goal(h->left()), depth - 1)) {
            if (ProofRef b = prove(s.with_added(h->right()), depth - 1)) {
              ProofRef inner = make_proof({"imp-left", h, {}, {}},
                                          s.with_added(h),
                                          {std::move(a), std::move(b)});
              return make_proof({"contraction", h, {}, {}}, s,
                                {std::move(inner)});
            }
          }
        } else if (calc == Calc::K) {
          if (ProofRef pi =
                  apply(s, {"contr-imp-left", h, {}, {}},
                        {s.with_goal(h->left()),
                         s.with_removed(h)->with_added(h->right())},
                        depth))
            return pi;
        } else if (ProofRef pi = d_imp_left(s, h, depth)) {
          return pi;
        }
      }
      if (h->kind() == Conn::Forall) {
        for (const Term& t : witnesses(s)) {
          auto key = std::make_pair(s, t);
          int& uses = forall_uses[key];
          if (uses >= budget.forall_reuse) {
            budget_hit = true;
            loop_frame = -1;  // cap failures are relative to this path
            continue;
          }
          ++uses;
          ProofRef body =
              prove(s.with_added(subst(h->left(), h->name(), t)), depth - 1);
          --uses;
          if (!body) continue;
          if (calc == Calc::G) {
            // contraction followed by forall-left on the fresh copy
            ProofRef inner = make_proof({"forall-left", h, t, {}},
                                        s.with_added(h), {std::move(body)});
            return make_proof({"contraction", h, {}, {}}, s,
                              {std::move(inner)});
          }
          return make_proof({"contr-forall-left", h, t, {}}, s,
                            {std::move(body)});
        }
      }
    }
    return nullptr;
  }

  // The seven =>-left case rules of D, dispatched on the antecedent shape.
  // Top and atomic antecedents were already handled invertibly.
  ProofRef d_imp_left(const Sequent& s, const FormulaRef& h, int depth) {
    const FormulaRef& a = h->left();
    const FormulaRef& b = h->right();
    Sequent rest = *s.with_removed(h);
    Sequent side = rest.with_added(b);
    switch (a->kind()) {
      case Conn::And:
        return apply(s, {"imp-left-and", h, {}, {}},
                     {rest.with_added(Formula::imp(a->left(), b))
                          .with_goal(a->left()),
                      rest.with_added(Formula::imp(a->right(), b))
                          .with_goal(a->right()),
                      side},
                     depth);
      case Conn::Or: {
        Sequent both = rest.with_added(Formula::imp(a->left(), b),
                                       Formula::imp(a->right(), b));
        if (ProofRef pi = apply(s, {"imp-left-or-1", h, {}, {}},
                                {both.with_goal(a->left()), side}, depth))
          return pi;
        return apply(s, {"imp-left-or-2", h, {}, {}},
                     {both.with_goal(a->right()), side}, depth);
      }
      case Conn::Imp:
        return apply(s, {"imp-left-imp", h, {}, {}},
                     {rest.with_added(Formula::imp(a->right(), b), a->left())
                          .with_goal(a->right()),
                      side},
                     depth);
      case Conn::Forall: {
        std::string y = fresh_name(a->name(), all_formulas(s));
        return apply(s, {"imp-left-forall", h, {}, y},
                     {s.with_goal(subst(a->left(), a->name(), Term::var(y))),
                      side},
                     depth);
      }
      case Conn::Exists: {
        for (const Term& t : witnesses(s))
          if (ProofRef pi =
                  apply(s, {"imp-left-exists", h, t, {}},
                        {s.with_goal(subst(a->left(), a->name(), t)), side},
                        depth))
            return pi;
        budget_hit = true;
        return nullptr;
      }
      default:
        return nullptr;
    }
  }
};

SearchResult run(Calc calc, const Sequent& s, const SearchBudget& budget) {
  Prover p;
  p.calc = calc;
  p.budget = budget;
  p.universe = budget.witness_universe.empty() ? default_universe(s)
                                               : budget.witness_universe;
  ProofRef pi = p.prove(s, budget.max_depth);
  SearchResult r;
  if (pi) {
    r.outcome = Outcome::Proved;
    r.proof = std::move(pi);
  } else {
    r.outcome = p.budget_hit ? Outcome::Budget : Outcome::Unprovable;
  }
  return r;
}

}  // namespace

SearchResult prove_g(const Sequent& s, const SearchBudget& budget) {
  return run(Calc::G, s, budget);
}
SearchResult prove_k(const Sequent& s, const SearchBudget& budget) {
  return run(Calc::K, s, budget);
}
SearchResult prove_d(const Sequent& s, const SearchBudget& budget) {
  return run(Calc::D, s, budget);
}

EquivReport equiv_check(const Sequent& s) {
  for (const auto& f : all_formulas(s))
    if (has_quantifier(f)) throw oracle::QuantifiedInput();
  EquivReport r;
  r.g = prove_g(s).proved();
  r.k = prove_k(s).proved();
  r.d = prove_d(s).proved();
  r.oracle = oracle::decide_ipl(s);
  return r;
}

std::string equiv_report_line(const Sequent& s, const EquivReport& r) {
  std::ostringstream os;
  os << textio::print_sequent(s) << '\t' << (r.g ? 1 : 0) << '\t'
     << (r.k ? 1 : 0) << '\t' << (r.d ? 1 : 0) << '\t' << (r.oracle ? 1 : 0);
  return os.str();
}

}  // namespace prooftk::calculi

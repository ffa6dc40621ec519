#include <algorithm>
#include <set>

#include "prooftk/natded.hpp"

namespace prooftk::nd {

namespace {

bool is_elim(const std::string& id) {
  return id == "bot-elim" || id == "and-elim-left" || id == "and-elim-right" ||
         id == "or-elim" || id == "imp-elim" || id == "forall-elim" ||
         id == "exists-elim";
}

bool is_nd_rule(const std::string& id, bool pseudo) {
  if (id == "axiom" || id == "top-intro" || id == "and-intro" ||
      id == "or-intro-left" || id == "or-intro-right" || id == "imp-intro" ||
      id == "forall-intro" || id == "exists-intro")
    return true;
  if (pseudo) return id == "delay";
  return is_elim(id);
}

std::set<std::string> fv_of(const std::vector<FormulaRef>& fs) {
  std::set<std::string> out;
  for (const auto& f : fs) {
    auto v = free_vars(f);
    out.insert(v.begin(), v.end());
  }
  return out;
}

class NdTable : public RuleTable {
 public:
  explicit NdTable(bool pseudo) : pseudo_(pseudo) {}

  std::string calculus_id() const override { return pseudo_ ? "delay" : "nd"; }

  bool is_intro(const std::string& rule_id) const override {
    return is_nd_rule(rule_id, pseudo_) && !is_elim(rule_id);
  }

  std::vector<std::size_t> major_premises(const Proof& node) const override {
    if (is_elim(node.rule().rule_id) && !node.premises().empty()) return {0};
    return {};
  }

  std::optional<std::string> check_node(const Proof& node) const override {
    const std::string& id = node.rule().rule_id;
    if (!is_nd_rule(id, pseudo_))
      return "rule " + id + " not in system " + calculus_id();
    const Sequent& c = node.conclusion();
    const FormulaRef& goal = c.goal();
    const auto& prem = node.premises();
    auto arity = [&](std::size_t n) -> std::optional<std::string> {
      if (prem.size() != n)
        return id + " expects " + std::to_string(n) + " premises";
      return std::nullopt;
    };
    auto sub = [&](std::size_t i) -> const Sequent& {
      return prem[i]->conclusion();
    };
    auto same_ctx = [&](std::size_t i) {
      return sub(i).context() == c.context();
    };

    if (id == "axiom") {
      if (auto e = arity(0)) return e;
      if (!c.contains(goal)) return "axiom: goal not among the hypotheses";
      return std::nullopt;
    }
    if (id == "delay") {
      if (auto e = arity(0)) return e;
      bool frozen = std::any_of(
          c.context().begin(), c.context().end(),
          [](const FormulaRef& f) { return f->kind() == Conn::Frozen; });
      if (!frozen) return "delay: no frozen hypothesis";
      return std::nullopt;
    }
    if (id == "top-intro") {
      if (auto e = arity(0)) return e;
      if (goal->kind() != Conn::Top) return "top-intro: goal is not top";
      return std::nullopt;
    }
    if (id == "and-intro") {
      if (auto e = arity(2)) return e;
      if (goal->kind() != Conn::And) return "and-intro: goal is not and";
      if (!same_ctx(0) || !same_ctx(1) ||
          compare(sub(0).goal(), goal->left()) != 0 ||
          compare(sub(1).goal(), goal->right()) != 0)
        return "and-intro: premise mismatch";
      return std::nullopt;
    }
    if (id == "or-intro-left" || id == "or-intro-right") {
      if (auto e = arity(1)) return e;
      if (goal->kind() != Conn::Or) return id + ": goal is not or";
      const FormulaRef& part =
          id == "or-intro-left" ? goal->left() : goal->right();
      if (!same_ctx(0) || compare(sub(0).goal(), part) != 0)
        return id + ": premise mismatch";
      return std::nullopt;
    }
    if (id == "imp-intro") {
      if (auto e = arity(1)) return e;
      if (goal->kind() != Conn::Imp) return "imp-intro: goal is not imp";
      if (sub(0) != c.with_added(goal->left()).with_goal(goal->right()))
        return "imp-intro: premise mismatch";
      return std::nullopt;
    }
    if (id == "forall-intro") {
      if (auto e = arity(1)) return e;
      if (goal->kind() != Conn::Forall)
        return "forall-intro: goal is not forall";
      if (!node.rule().fresh_var) return "forall-intro: missing eigenvariable";
      const std::string& y = *node.rule().fresh_var;
      auto fv = fv_of(c.context());
      auto gv = free_vars(goal);
      if (fv.count(y) || gv.count(y))
        return "forall-intro: eigenvariable " + y + " not fresh";
      if (sub(0) !=
          c.with_goal(subst(goal->left(), goal->name(), Term::var(y))))
        return "forall-intro: premise mismatch";
      return std::nullopt;
    }
    if (id == "exists-intro") {
      if (auto e = arity(1)) return e;
      if (goal->kind() != Conn::Exists)
        return "exists-intro: goal is not exists";
      if (!node.rule().witness) return "exists-intro: missing witness";
      if (sub(0) != c.with_goal(subst(goal->left(), goal->name(),
                                      *node.rule().witness)))
        return "exists-intro: premise mismatch";
      return std::nullopt;
    }

    if (id == "bot-elim") {
      if (auto e = arity(1)) return e;
      if (!same_ctx(0) || sub(0).goal()->kind() != Conn::Bot)
        return "bot-elim: premise must derive bot in the same context";
      return std::nullopt;
    }
    if (id == "and-elim-left" || id == "and-elim-right") {
      if (auto e = arity(1)) return e;
      const FormulaRef& major = sub(0).goal();
      if (major->kind() != Conn::And)
        return id + ": major premise is not a conjunction";
      const FormulaRef& part =
          id == "and-elim-left" ? major->left() : major->right();
      if (!same_ctx(0) || compare(part, goal) != 0)
        return id + ": premise mismatch";
      return std::nullopt;
    }
    if (id == "or-elim") {
      if (auto e = arity(3)) return e;
      const FormulaRef& major = sub(0).goal();
      if (major->kind() != Conn::Or)
        return "or-elim: major premise is not a disjunction";
      if (!same_ctx(0) ||
          sub(1) != c.with_added(major->left()) ||
          sub(2) != c.with_added(major->right()))
        return "or-elim: premise mismatch";
      return std::nullopt;
    }
    if (id == "imp-elim") {
      if (auto e = arity(2)) return e;
      const FormulaRef& major = sub(0).goal();
      if (major->kind() != Conn::Imp)
        return "imp-elim: major premise is not an implication";
      if (!same_ctx(0) || !same_ctx(1) ||
          compare(sub(1).goal(), major->left()) != 0 ||
          compare(major->right(), goal) != 0)
        return "imp-elim: premise mismatch";
      return std::nullopt;
    }
    if (id == "forall-elim") {
      if (auto e = arity(1)) return e;
      const FormulaRef& major = sub(0).goal();
      if (major->kind() != Conn::Forall)
        return "forall-elim: major premise is not universal";
      if (!node.rule().witness) return "forall-elim: missing witness";
      if (!same_ctx(0) ||
          compare(subst(major->left(), major->name(), *node.rule().witness),
                  goal) != 0)
        return "forall-elim: premise mismatch";
      return std::nullopt;
    }
    if (id == "exists-elim") {
      if (auto e = arity(2)) return e;
      const FormulaRef& major = sub(0).goal();
      if (major->kind() != Conn::Exists)
        return "exists-elim: major premise is not existential";
      if (!node.rule().fresh_var) return "exists-elim: missing eigenvariable";
      const std::string& y = *node.rule().fresh_var;
      auto fv = fv_of(c.context());
      auto gv = free_vars(goal);
      auto mv = free_vars(major);
      if (fv.count(y) || gv.count(y) || mv.count(y))
        return "exists-elim: eigenvariable " + y + " not fresh";
      if (!same_ctx(0) ||
          sub(1) != c.with_added(subst(major->left(), major->name(),
                                       Term::var(y))))
        return "exists-elim: premise mismatch";
      return std::nullopt;
    }
    return "unknown rule " + id;
  }

 private:
  bool pseudo_;
};

}  // namespace

std::shared_ptr<const RuleTable> nd_rule_table() {
  static auto t = std::make_shared<NdTable>(false);
  return t;
}

std::shared_ptr<const RuleTable> pseudo_table() {
  static auto t = std::make_shared<NdTable>(true);
  return t;
}

bool is_specific_cut(const Proof& node) {
  const std::string& id = node.rule().rule_id;
  if (!is_elim(id) || node.premises().empty()) return false;
  const std::string& top = node.premises()[0]->rule().rule_id;
  if (id == "and-elim-left" || id == "and-elim-right")
    return top == "and-intro";
  if (id == "or-elim")
    return top == "or-intro-left" || top == "or-intro-right";
  if (id == "imp-elim") return top == "imp-intro";
  if (id == "forall-elim") return top == "forall-intro";
  if (id == "exists-elim") return top == "exists-intro";
  return false;  // bot-elim has no matching introduction
}

FormulaRef freeze(const FormulaRef& f) {
  switch (f->kind()) {
    case Conn::Imp: {
      FormulaRef a = f->left();
      // non-atomic antecedents go under the modality, untouched inside
      if (!is_atomic(a)) a = Formula::frozen(a);
      return Formula::imp(a, freeze(f->right()));
    }
    case Conn::And:
      return Formula::conj(freeze(f->left()), freeze(f->right()));
    case Conn::Or:
      return Formula::disj(freeze(f->left()), freeze(f->right()));
    case Conn::Forall:
      return Formula::forall(f->name(), freeze(f->left()));
    case Conn::Exists:
      return Formula::exists(f->name(), freeze(f->left()));
    default:
      return f;
  }
}

FormulaRef unfreeze(const FormulaRef& f) {
  switch (f->kind()) {
    case Conn::Frozen:
      return unfreeze(f->left());
    case Conn::Imp:
      return Formula::imp(unfreeze(f->left()), unfreeze(f->right()));
    case Conn::And:
      return Formula::conj(unfreeze(f->left()), unfreeze(f->right()));
    case Conn::Or:
      return Formula::disj(unfreeze(f->left()), unfreeze(f->right()));
    case Conn::Forall:
      return Formula::forall(f->name(), unfreeze(f->left()));
    case Conn::Exists:
      return Formula::exists(f->name(), unfreeze(f->left()));
    default:
      return f;
  }
}

Sequent unfreeze(const Sequent& s) {
  std::vector<FormulaRef> ctx;
  for (const auto& f : s.context()) ctx.push_back(unfreeze(f));
  return Sequent(std::move(ctx), unfreeze(s.goal()));
}

namespace {

struct DelaySearch {
  std::vector<Term> universe;
  std::vector<DelayedLeaf> leaves;
  std::vector<std::size_t> where;

  ProofRef search(const Sequent& s) {
    // delay closes the branch the moment a frozen hypothesis shows up
    for (const auto& h : s.context()) {
      if (h->kind() == Conn::Frozen) {
        leaves.push_back({s, where});
        return make_proof({"delay", nullptr, {}, {}}, s);
      }
      if (!is_atomic(h)) throw NonAtomicContext();
    }
    if (s.contains(s.goal()))
      return make_proof({"axiom", nullptr, {}, {}}, s);
    const FormulaRef& goal = s.goal();
    switch (goal->kind()) {
      case Conn::Top:
        return make_proof({"top-intro", nullptr, {}, {}}, s);
      case Conn::And: {
        std::size_t mark = leaves.size();
        where.push_back(0);
        ProofRef l = search(s.with_goal(goal->left()));
        where.back() = 1;
        ProofRef r = l ? search(s.with_goal(goal->right())) : nullptr;
        where.pop_back();
        if (l && r)
          return make_proof({"and-intro", nullptr, {}, {}}, s,
                            {std::move(l), std::move(r)});
        leaves.resize(mark);
        return nullptr;
      }
      case Conn::Or: {
        std::size_t mark = leaves.size();
        where.push_back(0);
        if (ProofRef l = search(s.with_goal(goal->left()))) {
          where.pop_back();
          return make_proof({"or-intro-left", nullptr, {}, {}}, s,
                            {std::move(l)});
        }
        leaves.resize(mark);
        if (ProofRef r = search(s.with_goal(goal->right()))) {
          where.pop_back();
          return make_proof({"or-intro-right", nullptr, {}, {}}, s,
                            {std::move(r)});
        }
        where.pop_back();
        leaves.resize(mark);
        return nullptr;
      }
      case Conn::Imp: {
        std::size_t mark = leaves.size();
        where.push_back(0);
        ProofRef body =
            search(s.with_added(goal->left()).with_goal(goal->right()));
        where.pop_back();
        if (body)
          return make_proof({"imp-intro", nullptr, {}, {}}, s,
                            {std::move(body)});
        leaves.resize(mark);
        return nullptr;
      }
      case Conn::Forall: {
        std::vector<FormulaRef> avoid = s.context();
        avoid.push_back(goal);
        std::string y = fresh_name(goal->name(), avoid);
        std::size_t mark = leaves.size();
        where.push_back(0);
        ProofRef body =
            search(s.with_goal(subst(goal->left(), goal->name(),
                                     Term::var(y))));
        where.pop_back();
        if (body)
          return make_proof({"forall-intro", nullptr, {}, y}, s,
                            {std::move(body)});
        leaves.resize(mark);
        return nullptr;
      }
      case Conn::Exists: {
        for (const Term& t : universe) {
          std::size_t mark = leaves.size();
          where.push_back(0);
          ProofRef body = search(
              s.with_goal(subst(goal->left(), goal->name(), t)));
          where.pop_back();
          if (body)
            return make_proof({"exists-intro", nullptr, t, {}}, s,
                              {std::move(body)});
          leaves.resize(mark);
        }
        return nullptr;
      }
      default:
        return nullptr;
    }
  }
};

}  // namespace

std::optional<DelayResult> prove_delay(const Sequent& s,
                                       std::vector<Term> witnesses) {
  for (const auto& h : s.context())
    if (!is_atomic(h) && h->kind() != Conn::Frozen) throw NonAtomicContext();
  if (witnesses.empty()) {
    std::set<std::string> cs;
    for (const auto& f : s.context()) collect_constants(f, cs);
    collect_constants(s.goal(), cs);
    for (const auto& c : cs) witnesses.push_back(Term::cst(c));
    if (witnesses.empty()) witnesses.push_back(Term::cst("c0"));
  }
  DelaySearch search;
  search.universe = std::move(witnesses);
  ProofRef pi = search.search(s);
  if (!pi) return std::nullopt;
  return DelayResult{std::move(pi), std::move(search.leaves)};
}

DisjStatus check_disjunction_property(const FormulaRef& goal,
                                      const Decider& prover) {
  FormulaRef g = goal;
  int fresh = 0;
  while (g->kind() == Conn::Forall) {
    g = subst(g->left(), g->name(), Term::cst("d" + std::to_string(fresh++)));
  }
  if (g->kind() != Conn::Or) return DisjStatus::NotApplicable;
  auto left = prover(Sequent({}, g->left()));
  if (!left) return DisjStatus::Unsupported;
  if (*left) return DisjStatus::WitnessedLeft;
  auto right = prover(Sequent({}, g->right()));
  if (!right) return DisjStatus::Unsupported;
  return *right ? DisjStatus::WitnessedRight : DisjStatus::Violation;
}

}  // namespace prooftk::nd

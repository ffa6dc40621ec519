#include <algorithm>
#include <set>

#include "prooftk/calculi.hpp"

namespace prooftk::calculi {

namespace {

enum class Calc { G, K, D };

bool in_calc(Calc c, const std::string& id) {
  static const std::set<std::string> common = {
      "axiom",    "top-right",  "bot-left",   "and-left",
      "and-right", "or-left",   "or-right-1", "or-right-2",
      "imp-right", "forall-right", "exists-left", "exists-right"};
  if (common.count(id)) return true;
  switch (c) {
    case Calc::G:
      return id == "contraction" || id == "imp-left" || id == "forall-left";
    case Calc::K:
      return id == "contr-imp-left" || id == "contr-forall-left";
    case Calc::D:
      return id == "contr-forall-left" || id == "imp-left-axiom" ||
             id == "imp-left-top" || id == "imp-left-and" ||
             id == "imp-left-or-1" || id == "imp-left-or-2" ||
             id == "imp-left-imp" || id == "imp-left-forall" ||
             id == "imp-left-exists";
  }
  return false;
}

bool nonintro(Calc c, const std::string& id) {
  switch (c) {
    case Calc::G: return id == "contraction";
    case Calc::K: return id == "contr-imp-left" || id == "contr-forall-left";
    case Calc::D: return id == "contr-forall-left";
  }
  return false;
}

std::set<std::string> fv_of(const std::vector<FormulaRef>& fs) {
  std::set<std::string> out;
  for (const auto& f : fs) {
    auto v = free_vars(f);
    out.insert(v.begin(), v.end());
  }
  return out;
}

class GkdTable : public RuleTable {
 public:
  explicit GkdTable(Calc c) : calc_(c) {}

  std::string calculus_id() const override {
    switch (calc_) {
      case Calc::G: return "g";
      case Calc::K: return "k";
      case Calc::D: return "d";
    }
    return "?";
  }

  OrderKind order() const override {
    return calc_ == Calc::D ? OrderKind::Multiset : OrderKind::Size;
  }

  bool is_intro(const std::string& rule_id) const override {
    return in_calc(calc_, rule_id) && !nonintro(calc_, rule_id);
  }

  std::vector<std::size_t> major_premises(const Proof& node) const override {
    // The non-introduction rules all have their leftmost premise major:
    // contraction's contracted premise, contr-=>-left's implication premise,
    // contr-forall-left's instantiated premise.
    if (!nonintro(calc_, node.rule().rule_id)) return {};
    return node.premises().empty() ? std::vector<std::size_t>{}
                                   : std::vector<std::size_t>{0};
  }

  std::optional<std::string> check_node(const Proof& node) const override {
    const std::string& id = node.rule().rule_id;
    if (!in_calc(calc_, id)) return "rule " + id + " not in system " +
                                    calculus_id();
    const Sequent& c = node.conclusion();
    const FormulaRef& goal = c.goal();
    const FormulaRef& prin = node.rule().principal;
    const auto& prem = node.premises();
    auto arity = [&](std::size_t n) -> std::optional<std::string> {
      if (prem.size() != n)
        return id + " expects " + std::to_string(n) + " premises";
      return std::nullopt;
    };
    auto need_principal =
        [&](Conn kind, const char* what) -> std::optional<std::string> {
      if (!prin) return id + ": missing principal formula";
      if (prin->kind() != kind)
        return id + ": principal is not " + std::string(what);
      if (!c.contains(prin)) return id + ": principal not in context";
      return std::nullopt;
    };
    auto is = [&](std::size_t i, const Sequent& want) {
      return prem[i]->conclusion() == want;
    };

    if (id == "axiom") {
      if (auto e = arity(0)) return e;
      if (!is_atomic(goal)) return "axiom: goal is not atomic";
      if (!c.contains(goal)) return "axiom: goal not in context";
      return std::nullopt;
    }
    if (id == "top-right") {
      if (auto e = arity(0)) return e;
      if (goal->kind() != Conn::Top) return "top-right: goal is not top";
      return std::nullopt;
    }
    if (id == "bot-left") {
      if (auto e = arity(0)) return e;
      if (!c.contains(Formula::bot())) return "bot-left: no bot hypothesis";
      return std::nullopt;
    }
    if (id == "and-left") {
      if (auto e = arity(1)) return e;
      if (auto e = need_principal(Conn::And, "a conjunction")) return e;
      Sequent want = c.with_removed(prin)->with_added(prin->left(),
                                                      prin->right());
      if (!is(0, want)) return "and-left: premise mismatch";
      return std::nullopt;
    }
    if (id == "and-right") {
      if (auto e = arity(2)) return e;
      if (goal->kind() != Conn::And) return "and-right: goal is not and";
      if (!is(0, c.with_goal(goal->left())) ||
          !is(1, c.with_goal(goal->right())))
        return "and-right: premise mismatch";
      return std::nullopt;
    }
    if (id == "or-left") {
      if (auto e = arity(2)) return e;
      if (auto e = need_principal(Conn::Or, "a disjunction")) return e;
      Sequent rest = *c.with_removed(prin);
      if (!is(0, rest.with_added(prin->left())) ||
          !is(1, rest.with_added(prin->right())))
        return "or-left: premise mismatch";
      return std::nullopt;
    }
    if (id == "or-right-1" || id == "or-right-2") {
      if (auto e = arity(1)) return e;
      if (goal->kind() != Conn::Or) return id + ": goal is not or";
      const FormulaRef& part =
          id == "or-right-1" ? goal->left() : goal->right();
      if (!is(0, c.with_goal(part))) return id + ": premise mismatch";
      return std::nullopt;
    }
    if (id == "imp-right") {
      if (auto e = arity(1)) return e;
      if (goal->kind() != Conn::Imp) return "imp-right: goal is not imp";
      if (!is(0, c.with_added(goal->left()).with_goal(goal->right())))
        return "imp-right: premise mismatch";
      return std::nullopt;
    }
    if (id == "forall-right") {
      if (auto e = arity(1)) return e;
      if (goal->kind() != Conn::Forall)
        return "forall-right: goal is not forall";
      if (!node.rule().fresh_var) return "forall-right: missing eigenvariable";
      const std::string& y = *node.rule().fresh_var;
      auto fv = fv_of(c.context());
      auto gv = free_vars(goal);
      if (fv.count(y) || gv.count(y))
        return "forall-right: eigenvariable " + y + " not fresh";
      if (!is(0, c.with_goal(subst(goal->left(), goal->name(),
                                   Term::var(y)))))
        return "forall-right: premise mismatch";
      return std::nullopt;
    }
    if (id == "exists-left") {
      if (auto e = arity(1)) return e;
      if (auto e = need_principal(Conn::Exists, "an existential")) return e;
      if (!node.rule().fresh_var) return "exists-left: missing eigenvariable";
      const std::string& y = *node.rule().fresh_var;
      Sequent rest = *c.with_removed(prin);
      auto fv = fv_of(rest.context());
      auto gv = free_vars(goal);
      auto pv = free_vars(prin);
      if (fv.count(y) || gv.count(y) || pv.count(y))
        return "exists-left: eigenvariable " + y + " not fresh";
      if (!is(0, rest.with_added(subst(prin->left(), prin->name(),
                                       Term::var(y)))))
        return "exists-left: premise mismatch";
      return std::nullopt;
    }
    if (id == "exists-right") {
      if (auto e = arity(1)) return e;
      if (goal->kind() != Conn::Exists)
        return "exists-right: goal is not exists";
      if (!node.rule().witness) return "exists-right: missing witness";
      if (!is(0, c.with_goal(subst(goal->left(), goal->name(),
                                   *node.rule().witness))))
        return "exists-right: premise mismatch";
      return std::nullopt;
    }

    if (id == "contraction") {
      if (auto e = arity(1)) return e;
      if (!prin) return "contraction: missing principal formula";
      if (!c.contains(prin)) return "contraction: principal not in context";
      if (!is(0, c.with_added(prin))) return "contraction: premise mismatch";
      return std::nullopt;
    }
    if (id == "imp-left") {
      if (auto e = arity(2)) return e;
      if (auto e = need_principal(Conn::Imp, "an implication")) return e;
      Sequent rest = *c.with_removed(prin);
      if (!is(0, rest.with_goal(prin->left())) ||
          !is(1, rest.with_added(prin->right())))
        return "imp-left: premise mismatch";
      return std::nullopt;
    }
    if (id == "forall-left") {
      if (auto e = arity(1)) return e;
      if (auto e = need_principal(Conn::Forall, "a universal")) return e;
      if (!node.rule().witness) return "forall-left: missing witness";
      Sequent rest = *c.with_removed(prin);
      if (!is(0, rest.with_added(subst(prin->left(), prin->name(),
                                       *node.rule().witness))))
        return "forall-left: premise mismatch";
      return std::nullopt;
    }

    if (id == "contr-imp-left") {
      if (auto e = arity(2)) return e;
      if (auto e = need_principal(Conn::Imp, "an implication")) return e;
      if (!is(0, c.with_goal(prin->left())))
        return "contr-imp-left: first premise mismatch";
      if (!is(1, c.with_removed(prin)->with_added(prin->right())))
        return "contr-imp-left: second premise mismatch";
      return std::nullopt;
    }
    if (id == "contr-forall-left") {
      if (auto e = arity(1)) return e;
      if (auto e = need_principal(Conn::Forall, "a universal")) return e;
      if (!node.rule().witness) return "contr-forall-left: missing witness";
      if (!is(0, c.with_added(subst(prin->left(), prin->name(),
                                    *node.rule().witness))))
        return "contr-forall-left: premise mismatch";
      return std::nullopt;
    }

    // The seven =>-left case rules of D; the principal is A => B with the
    // case determined by the shape of A.
    if (id.rfind("imp-left-", 0) == 0) {
      if (auto e = need_principal(Conn::Imp, "an implication")) return e;
      const FormulaRef& a = prin->left();
      const FormulaRef& b = prin->right();
      Sequent rest = *c.with_removed(prin);
      Sequent side = rest.with_added(b);  // the shared second premise
      if (id == "imp-left-axiom") {
        if (auto e = arity(1)) return e;
        if (!is_atomic(a)) return "imp-left-axiom: antecedent not atomic";
        if (!rest.contains(a))
          return "imp-left-axiom: antecedent hypothesis missing";
        if (!is(0, side)) return "imp-left-axiom: premise mismatch";
        return std::nullopt;
      }
      if (id == "imp-left-top") {
        if (auto e = arity(1)) return e;
        if (a->kind() != Conn::Top) return "imp-left-top: antecedent not top";
        if (!is(0, side)) return "imp-left-top: premise mismatch";
        return std::nullopt;
      }
      if (id == "imp-left-and") {
        if (auto e = arity(3)) return e;
        if (a->kind() != Conn::And) return "imp-left-and: antecedent not and";
        if (!is(0, rest.with_added(Formula::imp(a->left(), b))
                       .with_goal(a->left())) ||
            !is(1, rest.with_added(Formula::imp(a->right(), b))
                       .with_goal(a->right())) ||
            !is(2, side))
          return "imp-left-and: premise mismatch";
        return std::nullopt;
      }
      if (id == "imp-left-or-1" || id == "imp-left-or-2") {
        if (auto e = arity(2)) return e;
        if (a->kind() != Conn::Or) return id + ": antecedent not or";
        const FormulaRef& pick =
            id == "imp-left-or-1" ? a->left() : a->right();
        if (!is(0, rest.with_added(Formula::imp(a->left(), b),
                                   Formula::imp(a->right(), b))
                       .with_goal(pick)) ||
            !is(1, side))
          return id + ": premise mismatch";
        return std::nullopt;
      }
      if (id == "imp-left-imp") {
        if (auto e = arity(2)) return e;
        if (a->kind() != Conn::Imp) return "imp-left-imp: antecedent not imp";
        if (!is(0, rest.with_added(Formula::imp(a->right(), b), a->left())
                       .with_goal(a->right())) ||
            !is(1, side))
          return "imp-left-imp: premise mismatch";
        return std::nullopt;
      }
      if (id == "imp-left-forall") {
        if (auto e = arity(2)) return e;
        if (a->kind() != Conn::Forall)
          return "imp-left-forall: antecedent not forall";
        if (!node.rule().fresh_var)
          return "imp-left-forall: missing eigenvariable";
        const std::string& y = *node.rule().fresh_var;
        auto fv = fv_of(rest.context());
        auto bv = free_vars(b);
        auto pv = free_vars(prin);
        if (fv.count(y) || bv.count(y) || pv.count(y))
          return "imp-left-forall: eigenvariable " + y + " not fresh";
        if (!is(0, c.with_goal(subst(a->left(), a->name(), Term::var(y)))) ||
            !is(1, side))
          return "imp-left-forall: premise mismatch";
        return std::nullopt;
      }
      if (id == "imp-left-exists") {
        if (auto e = arity(2)) return e;
        if (a->kind() != Conn::Exists)
          return "imp-left-exists: antecedent not exists";
        if (!node.rule().witness) return "imp-left-exists: missing witness";
        if (!is(0, c.with_goal(subst(a->left(), a->name(),
                                     *node.rule().witness))) ||
            !is(1, side))
          return "imp-left-exists: premise mismatch";
        return std::nullopt;
      }
    }
    return "unknown rule " + id;
  }

 private:
  Calc calc_;
};

}  // namespace

std::shared_ptr<const RuleTable> g_rule_table() {
  static auto t = std::make_shared<GkdTable>(Calc::G);
  return t;
}
std::shared_ptr<const RuleTable> k_rule_table() {
  static auto t = std::make_shared<GkdTable>(Calc::K);
  return t;
}
std::shared_ptr<const RuleTable> d_rule_table() {
  static auto t = std::make_shared<GkdTable>(Calc::D);
  return t;
}

}  // namespace prooftk::calculi

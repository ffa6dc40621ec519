#include "prooftk/fdl.hpp"

#include <algorithm>
#include <functional>

namespace prooftk::fdl {

FdlModel::FdlModel(std::vector<std::string> domain,
                   std::map<std::pair<std::string, int>,
                            std::set<std::vector<std::string>>>
                       relations)
    : domain_(std::move(domain)), relations_(std::move(relations)) {
  if (domain_.empty()) throw FdlError("empty domain");
  for (const auto& [key, tuples] : relations_)
    for (const auto& tuple : tuples) {
      if (static_cast<int>(tuple.size()) != key.second)
        throw FdlError("arity mismatch in relation " + key.first);
      for (const auto& c : tuple)
        if (!has_constant(c))
          throw FdlError("constant " + c + " not in domain");
    }
}

bool FdlModel::has_constant(const std::string& c) const {
  return std::find(domain_.begin(), domain_.end(), c) != domain_.end();
}

bool FdlModel::has_relation(const std::string& pred, int arity) const {
  return relations_.count({pred, arity}) != 0;
}

bool FdlModel::holds(const std::string& pred,
                     const std::vector<std::string>& tuple) const {
  auto it = relations_.find({pred, static_cast<int>(tuple.size())});
  return it != relations_.end() && it->second.count(tuple) != 0;
}

namespace {

// Extracts the constant tuple of a ground atom; rejects variables and
// function applications (the language has constants only).
std::optional<std::vector<std::string>> ground_tuple(const FormulaRef& f) {
  std::vector<std::string> tuple;
  for (const Term& t : f->args()) {
    if (t.kind != Term::Kind::Const) return std::nullopt;
    tuple.push_back(t.name);
  }
  return tuple;
}

}  // namespace

bool FdlModel::literal_in_p(const FormulaRef& literal) const {
  auto tuple = ground_tuple(literal);
  if (!tuple) return false;
  for (const auto& c : *tuple)
    if (!has_constant(c)) return false;
  bool truth = holds(literal->name(), *tuple);
  if (literal->kind() == Conn::Atom) return truth;
  if (literal->kind() == Conn::NegAtom) return !truth;
  return false;
}

namespace {

FormulaRef push_neg(const FormulaRef& f);

FormulaRef norm(const FormulaRef& f) {
  switch (f->kind()) {
    case Conn::Atom:
    case Conn::NegAtom:
    case Conn::Top:
    case Conn::Bot:
      return f;
    case Conn::And: return Formula::conj(norm(f->left()), norm(f->right()));
    case Conn::Or: return Formula::disj(norm(f->left()), norm(f->right()));
    case Conn::Imp:
      return Formula::disj(push_neg(f->left()), norm(f->right()));
    case Conn::Forall: return Formula::forall(f->name(), norm(f->left()));
    case Conn::Exists: return Formula::exists(f->name(), norm(f->left()));
    case Conn::Frozen:
      throw NotFdlNormalized("frozen formulas have no place here");
  }
  throw NotFdlNormalized("unknown connective");
}

FormulaRef push_neg(const FormulaRef& f) {
  switch (f->kind()) {
    case Conn::Atom: return Formula::neg_atom(f->name(), f->args());
    case Conn::NegAtom: return Formula::atom(f->name(), f->args());
    case Conn::Top: return Formula::bot();
    case Conn::Bot: return Formula::top();
    case Conn::And:
      return Formula::disj(push_neg(f->left()), push_neg(f->right()));
    case Conn::Or:
      return Formula::conj(push_neg(f->left()), push_neg(f->right()));
    case Conn::Imp:
      return Formula::conj(norm(f->left()), push_neg(f->right()));
    case Conn::Forall: return Formula::exists(f->name(), push_neg(f->left()));
    case Conn::Exists: return Formula::forall(f->name(), push_neg(f->left()));
    case Conn::Frozen:
      throw NotFdlNormalized("frozen formulas have no place here");
  }
  throw NotFdlNormalized("unknown connective");
}

void require_input(const FdlModel& model, const FormulaRef& f) {
  if (!is_closed(f)) throw NotClosed();
  std::set<std::string> consts;
  collect_constants(f, consts);
  for (const auto& c : consts)
    if (!model.has_constant(c))
      throw FdlError("constant " + c + " not in domain");
}

void require_normalized(const FormulaRef& f) {
  switch (f->kind()) {
    case Conn::Atom:
    case Conn::NegAtom:
    case Conn::Top:
    case Conn::Bot:
      return;
    case Conn::And:
    case Conn::Or:
      require_normalized(f->left());
      require_normalized(f->right());
      return;
    case Conn::Forall:
    case Conn::Exists:
      require_normalized(f->left());
      return;
    case Conn::Imp:
      throw NotFdlNormalized("implication must be expanded");
    case Conn::Frozen:
      throw NotFdlNormalized("frozen formulas have no place here");
  }
}

}  // namespace

FormulaRef normalize(const FormulaRef& f) { return norm(f); }

bool eval(const FdlModel& model, const FormulaRef& formula) {
  require_input(model, formula);
  require_normalized(formula);
  std::function<bool(const FormulaRef&)> go = [&](const FormulaRef& f) -> bool {
    switch (f->kind()) {
      case Conn::Atom:
      case Conn::NegAtom:
        return model.literal_in_p(f);
      case Conn::Top: return true;
      case Conn::Bot: return false;
      case Conn::And: return go(f->left()) && go(f->right());
      case Conn::Or: return go(f->left()) || go(f->right());
      case Conn::Forall:
        for (const auto& c : model.domain())
          if (!go(subst(f->left(), f->name(), Term::cst(c)))) return false;
        return true;
      case Conn::Exists:
        for (const auto& c : model.domain())
          if (go(subst(f->left(), f->name(), Term::cst(c)))) return true;
        return false;
      default: return false;
    }
  };
  return go(formula);
}

namespace {

struct CmpFormula {
  bool operator()(const FormulaRef& a, const FormulaRef& b) const {
    return compare(a, b) < 0;
  }
};

class FdlProver {
 public:
  explicit FdlProver(const FdlModel& model) : model_(model) {}

  ProofRef prove(const FormulaRef& f) {
    auto it = memo_.find(f);
    if (it != memo_.end()) return it->second;
    ProofRef result = search(f);
    memo_.emplace(f, result);
    return result;
  }

 private:
  ProofRef leaf(const char* rule, const FormulaRef& goal) {
    return make_proof({rule, nullptr, {}, {}}, Sequent({}, goal));
  }

  ProofRef search(const FormulaRef& f) {
    switch (f->kind()) {
      case Conn::Atom:
      case Conn::NegAtom:
        return model_.literal_in_p(f) ? leaf("atom", f) : nullptr;
      case Conn::Top:
        return leaf("top-intro", f);
      case Conn::Bot:
        return nullptr;
      case Conn::And: {
        ProofRef l = prove(f->left());
        if (!l) return nullptr;
        ProofRef r = prove(f->right());
        if (!r) return nullptr;
        return make_proof({"and-intro", nullptr, {}, {}}, Sequent({}, f),
                          {l, r});
      }
      case Conn::Or: {
        if (ProofRef l = prove(f->left()))
          return make_proof({"or-intro-left", nullptr, {}, {}}, Sequent({}, f),
                            {l});
        if (ProofRef r = prove(f->right()))
          return make_proof({"or-intro-right", nullptr, {}, {}},
                            Sequent({}, f), {r});
        return nullptr;
      }
      case Conn::Forall: {
        std::vector<ProofRef> premises;
        for (const auto& c : model_.domain()) {
          ProofRef p = prove(subst(f->left(), f->name(), Term::cst(c)));
          if (!p) return nullptr;
          premises.push_back(p);
        }
        return make_proof({"forall-intro", nullptr, {}, {}}, Sequent({}, f),
                          std::move(premises));
      }
      case Conn::Exists: {
        for (const auto& c : model_.domain()) {
          if (ProofRef p = prove(subst(f->left(), f->name(), Term::cst(c))))
            return make_proof({"exists-intro", nullptr, Term::cst(c), {}},
                              Sequent({}, f), {p});
        }
        return nullptr;
      }
      default:
        return nullptr;
    }
  }

  const FdlModel& model_;
  std::map<FormulaRef, ProofRef, CmpFormula> memo_;
};

}  // namespace

ProofRef prove(const FdlModel& model, const FormulaRef& goal) {
  require_input(model, goal);
  require_normalized(goal);
  return FdlProver(model).prove(goal);
}

namespace {

class FdlTable : public RuleTable {
 public:
  explicit FdlTable(FdlModel model) : model_(std::move(model)) {}

  std::string calculus_id() const override { return "fdl"; }

  bool is_intro(const std::string& id) const override {
    return id == "axiom" || id == "atom" || id == "top-intro" ||
           id == "and-intro" || id == "or-intro-left" ||
           id == "or-intro-right" || id == "forall-intro" ||
           id == "exists-intro";
  }

  std::vector<std::size_t> major_premises(const Proof& node) const override {
    if (node.premises().empty()) return {};
    return {0};  // the leftmost premise is major in every rule
  }

  std::optional<std::string> check_node(const Proof& node) const override {
    const std::string& id = node.rule().rule_id;
    const Sequent& c = node.conclusion();
    const FormulaRef& goal = c.goal();
    const auto& prem = node.premises();
    auto arity = [&](std::size_t n) -> std::optional<std::string> {
      if (prem.size() != n)
        return "rule " + id + " expects " + std::to_string(n) + " premises";
      return std::nullopt;
    };
    auto same_ctx = [&](const Proof& p) {
      return std::equal(c.context().begin(), c.context().end(),
                        p.conclusion().context().begin(),
                        p.conclusion().context().end(),
                        [](const FormulaRef& a, const FormulaRef& b) {
                          return alpha_equal(a, b);
                        }) &&
             c.context().size() == p.conclusion().context().size();
    };

    if (id == "axiom") {
      if (auto e = arity(0)) return e;
      if (!c.contains(goal)) return "axiom: goal not in context";
      return std::nullopt;
    }
    if (id == "atom") {
      if (auto e = arity(0)) return e;
      if (!is_atomic(goal)) return "atom: goal is not a literal";
      if (!model_.literal_in_p(goal)) return "atom: literal not in P";
      return std::nullopt;
    }
    if (id == "top-intro") {
      if (auto e = arity(0)) return e;
      if (goal->kind() != Conn::Top) return "top-intro: goal is not top";
      return std::nullopt;
    }
    if (id == "bot-elim") {
      if (auto e = arity(1)) return e;
      if (!same_ctx(*prem[0])) return "bot-elim: context changed";
      if (prem[0]->conclusion().goal()->kind() != Conn::Bot)
        return "bot-elim: premise goal is not bot";
      return std::nullopt;
    }
    if (id == "and-intro") {
      if (auto e = arity(2)) return e;
      if (goal->kind() != Conn::And) return "and-intro: goal is not and";
      if (!same_ctx(*prem[0]) || !same_ctx(*prem[1]))
        return "and-intro: context changed";
      if (!alpha_equal(prem[0]->conclusion().goal(), goal->left()) ||
          !alpha_equal(prem[1]->conclusion().goal(), goal->right()))
        return "and-intro: premises do not match conjuncts";
      return std::nullopt;
    }
    if (id == "and-elim-left" || id == "and-elim-right") {
      if (auto e = arity(1)) return e;
      if (!same_ctx(*prem[0])) return id + ": context changed";
      const FormulaRef& pg = prem[0]->conclusion().goal();
      if (pg->kind() != Conn::And) return id + ": premise goal is not and";
      const FormulaRef& part = id == "and-elim-left" ? pg->left() : pg->right();
      if (!alpha_equal(part, goal)) return id + ": conjunct mismatch";
      return std::nullopt;
    }
    if (id == "or-intro-left" || id == "or-intro-right") {
      if (auto e = arity(1)) return e;
      if (goal->kind() != Conn::Or) return id + ": goal is not or";
      if (!same_ctx(*prem[0])) return id + ": context changed";
      const FormulaRef& part =
          id == "or-intro-left" ? goal->left() : goal->right();
      if (!alpha_equal(prem[0]->conclusion().goal(), part))
        return id + ": disjunct mismatch";
      return std::nullopt;
    }
    if (id == "or-elim") {
      if (auto e = arity(3)) return e;
      if (!same_ctx(*prem[0])) return "or-elim: major context changed";
      const FormulaRef& pg = prem[0]->conclusion().goal();
      if (pg->kind() != Conn::Or) return "or-elim: major goal is not or";
      Sequent want_l = c.with_added(pg->left());
      Sequent want_r = c.with_added(pg->right());
      if (prem[1]->conclusion() != want_l || prem[2]->conclusion() != want_r)
        return "or-elim: case premises mismatch";
      return std::nullopt;
    }
    if (id == "forall-intro") {
      if (goal->kind() != Conn::Forall) return "forall-intro: goal is not forall";
      const auto& dom = model_.domain();
      if (auto e = arity(dom.size())) return e;
      for (std::size_t i = 0; i < dom.size(); ++i) {
        if (!same_ctx(*prem[i])) return "forall-intro: context changed";
        FormulaRef want = subst(goal->left(), goal->name(), Term::cst(dom[i]));
        if (!alpha_equal(prem[i]->conclusion().goal(), want))
          return "forall-intro: enumeration premise mismatch at " + dom[i];
      }
      return std::nullopt;
    }
    if (id == "forall-elim") {
      if (auto e = arity(1)) return e;
      if (!same_ctx(*prem[0])) return "forall-elim: context changed";
      const FormulaRef& pg = prem[0]->conclusion().goal();
      if (pg->kind() != Conn::Forall)
        return "forall-elim: premise goal is not forall";
      if (!node.rule().witness) return "forall-elim: missing witness";
      const Term& w = *node.rule().witness;
      if (w.kind != Term::Kind::Const || !model_.has_constant(w.name))
        return "forall-elim: witness outside domain";
      if (!alpha_equal(goal, subst(pg->left(), pg->name(), w)))
        return "forall-elim: instance mismatch";
      return std::nullopt;
    }
    if (id == "exists-intro") {
      if (auto e = arity(1)) return e;
      if (goal->kind() != Conn::Exists) return "exists-intro: goal is not exists";
      if (!same_ctx(*prem[0])) return "exists-intro: context changed";
      if (!node.rule().witness) return "exists-intro: missing witness";
      const Term& w = *node.rule().witness;
      if (w.kind != Term::Kind::Const || !model_.has_constant(w.name))
        return "exists-intro: witness outside domain";
      if (!alpha_equal(prem[0]->conclusion().goal(),
                       subst(goal->left(), goal->name(), w)))
        return "exists-intro: instance mismatch";
      return std::nullopt;
    }
    if (id == "exists-elim") {
      const auto& dom = model_.domain();
      if (auto e = arity(1 + dom.size())) return e;
      if (!same_ctx(*prem[0])) return "exists-elim: major context changed";
      const FormulaRef& pg = prem[0]->conclusion().goal();
      if (pg->kind() != Conn::Exists)
        return "exists-elim: major goal is not exists";
      for (std::size_t i = 0; i < dom.size(); ++i) {
        FormulaRef inst = subst(pg->left(), pg->name(), Term::cst(dom[i]));
        Sequent want = c.with_added(inst);
        if (prem[1 + i]->conclusion() != want)
          return "exists-elim: enumeration premise mismatch at " + dom[i];
      }
      return std::nullopt;
    }
    return "unknown rule " + id;
  }

 private:
  FdlModel model_;
};

}  // namespace

std::shared_ptr<const RuleTable> rule_table(const FdlModel& model) {
  return std::make_shared<FdlTable>(model);
}

}  // namespace prooftk::fdl

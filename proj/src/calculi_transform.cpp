#include <set>
#include <string>

#include "prooftk/calculi.hpp"

namespace prooftk::calculi {

namespace {

void collect_term_idents(const Term& t, std::set<std::string>& out) {
  out.insert(t.name);
  for (const auto& a : t.args) collect_term_idents(a, out);
}

void collect_formula_idents(const FormulaRef& f, std::set<std::string>& out) {
  if (!f) return;
  if (!f->name().empty()) out.insert(f->name());
  for (const auto& a : f->args()) collect_term_idents(a, out);
  collect_formula_idents(f->left(), out);
  collect_formula_idents(f->right(), out);
}

void collect_proof_idents(const Proof& p, std::set<std::string>& out) {
  for (const auto& f : p.conclusion().context()) collect_formula_idents(f, out);
  collect_formula_idents(p.conclusion().goal(), out);
  collect_formula_idents(p.rule().principal, out);
  if (p.rule().witness) collect_term_idents(*p.rule().witness, out);
  if (p.rule().fresh_var) out.insert(*p.rule().fresh_var);
  for (const auto& q : p.premises()) collect_proof_idents(*q, out);
}

std::string gensym(const std::string& base, std::set<std::string>& used) {
  for (int i = 0;; ++i) {
    std::string cand = base + std::to_string(i);
    if (used.insert(cand).second) return cand;
  }
}

// Renames free occurrences of the variable `from` throughout the tree.
// A node whose eigenvariable is `from` rebinds it, so `from` cannot be free
// there and the subtree is left alone.
ProofRef rename_proof(const ProofRef& p, const std::string& from,
                      const std::string& to) {
  if (from == to) return p;
  RuleInstance r = p->rule();
  if (r.fresh_var && *r.fresh_var == from) return p;
  if (r.principal) r.principal = rename_var(r.principal, from, to);
  if (r.witness) r.witness = subst_term(*r.witness, from, Term::var(to));
  std::vector<FormulaRef> ctx;
  for (const auto& f : p->conclusion().context())
    ctx.push_back(rename_var(f, from, to));
  Sequent c(std::move(ctx), rename_var(p->conclusion().goal(), from, to));
  std::vector<ProofRef> prem;
  for (const auto& q : p->premises())
    prem.push_back(rename_proof(q, from, to));
  return make_proof(std::move(r), std::move(c), std::move(prem));
}

// Gives every eigenvariable in the proof a globally unique name, so later
// rewrites can rename one without touching another.
ProofRef rectify_proof(const ProofRef& p, std::set<std::string>& used) {
  RuleInstance r = p->rule();
  std::vector<ProofRef> prem;
  for (const auto& q : p->premises()) prem.push_back(rectify_proof(q, used));
  if (r.fresh_var) {
    std::string fresh = gensym(*r.fresh_var, used);
    for (auto& q : prem) q = rename_proof(q, *r.fresh_var, fresh);
    r.fresh_var = fresh;
  }
  return make_proof(std::move(r), p->conclusion(), std::move(prem));
}

bool same(const FormulaRef& a, const FormulaRef& b) {
  return a && b && compare(a, b) == 0;
}

void require_hyp(const ProofRef& p, const FormulaRef& target, Conn kind,
                 const char* op) {
  if (!p || !target || target->kind() != kind ||
      !p->conclusion().contains(target))
    throw TransformError(std::string(op) +
                         ": target hypothesis missing or of the wrong shape");
}

ProofRef invert_and_rec(const ProofRef& p, const FormulaRef& target) {
  if (p->rule().rule_id == "and-left" && same(p->rule().principal, target))
    return p->premises()[0];
  Sequent c = p->conclusion()
                  .with_removed(target)
                  ->with_added(target->left(), target->right());
  std::vector<ProofRef> prem;
  for (const auto& q : p->premises())
    prem.push_back(invert_and_rec(q, target));
  return make_proof(p->rule(), std::move(c), std::move(prem));
}

std::pair<ProofRef, ProofRef> invert_or_rec(const ProofRef& p,
                                            const FormulaRef& target) {
  if (p->rule().rule_id == "or-left" && same(p->rule().principal, target))
    return {p->premises()[0], p->premises()[1]};
  Sequent rest = *p->conclusion().with_removed(target);
  std::vector<ProofRef> left, right;
  for (const auto& q : p->premises()) {
    auto [l, r] = invert_or_rec(q, target);
    left.push_back(std::move(l));
    right.push_back(std::move(r));
  }
  return {make_proof(p->rule(), rest.with_added(target->left()),
                     std::move(left)),
          make_proof(p->rule(), rest.with_added(target->right()),
                     std::move(right))};
}

// Replaces the hypothesis target = exists x A by (v/x)A. Assumes no
// eigenvariable in the tree is named v (callers rectify first or pass a
// root eigenvariable of a rectified proof).
ProofRef invert_exists_rec(const ProofRef& p, const FormulaRef& target,
                           const std::string& v) {
  if (p->rule().rule_id == "exists-left" && same(p->rule().principal, target))
    return rename_proof(p->premises()[0], *p->rule().fresh_var, v);
  Sequent c = p->conclusion().with_removed(target)->with_added(
      subst(target->left(), target->name(), Term::var(v)));
  std::vector<ProofRef> prem;
  for (const auto& q : p->premises())
    prem.push_back(invert_exists_rec(q, target, v));
  return make_proof(p->rule(), std::move(c), std::move(prem));
}

ProofRef strip_imp_rec(const ProofRef& p, const FormulaRef& target) {
  if (p->rule().rule_id == "contr-imp-left" && same(p->rule().principal, target))
    return p->premises()[1];
  Sequent c =
      p->conclusion().with_removed(target)->with_added(target->right());
  std::vector<ProofRef> prem;
  for (const auto& q : p->premises())
    prem.push_back(strip_imp_rec(q, target));
  return make_proof(p->rule(), std::move(c), std::move(prem));
}

// Contraction on a rectified proof, by induction on (target size, height).
ProofRef contract_rec(const ProofRef& p, const FormulaRef& a) {
  const RuleInstance& r = p->rule();
  const Sequent& c = p->conclusion();
  if (r.principal && same(r.principal, a)) {
    const std::string& id = r.rule_id;
    Sequent c2 = *c.with_removed(a);
    if (id == "and-left") {
      ProofRef body = invert_and_rec(p->premises()[0], a);
      body = contract_rec(body, a->left());
      body = contract_rec(body, a->right());
      return make_proof(r, std::move(c2), {std::move(body)});
    }
    if (id == "or-left") {
      ProofRef l = invert_or_rec(p->premises()[0], a).first;
      ProofRef rt = invert_or_rec(p->premises()[1], a).second;
      l = contract_rec(l, a->left());
      rt = contract_rec(rt, a->right());
      return make_proof(r, std::move(c2), {std::move(l), std::move(rt)});
    }
    if (id == "exists-left") {
      const std::string& y = *r.fresh_var;
      ProofRef body = invert_exists_rec(p->premises()[0], a, y);
      body = contract_rec(body, subst(a->left(), a->name(), Term::var(y)));
      return make_proof(r, std::move(c2), {std::move(body)});
    }
    if (id == "contr-imp-left") {
      ProofRef first = contract_rec(p->premises()[0], a);
      ProofRef second = strip_imp_rec(p->premises()[1], a);
      second = contract_rec(second, a->right());
      return make_proof(r, std::move(c2),
                        {std::move(first), std::move(second)});
    }
    if (id == "contr-forall-left") {
      ProofRef body = contract_rec(p->premises()[0], a);
      return make_proof(r, std::move(c2), {std::move(body)});
    }
    throw TransformError("contract: unexpected rule " + id);
  }
  Sequent c2 = *c.with_removed(a);
  std::vector<ProofRef> prem;
  for (const auto& q : p->premises()) prem.push_back(contract_rec(q, a));
  return make_proof(r, std::move(c2), std::move(prem));
}

ProofRef weaken_rec(const ProofRef& p, const FormulaRef& extra,
                    const std::set<std::string>& fv,
                    std::set<std::string>& used) {
  RuleInstance r = p->rule();
  std::vector<ProofRef> prem = p->premises();
  if (r.fresh_var && fv.count(*r.fresh_var)) {
    std::string fresh = gensym(*r.fresh_var, used);
    for (auto& q : prem) q = rename_proof(q, *r.fresh_var, fresh);
    r.fresh_var = fresh;
  }
  for (auto& q : prem) q = weaken_rec(q, extra, fv, used);
  return make_proof(std::move(r), p->conclusion().with_added(extra),
                    std::move(prem));
}

}  // namespace

ProofRef invert_k_and(const ProofRef& proof, const FormulaRef& target) {
  require_hyp(proof, target, Conn::And, "invert_k_and");
  return invert_and_rec(proof, target);
}

std::pair<ProofRef, ProofRef> invert_k_or(const ProofRef& proof,
                                          const FormulaRef& target) {
  require_hyp(proof, target, Conn::Or, "invert_k_or");
  return invert_or_rec(proof, target);
}

ProofRef invert_k_exists(const ProofRef& proof, const FormulaRef& target) {
  require_hyp(proof, target, Conn::Exists, "invert_k_exists");
  std::set<std::string> used;
  collect_proof_idents(*proof, used);
  ProofRef rect = rectify_proof(proof, used);
  return invert_exists_rec(rect, target, target->name());
}

ProofRef strip_imp_k(const ProofRef& proof, const FormulaRef& target) {
  require_hyp(proof, target, Conn::Imp, "strip_imp_k");
  return strip_imp_rec(proof, target);
}

ProofRef contract_k(const ProofRef& proof, const FormulaRef& target) {
  if (!proof || !target || proof->conclusion().count(target) < 2)
    throw TransformError("contract_k: hypothesis not duplicated");
  std::set<std::string> used;
  collect_proof_idents(*proof, used);
  ProofRef rect = rectify_proof(proof, used);
  return contract_rec(rect, target);
}

ProofRef weaken_d(const ProofRef& proof, const FormulaRef& extra) {
  if (!proof || !extra) throw TransformError("weaken_d: missing input");
  std::set<std::string> used;
  collect_proof_idents(*proof, used);
  auto fv = free_vars(extra);
  used.insert(fv.begin(), fv.end());
  return weaken_rec(proof, extra, fv, used);
}

}  // namespace prooftk::calculi

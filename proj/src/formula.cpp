#include "prooftk/formula.hpp"

#include <map>
#include <optional>

namespace prooftk {

struct FormulaBuilder {
  static FormulaRef build(Conn k, std::string name, std::vector<Term> args,
                          FormulaRef l, FormulaRef r) {
    std::shared_ptr<Formula> node(new Formula());
    auto& f = *node;
    f.kind_ = k;
    f.name_ = std::move(name);
    f.args_ = std::move(args);
    f.left_ = std::move(l);
    f.right_ = std::move(r);
    int s = 0;
    switch (k) {
      case Conn::And:
      case Conn::Or:
      case Conn::Imp:
        s = 1 + f.left_->size() + f.right_->size();
        break;
      case Conn::Forall:
      case Conn::Exists:
        s = 1 + f.left_->size();
        break;
      case Conn::Frozen:
        s = f.left_->size();
        break;
      default:
        s = 0;
    }
    f.size_ = s;
    return node;
  }
};

FormulaRef Formula::atom(std::string pred, std::vector<Term> args) {
  return FormulaBuilder::build(Conn::Atom, std::move(pred), std::move(args),
                               nullptr, nullptr);
}
FormulaRef Formula::neg_atom(std::string pred, std::vector<Term> args) {
  return FormulaBuilder::build(Conn::NegAtom, std::move(pred), std::move(args),
                               nullptr, nullptr);
}
FormulaRef Formula::top() {
  static FormulaRef t =
      FormulaBuilder::build(Conn::Top, "", {}, nullptr, nullptr);
  return t;
}
FormulaRef Formula::bot() {
  static FormulaRef b =
      FormulaBuilder::build(Conn::Bot, "", {}, nullptr, nullptr);
  return b;
}
FormulaRef Formula::conj(FormulaRef l, FormulaRef r) {
  return FormulaBuilder::build(Conn::And, "", {}, std::move(l), std::move(r));
}
FormulaRef Formula::disj(FormulaRef l, FormulaRef r) {
  return FormulaBuilder::build(Conn::Or, "", {}, std::move(l), std::move(r));
}
FormulaRef Formula::imp(FormulaRef l, FormulaRef r) {
  return FormulaBuilder::build(Conn::Imp, "", {}, std::move(l), std::move(r));
}
FormulaRef Formula::forall(std::string var, FormulaRef body) {
  return FormulaBuilder::build(Conn::Forall, std::move(var), {},
                               std::move(body), nullptr);
}
FormulaRef Formula::exists(std::string var, FormulaRef body) {
  return FormulaBuilder::build(Conn::Exists, std::move(var), {},
                               std::move(body), nullptr);
}
FormulaRef Formula::frozen(FormulaRef inner) {
  return FormulaBuilder::build(Conn::Frozen, "", {}, std::move(inner), nullptr);
}

bool is_atomic(const FormulaRef& f) {
  return f->kind() == Conn::Atom || f->kind() == Conn::NegAtom;
}

namespace {

using Env = std::map<std::string, int>;  // bound var -> binder index

int cmp_term(const Term& a, const Term& b, const Env& ea, const Env& eb) {
  bool va = a.kind == Term::Kind::Var, vb = b.kind == Term::Kind::Var;
  auto ia = va ? ea.find(a.name) : ea.end();
  auto ib = vb ? eb.find(b.name) : eb.end();
  bool ba = va && ia != ea.end(), bb = vb && ib != eb.end();
  if (ba != bb) return ba ? -1 : 1;  // bound sorts before free
  if (ba && bb) {
    if (ia->second != ib->second) return ia->second < ib->second ? -1 : 1;
    return 0;
  }
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  if (a.name != b.name) return a.name < b.name ? -1 : 1;
  if (a.args.size() != b.args.size())
    return a.args.size() < b.args.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (int c = cmp_term(a.args[i], b.args[i], ea, eb)) return c;
  return 0;
}

int cmp(const FormulaRef& a, const FormulaRef& b, Env& ea, Env& eb,
        int depth) {
  if (a->kind() != b->kind()) return a->kind() < b->kind() ? -1 : 1;
  switch (a->kind()) {
    case Conn::Atom:
    case Conn::NegAtom: {
      if (a->name() != b->name()) return a->name() < b->name() ? -1 : 1;
      if (a->args().size() != b->args().size())
        return a->args().size() < b->args().size() ? -1 : 1;
      for (std::size_t i = 0; i < a->args().size(); ++i)
        if (int c = cmp_term(a->args()[i], b->args()[i], ea, eb)) return c;
      return 0;
    }
    case Conn::Top:
    case Conn::Bot:
      return 0;
    case Conn::And:
    case Conn::Or:
    case Conn::Imp: {
      if (int c = cmp(a->left(), b->left(), ea, eb, depth)) return c;
      return cmp(a->right(), b->right(), ea, eb, depth);
    }
    case Conn::Forall:
    case Conn::Exists: {
      auto olda = ea.find(a->name()) != ea.end()
                      ? std::optional<int>(ea[a->name()])
                      : std::nullopt;
      auto oldb = eb.find(b->name()) != eb.end()
                      ? std::optional<int>(eb[b->name()])
                      : std::nullopt;
      ea[a->name()] = depth;
      eb[b->name()] = depth;
      int c = cmp(a->left(), b->left(), ea, eb, depth + 1);
      if (olda)
        ea[a->name()] = *olda;
      else
        ea.erase(a->name());
      if (oldb)
        eb[b->name()] = *oldb;
      else
        eb.erase(b->name());
      return c;
    }
    case Conn::Frozen:
      return cmp(a->left(), b->left(), ea, eb, depth);
  }
  return 0;
}

void free_vars_rec(const FormulaRef& f, std::set<std::string>& bound,
                   std::set<std::string>& out) {
  switch (f->kind()) {
    case Conn::Atom:
    case Conn::NegAtom: {
      std::set<std::string> vs;
      for (const Term& t : f->args()) collect_vars(t, vs);
      for (const auto& v : vs)
        if (!bound.count(v)) out.insert(v);
      break;
    }
    case Conn::Forall:
    case Conn::Exists: {
      bool added = bound.insert(f->name()).second;
      free_vars_rec(f->left(), bound, out);
      if (added) bound.erase(f->name());
      break;
    }
    case Conn::Frozen:
      free_vars_rec(f->left(), bound, out);
      break;
    case Conn::And:
    case Conn::Or:
    case Conn::Imp:
      free_vars_rec(f->left(), bound, out);
      free_vars_rec(f->right(), bound, out);
      break;
    default:
      break;
  }
}

void all_names_rec(const FormulaRef& f, std::set<std::string>& out) {
  switch (f->kind()) {
    case Conn::Atom:
    case Conn::NegAtom:
      out.insert(f->name());
      for (const Term& t : f->args()) {
        collect_vars(t, out);
        collect_constants(t, out);
      }
      break;
    case Conn::Forall:
    case Conn::Exists:
      out.insert(f->name());
      all_names_rec(f->left(), out);
      break;
    case Conn::Frozen:
      all_names_rec(f->left(), out);
      break;
    case Conn::And:
    case Conn::Or:
    case Conn::Imp:
      all_names_rec(f->left(), out);
      all_names_rec(f->right(), out);
      break;
    default:
      break;
  }
}

}  // namespace

int compare(const FormulaRef& a, const FormulaRef& b) {
  Env ea, eb;
  return cmp(a, b, ea, eb, 0);
}

bool alpha_equal(const FormulaRef& a, const FormulaRef& b) {
  return compare(a, b) == 0;
}

std::set<std::string> free_vars(const FormulaRef& f) {
  std::set<std::string> bound, out;
  free_vars_rec(f, bound, out);
  return out;
}

bool is_closed(const FormulaRef& f) { return free_vars(f).empty(); }

void collect_constants(const FormulaRef& f, std::set<std::string>& out) {
  switch (f->kind()) {
    case Conn::Atom:
    case Conn::NegAtom:
      for (const Term& t : f->args()) collect_constants(t, out);
      break;
    case Conn::Forall:
    case Conn::Exists:
    case Conn::Frozen:
      collect_constants(f->left(), out);
      break;
    case Conn::And:
    case Conn::Or:
    case Conn::Imp:
      collect_constants(f->left(), out);
      collect_constants(f->right(), out);
      break;
    default:
      break;
  }
}

FormulaRef subst(const FormulaRef& f, const std::string& var,
                 const Term& repl) {
  switch (f->kind()) {
    case Conn::Atom:
    case Conn::NegAtom: {
      std::vector<Term> args;
      args.reserve(f->args().size());
      for (const Term& t : f->args()) args.push_back(subst_term(t, var, repl));
      return f->kind() == Conn::Atom
                 ? Formula::atom(f->name(), std::move(args))
                 : Formula::neg_atom(f->name(), std::move(args));
    }
    case Conn::Top:
    case Conn::Bot:
      return f;
    case Conn::And:
      return Formula::conj(subst(f->left(), var, repl),
                           subst(f->right(), var, repl));
    case Conn::Or:
      return Formula::disj(subst(f->left(), var, repl),
                           subst(f->right(), var, repl));
    case Conn::Imp:
      return Formula::imp(subst(f->left(), var, repl),
                          subst(f->right(), var, repl));
    case Conn::Frozen:
      return Formula::frozen(subst(f->left(), var, repl));
    case Conn::Forall:
    case Conn::Exists: {
      if (f->name() == var) return f;  // var shadowed, nothing free below
      std::set<std::string> repl_vars;
      collect_vars(repl, repl_vars);
      FormulaRef body = f->left();
      std::string binder = f->name();
      if (repl_vars.count(binder) && free_vars(body).count(var)) {
        // Binder would capture a variable of repl: rename it first.
        std::string nb = fresh_name(binder, {f, Formula::atom(var, {})});
        std::set<std::string> avoid = repl_vars;
        while (avoid.count(nb)) nb += "_";
        body = subst(body, binder, Term::var(nb));
        binder = nb;
      }
      body = subst(body, var, repl);
      return f->kind() == Conn::Forall ? Formula::forall(binder, body)
                                       : Formula::exists(binder, body);
    }
  }
  return f;
}

FormulaRef rename_var(const FormulaRef& f, const std::string& from,
                      const std::string& to) {
  return subst(f, from, Term::var(to));
}

std::string fresh_name(const std::string& base,
                       const std::vector<FormulaRef>& avoid) {
  std::set<std::string> used;
  for (const auto& f : avoid)
    if (f) all_names_rec(f, used);
  if (!used.count(base)) return base;
  for (int i = 1;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!used.count(cand)) return cand;
  }
}

}  // namespace prooftk

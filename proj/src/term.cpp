#include "prooftk/term.hpp"

#include <sstream>

namespace prooftk {

Term make_word(const std::vector<std::string>& symbols) {
  Term t = eps();
  for (auto it = symbols.rbegin(); it != symbols.rend(); ++it)
    t = Term::app(*it, {std::move(t)});
  return t;
}

bool word_symbols(const Term& t, std::vector<std::string>& out) {
  const Term* cur = &t;
  while (cur->kind == Term::Kind::App) {
    if (cur->args.size() != 1) return false;
    out.push_back(cur->name);
    cur = &cur->args[0];
  }
  return cur->kind == Term::Kind::Const && cur->name == kEpsName;
}

bool is_word(const Term& t) {
  std::vector<std::string> tmp;
  return word_symbols(t, tmp);
}

void collect_vars(const Term& t, std::set<std::string>& out) {
  if (t.kind == Term::Kind::Var) out.insert(t.name);
  for (const Term& a : t.args) collect_vars(a, out);
}

void collect_constants(const Term& t, std::set<std::string>& out) {
  if (t.kind != Term::Kind::Var) out.insert(t.name);
  for (const Term& a : t.args) collect_constants(a, out);
}

Term subst_term(const Term& t, const std::string& var, const Term& repl) {
  if (t.kind == Term::Kind::Var) return t.name == var ? repl : t;
  if (t.kind == Term::Kind::Const) return t;
  std::vector<Term> args;
  args.reserve(t.args.size());
  for (const Term& a : t.args) args.push_back(subst_term(a, var, repl));
  return Term::app(t.name, std::move(args));
}

std::string term_to_string(const Term& t) {
  if (t.kind != Term::Kind::App) return t.name;
  std::ostringstream os;
  os << t.name << '(';
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i) os << ", ";
    os << term_to_string(t.args[i]);
  }
  os << ')';
  return os.str();
}

}  // namespace prooftk

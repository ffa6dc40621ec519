#ifndef PROOFTK_TERM_HPP
#define PROOFTK_TERM_HPP

#include <compare>
#include <set>
#include <string>
#include <vector>

namespace prooftk {

// First-order terms. Words are chains of unary App nodes ending in the
// constant "eps".
struct Term {
  enum class Kind { Var, Const, App };

  Kind kind = Kind::Const;
  std::string name;
  std::vector<Term> args;  // nonempty only for App

  static Term var(std::string n) { return {Kind::Var, std::move(n), {}}; }
  static Term cst(std::string n) { return {Kind::Const, std::move(n), {}}; }
  static Term app(std::string sym, std::vector<Term> a) {
    return {Kind::App, std::move(sym), std::move(a)};
  }

  bool operator==(const Term& o) const {
    return kind == o.kind && name == o.name && args == o.args;
  }
  std::strong_ordering operator<=>(const Term& o) const {
    if (auto c = kind <=> o.kind; c != 0) return c;
    if (auto c = name <=> o.name; c != 0) return c;
    return args <=> o.args;
  }
};

inline const std::string kEpsName = "eps";

inline Term eps() { return Term::cst(kEpsName); }

// Builds the word gamma_1(gamma_2(...(eps))) from front-to-back symbols.
Term make_word(const std::vector<std::string>& symbols);

// Decomposes a word back into its symbols; returns false if the term is not
// a closed unary chain over eps.
bool word_symbols(const Term& t, std::vector<std::string>& out);

bool is_word(const Term& t);

void collect_vars(const Term& t, std::set<std::string>& out);
void collect_constants(const Term& t, std::set<std::string>& out);

// Capture is not an issue at the term level: plain simultaneous replacement
// of the variable `var` by `repl`.
Term subst_term(const Term& t, const std::string& var, const Term& repl);

std::string term_to_string(const Term& t);

}  // namespace prooftk

#endif

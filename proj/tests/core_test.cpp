#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "prooftk/formula.hpp"
#include "prooftk/sequent.hpp"
#include "prooftk/term.hpp"

using namespace prooftk;

TEST_CASE("words round-trip through make_word") {
  Term w = make_word({"a", "b"});
  CHECK(w == Term::app("a", {Term::app("b", {eps()})}));
  std::vector<std::string> syms;
  CHECK(word_symbols(w, syms));
  CHECK(syms == std::vector<std::string>{"a", "b"});
  CHECK(is_word(eps()));
  CHECK_FALSE(is_word(Term::var("x")));
  std::vector<std::string> none;
  CHECK(word_symbols(eps(), none));
  CHECK(none.empty());
}

TEST_CASE("term substitution replaces variables only") {
  Term t = Term::app("f", {Term::var("x"), Term::cst("x")});
  Term s = subst_term(t, "x", Term::cst("c"));
  CHECK(s == Term::app("f", {Term::cst("c"), Term::cst("x")}));
}

TEST_CASE("formula size counts connectives and quantifiers") {
  auto p = Formula::atom("P");
  CHECK(p->size() == 0);
  CHECK(Formula::top()->size() == 0);
  CHECK(Formula::bot()->size() == 0);
  auto pq = Formula::conj(p, Formula::atom("Q"));
  CHECK(pq->size() == 1);
  auto all = Formula::forall("x", Formula::disj(p, p));
  CHECK(all->size() == 2);
  CHECK(Formula::frozen(pq)->size() == pq->size());
}

TEST_CASE("alpha-equivalence identifies renamed binders") {
  auto fx = Formula::forall("x", Formula::atom("P", {Term::var("x")}));
  auto fy = Formula::forall("y", Formula::atom("P", {Term::var("y")}));
  CHECK(alpha_equal(fx, fy));
  CHECK(compare(fx, fy) == 0);
  auto fz = Formula::forall("x", Formula::atom("P", {Term::cst("c")}));
  CHECK_FALSE(alpha_equal(fx, fz));
  CHECK(compare(fx, fz) != 0);
}

TEST_CASE("compare is a total order") {
  auto a = Formula::atom("P");
  auto b = Formula::atom("Q");
  auto c = Formula::conj(a, b);
  CHECK(compare(a, a) == 0);
  CHECK(compare(a, b) == -compare(b, a));
  CHECK(compare(a, c) != 0);
}

TEST_CASE("substitution avoids capture") {
  // (forall x. P(x, y))[c/y] has no binder trouble
  auto f = Formula::forall("x", Formula::atom("P", {Term::var("x"), Term::var("y")}));
  auto g = subst(f, "y", Term::cst("c"));
  CHECK(free_vars(g).empty());
  // (forall x. P(x, y))[x/y] must rename the binder
  auto h = subst(f, "y", Term::var("x"));
  auto want = Formula::forall("z", Formula::atom("P", {Term::var("z"), Term::var("x")}));
  CHECK(alpha_equal(h, want));
}

TEST_CASE("free_vars and is_closed") {
  auto f = Formula::forall("x", Formula::atom("P", {Term::var("x"), Term::var("y")}));
  CHECK(free_vars(f) == std::set<std::string>{"y"});
  CHECK_FALSE(is_closed(f));
  CHECK(is_closed(subst(f, "y", Term::cst("c"))));
}

TEST_CASE("fresh_name avoids everything in sight") {
  auto f = Formula::forall("x", Formula::atom("P", {Term::var("x"), Term::cst("x1")}));
  std::string n = fresh_name("x", {f});
  CHECK(n != "x");
  CHECK(n != "x1");
}

TEST_CASE("sequent context is a canonical multiset") {
  auto p = Formula::atom("P");
  auto q = Formula::atom("Q");
  Sequent s1({p, q}, p);
  Sequent s2({q, p}, p);
  CHECK(s1 == s2);
  Sequent s3({p, p}, p);
  CHECK(s1 != s3);
  CHECK(s3.count(p) == 2);
  CHECK(s3.with_removed(p).has_value());
  CHECK(*s3.with_removed(p) == Sequent({p}, p));
  CHECK_FALSE(s1.with_removed(Formula::atom("R")).has_value());
}

TEST_CASE("size order on formulas") {
  auto p = Formula::atom("P");
  auto q = Formula::atom("Q");
  auto pq = Formula::conj(p, q);
  CHECK(size_order_less(p, pq));          // 0 < 1
  CHECK_FALSE(size_order_less(pq, pq));   // irreflexive
}

TEST_CASE("size order on sequents counts all formulas") {
  auto p = Formula::atom("P");
  // (|- A) vs (|- forall x (A | B)) with A = B = P: 0 < 2
  auto big = Formula::forall("x", Formula::disj(p, p));
  CHECK(size_order_less(Sequent({}, p), Sequent({}, big)));
  CHECK_FALSE(size_order_less(Sequent({p}, p), Sequent({p}, p)));
}

TEST_CASE("multiset order is the Dershowitz-Manna extension") {
  auto p = Formula::atom("P");
  auto q = Formula::atom("Q");
  auto pq = Formula::conj(p, q);
  auto imp = Formula::imp(p, q);
  // {P, Q} < {P & Q}: both added atoms are smaller than the removed one
  CHECK(multiset_order_less(Sequent({p, q}, p), Sequent({pq}, p)));
  // strict: equal multisets are unrelated
  CHECK_FALSE(multiset_order_less(Sequent({p}, p), Sequent({p}, p)));
  // adding anything of maximal size is not a decrease
  CHECK_FALSE(multiset_order_less(Sequent({pq, imp}, p), Sequent({pq}, p)));
  // removing a formula outright is a decrease
  CHECK(multiset_order_less(Sequent({p}, q), Sequent({p, pq}, q)));
}

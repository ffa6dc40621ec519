#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "prooftk/fdl.hpp"
#include "prooftk/textio.hpp"

using namespace prooftk;
using namespace prooftk::fdl;

namespace {

FdlModel one_elem(bool p_holds) {
  std::map<std::pair<std::string, int>, std::set<std::vector<std::string>>>
      rels;
  rels[{"P", 1}] = p_holds
                       ? std::set<std::vector<std::string>>{{"c1"}}
                       : std::set<std::vector<std::string>>{};
  return FdlModel({"c1"}, rels);
}

FormulaRef fml(const std::string& s) { return textio::parse_formula(s); }

}  // namespace

TEST_CASE("model construction validates tuples") {
  CHECK_THROWS_AS(FdlModel({}, {}), FdlError);
  std::map<std::pair<std::string, int>, std::set<std::vector<std::string>>>
      bad;
  bad[{"P", 1}] = {{"zz"}};
  CHECK_THROWS_AS(FdlModel({"c1"}, bad), FdlError);
  bad.clear();
  bad[{"P", 2}] = {{"c1"}};
  CHECK_THROWS_AS(FdlModel({"c1"}, bad), FdlError);
}

TEST_CASE("literal_in_p contains each ground literal or its negation") {
  FdlModel m = one_elem(true);
  CHECK(m.literal_in_p(fml("P(c1)")));
  CHECK_FALSE(m.literal_in_p(fml("~P(c1)")));
  FdlModel m0 = one_elem(false);
  CHECK_FALSE(m0.literal_in_p(fml("P(c1)")));
  CHECK(m0.literal_in_p(fml("~P(c1)")));
}

TEST_CASE("normalize expands implication and pushes negation down") {
  CHECK(alpha_equal(normalize(fml("P -> Q")), fml("~P | Q")));
  CHECK(alpha_equal(normalize(fml("(P & Q) -> R")), fml("(~P | ~Q) | R")));
  CHECK(alpha_equal(normalize(fml("(forall x. P(x)) -> bot")),
                    fml("(exists x. ~P(x)) | bot")));
  CHECK(alpha_equal(normalize(fml("~P -> bot")), fml("P | bot")));
  CHECK(alpha_equal(normalize(fml("(P -> Q) -> R")), fml("P & ~Q | R")));
  CHECK_THROWS_AS(normalize(Formula::frozen(fml("P"))), NotFdlNormalized);
}

TEST_CASE("eval basics") {
  FdlModel m = one_elem(true);
  CHECK(eval(m, fml("forall x. P(x)")));
  CHECK_FALSE(eval(m, fml("exists x. ~P(x)")));
  auto open = Formula::atom("P", {Term::var("x")});
  CHECK_THROWS_AS(eval(m, Formula::disj(open, open)), NotClosed);
  CHECK_THROWS_AS(eval(m, fml("P(c1) -> P(c1)")), NotFdlNormalized);
}

TEST_CASE("eval enumerates a two-element domain") {
  std::map<std::pair<std::string, int>, std::set<std::vector<std::string>>>
      rels;
  rels[{"P", 1}] = {{"c1"}};
  FdlModel m({"c1", "c2"}, rels);
  CHECK(eval(m, fml("forall x. P(x) | ~P(x)")));
  CHECK_FALSE(eval(m, fml("forall x. P(x)")));
  CHECK(eval(m, fml("exists x. P(x)")));
}

TEST_CASE("prove finds intro-only proofs with chosen witnesses") {
  FdlModel m = one_elem(true);
  ProofRef pi = prove(m, fml("exists x. P(x)"));
  REQUIRE(pi);
  CHECK(pi->rule().rule_id == "exists-intro");
  REQUIRE(pi->rule().witness);
  CHECK(pi->rule().witness->name == "c1");
  auto table = rule_table(m);
  CHECK_FALSE(check_proof(*pi, *table).has_value());
  CHECK(contains_only_intros(*pi, *table));

  FdlModel m0 = one_elem(false);
  CHECK_FALSE(prove(m0, fml("P(c1)")));
}

TEST_CASE("the checker validates second-column rules and catches cuts") {
  FdlModel m = one_elem(true);
  auto table = rule_table(m);
  FormulaRef p = fml("P(c1)");
  FormulaRef por = Formula::disj(p, p);
  // |- P(c1) by or-elim over P(c1) | P(c1), with an or-intro-topped major
  ProofRef atom = make_proof({"atom", nullptr, {}, {}}, Sequent({}, p));
  ProofRef major =
      make_proof({"or-intro-left", nullptr, {}, {}}, Sequent({}, por), {atom});
  ProofRef case_p = make_proof({"axiom", nullptr, {}, {}}, Sequent({p}, p));
  ProofRef cut = make_proof({"or-elim", nullptr, {}, {}}, Sequent({}, p),
                            {major, case_p, case_p});
  CHECK_FALSE(check_proof(*cut, *table).has_value());
  CHECK_FALSE(is_cut_free(*cut, *table));
  CHECK_FALSE(contains_only_intros(*cut, *table));

  // an axiom-topped major premise is a general cut too
  ProofRef ax_major =
      make_proof({"axiom", nullptr, {}, {}}, Sequent({por}, por));
  ProofRef case_p2 =
      make_proof({"axiom", nullptr, {}, {}}, Sequent({por, p}, p));
  ProofRef cut2 = make_proof({"or-elim", nullptr, {}, {}}, Sequent({por}, p),
                             {ax_major, case_p2, case_p2});
  CHECK_FALSE(check_proof(*cut2, *table).has_value());
  CHECK_FALSE(is_cut_free(*cut2, *table));

  // atom rule outside P
  ProofRef bad = make_proof({"atom", nullptr, {}, {}}, Sequent({}, fml("~P(c1)")));
  CHECK(check_proof(*bad, *table).has_value());

  // forall-elim witness outside the domain
  ProofRef all = make_proof({"axiom", nullptr, {}, {}},
                            Sequent({fml("forall x. P(x)")}, fml("forall x. P(x)")));
  ProofRef elim = make_proof({"forall-elim", nullptr, Term::cst("zz"), {}},
                             Sequent({fml("forall x. P(x)")}, p), {all});
  auto err = check_proof(*elim, *table);
  REQUIRE(err.has_value());
  CHECK(err->reason.find("witness") != std::string::npos);
}

namespace {

FormulaRef random_closed(std::mt19937& rng, int depth,
                         const std::vector<std::string>& bound) {
  std::uniform_int_distribution<int> pick(0, depth == 0 ? 3 : 8);
  std::uniform_int_distribution<int> coin(0, 1);
  switch (pick(rng)) {
    case 0: return Formula::top();
    case 1: return Formula::bot();
    case 2:
    case 3: {
      Term arg = bound.empty() || coin(rng)
                     ? Term::cst(coin(rng) ? "c1" : "c2")
                     : Term::var(bound[std::uniform_int_distribution<std::size_t>(
                           0, bound.size() - 1)(rng)]);
      auto a = Formula::atom(coin(rng) ? "P" : "R", {arg});
      return coin(rng) ? a : Formula::neg_atom(a->name(), a->args());
    }
    case 4:
      return Formula::conj(random_closed(rng, depth - 1, bound),
                           random_closed(rng, depth - 1, bound));
    case 5:
      return Formula::disj(random_closed(rng, depth - 1, bound),
                           random_closed(rng, depth - 1, bound));
    case 6:
    case 7: {
      std::string v = "x" + std::to_string(bound.size());
      auto b2 = bound;
      b2.push_back(v);
      auto body = random_closed(rng, depth - 1, b2);
      return pick(rng) % 2 ? Formula::forall(v, body)
                           : Formula::exists(v, body);
    }
    default:
      return Formula::disj(random_closed(rng, depth - 1, bound),
                           random_closed(rng, depth - 1, bound));
  }
}

FdlModel random_model(std::mt19937& rng) {
  std::uniform_int_distribution<int> nelem(1, 3);
  std::uniform_int_distribution<int> coin(0, 1);
  int n = nelem(rng);
  std::vector<std::string> dom;
  for (int i = 1; i <= 3; ++i) dom.push_back("c" + std::to_string(i));
  dom.resize(n);
  if (n < 3) dom = std::vector<std::string>(dom.begin(), dom.begin() + n);
  std::map<std::pair<std::string, int>, std::set<std::vector<std::string>>>
      rels;
  for (const std::string& p : {std::string("P"), std::string("R")}) {
    std::set<std::vector<std::string>> tuples;
    for (const auto& c : dom)
      if (coin(rng)) tuples.insert({c});
    rels[{p, 1}] = tuples;
  }
  return FdlModel(dom, rels);
}

}  // namespace

TEST_CASE("provable iff valid, and every proof is intro-only") {
  std::mt19937 rng(41);
  for (int i = 0; i < 200; ++i) {
    FdlModel m = random_model(rng);
    FormulaRef f = random_closed(rng, 4, {});
    // constants may mention c2 outside a 1-element domain; skip those
    std::set<std::string> cs;
    collect_constants(f, cs);
    bool in_dom = true;
    for (const auto& c : cs)
      if (!m.has_constant(c)) in_dom = false;
    if (!in_dom) continue;
    bool valid = eval(m, f);
    ProofRef pi = prove(m, f);
    CAPTURE(i);
    CHECK(static_cast<bool>(pi) == valid);
    if (pi) {
      auto table = rule_table(m);
      CHECK_FALSE(check_proof(*pi, *table).has_value());
      CHECK(contains_only_intros(*pi, *table));
    }
  }
}

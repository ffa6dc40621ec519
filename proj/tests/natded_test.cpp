#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "prooftk/natded.hpp"
#include "prooftk/oracle.hpp"
#include "prooftk/textio.hpp"

using namespace prooftk;
using namespace prooftk::nd;

namespace {

FormulaRef fml(const std::string& s) { return textio::parse_formula(s); }

FormulaRef rand_formula(std::mt19937& rng, int depth,
                        std::vector<std::string> bound) {
  std::uniform_int_distribution<int> pick(0, depth == 0 ? 2 : 9);
  std::uniform_int_distribution<int> coin(0, 1);
  switch (pick(rng)) {
    case 0: return Formula::top();
    case 1: return Formula::bot();
    case 2: {
      Term arg = bound.empty() || coin(rng)
                     ? Term::cst("c")
                     : Term::var(bound[std::uniform_int_distribution<
                           std::size_t>(0, bound.size() - 1)(rng)]);
      return Formula::atom(coin(rng) ? "P" : "Q", {arg});
    }
    case 3:
    case 4:
      return Formula::conj(rand_formula(rng, depth - 1, bound),
                           rand_formula(rng, depth - 1, bound));
    case 5:
      return Formula::disj(rand_formula(rng, depth - 1, bound),
                           rand_formula(rng, depth - 1, bound));
    case 6:
    case 7:
      return Formula::imp(rand_formula(rng, depth - 1, bound),
                          rand_formula(rng, depth - 1, bound));
    default: {
      std::string v = "x" + std::to_string(bound.size());
      bound.push_back(v);
      auto body = rand_formula(rng, depth - 1, bound);
      return pick(rng) % 2 ? Formula::forall(v, body)
                           : Formula::exists(v, body);
    }
  }
}

bool frozen_ok(const FormulaRef& f) {
  // every frozen antecedent sits directly under an implication and is
  // not atomic inside
  switch (f->kind()) {
    case Conn::Frozen: return false;  // only allowed at imp antecedents
    case Conn::Imp: {
      const FormulaRef& a = f->left();
      if (a->kind() == Conn::Frozen) {
        if (is_atomic(a->left())) return false;
        // the frozen content is untouched: no frozen marks inside
        return unfreeze(a->left()) == nullptr ? false
                                              : alpha_equal(unfreeze(a->left()),
                                                            a->left()) &&
                                                    frozen_ok(f->right());
      }
      return is_atomic(a) && frozen_ok(f->right());
    }
    case Conn::And:
    case Conn::Or:
      return frozen_ok(f->left()) && frozen_ok(f->right());
    case Conn::Forall:
    case Conn::Exists:
      return frozen_ok(f->left());
    default:
      return true;
  }
}

}  // namespace

TEST_CASE("freeze wraps exactly the non-atomic antecedents") {
  CHECK(alpha_equal(freeze(fml("P -> P -> P")), fml("P -> P -> P")));
  CHECK(textio::print_formula(freeze(fml("(P & P) -> P"))) == "[P & P] -> P");
  CHECK(textio::print_formula(freeze(fml("(P -> (P -> P)) & ((P & P) -> P)"))) ==
        "(P -> P -> P) & ([P & P] -> P)");
  CHECK(textio::print_formula(freeze(fml("((P | Q) -> R) -> R"))) ==
        "[P | Q -> R] -> R");
  // inside the modality nothing is frozen, even nested implications
  FormulaRef f = freeze(fml("((Q & Q -> P) -> R) -> R"));
  CHECK(textio::print_formula(f) == "[(Q & Q -> P) -> R] -> R");
}

TEST_CASE("unfreeze undoes freeze on random formulas") {
  std::mt19937 rng(51);
  for (int i = 0; i < 500; ++i) {
    FormulaRef f = rand_formula(rng, 4, {});
    FormulaRef g = freeze(f);
    CHECK(alpha_equal(unfreeze(g), f));
    CHECK(frozen_ok(g));
    CHECK(g->size() == f->size());  // the modality is transparent to size
  }
}

TEST_CASE("the nd checker accepts eliminations and flags specific cuts") {
  auto table = nd_rule_table();
  FormulaRef p = fml("P"), q = fml("Q");
  FormulaRef pq = Formula::conj(p, q);
  Sequent base({p, q}, pq);
  ProofRef ax_p = make_proof({"axiom", nullptr, {}, {}}, base.with_goal(p));
  ProofRef ax_q = make_proof({"axiom", nullptr, {}, {}}, base.with_goal(q));
  ProofRef pair =
      make_proof({"and-intro", nullptr, {}, {}}, base, {ax_p, ax_q});
  CHECK_FALSE(check_proof(*pair, *table).has_value());
  CHECK(contains_only_intros(*pair, *table));
  CHECK(is_cut_free(*pair, *table));

  // and-elim over and-intro: a specific (and general) cut
  ProofRef cut = make_proof({"and-elim-left", nullptr, {}, {}},
                            base.with_goal(p), {pair});
  CHECK_FALSE(check_proof(*cut, *table).has_value());
  CHECK(is_specific_cut(*cut));
  CHECK(is_general_cut(*cut, *table));
  CHECK_FALSE(is_cut_free(*cut, *table));

  // the same elimination over an axiom: general, not specific
  Sequent with_pair({pq}, pq);
  ProofRef ax_pair = make_proof({"axiom", nullptr, {}, {}}, with_pair);
  ProofRef gen = make_proof({"and-elim-left", nullptr, {}, {}},
                            with_pair.with_goal(p), {ax_pair});
  CHECK_FALSE(check_proof(*gen, *table).has_value());
  CHECK_FALSE(is_specific_cut(*gen));
  CHECK(is_general_cut(*gen, *table));

  // modus ponens with the major premise first
  Sequent imps({fml("P -> Q"), p}, q);
  ProofRef maj = make_proof({"axiom", nullptr, {}, {}},
                            imps.with_goal(fml("P -> Q")));
  ProofRef min = make_proof({"axiom", nullptr, {}, {}}, imps.with_goal(p));
  ProofRef mp = make_proof({"imp-elim", nullptr, {}, {}}, imps, {maj, min});
  CHECK_FALSE(check_proof(*mp, *table).has_value());
  CHECK_FALSE(is_specific_cut(*mp));
  auto majors = table->major_premises(*mp);
  REQUIRE(majors.size() == 1);
  CHECK(majors[0] == 0);

  // bot-elim is never a specific cut
  Sequent bots({Formula::bot()}, p);
  ProofRef botax = make_proof({"axiom", nullptr, {}, {}},
                              bots.with_goal(Formula::bot()));
  ProofRef botelim = make_proof({"bot-elim", nullptr, {}, {}}, bots, {botax});
  CHECK_FALSE(check_proof(*botelim, *table).has_value());
  CHECK_FALSE(is_specific_cut(*botelim));

  // premise context mismatch is rejected
  ProofRef bad = make_proof({"and-intro", nullptr, {}, {}}, Sequent({}, pq),
                            {ax_p, ax_q});
  CHECK(check_proof(*bad, *table).has_value());
}

TEST_CASE("the pseudo system has no eliminations but gains delay") {
  auto pseudo = pseudo_table();
  CHECK(pseudo->is_intro("delay"));
  CHECK_FALSE(pseudo->is_intro("and-elim-left"));
  Sequent s({Formula::frozen(fml("P & P"))}, fml("P"));
  ProofRef d = make_proof({"delay", nullptr, {}, {}}, s);
  CHECK_FALSE(check_proof(*d, *pseudo).has_value());
  // no frozen hypothesis, no delay
  ProofRef d2 = make_proof({"delay", nullptr, {}, {}}, Sequent({fml("P")}, fml("P")));
  CHECK(check_proof(*d2, *pseudo).has_value());
  // eliminations are not part of the pseudo system
  Sequent bots({Formula::bot()}, fml("P"));
  ProofRef botax = make_proof({"axiom", nullptr, {}, {}},
                              bots.with_goal(Formula::bot()));
  ProofRef botelim = make_proof({"bot-elim", nullptr, {}, {}}, bots, {botax});
  CHECK(check_proof(*botelim, *pseudo).has_value());
  CHECK_FALSE(check_proof(*botelim, *nd_rule_table()).has_value());
}

TEST_CASE("prove_delay on the running example leaves one delayed branch") {
  FormulaRef goal = freeze(fml("(P -> (P -> P)) & ((P & P) -> P)"));
  auto res = prove_delay(Sequent({}, goal));
  REQUIRE(res.has_value());
  CHECK_FALSE(check_proof(*res->proof, *pseudo_table()).has_value());
  CHECK(contains_only_intros(*res->proof, *pseudo_table()));
  REQUIRE(res->leaves.size() == 1);
  const DelayedLeaf& leaf = res->leaves[0];
  CHECK(textio::print_sequent(leaf.sequent) == "[P & P] |- P");
  CHECK(leaf.location == std::vector<std::size_t>{1, 0});
  // the thawed leaf is provable
  Sequent thawed = unfreeze(leaf.sequent);
  CHECK(textio::print_sequent(thawed) == "P & P |- P");
  CHECK(prooftk::oracle::decide_ipl(thawed));
}

TEST_CASE("prove_delay handles quantifiers and fails honestly") {
  auto res = prove_delay(Sequent({fml("P(c)")}, fml("exists x. P(x)")));
  REQUIRE(res.has_value());
  CHECK(res->leaves.empty());
  CHECK_FALSE(check_proof(*res->proof, *pseudo_table()).has_value());

  CHECK_FALSE(prove_delay(Sequent({}, fml("bot"))).has_value());
  CHECK_FALSE(prove_delay(Sequent({fml("P")}, fml("Q"))).has_value());
  CHECK(prove_delay(Sequent({fml("P")}, fml("P"))).has_value());

  CHECK_THROWS_AS(prove_delay(Sequent({fml("P & Q")}, fml("P"))),
                  NonAtomicContext);
}

TEST_CASE("delay fires before anything else") {
  FormulaRef frozen = Formula::frozen(fml("Q & Q"));
  auto res = prove_delay(Sequent({frozen, fml("P")}, fml("P")));
  REQUIRE(res.has_value());
  CHECK(res->proof->rule().rule_id == "delay");
  REQUIRE(res->leaves.size() == 1);
  CHECK(res->leaves[0].location.empty());
}

TEST_CASE("disjunction property checks") {
  Decider oracle_prover = [](const Sequent& s) -> std::optional<bool> {
    try {
      return prooftk::oracle::decide_ipl(s);
    } catch (const prooftk::oracle::QuantifiedInput&) {
      return std::nullopt;
    }
  };
  CHECK(check_disjunction_property(fml("(P -> P) | Q"), oracle_prover) ==
        DisjStatus::WitnessedLeft);
  CHECK(check_disjunction_property(fml("bot | (Q -> Q)"), oracle_prover) ==
        DisjStatus::WitnessedRight);
  CHECK(check_disjunction_property(fml("P -> P"), oracle_prover) ==
        DisjStatus::NotApplicable);
  CHECK(check_disjunction_property(fml("forall x. (P -> P) | Q"),
                                   oracle_prover) == DisjStatus::WitnessedLeft);
  CHECK(check_disjunction_property(fml("forall x. (forall y. P(y)) | Q"),
                                   oracle_prover) == DisjStatus::Unsupported);
}

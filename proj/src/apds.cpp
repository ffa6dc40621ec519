#include "prooftk/apds.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "prooftk/formula.hpp"

namespace prooftk::apds {

namespace {

int g_last_passes = 0;

std::vector<std::string> canonical(std::vector<std::string> ps) {
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  return ps;
}

}  // namespace

bool ApdsSystem::add_rule(ApdsRule rule) {
  rule.premises = canonical(std::move(rule.premises));
  predicates_.insert(rule.head);
  for (const auto& p : rule.premises) predicates_.insert(p);
  if (!rule.symbol.empty()) symbols_.insert(rule.symbol);
  if (!rule.elim_first.empty()) predicates_.insert(rule.elim_first);
  if (rule.name.empty())
    rule.name = "r" + std::to_string(rules_.size() + 1);
  if (!index_.insert(rule.key()).second) return false;
  rules_.push_back(std::move(rule));
  return true;
}

bool ApdsSystem::operator==(const ApdsSystem& o) const {
  return predicates_ == o.predicates_ && symbols_ == o.symbols_ &&
         index_ == o.index_;
}

bool Fsa::accepts(const std::string& start,
                  const std::vector<std::string>& word) const {
  std::set<std::string> cur = {start};
  for (const auto& sym : word) {
    std::set<std::string> next;
    for (const auto& s : cur) {
      auto it = trans.find(s);
      if (it == trans.end()) continue;
      auto jt = it->second.find(sym);
      if (jt == it->second.end()) continue;
      next.insert(jt->second.begin(), jt->second.end());
    }
    cur = std::move(next);
  }
  for (const auto& s : cur)
    if (finals.count(s)) return true;
  return false;
}

ApdsSystem from_fsa(const Fsa& machine) {
  ApdsSystem sys;
  for (const auto& s : machine.states) sys.declare_predicate(s);
  for (const auto& g : machine.alphabet) sys.declare_symbol(g);
  int k = 0;
  for (const auto& f : machine.finals)
    sys.add_rule({RuleKind::IntroEps, "", f, "", {},
                  "eps" + std::to_string(++k)});
  k = 0;
  for (const auto& [state, by_sym] : machine.trans)
    for (const auto& [sym, succs] : by_sym)
      for (const auto& succ : succs)
        sys.add_rule({RuleKind::IntroPush, sym, state, "", {succ},
                      "t" + std::to_string(++k)});
  return sys;
}

ApdsSystem saturate(const ApdsSystem& system) {
  ApdsSystem out = system;
  int sat_k = 0;
  auto add = [&](RuleKind kind, const std::string& sym,
                 const std::string& head, std::vector<std::string> prems) {
    ApdsRule r{kind, sym, head, "", std::move(prems),
               "sat" + std::to_string(sat_k + 1)};
    if (out.add_rule(std::move(r))) {
      ++sat_k;
      return true;
    }
    return false;
  };

  g_last_passes = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    ++g_last_passes;
    // Clause 1: an introduction feeding the first premise of an elimination
    // short-circuits into a neutral rule.
    std::vector<ApdsRule> snapshot = out.rules();
    for (const auto& ip : snapshot) {
      if (ip.kind != RuleKind::IntroPush) continue;
      for (const auto& el : snapshot) {
        if (el.kind != RuleKind::Elim || el.symbol != ip.symbol ||
            el.elim_first != ip.head)
          continue;
        std::vector<std::string> prems = ip.premises;
        prems.insert(prems.end(), el.premises.begin(), el.premises.end());
        changed |= add(RuleKind::Neutral, "", el.head, std::move(prems));
      }
    }
    // Clauses 2 and 3: a neutral rule whose premises are all heads of
    // introductions of the same shape collapses into that shape.
    snapshot = out.rules();
    for (const auto& nt : snapshot) {
      if (nt.kind != RuleKind::Neutral) continue;
      // Clause 3: epsilon introductions for every premise.
      bool all_eps = true;
      for (const auto& q : nt.premises) {
        bool found = false;
        for (const auto& r : snapshot)
          if (r.kind == RuleKind::IntroEps && r.head == q) found = true;
        if (!found) {
          all_eps = false;
          break;
        }
      }
      if (all_eps) changed |= add(RuleKind::IntroEps, "", nt.head, {});
      // Clause 2: per push symbol, all combinations of contributing rules.
      for (const auto& sym : out.symbols()) {
        std::vector<std::vector<const ApdsRule*>> options;
        bool feasible = true;
        for (const auto& q : nt.premises) {
          std::vector<const ApdsRule*> opts;
          for (const auto& r : snapshot)
            if (r.kind == RuleKind::IntroPush && r.symbol == sym &&
                r.head == q)
              opts.push_back(&r);
          if (opts.empty()) {
            feasible = false;
            break;
          }
          options.push_back(std::move(opts));
        }
        if (!feasible) continue;
        std::vector<std::size_t> pick(options.size(), 0);
        while (true) {
          std::vector<std::string> prems;
          for (std::size_t i = 0; i < options.size(); ++i) {
            const auto& ps = options[i][pick[i]]->premises;
            prems.insert(prems.end(), ps.begin(), ps.end());
          }
          changed |= add(RuleKind::IntroPush, sym, nt.head, std::move(prems));
          std::size_t i = 0;
          for (; i < pick.size(); ++i) {
            if (++pick[i] < options[i].size()) break;
            pick[i] = 0;
          }
          if (i == pick.size()) break;
        }
      }
    }
  }
  return out;
}

int last_saturation_passes() { return g_last_passes; }

long rule_space_bound(const ApdsSystem& system) {
  long p = static_cast<long>(system.predicates().size());
  long s = static_cast<long>(system.symbols().size());
  long subsets = p >= 60 ? std::numeric_limits<long>::max() / (p * (s + 1) + 1)
                         : (1L << p);
  // IntroEps + IntroPush + Neutral, premise sets from the powerset.
  return p + p * s * subsets + p * subsets;
}

namespace {

// The suffix sets of the alternating-automaton run, rightmost first:
// sets[k] holds the predicates proving the suffix starting at position k.
std::vector<std::set<std::string>> run_sets(
    const ApdsSystem& saturated, const std::vector<std::string>& word) {
  std::size_t n = word.size();
  std::vector<std::set<std::string>> sets(n + 1);
  for (const auto& r : saturated.rules())
    if (r.kind == RuleKind::IntroEps) sets[n].insert(r.head);
  for (std::size_t k = n; k-- > 0;) {
    for (const auto& r : saturated.rules()) {
      if (r.kind != RuleKind::IntroPush || r.symbol != word[k]) continue;
      bool ok = true;
      for (const auto& q : r.premises)
        if (!sets[k + 1].count(q)) {
          ok = false;
          break;
        }
      if (ok) sets[k].insert(r.head);
    }
  }
  return sets;
}

}  // namespace

bool decide(const ApdsSystem& system, const std::string& predicate,
            const std::vector<std::string>& word) {
  ApdsSystem saturated = saturate(system);
  return run_sets(saturated, word)[0].count(predicate) != 0;
}

FormulaRef word_atom(const std::string& predicate,
                     const std::vector<std::string>& word) {
  return Formula::atom(predicate, {make_word(word)});
}

ProofRef prove(const ApdsSystem& system, const std::string& predicate,
               const std::vector<std::string>& word) {
  ApdsSystem saturated = saturate(system);
  auto sets = run_sets(saturated, word);
  if (!sets[0].count(predicate)) return nullptr;
  std::function<ProofRef(const std::string&, std::size_t)> build =
      [&](const std::string& pred, std::size_t k) -> ProofRef {
    std::vector<std::string> suffix(word.begin() + k, word.end());
    Sequent concl({}, word_atom(pred, suffix));
    if (k == word.size()) {
      for (const auto& r : saturated.rules())
        if (r.kind == RuleKind::IntroEps && r.head == pred)
          return make_proof({r.name, nullptr, {}, {}}, concl);
      return nullptr;
    }
    for (const auto& r : saturated.rules()) {
      if (r.kind != RuleKind::IntroPush || r.symbol != word[k] ||
          r.head != pred)
        continue;
      bool ok = true;
      for (const auto& q : r.premises)
        if (!sets[k + 1].count(q)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      std::vector<ProofRef> prems;
      for (const auto& q : r.premises) prems.push_back(build(q, k + 1));
      return make_proof({r.name, nullptr, {}, {}}, concl, std::move(prems));
    }
    return nullptr;
  };
  return build(predicate, 0);
}

std::set<std::pair<std::string, std::vector<std::string>>> naive_fixpoint(
    const ApdsSystem& system, int max_len) {
  // All words over the symbol alphabet up to max_len, shortest first.
  std::vector<std::vector<std::string>> words = {{}};
  for (std::size_t lo = 0, len = 0; len < static_cast<std::size_t>(max_len);
       ++len) {
    std::size_t hi = words.size();
    for (std::size_t i = lo; i < hi; ++i)
      for (const auto& g : system.symbols()) {
        std::vector<std::string> w = {g};
        w.insert(w.end(), words[i].begin(), words[i].end());
        words.push_back(std::move(w));
      }
    lo = hi;
  }

  std::set<std::pair<std::string, std::vector<std::string>>> facts;
  bool changed = true;
  auto has = [&](const std::string& p, const std::vector<std::string>& w) {
    return facts.count({p, w}) != 0;
  };
  while (changed) {
    changed = false;
    for (const auto& r : system.rules()) {
      switch (r.kind) {
        case RuleKind::IntroEps:
          changed |= facts.insert({r.head, {}}).second;
          break;
        case RuleKind::IntroPush:
          for (const auto& w : words) {
            if (static_cast<int>(w.size()) + 1 > max_len) continue;
            bool ok = true;
            for (const auto& q : r.premises)
              if (!has(q, w)) {
                ok = false;
                break;
              }
            if (!ok) continue;
            std::vector<std::string> gw = {r.symbol};
            gw.insert(gw.end(), w.begin(), w.end());
            changed |= facts.insert({r.head, std::move(gw)}).second;
          }
          break;
        case RuleKind::Elim:
          for (const auto& w : words) {
            if (static_cast<int>(w.size()) + 1 > max_len) continue;
            std::vector<std::string> gw = {r.symbol};
            gw.insert(gw.end(), w.begin(), w.end());
            if (!has(r.elim_first, gw)) continue;
            bool ok = true;
            for (const auto& q : r.premises)
              if (!has(q, w)) {
                ok = false;
                break;
              }
            if (ok) changed |= facts.insert({r.head, w}).second;
          }
          break;
        case RuleKind::Neutral:
          for (const auto& w : words) {
            bool ok = true;
            for (const auto& q : r.premises)
              if (!has(q, w)) {
                ok = false;
                break;
              }
            if (ok) changed |= facts.insert({r.head, w}).second;
          }
          break;
      }
    }
  }
  return facts;
}

namespace {

class ApdsTable : public RuleTable {
 public:
  explicit ApdsTable(ApdsSystem system) : system_(std::move(system)) {
    for (const auto& r : system_.rules()) by_name_.emplace(r.name, &r);
  }

  std::string calculus_id() const override { return "apds"; }

  bool is_intro(const std::string& rule_id) const override {
    auto it = by_name_.find(rule_id);
    return it != by_name_.end() && it->second->is_intro();
  }

  std::vector<std::size_t> major_premises(const Proof& node) const override {
    auto it = by_name_.find(node.rule().rule_id);
    if (it == by_name_.end()) return {};
    switch (it->second->kind) {
      case RuleKind::Elim:
        return {0};
      case RuleKind::Neutral: {
        std::vector<std::size_t> all(node.premises().size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        return all;
      }
      default:
        return {};
    }
  }

  std::optional<std::string> check_node(const Proof& node) const override {
    auto it = by_name_.find(node.rule().rule_id);
    if (it == by_name_.end())
      return "unknown rule " + node.rule().rule_id;
    const ApdsRule& r = *it->second;
    const Sequent& c = node.conclusion();
    if (!c.context().empty()) return "nonempty context";
    const FormulaRef& goal = c.goal();
    if (goal->kind() != Conn::Atom || goal->args().size() != 1)
      return "goal is not a unary atom";
    if (goal->name() != r.head) return "head predicate mismatch";
    std::vector<std::string> w;
    if (!word_symbols(goal->args()[0], w)) return "goal term is not a word";

    std::vector<std::string> body;  // the shared word the premises read
    std::size_t expect = r.premises.size();
    switch (r.kind) {
      case RuleKind::IntroEps:
        if (!w.empty()) return "intro-eps concludes the empty word only";
        break;
      case RuleKind::IntroPush:
        if (w.empty() || w.front() != r.symbol)
          return "conclusion word does not start with " + r.symbol;
        body.assign(w.begin() + 1, w.end());
        break;
      case RuleKind::Elim:
        body = w;
        expect = r.premises.size() + 1;
        break;
      case RuleKind::Neutral:
        body = w;
        break;
    }
    if (node.premises().size() != expect)
      return "rule " + r.name + " expects " + std::to_string(expect) +
             " premises";
    auto check_premise = [&](const Proof& p, const std::string& pred,
                             const std::vector<std::string>& pw)
        -> std::optional<std::string> {
      if (!p.conclusion().context().empty())
        return std::optional<std::string>("premise has nonempty context");
      if (!alpha_equal(p.conclusion().goal(), word_atom(pred, pw)))
        return std::optional<std::string>("premise mismatch for " + pred);
      return std::nullopt;
    };
    std::size_t base = 0;
    if (r.kind == RuleKind::Elim) {
      std::vector<std::string> gw = {r.symbol};
      gw.insert(gw.end(), body.begin(), body.end());
      if (auto e = check_premise(*node.premises()[0], r.elim_first, gw))
        return e;
      base = 1;
    }
    for (std::size_t i = 0; i < r.premises.size(); ++i)
      if (auto e =
              check_premise(*node.premises()[base + i], r.premises[i], body))
        return e;
    return std::nullopt;
  }

 private:
  ApdsSystem system_;
  std::map<std::string, const ApdsRule*> by_name_;
};

}  // namespace

std::shared_ptr<const RuleTable> rule_table(const ApdsSystem& system) {
  return std::make_shared<ApdsTable>(system);
}

}  // namespace prooftk::apds

#include <algorithm>
#include <climits>
#include <map>
#include <set>

#include "prooftk/oracle.hpp"

namespace prooftk::oracle {

namespace {

// A deliberately separate representation of a propositional search state:
// the context as a compare-sorted vector with every formula capped at
// multiplicity 2, plus the goal. Two occurrences are as good as any number,
// so the cap keeps the state space finite without losing provability.
struct State {
  std::vector<FormulaRef> ctx;
  FormulaRef goal;

  bool operator<(const State& o) const {
    if (ctx.size() != o.ctx.size()) return ctx.size() < o.ctx.size();
    for (std::size_t i = 0; i < ctx.size(); ++i)
      if (int c = compare(ctx[i], o.ctx[i]); c != 0) return c < 0;
    return compare(goal, o.goal) < 0;
  }
};

void reject_nonpropositional(const FormulaRef& f) {
  switch (f->kind()) {
    case Conn::Atom:
    case Conn::Top:
    case Conn::Bot:
      return;
    case Conn::And:
    case Conn::Or:
    case Conn::Imp:
      reject_nonpropositional(f->left());
      reject_nonpropositional(f->right());
      return;
    default:
      throw QuantifiedInput();
  }
}

std::vector<FormulaRef> add_capped(const std::vector<FormulaRef>& ctx,
                                   const FormulaRef& f) {
  int have = 0;
  for (const auto& g : ctx)
    if (compare(g, f) == 0) ++have;
  if (have >= 2) return ctx;
  std::vector<FormulaRef> out = ctx;
  out.insert(std::upper_bound(out.begin(), out.end(), f,
                              [](const FormulaRef& a, const FormulaRef& b) {
                                return compare(a, b) < 0;
                              }),
             f);
  return out;
}

std::vector<FormulaRef> drop_one(const std::vector<FormulaRef>& ctx,
                                 const FormulaRef& f) {
  std::vector<FormulaRef> out;
  bool dropped = false;
  for (const auto& g : ctx) {
    if (!dropped && compare(g, f) == 0) {
      dropped = true;
      continue;
    }
    out.push_back(g);
  }
  return out;
}

struct Search {
  static constexpr int kNoLoop = INT_MAX;

  std::map<State, int> path;  // state -> depth on the current branch
  std::map<State, bool> memo;
  // Depth of the shallowest ancestor that cut a loop below the current
  // frame. A failure that leaned on such a cut is path-relative: it may be
  // cached only once the search pops above that ancestor.
  int loop_depth = kNoLoop;
  int depth = 0;

  bool provable(const State& s) {
    if (auto it = memo.find(s); it != memo.end()) return it->second;
    if (auto it = path.find(s); it != path.end()) {
      loop_depth = std::min(loop_depth, it->second);
      return false;
    }
    path.emplace(s, depth);
    int saved = loop_depth;
    loop_depth = kNoLoop;
    ++depth;
    bool ok = expand(s);
    --depth;
    path.erase(s);
    if (ok) {
      memo[s] = true;  // a found proof is sound regardless of cuts
      loop_depth = saved;
    } else {
      if (loop_depth >= depth) {  // every cut involved was at or below s
        memo[s] = false;
        loop_depth = kNoLoop;
      }
      loop_depth = std::min(loop_depth, saved);
    }
    return ok;
  }

  bool expand(const State& s) {
    if (s.goal->kind() == Conn::Top) return true;
    for (const auto& h : s.ctx) {
      if (h->kind() == Conn::Bot) return true;
      if (h->kind() == Conn::Atom && compare(h, s.goal) == 0) return true;
    }
    // The left rules for conjunction and disjunction are invertible, so the
    // search commits to the first applicable one.
    for (const auto& h : s.ctx) {
      if (h->kind() == Conn::And) {
        auto rest = drop_one(s.ctx, h);
        rest = add_capped(rest, h->left());
        rest = add_capped(rest, h->right());
        return provable({rest, s.goal});
      }
      if (h->kind() == Conn::Or) {
        auto rest = drop_one(s.ctx, h);
        return provable({add_capped(rest, h->left()), s.goal}) &&
               provable({add_capped(rest, h->right()), s.goal});
      }
    }
    switch (s.goal->kind()) {
      case Conn::And:
        return provable({s.ctx, s.goal->left()}) &&
               provable({s.ctx, s.goal->right()});
      case Conn::Imp:
        return provable({add_capped(s.ctx, s.goal->left()), s.goal->right()});
      case Conn::Or:
        if (provable({s.ctx, s.goal->left()}) ||
            provable({s.ctx, s.goal->right()}))
          return true;
        break;
      default:
        break;
    }
    for (const auto& h : s.ctx) {
      switch (h->kind()) {
        case Conn::Imp:
          // The principal stays in the first premise: contraction followed
          // by the implication-left rule.
          if (provable({s.ctx, h->left()}) &&
              provable({add_capped(drop_one(s.ctx, h), h->right()), s.goal}))
            return true;
          break;
        default:
          break;
      }
    }
    return false;
  }
};

}  // namespace

bool decide_ipl(const Sequent& s) {
  std::vector<FormulaRef> ctx;
  for (const auto& f : s.context()) {
    reject_nonpropositional(f);
    ctx = add_capped(ctx, f);
  }
  reject_nonpropositional(s.goal());
  Search search;
  return search.provable({std::move(ctx), s.goal()});
}

std::vector<FormulaRef> enumerate_formulas(
    const std::vector<std::string>& atoms, int max_connectives) {
  // by_size[k] lists every formula with exactly k connectives.
  std::vector<std::vector<FormulaRef>> by_size(
      static_cast<std::size_t>(max_connectives) + 1);
  for (const auto& a : atoms) by_size[0].push_back(Formula::atom(a));
  by_size[0].push_back(Formula::top());
  by_size[0].push_back(Formula::bot());
  for (int k = 1; k <= max_connectives; ++k)
    for (int i = 0; i < k; ++i)
      for (const auto& l : by_size[i])
        for (const auto& r : by_size[k - 1 - i]) {
          by_size[k].push_back(Formula::conj(l, r));
          by_size[k].push_back(Formula::disj(l, r));
          by_size[k].push_back(Formula::imp(l, r));
        }
  std::vector<FormulaRef> out;
  for (const auto& level : by_size)
    out.insert(out.end(), level.begin(), level.end());
  return out;
}

long long count_formulas(int n_atoms, int max_connectives) {
  std::vector<long long> c(static_cast<std::size_t>(max_connectives) + 1, 0);
  c[0] = n_atoms + 2;
  for (int k = 1; k <= max_connectives; ++k)
    for (int i = 0; i < k; ++i) c[k] += 3 * c[i] * c[k - 1 - i];
  long long total = 0;
  for (long long v : c) total += v;
  return total;
}

}  // namespace prooftk::oracle

#include "prooftk/sequent.hpp"

#include <algorithm>

namespace prooftk {

namespace {
bool ref_less(const FormulaRef& a, const FormulaRef& b) {
  return compare(a, b) < 0;
}
}  // namespace

Sequent::Sequent(std::vector<FormulaRef> context, FormulaRef goal)
    : ctx_(std::move(context)), goal_(std::move(goal)) {
  std::sort(ctx_.begin(), ctx_.end(), ref_less);
}

bool Sequent::contains(const FormulaRef& f) const { return count(f) > 0; }

int Sequent::count(const FormulaRef& f) const {
  int n = 0;
  for (const auto& g : ctx_)
    if (alpha_equal(f, g)) ++n;
  return n;
}

Sequent Sequent::with_added(const FormulaRef& f) const {
  auto ctx = ctx_;
  ctx.push_back(f);
  return Sequent(std::move(ctx), goal_);
}

Sequent Sequent::with_added(const FormulaRef& f, const FormulaRef& g) const {
  auto ctx = ctx_;
  ctx.push_back(f);
  ctx.push_back(g);
  return Sequent(std::move(ctx), goal_);
}

std::optional<Sequent> Sequent::with_removed(const FormulaRef& f) const {
  auto ctx = ctx_;
  for (auto it = ctx.begin(); it != ctx.end(); ++it) {
    if (alpha_equal(*it, f)) {
      ctx.erase(it);
      return Sequent(std::move(ctx), goal_);
    }
  }
  return std::nullopt;
}

Sequent Sequent::with_goal(FormulaRef g) const {
  Sequent s;
  s.ctx_ = ctx_;
  s.goal_ = std::move(g);
  return s;
}

std::set<std::string> Sequent::free_vars() const {
  std::set<std::string> out = context_free_vars();
  auto gv = prooftk::free_vars(goal_);
  out.insert(gv.begin(), gv.end());
  return out;
}

std::set<std::string> Sequent::context_free_vars() const {
  std::set<std::string> out;
  for (const auto& f : ctx_) {
    auto fv = prooftk::free_vars(f);
    out.insert(fv.begin(), fv.end());
  }
  return out;
}

bool Sequent::operator==(const Sequent& o) const {
  if (ctx_.size() != o.ctx_.size()) return false;
  if (!alpha_equal(goal_, o.goal_)) return false;
  for (std::size_t i = 0; i < ctx_.size(); ++i)
    if (!alpha_equal(ctx_[i], o.ctx_[i])) return false;
  return true;
}

bool Sequent::operator<(const Sequent& o) const {
  if (ctx_.size() != o.ctx_.size()) return ctx_.size() < o.ctx_.size();
  if (int c = compare(goal_, o.goal_)) return c < 0;
  for (std::size_t i = 0; i < ctx_.size(); ++i)
    if (int c = compare(ctx_[i], o.ctx_[i])) return c < 0;
  return false;
}

int Sequent::size() const {
  int s = goal_->size();
  for (const auto& f : ctx_) s += f->size();
  return s;
}

bool size_order_less(const FormulaRef& a, const FormulaRef& b) {
  return a->size() < b->size();
}

bool size_order_less(const Sequent& a, const Sequent& b) {
  return a.size() < b.size();
}

bool multiset_order_less(const Sequent& a, const Sequent& b) {
  // Multiset difference on sorted vectors of alpha-classes. Y = a - b are
  // the formulas added, X = b - a the formulas removed; a < b iff X is
  // nonempty and every member of Y is strictly smaller (by size) than some
  // member of X.
  std::vector<FormulaRef> ma = a.context();
  ma.push_back(a.goal());
  std::vector<FormulaRef> mb = b.context();
  mb.push_back(b.goal());
  auto less = [](const FormulaRef& x, const FormulaRef& y) {
    return compare(x, y) < 0;
  };
  std::sort(ma.begin(), ma.end(), less);
  std::sort(mb.begin(), mb.end(), less);
  std::vector<FormulaRef> added, removed;
  std::size_t i = 0, j = 0;
  while (i < ma.size() && j < mb.size()) {
    int c = compare(ma[i], mb[j]);
    if (c == 0) {
      ++i, ++j;
    } else if (c < 0) {
      added.push_back(ma[i++]);
    } else {
      removed.push_back(mb[j++]);
    }
  }
  while (i < ma.size()) added.push_back(ma[i++]);
  while (j < mb.size()) removed.push_back(mb[j++]);
  if (removed.empty()) return false;
  int max_removed = 0;
  for (const auto& f : removed) max_removed = std::max(max_removed, f->size());
  for (const auto& f : added)
    if (f->size() >= max_removed) return false;
  return true;
}

}  // namespace prooftk

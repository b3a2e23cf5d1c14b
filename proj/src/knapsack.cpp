#include "skillsched/knapsack.hpp"

#include <algorithm>
#include <numeric>

namespace skillsched {

namespace {

double ratio_denominator(const KnapsackItem& item, OrderingRule rule) {
  return rule == OrderingRule::EfficacyPerWorkload ? static_cast<double>(item.size())
                                                   : static_cast<double>(item.duration);
}

}  // namespace

std::vector<KnapsackItem> efficacy_order(std::vector<KnapsackItem> items, OrderingRule rule) {
  // Ratios are compared by cross-multiplication so equal ratios tie exactly.
  std::sort(items.begin(), items.end(), [rule](const KnapsackItem& a, const KnapsackItem& b) {
    const double lhs = a.value * ratio_denominator(b, rule);
    const double rhs = b.value * ratio_denominator(a, rule);
    if (lhs != rhs) return lhs > rhs;
    if (a.size() != b.size()) return a.size() < b.size();
    return a.job < b.job;
  });
  return items;
}

FractionalSolution dantzig_fractional(std::span<const KnapsackItem> ordered,
                                      std::int64_t capacity) {
  if (capacity < 0) throw NegativeCapacity("knapsack capacity must be non-negative");
  FractionalSolution sol;
  sol.x.assign(ordered.size(), 0.0);
  std::int64_t used = 0;
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    const std::int64_t size = ordered[i].size();
    if (used + size >= capacity) {
      // First item whose cumulative size reaches C takes the remainder.
      sol.split = i + 1;
      sol.x[i] = static_cast<double>(capacity - used) / static_cast<double>(size);
      sol.value += sol.x[i] * ordered[i].value;
      return sol;
    }
    used += size;
    sol.x[i] = 1.0;
    sol.value += ordered[i].value;
  }
  return sol;
}

PrefixSelection dantzig_integer_prefix(std::span<const KnapsackItem> ordered,
                                       std::int64_t capacity) {
  if (capacity < 0) throw NegativeCapacity("knapsack capacity must be non-negative");
  PrefixSelection sel;
  for (const auto& item : ordered) {
    if (sel.used + item.size() > capacity) break;
    sel.used += item.size();
    sel.value += item.value;
    ++sel.cut;
  }
  return sel;
}

std::vector<std::size_t> residual_fill(std::span<const KnapsackItem> rejected,
                                       std::int64_t residual) {
  std::vector<std::size_t> idx(rejected.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return rejected[a].size() < rejected[b].size();
  });
  std::vector<std::size_t> fill;
  std::int64_t used = 0;
  for (std::size_t i : idx) {
    if (used + rejected[i].size() > residual) break;
    used += rejected[i].size();
    fill.push_back(i);
  }
  return fill;
}

std::int64_t knapsack_capacity(std::span<const PlacedItem> placed, int t, int available) {
  std::int64_t cap = std::int64_t{t} * available;
  for (const auto& p : placed)
    if (p.start < t) cap -= std::int64_t{std::min(p.duration, t - p.start)} * p.crew;
  return cap;
}

}  // namespace skillsched

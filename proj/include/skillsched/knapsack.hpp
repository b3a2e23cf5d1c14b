#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace skillsched {

class NegativeCapacity : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Ordering key used to sort candidates before each knapsack is packed.
enum class OrderingRule {
  EfficacyPerWorkload,  // w / (p * lambda)
  EfficacyPerTime,      // w / p
};

/// A job seen by one skill's knapsacks: value w_m, size p_mk * lambda_mk.
struct KnapsackItem {
  int job = 0;
  double value = 0.0;
  int duration = 0;
  int crew = 0;

  std::int64_t size() const { return std::int64_t{duration} * crew; }
};

/// Sorts by non-increasing ratio under `rule`; ties go to the smaller size,
/// then the smaller job index.
std::vector<KnapsackItem> efficacy_order(std::vector<KnapsackItem> items, OrderingRule rule);

struct FractionalSolution {
  std::vector<double> x;
  double value = 0.0;
  /// 1-based position of the split item; 0 when every item fits.
  std::size_t split = 0;
};

/// LP optimum of the 0-1 knapsack over pre-sorted items: a full prefix, one
/// fractional split item, zeros after it.
FractionalSolution dantzig_fractional(std::span<const KnapsackItem> ordered, std::int64_t capacity);

struct PrefixSelection {
  /// Number of leading items taken (m_0). 0 when the first item does not fit.
  std::size_t cut = 0;
  std::int64_t used = 0;
  double value = 0.0;
};

/// Longest prefix of the ordered items whose cumulative size fits.
PrefixSelection dantzig_integer_prefix(std::span<const KnapsackItem> ordered,
                                       std::int64_t capacity);

/// Maximum-cardinality subset of `rejected` fitting in `residual`, taken in
/// non-decreasing size order. Returns positions into `rejected`.
std::vector<std::size_t> residual_fill(std::span<const KnapsackItem> rejected,
                                       std::int64_t residual);

/// A job already started on the skill.
struct PlacedItem {
  int start = 0;
  int duration = 0;
  int crew = 0;
};

/// C_t = t * b - sum over starts s < t of min(p, t - s) * lambda.
std::int64_t knapsack_capacity(std::span<const PlacedItem> placed, int t, int available);

}  // namespace skillsched

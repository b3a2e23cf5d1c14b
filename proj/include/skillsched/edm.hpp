#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <span>
#include <string>
#include <vector>

#include "skillsched/knapsack.hpp"
#include "skillsched/model.hpp"

namespace skillsched {

enum class CapacityMode {
  /// Knapsack test plus per-unit headcount: every unit of the job's window
  /// must stay within b_k.
  HeadcountGated,
  /// Knapsack test alone (plus the horizon). Per-unit headcount may be exceeded.
  KnapsackOnly,
};

struct EdmConfig {
  OrderingRule ordering = OrderingRule::EfficacyPerWorkload;
  CapacityMode capacity = CapacityMode::HeadcountGated;
  /// Keep iterating past the horizon instead of reporting Overflow.
  bool allow_overflow = false;
};

std::string to_string(OrderingRule rule);
std::string to_string(CapacityMode mode);
OrderingRule ordering_from_string(const std::string& text);
CapacityMode capacity_mode_from_string(const std::string& text);

/// One nested knapsack [0, t). Job lists hold instance job indices.
struct EdmIteration {
  int t = 0;
  /// Capacity at iteration entry, before this iteration's starts.
  std::int64_t capacity = 0;
  /// Unstarted jobs in efficacy order.
  std::vector<int> psi;
  /// Length of the admitted prefix within psi.
  std::size_t m0 = 0;
  /// Capacity left once the prefix was admitted.
  std::int64_t theta = 0;
  /// psi after the prefix.
  std::vector<int> residual;
  /// Members of `residual` chosen to fill theta.
  std::vector<int> residual_fill;
  /// Jobs started at instant t - 1.
  std::vector<int> started;
  /// Total weight of jobs started within [0, t).
  double value = 0.0;
};

struct EdmTrace {
  int skill = 0;
  std::vector<EdmIteration> iterations;
};

struct SkillSchedule {
  int skill = 0;
  /// Start per job requiring the skill, -1 when never placed; indexed like
  /// Instance::jobs_of_skill(skill).
  std::vector<int> starts;
  /// Jobs not placed by the horizon, or placed past it when extended.
  std::vector<int> overflow;
  bool extended = false;
  /// Weighted completion of this skill's operations; valid when every job
  /// was placed.
  double z_k = 0.0;
  EdmTrace trace;

  bool complete() const { return overflow.empty(); }
};

/// True when a job of (duration, crew) starting at `start` fits under the
/// headcount b at every unit it occupies, and ends by `horizon` (pass a
/// negative horizon to lift that limit). usage[u] is the load of unit u + 1.
bool headcount_gate_admits(std::span<const int> usage, int start, int duration, int crew,
                           int available, int horizon);

/// Nested-knapsack procedure for one skill.
SkillSchedule edm_single_skill(const Instance& instance, int skill, const EdmConfig& config = {});

struct EdmResult {
  Schedule schedule;
  std::vector<SkillSchedule> skills;
  /// Present when every required pair received a start.
  std::optional<ObjectiveBreakdown> objective;
};

/// Runs the per-skill procedure independently for every skill and merges
/// the partial schedules. Deterministic for a fixed config.
EdmResult edm_solve(const Instance& instance, const EdmConfig& config = {});

/// Same result as edm_solve, with skills solved on worker threads.
EdmResult edm_solve_parallel(const Instance& instance, const EdmConfig& config = {},
                             unsigned threads = 0);

class EmptyInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// max_k Z_k* over per-skill optima; never above the optimum of the full
/// problem. Throws EmptyInput when no value is given.
double skill_lower_bound(std::span<const double> skill_optima);

}  // namespace skillsched

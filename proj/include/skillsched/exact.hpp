#pragma once

#include <chrono>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <stop_token>
#include <vector>

#include "skillsched/model.hpp"

namespace skillsched {

class NoFeasibleSchedule : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LimitsExceededWithoutIncumbent : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonpositiveReference : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class SearchMode {
  /// Node budget only; the wall clock is ignored so runs are reproducible.
  ProveOptimal,
  /// Node budget and wall clock.
  BestEffort,
};

struct SearchLimits {
  std::uint64_t max_nodes = 50'000'000;
  std::chrono::milliseconds max_time{60'000};
  SearchMode mode = SearchMode::ProveOptimal;
};

enum class Proof { Optimal, BestFound };

struct Incumbent {
  std::uint64_t node = 0;
  double value = 0.0;
};

struct ExactResult {
  Schedule schedule;
  /// Objective under normalized weights: Z for the full problem, Z_k for a
  /// single skill.
  double value = 0.0;
  Proof proof = Proof::BestFound;
  std::uint64_t nodes = 0;
  std::vector<Incumbent> history;
};

/// Depth-first branch and bound over start instants. Pairs are branched in
/// order of non-increasing job weight, then non-increasing workload within a
/// job; start values earliest first. Among equal-valued optima the one with
/// the lexicographically smallest start vector in that branching order wins.
ExactResult exact_solve(const Instance& instance, const SearchLimits& limits = {},
                        std::stop_token stop = {});

/// Same search restricted to the jobs of one skill; the value is Z_k.
ExactResult exact_single_skill(const Instance& instance, int skill,
                               const SearchLimits& limits = {}, std::stop_token stop = {});

/// The bound used for pruning: sum over jobs touched by `ops` of
/// w_m * max(assigned completions, earliest feasible completion of the
/// unassigned pairs given the assigned load). `starts[i]` belongs to ops[i],
/// -1 when unassigned. Returns +inf when some unassigned pair cannot fit.
double completion_lower_bound(const Instance& instance, std::span<const Operation> ops,
                              std::span<const int> starts);

/// Branching order used by the search for the given pairs.
std::vector<Operation> branching_order(const Instance& instance, std::vector<Operation> ops);

/// Number of leaves of the unpruned search tree, log10. Used to refuse
/// instances too large for a desk-scale search.
double log10_search_space(const Instance& instance);

/// 100 * (heuristic - reference) / reference.
double gap_percent(double heuristic, double reference);

}  // namespace skillsched

#include "skillsched/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

namespace skillsched {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTieTolerance = 1e-9;

// Load per skill and unit, shared by the search and the standalone bound.
class LoadGrid {
 public:
  LoadGrid(int skills, int horizon) : horizon_(horizon), load_(static_cast<std::size_t>(skills) * horizon, 0) {}

  bool fits(int k, int start, int duration, int crew, int available) const {
    if (start + duration > horizon_) return false;
    const int* row = &load_[static_cast<std::size_t>(k) * horizon_];
    for (int u = start; u < start + duration; ++u)
      if (row[u] + crew > available) return false;
    return true;
  }

  void add(int k, int start, int duration, int crew) {
    int* row = &load_[static_cast<std::size_t>(k) * horizon_];
    for (int u = start; u < start + duration; ++u) row[u] += crew;
  }

  /// Earliest s with the window feasible, or -1.
  int earliest(int k, int duration, int crew, int available) const {
    for (int s = 0; s + duration <= horizon_; ++s)
      if (fits(k, s, duration, crew, available)) return s;
    return -1;
  }

 private:
  int horizon_;
  std::vector<int> load_;
};

// Jobs touched by a list of pairs, each with the positions of its pairs.
struct JobGroups {
  std::vector<int> jobs;
  std::vector<std::vector<std::size_t>> members;

  JobGroups(const Instance& instance, std::span<const Operation> ops) {
    std::vector<int> slot(instance.job_count(), -1);
    for (std::size_t i = 0; i < ops.size(); ++i) {
      int& s = slot[ops[i].job];
      if (s < 0) {
        s = static_cast<int>(jobs.size());
        jobs.push_back(ops[i].job);
        members.emplace_back();
      }
      members[s].push_back(i);
    }
  }
};

double bound_with(const Instance& instance, std::span<const Operation> ops,
                  std::span<const int> starts, const JobGroups& groups, const LoadGrid& grid) {
  double total = 0.0;
  for (std::size_t g = 0; g < groups.jobs.size(); ++g) {
    int phi = 0;
    for (std::size_t i : groups.members[g]) {
      const auto& op = ops[i];
      const auto& d = instance.demand(op.job, op.skill);
      int s = starts[i];
      if (s < 0) {
        s = grid.earliest(op.skill, d.duration, d.crew, instance.available(op.skill));
        if (s < 0) return kInf;
      }
      phi = std::max(phi, s + d.duration);
    }
    total += instance.weight(groups.jobs[g]) * phi;
  }
  return total;
}

class BranchAndBound {
 public:
  BranchAndBound(const Instance& instance, std::vector<Operation> ops, const SearchLimits& limits,
                 std::stop_token stop)
      : inst_(instance),
        ops_(branching_order(instance, std::move(ops))),
        groups_(instance, ops_),
        grid_(instance.skill_count(), instance.horizon()),
        starts_(ops_.size(), -1),
        limits_(limits),
        stop_(std::move(stop)),
        began_(std::chrono::steady_clock::now()) {}

  ExactResult run() {
    if (bound_with(inst_, ops_, starts_, groups_, grid_) == kInf)
      throw NoFeasibleSchedule("some pair cannot be placed within the horizon");
    dfs(0);

    if (best_starts_.empty() && !ops_.empty()) {
      if (aborted_)
        throw LimitsExceededWithoutIncumbent("search limits reached before any feasible schedule");
      throw NoFeasibleSchedule("search exhausted without a feasible schedule");
    }
    ExactResult result;
    result.value = best_;
    result.proof = aborted_ ? Proof::BestFound : Proof::Optimal;
    result.nodes = nodes_;
    result.history = std::move(history_);
    for (std::size_t i = 0; i < ops_.size(); ++i)
      result.schedule.starts.push_back({ops_[i].job, ops_[i].skill, best_starts_[i]});
    std::sort(result.schedule.starts.begin(), result.schedule.starts.end(),
              [](const StartEntry& a, const StartEntry& b) {
                return std::tie(a.job, a.skill) < std::tie(b.job, b.skill);
              });
    result.schedule.status = ScheduleStatus::Complete;
    return result;
  }

 private:
  bool out_of_budget() {
    if (nodes_ >= limits_.max_nodes) return true;
    if (stop_.stop_requested()) return true;
    if (limits_.mode == SearchMode::BestEffort && (nodes_ & 1023u) == 0 &&
        std::chrono::steady_clock::now() - began_ > limits_.max_time)
      return true;
    return false;
  }

  void dfs(std::size_t depth) {
    if (depth == ops_.size()) {
      const double value = bound_with(inst_, ops_, starts_, groups_, grid_);
      if (value < best_ - kTieTolerance) {
        best_ = value;
        best_starts_ = starts_;
        history_.push_back({nodes_, value});
      }
      return;
    }
    const auto& op = ops_[depth];
    const auto& d = inst_.demand(op.job, op.skill);
    const int b = inst_.available(op.skill);
    for (int s = 0; s + d.duration <= inst_.horizon(); ++s) {
      if (!grid_.fits(op.skill, s, d.duration, d.crew, b)) continue;
      if (out_of_budget()) {
        aborted_ = true;
        return;
      }
      ++nodes_;
      grid_.add(op.skill, s, d.duration, d.crew);
      starts_[depth] = s;
      if (bound_with(inst_, ops_, starts_, groups_, grid_) < best_ - kTieTolerance) dfs(depth + 1);
      starts_[depth] = -1;
      grid_.add(op.skill, s, d.duration, -d.crew);
      if (aborted_) return;
    }
  }

  const Instance& inst_;
  std::vector<Operation> ops_;
  JobGroups groups_;
  LoadGrid grid_;
  std::vector<int> starts_;
  SearchLimits limits_;
  std::stop_token stop_;
  std::chrono::steady_clock::time_point began_;

  double best_ = kInf;
  std::vector<int> best_starts_;
  std::vector<Incumbent> history_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
};

}  // namespace

std::vector<Operation> branching_order(const Instance& instance, std::vector<Operation> ops) {
  std::stable_sort(ops.begin(), ops.end(), [&](const Operation& a, const Operation& b) {
    const double wa = instance.weight(a.job);
    const double wb = instance.weight(b.job);
    if (wa != wb) return wa > wb;
    if (a.job != b.job) return a.job < b.job;
    const auto sa = instance.demand(a.job, a.skill).workload();
    const auto sb = instance.demand(b.job, b.skill).workload();
    if (sa != sb) return sa > sb;
    return a.skill < b.skill;
  });
  return ops;
}

double completion_lower_bound(const Instance& instance, std::span<const Operation> ops,
                              std::span<const int> starts) {
  if (ops.size() != starts.size())
    throw std::invalid_argument("one start slot per pair is required");
  LoadGrid grid(instance.skill_count(), instance.horizon());
  for (std::size_t i = 0; i < ops.size(); ++i)
    if (starts[i] >= 0) {
      const auto& d = instance.demand(ops[i].job, ops[i].skill);
      grid.add(ops[i].skill, starts[i], std::min(d.duration, instance.horizon() - starts[i]), d.crew);
    }
  return bound_with(instance, ops, starts, JobGroups(instance, ops), grid);
}

ExactResult exact_solve(const Instance& instance, const SearchLimits& limits,
                        std::stop_token stop) {
  if (limits.max_nodes < 1) throw std::invalid_argument("max_nodes must be at least 1");
  auto result = BranchAndBound(instance, instance.operations(), limits, std::move(stop)).run();
  result.value = objective(instance, result.schedule).z;
  return result;
}

ExactResult exact_single_skill(const Instance& instance, int skill, const SearchLimits& limits,
                               std::stop_token stop) {
  if (skill < 0 || skill >= instance.skill_count())
    throw UnknownSkill("skill index " + std::to_string(skill) + " out of range");
  if (limits.max_nodes < 1) throw std::invalid_argument("max_nodes must be at least 1");
  std::vector<Operation> ops;
  for (int m : instance.jobs_of_skill(skill)) ops.push_back({m, skill});
  if (ops.empty()) {
    ExactResult empty;
    empty.proof = Proof::Optimal;
    return empty;
  }
  const bool whole = ops.size() == instance.operations().size();
  auto result = BranchAndBound(instance, std::move(ops), limits, std::move(stop)).run();
  if (!whole) result.schedule.status = ScheduleStatus::Partial;
  return result;
}

double log10_search_space(const Instance& instance) {
  double total = 0.0;
  for (const auto& op : instance.operations())
    total += std::log10(static_cast<double>(instance.horizon() - instance.duration(op.job, op.skill) + 1));
  return total;
}

double gap_percent(double heuristic, double reference) {
  if (!(reference > 0.0)) throw NonpositiveReference("gap reference value must be positive");
  return 100.0 * (heuristic - reference) / reference;
}

}  // namespace skillsched

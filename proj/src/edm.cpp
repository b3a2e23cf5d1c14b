#include "skillsched/edm.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>
#include <tuple>
#include <unordered_map>

namespace skillsched {

std::string to_string(OrderingRule rule) {
  return rule == OrderingRule::EfficacyPerWorkload ? "workload" : "time";
}

std::string to_string(CapacityMode mode) {
  return mode == CapacityMode::HeadcountGated ? "gated" : "literal";
}

OrderingRule ordering_from_string(const std::string& text) {
  if (text == "workload") return OrderingRule::EfficacyPerWorkload;
  if (text == "time") return OrderingRule::EfficacyPerTime;
  throw std::invalid_argument("ordering must be 'workload' or 'time', got '" + text + "'");
}

CapacityMode capacity_mode_from_string(const std::string& text) {
  if (text == "gated") return CapacityMode::HeadcountGated;
  if (text == "literal") return CapacityMode::KnapsackOnly;
  throw std::invalid_argument("capacity mode must be 'gated' or 'literal', got '" + text + "'");
}

bool headcount_gate_admits(std::span<const int> usage, int start, int duration, int crew,
                           int available, int horizon) {
  if (start < 0) return false;
  if (horizon >= 0 && start + duration > horizon) return false;
  for (int u = start; u < start + duration; ++u) {
    const int load = u < static_cast<int>(usage.size()) ? usage[u] : 0;
    if (load + crew > available) return false;
  }
  return true;
}

namespace {

class SkillPacker {
 public:
  SkillPacker(const Instance& instance, int skill, const EdmConfig& config)
      : inst_(instance), skill_(skill), config_(config), jobs_(instance.jobs_of_skill(skill)) {
    out_.skill = skill;
    out_.trace.skill = skill;
    out_.starts.assign(jobs_.size(), -1);
    usage_.assign(instance.horizon(), 0);
    for (std::size_t i = 0; i < jobs_.size(); ++i) local_[jobs_[i]] = i;
  }

  SkillSchedule run() {
    const int T = inst_.horizon();
    std::int64_t slack = 0;
    for (int m : jobs_) slack += inst_.duration(m, skill_) + inst_.demand(m, skill_).workload();
    const std::int64_t last_iteration = T + slack + 2;

    std::size_t unstarted = jobs_.size();
    double value = 0.0;
    for (int t = 1; unstarted > 0; ++t) {
      if (t > T && !config_.allow_overflow) break;
      if (t > last_iteration) throw std::logic_error("nested knapsack iteration did not terminate");

      EdmIteration it;
      it.t = t;
      it.capacity = knapsack_capacity(placed_, t, inst_.available(skill_));

      std::vector<KnapsackItem> candidates;
      for (std::size_t i = 0; i < jobs_.size(); ++i)
        if (out_.starts[i] < 0) {
          const int m = jobs_[i];
          candidates.push_back({m, inst_.weight(m), inst_.duration(m, skill_), inst_.crew(m, skill_)});
        }
      const auto ordered = efficacy_order(std::move(candidates), config_.ordering);
      for (const auto& item : ordered) it.psi.push_back(item.job);

      const int start = t - 1;
      const std::int64_t room = std::max<std::int64_t>(it.capacity, 0);
      std::int64_t used = 0;
      std::size_t pos = 0;
      for (; pos < ordered.size(); ++pos) {
        if (used + ordered[pos].size() > room) break;
        if (admit(ordered[pos], start)) {
          used += ordered[pos].size();
          it.started.push_back(ordered[pos].job);
        }
      }
      it.m0 = pos;
      it.theta = room - used;

      const std::span<const KnapsackItem> rejected(ordered.begin() + static_cast<std::ptrdiff_t>(pos),
                                                   ordered.end());
      for (const auto& item : rejected) it.residual.push_back(item.job);
      for (std::size_t i : residual_fill(rejected, it.theta)) {
        it.residual_fill.push_back(rejected[i].job);
        if (admit(rejected[i], start)) it.started.push_back(rejected[i].job);
      }

      for (int m : it.started) value += inst_.weight(m);
      unstarted -= it.started.size();
      it.value = value;
      out_.trace.iterations.push_back(std::move(it));
    }

    bool all_placed = true;
    double z = 0.0;
    for (std::size_t i = 0; i < jobs_.size(); ++i) {
      const int m = jobs_[i];
      const int s = out_.starts[i];
      const int p = inst_.duration(m, skill_);
      if (s < 0) {
        all_placed = false;
        out_.overflow.push_back(m);
        continue;
      }
      if (s + p > T) {
        out_.extended = true;
        out_.overflow.push_back(m);
      }
      z += inst_.weight(m) * (p + s);
    }
    out_.z_k = all_placed ? z : std::numeric_limits<double>::quiet_NaN();
    return std::move(out_);
  }

 private:
  bool admit(const KnapsackItem& item, int start) {
    const int horizon = config_.allow_overflow ? -1 : inst_.horizon();
    if (config_.capacity == CapacityMode::HeadcountGated) {
      if (!headcount_gate_admits(usage_, start, item.duration, item.crew, inst_.available(skill_),
                                 horizon))
        return false;
    } else if (horizon >= 0 && start + item.duration > horizon) {
      return false;
    }
    if (static_cast<int>(usage_.size()) < start + item.duration) usage_.resize(start + item.duration, 0);
    for (int u = start; u < start + item.duration; ++u) usage_[u] += item.crew;
    placed_.push_back({start, item.duration, item.crew});
    out_.starts[local_.at(item.job)] = start;
    return true;
  }

  const Instance& inst_;
  int skill_;
  EdmConfig config_;
  const std::vector<int>& jobs_;
  std::unordered_map<int, std::size_t> local_;
  std::vector<int> usage_;
  std::vector<PlacedItem> placed_;
  SkillSchedule out_;
};

EdmResult merge(const Instance& instance, std::vector<SkillSchedule> skills) {
  EdmResult result;
  bool complete = true;
  for (const auto& s : skills) {
    const auto& jobs = instance.jobs_of_skill(s.skill);
    for (std::size_t i = 0; i < jobs.size(); ++i)
      if (s.starts[i] >= 0) result.schedule.starts.push_back({jobs[i], s.skill, s.starts[i]});
    for (int m : s.overflow) result.schedule.unplaced.push_back({m, s.skill});
    complete = complete && s.complete();
    result.schedule.extended = result.schedule.extended || s.extended;
  }
  auto by_pair = [](const auto& a, const auto& b) {
    return std::tie(a.job, a.skill) < std::tie(b.job, b.skill);
  };
  std::sort(result.schedule.starts.begin(), result.schedule.starts.end(), by_pair);
  std::sort(result.schedule.unplaced.begin(), result.schedule.unplaced.end(), by_pair);
  result.schedule.status = complete ? ScheduleStatus::Complete : ScheduleStatus::Overflow;
  if (result.schedule.starts.size() == instance.operations().size())
    result.objective = objective(instance, result.schedule);
  result.skills = std::move(skills);
  return result;
}

}  // namespace

SkillSchedule edm_single_skill(const Instance& instance, int skill, const EdmConfig& config) {
  if (skill < 0 || skill >= instance.skill_count())
    throw UnknownSkill("skill index " + std::to_string(skill) + " out of range");
  return SkillPacker(instance, skill, config).run();
}

EdmResult edm_solve(const Instance& instance, const EdmConfig& config) {
  std::vector<SkillSchedule> skills;
  skills.reserve(instance.skill_count());
  for (int k = 0; k < instance.skill_count(); ++k)
    skills.push_back(edm_single_skill(instance, k, config));
  return merge(instance, std::move(skills));
}

EdmResult edm_solve_parallel(const Instance& instance, const EdmConfig& config, unsigned threads) {
  const int K = instance.skill_count();
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max(K, 1)));

  std::vector<SkillSchedule> skills(K);
  std::vector<std::exception_ptr> errors(K);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int k = next++; k < K; k = next++) {
      try {
        skills[k] = edm_single_skill(instance, k, config);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  pool.clear();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return merge(instance, std::move(skills));
}

double skill_lower_bound(std::span<const double> skill_optima) {
  if (skill_optima.empty()) throw EmptyInput("no per-skill optimum given");
  return *std::max_element(skill_optima.begin(), skill_optima.end());
}

}  // namespace skillsched

#include "skillsched/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace skillsched {

namespace {

constexpr double kWeightTolerance = 1e-9;

std::string feasibility_message(const std::string& skill, std::int64_t workload,
                                std::int64_t capacity) {
  std::ostringstream os;
  os << "skill '" << skill << "' needs " << workload << " man-hours but only " << capacity
     << " are available over the horizon";
  return os.str();
}

}  // namespace

FeasibilityError::FeasibilityError(std::string skill, std::int64_t workload,
                                   std::int64_t capacity)
    : ModelError(feasibility_message(skill, workload, capacity)),
      skill_(std::move(skill)),
      workload_(workload),
      capacity_(capacity) {}

int Instance::job_index(const std::string& id) const {
  auto it = std::find(job_ids_.begin(), job_ids_.end(), id);
  if (it == job_ids_.end()) throw UnknownJob("unknown job '" + id + "'");
  return static_cast<int>(it - job_ids_.begin());
}

int Instance::skill_index(const std::string& id) const {
  auto it = std::find(skill_ids_.begin(), skill_ids_.end(), id);
  if (it == skill_ids_.end()) throw UnknownSkill("unknown skill '" + id + "'");
  return static_cast<int>(it - skill_ids_.begin());
}

InstanceSpec Instance::spec() const {
  InstanceSpec raw;
  raw.horizon = horizon_;
  for (int k = 0; k < skill_count(); ++k) raw.skills.push_back({skill_ids_[k], available_[k]});
  for (int m = 0; m < job_count(); ++m) {
    JobSpec job{job_ids_[m], raw_weights_[m], {}};
    for (int k = 0; k < skill_count(); ++k) {
      const auto& d = demand(m, k);
      if (d.required()) job.demands.push_back({skill_ids_[k], d.duration, d.crew});
    }
    raw.jobs.push_back(std::move(job));
  }
  return raw;
}

Instance Instance::with_workforce(std::span<const int> available) const {
  if (static_cast<int>(available.size()) != skill_count())
    throw std::invalid_argument("workforce vector size does not match the skill count");
  InstanceSpec raw = spec();
  for (int k = 0; k < skill_count(); ++k) raw.skills[k].available = available[k];
  return build_instance(raw);
}

Instance build_instance(const InstanceSpec& raw) {
  if (raw.horizon < 1)
    throw HorizonError("horizon must be at least 1 time unit, got " + std::to_string(raw.horizon));
  if (raw.jobs.empty()) throw DemandError("instance has no jobs");

  Instance inst;
  inst.horizon_ = raw.horizon;

  std::unordered_map<std::string, int> skill_of;
  for (const auto& s : raw.skills) {
    if (s.available < 0)
      throw DemandError("skill '" + s.id + "' has negative availability");
    if (!skill_of.emplace(s.id, static_cast<int>(inst.skill_ids_.size())).second)
      throw DemandError("duplicate skill id '" + s.id + "'");
    inst.skill_ids_.push_back(s.id);
    inst.available_.push_back(s.available);
  }
  const int K = inst.skill_count();

  std::unordered_map<std::string, int> seen_jobs;
  inst.demands_.assign(raw.jobs.size() * static_cast<std::size_t>(K), SkillDemand{});
  for (const auto& job : raw.jobs) {
    const int m = static_cast<int>(inst.job_ids_.size());
    if (!seen_jobs.emplace(job.id, m).second)
      throw DemandError("duplicate job id '" + job.id + "'");
    if (!(job.weight > 0.0) || !std::isfinite(job.weight))
      throw WeightError("job '" + job.id + "' must have a positive weight");
    inst.job_ids_.push_back(job.id);
    inst.raw_weights_.push_back(job.weight);

    bool any = false;
    std::vector<bool> given(K, false);
    for (const auto& d : job.demands) {
      auto it = skill_of.find(d.skill);
      if (it == skill_of.end())
        throw UnknownSkill("job '" + job.id + "' requires unknown skill '" + d.skill + "'");
      const int k = it->second;
      if (given[k])
        throw DemandError("job '" + job.id + "' lists skill '" + d.skill + "' twice");
      given[k] = true;
      const std::string where = "job '" + job.id + "', skill '" + d.skill + "': ";
      if (d.duration < 0 || d.crew < 0) throw DemandError(where + "negative duration or crew");
      if (d.duration == 0) {
        if (d.crew > 0) throw DemandError(where + "crew given for a zero duration");
        continue;
      }
      if (d.duration > raw.horizon)
        throw DemandError(where + "duration " + std::to_string(d.duration) +
                          " exceeds the horizon " + std::to_string(raw.horizon));
      if (d.crew == 0) throw DemandError(where + "positive duration needs a crew of at least 1");
      if (d.crew > inst.available_[k])
        throw DemandError(where + "crew " + std::to_string(d.crew) + " exceeds the " +
                          std::to_string(inst.available_[k]) + " technicians available");
      inst.demands_[inst.index(m, k)] = SkillDemand{d.duration, d.crew};
      any = true;
    }
    if (!any) throw DemandError("job '" + job.id + "' requires no skill");
  }

  const double sum = std::accumulate(inst.raw_weights_.begin(), inst.raw_weights_.end(), 0.0);
  inst.weight_scale_ = sum;
  inst.weights_.reserve(inst.raw_weights_.size());
  for (double w : inst.raw_weights_) inst.weights_.push_back(w / sum);
  if (std::abs(sum - 1.0) > kWeightTolerance) {
    std::ostringstream os;
    os << "job weights summed to " << sum << " and were normalized to 1";
    inst.warnings_.push_back(os.str());
  }

  inst.jobs_of_skill_.assign(K, {});
  for (int m = 0; m < inst.job_count(); ++m)
    for (int k = 0; k < K; ++k)
      if (inst.requires_skill(m, k)) {
        inst.jobs_of_skill_[k].push_back(m);
        inst.operations_.push_back({m, k});
      }

  for (int k = 0; k < K; ++k) {
    const std::int64_t workload = total_workload(inst, k);
    const std::int64_t capacity = std::int64_t{raw.horizon} * inst.available_[k];
    if (workload > capacity) throw FeasibilityError(inst.skill_ids_[k], workload, capacity);
  }
  return inst;
}

std::string to_string(ScheduleStatus status) {
  switch (status) {
    case ScheduleStatus::Complete: return "Complete";
    case ScheduleStatus::Overflow: return "Overflow";
    case ScheduleStatus::Partial: return "Partial";
  }
  return "Partial";
}

ScheduleStatus schedule_status_from_string(const std::string& text) {
  if (text == "Complete") return ScheduleStatus::Complete;
  if (text == "Overflow") return ScheduleStatus::Overflow;
  if (text == "Partial") return ScheduleStatus::Partial;
  throw std::invalid_argument("unknown schedule status '" + text + "'");
}

std::optional<int> Schedule::start_of(int job, int skill) const {
  for (const auto& e : starts)
    if (e.job == job && e.skill == skill) return e.start;
  return std::nullopt;
}

std::vector<int> start_table(const Instance& instance, const Schedule& schedule) {
  const int K = instance.skill_count();
  std::vector<int> table(static_cast<std::size_t>(instance.job_count()) * K, -1);
  for (const auto& e : schedule.starts) {
    if (e.job < 0 || e.job >= instance.job_count() || e.skill < 0 || e.skill >= K)
      throw std::invalid_argument("start entry refers to a job or skill outside the instance");
    auto& slot = table[static_cast<std::size_t>(e.job) * K + e.skill];
    if (slot != -1)
      throw std::invalid_argument("duplicate start for job '" + instance.job_id(e.job) +
                                  "', skill '" + instance.skill_id(e.skill) + "'");
    slot = e.start;
  }
  return table;
}

ObjectiveBreakdown objective(const Instance& instance, const Schedule& schedule) {
  const int M = instance.job_count();
  const int K = instance.skill_count();
  const auto starts = start_table(instance, schedule);

  ObjectiveBreakdown out;
  out.skill_count = K;
  out.completion.assign(starts.size(), -1);
  out.phi.assign(M, 0);
  out.z_k.assign(K, 0.0);
  out.q_k.assign(K, 0.0);

  for (const auto& op : instance.operations()) {
    const auto i = static_cast<std::size_t>(op.job) * K + op.skill;
    if (starts[i] < 0)
      throw IncompleteSchedule("job '" + instance.job_id(op.job) + "' has no start for skill '" +
                               instance.skill_id(op.skill) + "'");
    const int p = instance.duration(op.job, op.skill);
    const double w = instance.weight(op.job);
    out.completion[i] = starts[i] + p;
    out.phi[op.job] = std::max(out.phi[op.job], out.completion[i]);
    out.q_k[op.skill] += w * p;
    out.z_k[op.skill] += w * starts[i];
  }
  for (int k = 0; k < K; ++k) out.z_k[k] += out.q_k[k];
  for (int m = 0; m < M; ++m) out.z += instance.weight(m) * out.phi[m];
  out.z_unit = out.z * instance.weight_scale();
  return out;
}

std::int64_t total_workload(const Instance& instance, int skill) {
  if (skill < 0 || skill >= instance.skill_count())
    throw UnknownSkill("skill index " + std::to_string(skill) + " out of range");
  std::int64_t sum = 0;
  for (int m = 0; m < instance.job_count(); ++m) sum += instance.demand(m, skill).workload();
  return sum;
}

std::int64_t total_workload(const Instance& instance, const std::string& skill) {
  return total_workload(instance, instance.skill_index(skill));
}

OpCount op_count(const Instance& instance) {
  OpCount c;
  c.per_skill.reserve(instance.skill_count());
  for (int k = 0; k < instance.skill_count(); ++k) {
    c.per_skill.push_back(static_cast<int>(instance.jobs_of_skill(k).size()));
    c.total += c.per_skill.back();
  }
  return c;
}

std::vector<int> headcount_profile(const Instance& instance, const Schedule& schedule,
                                   int skill) {
  if (skill < 0 || skill >= instance.skill_count())
    throw UnknownSkill("skill index " + std::to_string(skill) + " out of range");
  int length = instance.horizon();
  for (const auto& e : schedule.starts)
    if (e.skill == skill && e.start >= 0 && e.job >= 0 && e.job < instance.job_count())
      length = std::max(length, e.start + instance.duration(e.job, skill));

  std::vector<int> usage(length, 0);
  for (const auto& e : schedule.starts) {
    if (e.skill != skill || e.start < 0 || e.job < 0 || e.job >= instance.job_count()) continue;
    const auto& d = instance.demand(e.job, skill);
    // Unit u (1-based) is busy when s < u <= s + p; stored at u - 1.
    for (int u = e.start; u < e.start + d.duration; ++u) usage[u] += d.crew;
  }
  return usage;
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::MissingStart: return "MissingStart";
    case ViolationKind::DuplicateStart: return "DuplicateStart";
    case ViolationKind::UnexpectedStart: return "UnexpectedStart";
    case ViolationKind::StartOutOfRange: return "StartOutOfRange";
    case ViolationKind::ExceedsHorizon: return "ExceedsHorizon";
    case ViolationKind::HeadcountExceeded: return "HeadcountExceeded";
  }
  return "Unknown";
}

FeasibilityReport check_schedule(const Instance& instance, const Schedule& schedule) {
  const int K = instance.skill_count();
  const int T = instance.horizon();
  FeasibilityReport report;
  auto add = [&](ViolationKind kind, int m, int k, int unit, std::string detail) {
    report.violations.push_back({kind, m, k, unit, std::move(detail)});
  };

  std::vector<int> count(static_cast<std::size_t>(instance.job_count()) * K, 0);
  for (const auto& e : schedule.starts) {
    if (e.job < 0 || e.job >= instance.job_count() || e.skill < 0 || e.skill >= K) {
      add(ViolationKind::UnexpectedStart, e.job, e.skill, -1, "entry outside the instance");
      continue;
    }
    if (!instance.requires_skill(e.job, e.skill)) {
      add(ViolationKind::UnexpectedStart, e.job, e.skill, -1, "skill not required by the job");
      continue;
    }
    if (++count[static_cast<std::size_t>(e.job) * K + e.skill] == 2)
      add(ViolationKind::DuplicateStart, e.job, e.skill, -1, "more than one start");
    if (e.start < 0 || e.start > T - 1) {
      add(ViolationKind::StartOutOfRange, e.job, e.skill, -1,
          "start " + std::to_string(e.start) + " outside 0.." + std::to_string(T - 1));
      continue;
    }
    const int end = e.start + instance.duration(e.job, e.skill);
    if (end > T)
      add(ViolationKind::ExceedsHorizon, e.job, e.skill, -1,
          "completes at " + std::to_string(end) + " after the horizon " + std::to_string(T));
  }
  for (const auto& op : instance.operations())
    if (count[static_cast<std::size_t>(op.job) * K + op.skill] == 0)
      add(ViolationKind::MissingStart, op.job, op.skill, -1, "no start");

  for (int k = 0; k < K; ++k) {
    std::vector<int> usage(T, 0);
    for (const auto& e : schedule.starts) {
      if (e.skill != k || e.job < 0 || e.job >= instance.job_count()) continue;
      if (!instance.requires_skill(e.job, k) || e.start < 0) continue;
      const auto& d = instance.demand(e.job, k);
      for (int u = e.start; u < std::min(T, e.start + d.duration); ++u) usage[u] += d.crew;
    }
    for (int u = 0; u < T; ++u)
      if (usage[u] > instance.available(k))
        add(ViolationKind::HeadcountExceeded, -1, k, u + 1,
            "usage " + std::to_string(usage[u]) + " > " + std::to_string(instance.available(k)));
  }
  return report;
}

std::vector<bool> nested_capacity_check(const Instance& instance, const Schedule& schedule,
                                        int skill) {
  if (skill < 0 || skill >= instance.skill_count())
    throw UnknownSkill("skill index " + std::to_string(skill) + " out of range");
  const int T = instance.horizon();
  std::vector<bool> ok(T, true);
  for (int t = 1; t <= T; ++t) {
    std::int64_t placed = 0;
    for (const auto& e : schedule.starts) {
      if (e.skill != skill || e.start < 0 || e.start >= t) continue;
      if (e.job < 0 || e.job >= instance.job_count()) continue;
      const auto& d = instance.demand(e.job, skill);
      placed += std::int64_t{std::min(d.duration, t - e.start)} * d.crew;
    }
    ok[t - 1] = placed <= std::int64_t{t} * instance.available(skill);
  }
  return ok;
}

}  // namespace skillsched

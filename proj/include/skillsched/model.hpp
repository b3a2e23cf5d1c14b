#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace skillsched {

// ---------------------------------------------------------------------------
// Errors raised while building or evaluating a model. Feasibility violations of
// a schedule are data (see FeasibilityReport), not exceptions.
// ---------------------------------------------------------------------------

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class HorizonError : public ModelError {
 public:
  using ModelError::ModelError;
};

class DemandError : public ModelError {
 public:
  using ModelError::ModelError;
};

class WeightError : public ModelError {
 public:
  using ModelError::ModelError;
};

class UnknownSkill : public ModelError {
 public:
  using ModelError::ModelError;
};

class UnknownJob : public ModelError {
 public:
  using ModelError::ModelError;
};

class IncompleteSchedule : public ModelError {
 public:
  using ModelError::ModelError;
};

/// Total workload of a skill exceeds the man-hours available over the horizon.
class FeasibilityError : public ModelError {
 public:
  FeasibilityError(std::string skill, std::int64_t workload, std::int64_t capacity);

  const std::string& skill() const { return skill_; }
  std::int64_t workload() const { return workload_; }
  std::int64_t capacity() const { return capacity_; }

 private:
  std::string skill_;
  std::int64_t workload_;
  std::int64_t capacity_;
};

// ---------------------------------------------------------------------------
// Raw description, as read from an instance file. Nothing is validated here.
// ---------------------------------------------------------------------------

struct DemandSpec {
  std::string skill;
  int duration = 0;
  int crew = 0;
};

struct JobSpec {
  std::string id;
  double weight = 1.0;
  std::vector<DemandSpec> demands;
};

struct SkillSpec {
  std::string id;
  int available = 0;
};

struct InstanceSpec {
  int horizon = 0;
  std::vector<SkillSpec> skills;
  std::vector<JobSpec> jobs;
};

/// Duration and crew of one (job, skill) pair. duration == 0 means the skill
/// is not required by the job.
struct SkillDemand {
  int duration = 0;
  int crew = 0;

  bool required() const { return duration > 0; }
  std::int64_t workload() const { return std::int64_t{duration} * crew; }
};

/// A required (job, skill) pair.
struct Operation {
  int job = 0;
  int skill = 0;

  friend bool operator==(const Operation&, const Operation&) = default;
  friend auto operator<=>(const Operation&, const Operation&) = default;
};

/// Validated, immutable scheduling instance. Jobs and skills are addressed by
/// dense indices in input order; ids are kept for reporting.
class Instance {
 public:
  int horizon() const { return horizon_; }
  int job_count() const { return static_cast<int>(job_ids_.size()); }
  int skill_count() const { return static_cast<int>(skill_ids_.size()); }

  const std::string& job_id(int m) const { return job_ids_.at(m); }
  const std::string& skill_id(int k) const { return skill_ids_.at(k); }
  int job_index(const std::string& id) const;
  int skill_index(const std::string& id) const;

  /// Normalized weight; the weights of all jobs sum to 1.
  double weight(int m) const { return weights_[m]; }
  double raw_weight(int m) const { return raw_weights_[m]; }
  /// Sum of the weights as given. Multiplying a normalized objective by this
  /// factor gives the objective under the original weights.
  double weight_scale() const { return weight_scale_; }

  int available(int k) const { return available_[k]; }
  std::vector<int> workforce() const { return available_; }

  const SkillDemand& demand(int m, int k) const { return demands_[index(m, k)]; }
  int duration(int m, int k) const { return demand(m, k).duration; }
  int crew(int m, int k) const { return demand(m, k).crew; }
  bool requires_skill(int m, int k) const { return demand(m, k).required(); }

  /// Jobs requiring skill k, in job index order.
  const std::vector<int>& jobs_of_skill(int k) const { return jobs_of_skill_.at(k); }
  /// All required pairs ordered by (job, skill).
  const std::vector<Operation>& operations() const { return operations_; }

  const std::vector<std::string>& warnings() const { return warnings_; }

  /// Copy with a different per-skill workforce, re-validated.
  Instance with_workforce(std::span<const int> available) const;
  /// Reconstructs the raw description (original weights, ids, order).
  InstanceSpec spec() const;

 private:
  friend Instance build_instance(const InstanceSpec& raw);

  std::size_t index(int m, int k) const {
    return static_cast<std::size_t>(m) * skill_ids_.size() + static_cast<std::size_t>(k);
  }

  int horizon_ = 0;
  std::vector<std::string> job_ids_;
  std::vector<std::string> skill_ids_;
  std::vector<double> raw_weights_;
  std::vector<double> weights_;
  double weight_scale_ = 1.0;
  std::vector<int> available_;
  std::vector<SkillDemand> demands_;
  std::vector<std::vector<int>> jobs_of_skill_;
  std::vector<Operation> operations_;
  std::vector<std::string> warnings_;
};

/// Validates a raw description and normalizes weights to sum 1.
///
/// Throws HorizonError when T < 1, DemandError for impossible demands
/// (duration outside 1..T, a positive duration without crew, a crew that the
/// skill can never staff, unknown or repeated skills), WeightError for
/// non-positive weights and FeasibilityError when a skill's total workload
/// exceeds T * b_k.
Instance build_instance(const InstanceSpec& raw);

// ---------------------------------------------------------------------------
// Schedules
// ---------------------------------------------------------------------------

enum class ScheduleStatus { Complete, Overflow, Partial };

std::string to_string(ScheduleStatus status);
ScheduleStatus schedule_status_from_string(const std::string& text);

struct StartEntry {
  int job = 0;
  int skill = 0;
  int start = 0;

  friend bool operator==(const StartEntry&, const StartEntry&) = default;
};

/// Start instants for (job, skill) pairs. A present entry encodes y_mks = 1
/// for exactly one s. Entries are kept as given so that duplicates coming from
/// external input stay visible to check_schedule.
struct Schedule {
  std::vector<StartEntry> starts;
  ScheduleStatus status = ScheduleStatus::Partial;
  /// Pairs that could not be placed within the horizon (Overflow), or that
  /// finish past it when the schedule was extended.
  std::vector<Operation> unplaced;
  /// Set when placement continued past the horizon.
  bool extended = false;

  std::optional<int> start_of(int job, int skill) const;
};

/// Dense (job, skill) -> start lookup, -1 where absent. Throws
/// std::invalid_argument on duplicate entries.
std::vector<int> start_table(const Instance& instance, const Schedule& schedule);

struct ObjectiveBreakdown {
  /// Completion time per (job, skill), row-major by job; -1 when not required.
  std::vector<int> completion;
  int skill_count = 0;
  /// Overall completion per job.
  std::vector<int> phi;
  /// Total weighted completion time under normalized weights.
  double z = 0.0;
  /// Same objective under the weights as given (z * weight_scale).
  double z_unit = 0.0;
  /// Weighted completion per skill and its constant part sum(w_m * p_mk).
  std::vector<double> z_k;
  std::vector<double> q_k;

  int completion_of(int m, int k) const {
    return completion[static_cast<std::size_t>(m) * skill_count + k];
  }
};

/// Evaluates TWCT. Requires every required pair to carry a start; throws
/// IncompleteSchedule otherwise.
ObjectiveBreakdown objective(const Instance& instance, const Schedule& schedule);

std::int64_t total_workload(const Instance& instance, int skill);
std::int64_t total_workload(const Instance& instance, const std::string& skill);

struct OpCount {
  int total = 0;
  std::vector<int> per_skill;
};

OpCount op_count(const Instance& instance);

/// usage[t-1] = technicians of the skill busy during unit t. The vector covers
/// the horizon, or further when some start runs past it.
std::vector<int> headcount_profile(const Instance& instance, const Schedule& schedule, int skill);

enum class ViolationKind {
  MissingStart,
  DuplicateStart,
  UnexpectedStart,
  StartOutOfRange,
  ExceedsHorizon,
  HeadcountExceeded,
};

std::string to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  int job = -1;
  int skill = -1;
  int unit = -1;
  std::string detail;
};

struct FeasibilityReport {
  std::vector<Violation> violations;

  bool feasible() const { return violations.empty(); }
};

FeasibilityReport check_schedule(const Instance& instance, const Schedule& schedule);

/// For t = 1..T, whether the workload of the skill placed inside [0, t)
/// fits in t * b_k man-hours.
std::vector<bool> nested_capacity_check(const Instance& instance, const Schedule& schedule,
                                        int skill);

}  // namespace skillsched

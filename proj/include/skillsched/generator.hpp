#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "skillsched/model.hpp"

namespace skillsched {

class UnsatisfiableParams : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class WeightLaw { Uniform, Equal };

struct GeneratorParams {
  int jobs = 10;
  int skills = 7;
  /// One working day of two 8-hour shifts.
  int horizon = 16;
  int min_duration = 1;
  int max_duration = 4;
  int min_crew = 1;
  int max_crew = 3;
  /// Probability that a job requires a given skill. Every job gets at least
  /// one requirement regardless.
  double density = 0.3;
  /// Every job requires exactly one skill (density is ignored).
  bool single_skill_jobs = false;
  WeightLaw weights = WeightLaw::Uniform;
  /// Workforce level used to size b_k.
  double alpha = 0.3;
  /// Explicit workforce, one entry per skill.
  std::optional<std::vector<int>> workforce;

  /// Small instances the exact search proves quickly.
  static GeneratorParams desk();
};

/// Deterministic random instance. The workforce defaults to the per-skill
/// split at `alpha`, raised where needed so that every skill's total workload
/// fits in T * b_k. The result always passes build_instance.
InstanceSpec random_instance_spec(const GeneratorParams& params, std::uint64_t seed);
Instance random_instance(const GeneratorParams& params, std::uint64_t seed);

}  // namespace skillsched

#pragma once

#include <array>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "skillsched/edm.hpp"
#include "skillsched/exact.hpp"
#include "skillsched/model.hpp"

namespace skillsched {

class AlphaOutOfRange : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Sensitivity levels used for the benchmark scenarios.
inline constexpr std::array<double, 7> kDefaultAlphas{0.01, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5};

struct WorkforceBounds {
  int w_min = 0;  // sum_k max_m lambda_mk
  int w_max = 0;  // sum_k sum_m lambda_mk
  std::vector<int> min_per_skill;
  std::vector<int> max_per_skill;
};

WorkforceBounds workforce_bounds(const Instance& instance);

/// ceil((1 - alpha) * lo + alpha * hi); alpha in (0, 1].
int interpolate_workforce(int lo, int hi, double alpha);

/// Aggregate workforce level A_alpha.
int alpha_workforce(const WorkforceBounds& bounds, double alpha);

/// Per-skill split of the workforce level: each skill interpolates between
/// its own max crew and its crew total, so sum_k b_k >= A_alpha.
std::vector<int> allocate_per_skill(const Instance& instance, double alpha);

/// (OP * K) / A^0.1, the scenario scale index.
double scale_index(int op, int skills, int workforce);

enum class ScenarioStatus {
  Optimal,     // exact search proved optimality
  Best,        // exact search stopped with an incumbent
  EdmOnly,     // exact search not requested
  Infeasible,  // EDM overflowed the horizon
};

std::string to_string(ScenarioStatus status);

struct ScenarioResult {
  double alpha = 0.0;
  int a_alpha = 0;
  std::vector<int> workforce;
  int op = 0;
  int jobs = 0;
  int skills = 0;
  std::optional<double> z_edm;
  std::optional<double> z_ref;
  std::optional<double> z_lb;
  std::optional<double> gap;
  ScenarioStatus status = ScenarioStatus::EdmOnly;
  double edm_seconds = 0.0;
  std::optional<double> exact_seconds;
  /// Set when the row could not be evaluated normally.
  std::string note;
};

struct SweepOptions {
  EdmConfig edm;
  SearchLimits limits;
  bool run_exact = false;
  unsigned threads = 1;
};

/// One row per alpha, sorted by alpha. Row failures are recorded in the row,
/// never thrown.
std::vector<ScenarioResult> sweep(const Instance& instance, std::vector<double> alphas,
                                  const SweepOptions& options = {});

/// Delimited report laid out like the published comparison table. Timing
/// columns are omitted unless asked for, keeping reports byte-stable.
void write_sweep_csv(std::ostream& out, const std::vector<ScenarioResult>& rows,
                     bool with_timing = false);
nlohmann::json sweep_to_json(const Instance& instance, const std::vector<ScenarioResult>& rows,
                             bool with_timing = false);

}  // namespace skillsched

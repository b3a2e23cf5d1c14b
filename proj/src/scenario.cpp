#include "skillsched/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <thread>

namespace skillsched {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw AlphaOutOfRange("alpha must lie in (0, 1], got " + std::to_string(alpha));
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ScenarioResult evaluate(const Instance& base, double alpha, const WorkforceBounds& bounds,
                        const SweepOptions& options) {
  ScenarioResult row;
  row.alpha = alpha;
  row.jobs = base.job_count();
  row.skills = base.skill_count();
  row.op = op_count(base).total;
  try {
    row.a_alpha = alpha_workforce(bounds, alpha);
    row.workforce = allocate_per_skill(base, alpha);
  } catch (const std::exception& e) {
    row.status = ScenarioStatus::Infeasible;
    row.note = e.what();
    return row;
  }

  std::optional<Instance> scenario;
  try {
    scenario.emplace(base.with_workforce(row.workforce));
  } catch (const ModelError& e) {
    row.status = ScenarioStatus::Infeasible;
    row.note = e.what();
    return row;
  }

  const auto t0 = std::chrono::steady_clock::now();
  const auto edm = edm_solve(*scenario, options.edm);
  row.edm_seconds = seconds_since(t0);
  if (edm.objective) row.z_edm = edm.objective->z;
  const bool edm_ok = edm.schedule.status == ScheduleStatus::Complete;
  row.status = edm_ok ? ScenarioStatus::EdmOnly : ScenarioStatus::Infeasible;
  if (!edm_ok) row.note = "EDM overflowed the horizon";
  if (!options.run_exact) return row;

  try {
    const auto t1 = std::chrono::steady_clock::now();
    const auto exact = exact_solve(*scenario, options.limits);
    row.exact_seconds = seconds_since(t1);
    row.z_ref = exact.value;
    if (edm_ok) row.status = exact.proof == Proof::Optimal ? ScenarioStatus::Optimal : ScenarioStatus::Best;

    std::vector<double> optima;
    bool proved = true;
    for (int k = 0; k < scenario->skill_count(); ++k) {
      const auto sub = exact_single_skill(*scenario, k, options.limits);
      proved = proved && sub.proof == Proof::Optimal;
      optima.push_back(sub.value);
    }
    if (proved && !optima.empty()) row.z_lb = skill_lower_bound(optima);
    if (edm_ok && row.z_edm) row.gap = gap_percent(*row.z_edm, *row.z_ref);
  } catch (const std::exception& e) {
    row.note = e.what();
  }
  return row;
}

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

std::string opt(const std::optional<double>& v, int digits) {
  return v ? fixed(*v, digits) : std::string();
}

}  // namespace

WorkforceBounds workforce_bounds(const Instance& instance) {
  WorkforceBounds b;
  for (int k = 0; k < instance.skill_count(); ++k) {
    int top = 0, sum = 0;
    for (int m : instance.jobs_of_skill(k)) {
      top = std::max(top, instance.crew(m, k));
      sum += instance.crew(m, k);
    }
    b.min_per_skill.push_back(top);
    b.max_per_skill.push_back(sum);
    b.w_min += top;
    b.w_max += sum;
  }
  return b;
}

int interpolate_workforce(int lo, int hi, double alpha) {
  check_alpha(alpha);
  const double level = (1.0 - alpha) * lo + alpha * hi;
  // Guard the ceiling against representation noise such as 4.0000000000001.
  return static_cast<int>(std::ceil(level - 1e-9));
}

int alpha_workforce(const WorkforceBounds& bounds, double alpha) {
  return interpolate_workforce(bounds.w_min, bounds.w_max, alpha);
}

std::vector<int> allocate_per_skill(const Instance& instance, double alpha) {
  check_alpha(alpha);
  const auto bounds = workforce_bounds(instance);
  std::vector<int> b;
  for (int k = 0; k < instance.skill_count(); ++k)
    b.push_back(interpolate_workforce(bounds.min_per_skill[k], bounds.max_per_skill[k], alpha));
  return b;
}

double scale_index(int op, int skills, int workforce) {
  if (workforce < 1) throw std::invalid_argument("workforce level must be at least 1");
  return static_cast<double>(op) * skills / std::pow(static_cast<double>(workforce), 0.1);
}

std::string to_string(ScenarioStatus status) {
  switch (status) {
    case ScenarioStatus::Optimal: return "Optimal";
    case ScenarioStatus::Best: return "Best";
    case ScenarioStatus::EdmOnly: return "EdmOnly";
    case ScenarioStatus::Infeasible: return "Infeasible";
  }
  return "Infeasible";
}

std::vector<ScenarioResult> sweep(const Instance& instance, std::vector<double> alphas,
                                  const SweepOptions& options) {
  std::sort(alphas.begin(), alphas.end());
  const auto bounds = workforce_bounds(instance);
  std::vector<ScenarioResult> rows(alphas.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < alphas.size(); i = next++) {
      rows[i] = evaluate(instance, alphas[i], bounds, options);
    }
  };
  const unsigned threads =
      std::clamp<unsigned>(options.threads == 0 ? std::thread::hardware_concurrency() : options.threads,
                           1u, static_cast<unsigned>(std::max<std::size_t>(alphas.size(), 1)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<ScenarioResult>& rows, bool with_timing) {
  out << "alpha,M,OP,K,A_alpha,Z_LB,Z_ref,CPU_sec,Z_EDM,Gap_pct,status,workforce,EDM_sec\n";
  for (const auto& r : rows) {
    std::string workforce;
    for (std::size_t k = 0; k < r.workforce.size(); ++k)
      workforce += (k ? ";" : "") + std::to_string(r.workforce[k]);
    out << fixed(r.alpha, 2) << ',' << r.jobs << ',' << r.op << ',' << r.skills << ','
        << r.a_alpha << ',' << opt(r.z_lb, 6) << ',' << opt(r.z_ref, 6) << ','
        << (with_timing ? opt(r.exact_seconds, 3) : std::string()) << ',' << opt(r.z_edm, 6)
        << ',' << opt(r.gap, 2) << ',' << to_string(r.status) << ',' << workforce << ','
        << (with_timing ? fixed(r.edm_seconds, 6) : std::string()) << '\n';
  }
}

nlohmann::json sweep_to_json(const Instance& instance, const std::vector<ScenarioResult>& rows,
                             bool with_timing) {
  using nlohmann::json;
  json doc;
  doc["allocation"] =
      "per-skill ceil((1-alpha)*max crew + alpha*crew total); sum of b_k >= A_alpha";
  doc["rows"] = json::array();
  auto put = [](json& j, const char* key, const std::optional<double>& v) {
    j[key] = v ? json(*v) : json();
  };
  for (const auto& r : rows) {
    json row{{"alpha", r.alpha},   {"A_alpha", r.a_alpha},  {"M", r.jobs},
             {"OP", r.op},         {"K", r.skills},         {"status", to_string(r.status)},
             {"note", r.note}};
    row["workforce"] = json::object();
    for (std::size_t k = 0; k < r.workforce.size(); ++k)
      row["workforce"][instance.skill_id(static_cast<int>(k))] = r.workforce[k];
    put(row, "Z_EDM", r.z_edm);
    put(row, "Z_ref", r.z_ref);
    put(row, "Z_LB", r.z_lb);
    put(row, "gap", r.gap);
    if (with_timing) {
      row["edm_seconds"] = r.edm_seconds;
      put(row, "exact_seconds", r.exact_seconds);
    }
    doc["rows"].push_back(std::move(row));
  }
  return doc;
}

}  // namespace skillsched

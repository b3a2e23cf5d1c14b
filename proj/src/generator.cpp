#include "skillsched/generator.hpp"

#include <algorithm>
#include <random>

#include "skillsched/scenario.hpp"

namespace skillsched {

GeneratorParams GeneratorParams::desk() {
  GeneratorParams p;
  p.jobs = 4;
  p.skills = 2;
  p.horizon = 8;
  p.min_duration = 1;
  p.max_duration = 3;
  p.min_crew = 1;
  p.max_crew = 3;
  p.density = 0.5;
  return p;
}

InstanceSpec random_instance_spec(const GeneratorParams& params, std::uint64_t seed) {
  const auto& p = params;
  if (p.jobs < 1 || p.skills < 1) throw UnsatisfiableParams("need at least one job and one skill");
  if (p.horizon < 1) throw UnsatisfiableParams("horizon must be at least 1");
  if (p.min_duration < 1 || p.min_duration > p.max_duration)
    throw UnsatisfiableParams("duration range is empty or not positive");
  if (p.max_duration > p.horizon) throw UnsatisfiableParams("duration range exceeds the horizon");
  if (p.min_crew < 1 || p.min_crew > p.max_crew)
    throw UnsatisfiableParams("crew range is empty or not positive");
  if (!(p.density > 0.0 && p.density <= 1.0)) throw UnsatisfiableParams("density must lie in (0, 1]");
  if (!(p.alpha > 0.0 && p.alpha <= 1.0)) throw UnsatisfiableParams("alpha must lie in (0, 1]");
  if (p.workforce && static_cast<int>(p.workforce->size()) != p.skills)
    throw UnsatisfiableParams("workforce override needs one entry per skill");

  std::mt19937_64 rng(seed);
  auto uniform_int = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  InstanceSpec spec;
  spec.horizon = p.horizon;
  for (int k = 0; k < p.skills; ++k) spec.skills.push_back({"S" + std::to_string(k + 1), 0});

  for (int m = 0; m < p.jobs; ++m) {
    JobSpec job;
    job.id = "J" + std::to_string(m + 1);
    job.weight = p.weights == WeightLaw::Equal ? 1.0 : 1.0 - unit(rng);  // (0, 1]
    std::vector<bool> needs(p.skills, false);
    if (p.single_skill_jobs) {
      needs[uniform_int(0, p.skills - 1)] = true;
    } else {
      for (int k = 0; k < p.skills; ++k) needs[k] = unit(rng) < p.density;
      if (std::none_of(needs.begin(), needs.end(), [](bool b) { return b; }))
        needs[uniform_int(0, p.skills - 1)] = true;
    }
    for (int k = 0; k < p.skills; ++k)
      if (needs[k])
        job.demands.push_back({spec.skills[k].id, uniform_int(p.min_duration, p.max_duration),
                               uniform_int(p.min_crew, p.max_crew)});
    spec.jobs.push_back(std::move(job));
  }

  for (int k = 0; k < p.skills; ++k) {
    int top = 0, sum = 0;
    long long workload = 0;
    for (const auto& job : spec.jobs)
      for (const auto& d : job.demands)
        if (d.skill == spec.skills[k].id) {
          top = std::max(top, d.crew);
          sum += d.crew;
          workload += static_cast<long long>(d.duration) * d.crew;
        }
    int b = p.workforce ? (*p.workforce)[k] : interpolate_workforce(top, sum, p.alpha);
    if (!p.workforce) {
      const long long needed = (workload + p.horizon - 1) / p.horizon;
      b = std::max<int>(b, static_cast<int>(needed));
    }
    spec.skills[k].available = b;
  }
  return spec;
}

Instance random_instance(const GeneratorParams& params, std::uint64_t seed) {
  return build_instance(random_instance_spec(params, seed));
}

}  // namespace skillsched

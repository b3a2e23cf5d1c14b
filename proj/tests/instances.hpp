#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "skillsched/model.hpp"

namespace testdata {

using namespace skillsched;

// Two jobs on one skill: job1 (p=1, crew 5), job2 (p=2, crew 1), unit weights.
inline InstanceSpec pair_spec(int b = 5, int horizon = 3) {
  InstanceSpec s;
  s.horizon = horizon;
  s.skills = {{"S", b}};
  s.jobs = {{"job1", 1.0, {{"S", 1, 5}}}, {"job2", 1.0, {{"S", 2, 1}}}};
  return s;
}

// The pair plus job3 (p=2, crew 2).
inline InstanceSpec triple_spec(int b = 5, int horizon = 4) {
  auto s = pair_spec(b, horizon);
  s.jobs.push_back({"job3", 1.0, {{"S", 2, 2}}});
  return s;
}

inline Instance pair(int b = 5, int horizon = 3) { return build_instance(pair_spec(b, horizon)); }
inline Instance triple(int b = 5, int horizon = 4) { return build_instance(triple_spec(b, horizon)); }

inline Schedule make_schedule(const Instance& inst,
                              const std::vector<std::tuple<std::string, std::string, int>>& starts) {
  Schedule s;
  for (const auto& [job, skill, t] : starts)
    s.starts.push_back({inst.job_index(job), inst.skill_index(skill), t});
  s.status = ScheduleStatus::Complete;
  return s;
}

}  // namespace testdata

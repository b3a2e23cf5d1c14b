#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"

#include "skillsched/model.hpp"

namespace skillsched {

using json = nlohmann::json;

/// Malformed instance or schedule document (wrong shape, wrong types).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Instance file:
//   { "horizon": T,
//     "skills": [{"id": str, "available": int}],
//     "jobs":   [{"id": str, "weight": float,
//                 "demands": [{"skill": str, "duration": int, "crew": int}]}] }
InstanceSpec instance_spec_from_json(const json& doc);
json instance_spec_to_json(const InstanceSpec& spec);

Instance read_instance(const std::string& path);
void write_instance(const std::string& path, const InstanceSpec& spec);

/// FNV-1a over the canonical (compact, key-sorted) instance document.
std::uint64_t instance_checksum(const Instance& instance);
std::string checksum_hex(std::uint64_t value);

// Schedule export, also the Gantt payload:
//   { "status": str, "extended": bool,
//     "starts": [{"job", "skill", "start", "duration", "crew"}],
//     "unplaced": [{"job", "skill"}],
//     "objective": {"Z", "Z_unit", "phi": {job: int}, "Z_k": {skill: float},
//                   "Q_k": {skill: float}} | null }
// "objective" is null when some required pair has no start.
json schedule_to_json(const Instance& instance, const Schedule& schedule);
json objective_to_json(const Instance& instance, const ObjectiveBreakdown& obj);
Schedule schedule_from_json(const Instance& instance, const json& doc);

json report_to_json(const Instance& instance, const FeasibilityReport& report);

}  // namespace skillsched

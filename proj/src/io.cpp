#include "skillsched/io.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <tuple>

namespace skillsched {

namespace {

template <typename T>
T field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key))
    throw FormatError(where + ": missing field '" + key + "'");
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw FormatError(where + ": field '" + key + "' has the wrong type");
  }
}

int integer_field(const json& obj, const char* key, const std::string& where) {
  const auto& v = obj.contains(key) ? obj.at(key) : json();
  if (!v.is_number_integer()) throw FormatError(where + ": field '" + key + "' must be an integer");
  return v.get<int>();
}

}  // namespace

InstanceSpec instance_spec_from_json(const json& doc) {
  if (!doc.is_object()) throw FormatError("instance document must be an object");
  InstanceSpec spec;
  spec.horizon = integer_field(doc, "horizon", "instance");

  const auto& skills = doc.contains("skills") ? doc.at("skills") : json();
  if (!skills.is_array()) throw FormatError("instance: 'skills' must be an array");
  for (std::size_t i = 0; i < skills.size(); ++i) {
    const std::string where = "skills[" + std::to_string(i) + "]";
    spec.skills.push_back(
        {field<std::string>(skills[i], "id", where), integer_field(skills[i], "available", where)});
  }

  const auto& jobs = doc.contains("jobs") ? doc.at("jobs") : json();
  if (!jobs.is_array()) throw FormatError("instance: 'jobs' must be an array");
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const std::string where = "jobs[" + std::to_string(i) + "]";
    JobSpec job;
    job.id = field<std::string>(jobs[i], "id", where);
    job.weight = jobs[i].contains("weight") ? field<double>(jobs[i], "weight", where) : 1.0;
    const auto& demands = jobs[i].contains("demands") ? jobs[i].at("demands") : json();
    if (!demands.is_array()) throw FormatError(where + ": 'demands' must be an array");
    for (std::size_t j = 0; j < demands.size(); ++j) {
      const std::string dw = where + ".demands[" + std::to_string(j) + "]";
      job.demands.push_back({field<std::string>(demands[j], "skill", dw),
                             integer_field(demands[j], "duration", dw),
                             integer_field(demands[j], "crew", dw)});
    }
    spec.jobs.push_back(std::move(job));
  }
  return spec;
}

json instance_spec_to_json(const InstanceSpec& spec) {
  json doc;
  doc["horizon"] = spec.horizon;
  doc["skills"] = json::array();
  for (const auto& s : spec.skills) doc["skills"].push_back({{"id", s.id}, {"available", s.available}});
  doc["jobs"] = json::array();
  for (const auto& j : spec.jobs) {
    json job{{"id", j.id}, {"weight", j.weight}, {"demands", json::array()}};
    for (const auto& d : j.demands)
      job["demands"].push_back({{"skill", d.skill}, {"duration", d.duration}, {"crew", d.crew}});
    doc["jobs"].push_back(std::move(job));
  }
  return doc;
}

Instance read_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open instance file '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw FormatError("instance file '" + path + "' is not valid JSON: " + e.what());
  }
  return build_instance(instance_spec_from_json(doc));
}

void write_instance(const std::string& path, const InstanceSpec& spec) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write instance file '" + path + "'");
  out << instance_spec_to_json(spec).dump(2) << '\n';
}

std::uint64_t instance_checksum(const Instance& instance) {
  const std::string text = instance_spec_to_json(instance.spec()).dump();
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string checksum_hex(std::uint64_t value) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << value;
  return os.str();
}

json objective_to_json(const Instance& instance, const ObjectiveBreakdown& obj) {
  json out{{"Z", obj.z}, {"Z_unit", obj.z_unit}};
  out["phi"] = json::object();
  for (int m = 0; m < instance.job_count(); ++m) out["phi"][instance.job_id(m)] = obj.phi[m];
  out["Z_k"] = json::object();
  out["Q_k"] = json::object();
  for (int k = 0; k < instance.skill_count(); ++k) {
    out["Z_k"][instance.skill_id(k)] = obj.z_k[k];
    out["Q_k"][instance.skill_id(k)] = obj.q_k[k];
  }
  return out;
}

json schedule_to_json(const Instance& instance, const Schedule& schedule) {
  json doc{{"status", to_string(schedule.status)}, {"extended", schedule.extended}};
  std::vector<StartEntry> sorted = schedule.starts;
  std::stable_sort(sorted.begin(), sorted.end(), [](const StartEntry& a, const StartEntry& b) {
    return std::tie(a.job, a.skill) < std::tie(b.job, b.skill);
  });
  doc["starts"] = json::array();
  for (const auto& e : sorted) {
    const auto& d = instance.demand(e.job, e.skill);
    doc["starts"].push_back({{"job", instance.job_id(e.job)},
                             {"skill", instance.skill_id(e.skill)},
                             {"start", e.start},
                             {"duration", d.duration},
                             {"crew", d.crew}});
  }
  doc["unplaced"] = json::array();
  for (const auto& op : schedule.unplaced)
    doc["unplaced"].push_back({{"job", instance.job_id(op.job)}, {"skill", instance.skill_id(op.skill)}});

  bool all_started = true;
  for (const auto& op : instance.operations())
    if (!schedule.start_of(op.job, op.skill)) all_started = false;
  doc["objective"] = all_started ? objective_to_json(instance, objective(instance, schedule)) : json();
  return doc;
}

Schedule schedule_from_json(const Instance& instance, const json& doc) {
  if (!doc.is_object()) throw FormatError("schedule document must be an object");
  Schedule s;
  try {
    s.status = schedule_status_from_string(field<std::string>(doc, "status", "schedule"));
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("schedule: ") + e.what());
  }
  s.extended = doc.value("extended", false);
  const auto& starts = doc.contains("starts") ? doc.at("starts") : json();
  if (!starts.is_array()) throw FormatError("schedule: 'starts' must be an array");
  for (std::size_t i = 0; i < starts.size(); ++i) {
    const std::string where = "starts[" + std::to_string(i) + "]";
    s.starts.push_back({instance.job_index(field<std::string>(starts[i], "job", where)),
                        instance.skill_index(field<std::string>(starts[i], "skill", where)),
                        integer_field(starts[i], "start", where)});
  }
  if (doc.contains("unplaced")) {
    const auto& unplaced = doc.at("unplaced");
    if (!unplaced.is_array()) throw FormatError("schedule: 'unplaced' must be an array");
    for (std::size_t i = 0; i < unplaced.size(); ++i) {
      const std::string where = "unplaced[" + std::to_string(i) + "]";
      s.unplaced.push_back({instance.job_index(field<std::string>(unplaced[i], "job", where)),
                            instance.skill_index(field<std::string>(unplaced[i], "skill", where))});
    }
  }
  return s;
}

json report_to_json(const Instance& instance, const FeasibilityReport& report) {
  json doc{{"feasible", report.feasible()}, {"violations", json::array()}};
  for (const auto& v : report.violations) {
    json item{{"kind", to_string(v.kind)}, {"detail", v.detail}};
    if (v.job >= 0 && v.job < instance.job_count()) item["job"] = instance.job_id(v.job);
    if (v.skill >= 0 && v.skill < instance.skill_count()) item["skill"] = instance.skill_id(v.skill);
    if (v.unit >= 0) item["unit"] = v.unit;
    doc["violations"].push_back(std::move(item));
  }
  return doc;
}

}  // namespace skillsched

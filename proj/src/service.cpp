#include "skillsched/service.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string_view>
#include <sstream>

#include "httplib.h"

#include "skillsched/edm.hpp"
#include "skillsched/io.hpp"
#include "skillsched/scenario.hpp"

namespace skillsched {

struct WhatIfService::Session {
  Instance instance;
  std::string checksum;
};

struct WhatIfService::Server {
  httplib::Server http;
};

namespace {

const char* const kChecksumHeader = "X-Instance-Checksum";

struct BadRequest : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct Unprocessable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

HttpReply reply(int status, const json& doc) {
  HttpReply r;
  r.status = status;
  r.body = doc.dump();
  r.headers["Content-Type"] = "application/json";
  return r;
}

HttpReply error_reply(int status, const std::string& kind, const std::string& detail) {
  return reply(status, json{{"error", kind}, {"detail", detail}});
}

json parse_body(const std::string& body) {
  if (body.empty()) return json::object();
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::parse_error& e) {
    throw BadRequest(std::string("body is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw BadRequest("body must be a JSON object");
  return doc;
}

std::string get_string(const json& doc, const char* key, const std::string& fallback) {
  if (!doc.contains(key) || doc[key].is_null()) return fallback;
  if (!doc[key].is_string()) throw BadRequest(std::string("'") + key + "' must be a string");
  return doc[key].get<std::string>();
}

bool get_bool(const json& doc, const char* key) {
  if (!doc.contains(key) || doc[key].is_null()) return false;
  if (!doc[key].is_boolean()) throw BadRequest(std::string("'") + key + "' must be a boolean");
  return doc[key].get<bool>();
}

EdmConfig read_config(const json& doc) {
  EdmConfig c;
  try {
    c.ordering = ordering_from_string(get_string(doc, "ordering", "workload"));
    c.capacity = capacity_mode_from_string(get_string(doc, "capacity_mode", "gated"));
  } catch (const std::invalid_argument& e) {
    throw BadRequest(e.what());
  }
  c.allow_overflow = get_bool(doc, "allow_overflow");
  return c;
}

// {"S1": 6, ...}; skills not named keep their stored headcount.
std::vector<int> read_workforce(const Instance& inst, const json& doc) {
  std::vector<int> b;
  for (int k = 0; k < inst.skill_count(); ++k) b.push_back(inst.available(k));
  if (!doc.contains("workforce") || doc["workforce"].is_null()) return b;
  const auto& w = doc["workforce"];
  if (!w.is_object()) throw BadRequest("'workforce' must map skill ids to headcounts");
  for (const auto& [id, value] : w.items()) {
    if (!value.is_number_integer()) throw BadRequest("headcount for '" + id + "' must be an integer");
    int k = 0;
    try {
      k = inst.skill_index(id);
    } catch (const UnknownSkill& e) {
      throw Unprocessable(e.what());
    }
    b[k] = value.get<int>();
  }
  return b;
}

std::string config_key(const EdmConfig& c) {
  return to_string(c.ordering) + '/' + to_string(c.capacity) + (c.allow_overflow ? "/overflow" : "");
}

std::string workforce_key(const std::vector<int>& b) {
  std::string s;
  for (int v : b) s += std::to_string(v) + ',';
  return s;
}

json per_skill(const Instance& inst, const std::vector<double>& values) {
  json doc = json::object();
  for (int k = 0; k < inst.skill_count(); ++k) doc[inst.skill_id(k)] = values[k];
  return doc;
}

json trace_summary(const Instance& inst, const std::vector<SkillSchedule>& skills) {
  json doc = json::array();
  for (const auto& s : skills) {
    json steps = json::array();
    for (const auto& it : s.trace.iterations) {
      if (it.started.empty()) continue;
      json started = json::array();
      for (int m : it.started) started.push_back(inst.job_id(m));
      steps.push_back({{"t", it.t},
                       {"capacity", it.capacity},
                       {"m0", it.m0},
                       {"theta", it.theta},
                       {"residual_fill", it.residual_fill.size()},
                       {"started", started}});
    }
    json overflow = json::array();
    for (int m : s.overflow) overflow.push_back(inst.job_id(m));
    doc.push_back({{"skill", inst.skill_id(s.skill)},
                   {"iterations", s.trace.iterations.size()},
                   {"overflow", overflow},
                   {"steps", steps}});
  }
  return doc;
}

}  // namespace

WhatIfService::WhatIfService(ServiceOptions options) : options_(std::move(options)) {}

WhatIfService::~WhatIfService() { stop(); }

void WhatIfService::load(const InstanceSpec& spec) {
  auto instance = build_instance(spec);
  auto next = std::make_shared<const Session>(
      Session{instance, checksum_hex(instance_checksum(instance))});
  {
    std::lock_guard lock(session_mutex_);
    session_ = std::move(next);
  }
  std::lock_guard lock(cache_mutex_);
  lru_.clear();
  index_.clear();
}

std::shared_ptr<const WhatIfService::Session> WhatIfService::session() const {
  std::lock_guard lock(session_mutex_);
  return session_;
}

std::size_t WhatIfService::cache_hits() const {
  std::lock_guard lock(cache_mutex_);
  return hits_;
}

std::string WhatIfService::cached(const std::string& key) const {
  std::lock_guard lock(cache_mutex_);
  auto it = index_.find(key);
  if (it == index_.end()) return {};
  lru_.splice(lru_.begin(), lru_, it->second);
  ++hits_;
  return it->second->second;
}

void WhatIfService::remember(const std::string& key, const std::string& payload) {
  if (options_.cache_capacity == 0) return;
  std::lock_guard lock(cache_mutex_);
  if (index_.count(key)) return;
  lru_.emplace_front(key, payload);
  index_[key] = lru_.begin();
  while (lru_.size() > options_.cache_capacity) {
    index_.erase(lru_.back().first);
    lru_.pop_back();
  }
}

HttpReply WhatIfService::handle(const std::string& method, const std::string& path,
                                const std::string& body,
                                const std::map<std::string, std::string>& headers) {
  try {
    if (path == "/api/health") {
      if (method != "GET") return error_reply(405, "MethodNotAllowed", method + " " + path);
      const auto s = session();
      return reply(200, json{{"status", "ok"},
                             {"service", "skillsched"},
                             {"version", "1.0.0"},
                             {"compiler", __VERSION__},
                             {"cplusplus", __cplusplus},
                             {"instance_loaded", s != nullptr},
                             {"checksum", s ? json(s->checksum) : json()}});
    }
    if (path == "/api/instance" && method == "PUT") return put_instance(body);

    const bool known = path == "/api/instance" || path == "/api/solve" || path == "/api/exact" ||
                       path == "/api/sweep";
    if (!known) return error_reply(404, "NotFound", path);
    const bool get_only = path == "/api/instance";
    if (get_only ? method != "GET" : method != "POST")
      return error_reply(405, "MethodNotAllowed", method + " " + path);

    const auto s = session();
    if (!s) return error_reply(404, "NoInstance", "no instance loaded; PUT /api/instance first");
    // Header names are case-insensitive.
    auto expected = std::find_if(headers.begin(), headers.end(), [](const auto& h) {
      return std::equal(h.first.begin(), h.first.end(), std::string_view(kChecksumHeader).begin(),
                        std::string_view(kChecksumHeader).end(),
                        [](char a, char b) { return std::tolower(a) == std::tolower(b); });
    });
    if (expected != headers.end() && expected->second != s->checksum) {
      auto r = error_reply(409, "StaleInstance",
                           "instance " + expected->second + " was replaced by " + s->checksum);
      r.headers[kChecksumHeader] = s->checksum;
      return r;
    }

    HttpReply r;
    if (path == "/api/instance") r = get_instance(*s);
    else if (path == "/api/solve") r = solve(*s, body);
    else if (path == "/api/exact") r = exact(*s, body);
    else r = sweep_levels(*s, body);
    r.headers[kChecksumHeader] = s->checksum;
    return r;
  } catch (const BadRequest& e) {
    return error_reply(400, "BadRequest", e.what());
  } catch (const Unprocessable& e) {
    return error_reply(422, "ValidationError", e.what());
  } catch (const std::exception& e) {
    return error_reply(500, "InternalError", e.what());
  }
}

HttpReply WhatIfService::put_instance(const std::string& body) {
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::parse_error& e) {
    return error_reply(400, "BadRequest", std::string("body is not valid JSON: ") + e.what());
  }
  InstanceSpec spec;
  try {
    spec = instance_spec_from_json(doc);
  } catch (const FormatError& e) {
    return error_reply(400, "FormatError", e.what());
  }
  try {
    load(spec);
  } catch (const FeasibilityError& e) {
    return reply(422, json{{"error", "FeasibilityError"},
                           {"detail", e.what()},
                           {"skill", e.skill()},
                           {"workload", e.workload()},
                           {"capacity", e.capacity()}});
  } catch (const ModelError& e) {
    return error_reply(422, "ValidationError", e.what());
  }
  const auto s = session();
  auto r = reply(200, json{{"checksum", s->checksum},
                           {"jobs", s->instance.job_count()},
                           {"skills", s->instance.skill_count()},
                           {"warnings", s->instance.warnings()}});
  r.headers[kChecksumHeader] = s->checksum;
  return r;
}

HttpReply WhatIfService::get_instance(const Session& s) const {
  const auto& inst = s.instance;
  const auto bounds = workforce_bounds(inst);
  json lo = json::object(), hi = json::object();
  for (int k = 0; k < inst.skill_count(); ++k) {
    lo[inst.skill_id(k)] = bounds.min_per_skill[k];
    hi[inst.skill_id(k)] = bounds.max_per_skill[k];
  }
  return reply(200, json{{"checksum", s.checksum},
                         {"instance", instance_spec_to_json(inst.spec())},
                         {"workforce_bounds",
                          {{"W_min", bounds.w_min},
                           {"W_max", bounds.w_max},
                           {"min_per_skill", lo},
                           {"max_per_skill", hi}}}});
}

HttpReply WhatIfService::solve(const Session& s, const std::string& body) {
  const auto doc = parse_body(body);
  const auto config = read_config(doc);
  const auto b = read_workforce(s.instance, doc);
  const std::string key = s.checksum + '|' + workforce_key(b) + '|' + config_key(config);
  if (auto hit = cached(key); !hit.empty()) {
    HttpReply r;
    r.body = std::move(hit);
    r.headers["Content-Type"] = "application/json";
    return r;
  }

  std::optional<Instance> scenario;
  try {
    scenario.emplace(s.instance.with_workforce(b));
  } catch (const FeasibilityError& e) {
    return reply(422, json{{"error", "FeasibilityError"},
                           {"detail", e.what()},
                           {"skill", e.skill()},
                           {"workload", e.workload()},
                           {"capacity", e.capacity()}});
  } catch (const ModelError& e) {
    return error_reply(422, "ValidationError", e.what());
  }
  const auto& inst = *scenario;
  const auto result = edm_solve(inst, config);

  // Baseline: stored workforce, same configuration.
  std::optional<double> baseline;
  const std::string base_key = s.checksum + "|baseline|" + config_key(config);
  if (auto hit = cached(base_key); !hit.empty()) {
    if (hit != "null") baseline = std::stod(hit);
  } else {
    const auto base = edm_solve(s.instance, config);
    if (base.objective) baseline = base.objective->z;
    std::ostringstream os;
    os.precision(17);
    if (baseline) os << *baseline;
    else os << "null";
    remember(base_key, os.str());
  }

  json out;
  out["checksum"] = s.checksum;
  out["config"] = {{"ordering", to_string(config.ordering)},
                   {"capacity_mode", to_string(config.capacity)},
                   {"allow_overflow", config.allow_overflow}};
  out["workforce"] = json::object();
  for (int k = 0; k < inst.skill_count(); ++k) out["workforce"][inst.skill_id(k)] = b[k];
  out["schedule"] = schedule_to_json(inst, result.schedule);
  out["status"] = to_string(result.schedule.status);
  json unplaced = json::array();
  for (const auto& op : result.schedule.unplaced) unplaced.push_back(inst.job_id(op.job));
  unplaced.erase(std::unique(unplaced.begin(), unplaced.end()), unplaced.end());
  out["unplaced_jobs"] = unplaced;
  if (result.objective) {
    out["Z"] = result.objective->z;
    out["Z_unit"] = result.objective->z_unit;
    out["Z_k"] = per_skill(inst, result.objective->z_k);
  } else {
    out["Z"] = nullptr;
    out["Z_unit"] = nullptr;
    out["Z_k"] = nullptr;
  }
  out["headcount"] = json::object();
  for (int k = 0; k < inst.skill_count(); ++k)
    out["headcount"][inst.skill_id(k)] = headcount_profile(inst, result.schedule, k);
  out["trace"] = trace_summary(inst, result.skills);
  out["baseline"] = {{"Z", baseline ? json(*baseline) : json()},
                     {"Z_unit", baseline ? json(*baseline * inst.weight_scale()) : json()}};
  out["gap_vs_baseline_pct"] = baseline && result.objective && *baseline > 0
                                   ? json(gap_percent(result.objective->z, *baseline))
                                   : json();
  auto r = reply(200, out);
  remember(key, r.body);
  return r;
}

HttpReply WhatIfService::exact(const Session& s, const std::string& body) const {
  const auto doc = parse_body(body);
  const auto b = read_workforce(s.instance, doc);
  auto limits = options_.exact_limits;
  if (doc.contains("max_nodes")) {
    if (!doc["max_nodes"].is_number_unsigned()) throw BadRequest("'max_nodes' must be a positive integer");
    limits.max_nodes = std::min<std::uint64_t>(limits.max_nodes, doc["max_nodes"].get<std::uint64_t>());
  }
  std::optional<Instance> scenario;
  try {
    scenario.emplace(s.instance.with_workforce(b));
  } catch (const ModelError& e) {
    return error_reply(422, "ValidationError", e.what());
  }
  const double size = log10_search_space(*scenario);
  if (size > options_.max_log10_search_space) {
    return reply(422, json{{"error", "TooLargeForExactSearch"},
                           {"detail", "search space ~1e" + std::to_string(static_cast<int>(std::ceil(size))) +
                                          " leaves exceeds the desk-scale limit"},
                           {"log10_search_space", size},
                           {"limit", options_.max_log10_search_space}});
  }
  try {
    const auto result = exact_solve(*scenario, limits);
    const auto obj = objective(*scenario, result.schedule);
    json out{{"checksum", s.checksum},
             {"status", result.proof == Proof::Optimal ? "Optimal" : "BestFound"},
             {"nodes", result.nodes},
             {"Z", obj.z},
             {"Z_unit", obj.z_unit},
             {"Z_k", per_skill(*scenario, obj.z_k)},
             {"schedule", schedule_to_json(*scenario, result.schedule)}};
    out["incumbents"] = json::array();
    for (const auto& h : result.history) out["incumbents"].push_back({{"node", h.node}, {"Z", h.value}});
    return reply(200, out);
  } catch (const NoFeasibleSchedule& e) {
    return reply(200, json{{"checksum", s.checksum}, {"status", "NoFeasibleSchedule"}, {"detail", e.what()}});
  } catch (const LimitsExceededWithoutIncumbent& e) {
    return reply(200, json{{"checksum", s.checksum},
                           {"status", "LimitsExceededWithoutIncumbent"},
                           {"detail", e.what()}});
  }
}

HttpReply WhatIfService::sweep_levels(const Session& s, const std::string& body) const {
  const auto doc = parse_body(body);
  std::vector<double> alphas{kDefaultAlphas.begin(), kDefaultAlphas.end()};
  if (doc.contains("alphas")) {
    if (!doc["alphas"].is_array() || doc["alphas"].empty())
      throw BadRequest("'alphas' must be a non-empty array of numbers");
    alphas.clear();
    for (const auto& a : doc["alphas"]) {
      if (!a.is_number()) throw BadRequest("'alphas' must be a non-empty array of numbers");
      const double v = a.get<double>();
      if (!(v > 0.0 && v <= 1.0)) throw Unprocessable("alpha must lie in (0, 1], got " + a.dump());
      alphas.push_back(v);
    }
  }
  SweepOptions opts;
  opts.edm = read_config(doc);
  opts.run_exact = get_bool(doc, "exact");
  opts.limits = options_.exact_limits;
  if (opts.run_exact && log10_search_space(s.instance) > options_.max_log10_search_space)
    throw Unprocessable("instance too large for the exact search; drop 'exact'");
  auto out = sweep_to_json(s.instance, sweep(s.instance, alphas, opts));
  out["checksum"] = s.checksum;
  return reply(200, out);
}

int WhatIfService::bind(const std::string& host, int port) {
  server_ = std::make_unique<Server>();
  auto route = [this](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> headers;
    for (const auto& [k, v] : req.headers) headers[k] = v;
    const auto r = handle(req.method, req.path, req.body, headers);
    res.status = r.status;
    for (const auto& [k, v] : r.headers)
      if (k != "Content-Type") res.set_header(k, v);
    res.set_content(r.body, "application/json");
  };
  const char* pattern = R"(/api/.*)";
  server_->http.Get(pattern, route);
  server_->http.Put(pattern, route);
  server_->http.Post(pattern, route);
  server_->http.Delete(pattern, route);
  if (port == 0) return server_->http.bind_to_any_port(host);
  return server_->http.bind_to_port(host, port) ? port : -1;
}

void WhatIfService::listen() {
  if (server_) server_->http.listen_after_bind();
}

void WhatIfService::stop() {
  if (server_) server_->http.stop();
}

}  // namespace skillsched

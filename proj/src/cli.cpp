#include "skillsched/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "skillsched/edm.hpp"
#include "skillsched/exact.hpp"
#include "skillsched/fixture.hpp"
#include "skillsched/generator.hpp"
#include "skillsched/io.hpp"
#include "skillsched/scenario.hpp"
#include "skillsched/stats.hpp"

#ifndef SKILLSCHED_DEFAULT_FIXTURE
#define SKILLSCHED_DEFAULT_FIXTURE "data/table1.csv"
#endif

namespace skillsched {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string input;
  std::string output;
  std::string schedule;
  std::string format = "human";
  std::string ordering = "workload";
  std::string capacity = "gated";
  bool allow_overflow = false;
  std::vector<std::string> workforce;
  std::vector<double> alphas{kDefaultAlphas.begin(), kDefaultAlphas.end()};
  bool with_exact = false;
  bool timing = false;
  unsigned threads = 1;
  std::uint64_t max_nodes = SearchLimits{}.max_nodes;
  double max_seconds = 0.0;
  std::uint64_t seed = 1;
  GeneratorParams gen;
  std::string fixture;
};

EdmConfig edm_config(const Options& o) {
  EdmConfig c;
  c.ordering = ordering_from_string(o.ordering);
  c.capacity = capacity_mode_from_string(o.capacity);
  c.allow_overflow = o.allow_overflow;
  return c;
}

SearchLimits search_limits(const Options& o) {
  SearchLimits l;
  l.max_nodes = o.max_nodes;
  if (o.max_seconds > 0) {
    l.mode = SearchMode::BestEffort;
    l.max_time = std::chrono::milliseconds(static_cast<long long>(o.max_seconds * 1000));
  }
  return l;
}

// "S1=6" entries replace b_k of the named skills.
Instance apply_workforce(const Instance& inst, const std::vector<std::string>& overrides) {
  if (overrides.empty()) return inst;
  std::vector<int> b;
  for (int k = 0; k < inst.skill_count(); ++k) b.push_back(inst.available(k));
  for (const auto& item : overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("--workforce expects SKILL=COUNT, got '" + item + "'");
    const int k = inst.skill_index(item.substr(0, eq));
    try {
      b[k] = std::stoi(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw UsageError("--workforce count is not an integer in '" + item + "'");
    }
  }
  return inst.with_workforce(b);
}

class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) throw UsageError("cannot write '" + path + "'");
      out_ = &file_;
    }
  }
  std::ostream& operator*() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

std::string num(double v, int digits = 6) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

void print_schedule_human(std::ostream& os, const Instance& inst, const Schedule& s,
                          const std::optional<ObjectiveBreakdown>& obj) {
  os << "status: " << to_string(s.status) << (s.extended ? " (extended past horizon)" : "") << '\n';
  if (obj) {
    os << "Z      = " << num(obj->z) << "  (normalized weights)\n";
    os << "Z_unit = " << num(obj->z_unit) << "  (weights as given)\n";
    for (int k = 0; k < inst.skill_count(); ++k)
      os << "  Z_" << inst.skill_id(k) << " = " << num(obj->z_k[k]) << '\n';
  }
  os << "starts:\n";
  auto starts = s.starts;
  std::sort(starts.begin(), starts.end(), [](const StartEntry& a, const StartEntry& b) {
    return std::tie(a.start, a.job, a.skill) < std::tie(b.start, b.job, b.skill);
  });
  for (const auto& e : starts)
    os << "  " << std::setw(8) << std::left << inst.job_id(e.job) << std::setw(8)
       << inst.skill_id(e.skill) << std::right << " t=" << std::setw(3) << e.start
       << "  p=" << inst.duration(e.job, e.skill) << " crew=" << inst.crew(e.job, e.skill) << '\n';
  for (const auto& op : s.unplaced)
    os << "  unplaced " << inst.job_id(op.job) << ' ' << inst.skill_id(op.skill) << '\n';
}

void print_schedule_csv(std::ostream& os, const Instance& inst, const Schedule& s) {
  os << "job,skill,start,duration,crew\n";
  for (const auto& e : s.starts)
    os << inst.job_id(e.job) << ',' << inst.skill_id(e.skill) << ',' << e.start << ','
       << inst.duration(e.job, e.skill) << ',' << inst.crew(e.job, e.skill) << '\n';
}

int cmd_validate(const Options& o, std::ostream& out) {
  const auto inst = apply_workforce(read_instance(o.input), o.workforce);
  Sink sink(o.output, out);
  if (o.schedule.empty()) {
    const auto bounds = workforce_bounds(inst);
    if (o.format == "json") {
      json doc{{"valid", true},
               {"checksum", checksum_hex(instance_checksum(inst))},
               {"jobs", inst.job_count()},
               {"skills", inst.skill_count()},
               {"operations", op_count(inst).total},
               {"W_min", bounds.w_min},
               {"W_max", bounds.w_max},
               {"warnings", inst.warnings()}};
      *sink << doc.dump(2) << '\n';
    } else {
      *sink << "valid: " << inst.job_count() << " jobs, " << inst.skill_count() << " skills, "
            << op_count(inst).total << " operations, T=" << inst.horizon() << '\n';
      *sink << "workforce range: " << bounds.w_min << " .. " << bounds.w_max << '\n';
      for (const auto& w : inst.warnings()) *sink << "warning: " << w << '\n';
    }
    return kExitOk;
  }

  std::ifstream in(o.schedule);
  if (!in) throw UsageError("cannot open schedule '" + o.schedule + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("schedule is not valid JSON: ") + e.what());
  }
  const auto schedule = schedule_from_json(inst, doc);
  const auto report = check_schedule(inst, schedule);
  if (o.format == "json") {
    *sink << report_to_json(inst, report).dump(2) << '\n';
  } else {
    *sink << (report.feasible() ? "feasible" : "infeasible") << '\n';
    for (const auto& v : report.violations) *sink << "  " << to_string(v.kind) << ": " << v.detail << '\n';
  }
  return report.feasible() ? kExitOk : kExitInfeasible;
}

int cmd_solve(const Options& o, std::ostream& out) {
  const auto inst = apply_workforce(read_instance(o.input), o.workforce);
  const auto result = edm_solve(inst, edm_config(o));
  Sink sink(o.output, out);
  if (o.format == "json") {
    *sink << schedule_to_json(inst, result.schedule).dump(2) << '\n';
  } else if (o.format == "csv") {
    print_schedule_csv(*sink, inst, result.schedule);
  } else {
    print_schedule_human(*sink, inst, result.schedule, result.objective);
  }
  return result.schedule.status == ScheduleStatus::Complete ? kExitOk : kExitInfeasible;
}

int cmd_exact(const Options& o, std::ostream& out) {
  const auto inst = apply_workforce(read_instance(o.input), o.workforce);
  ExactResult result;
  try {
    result = exact_solve(inst, search_limits(o));
  } catch (const NoFeasibleSchedule& e) {
    Sink sink(o.output, out);
    if (o.format == "json")
      *sink << json{{"status", "NoFeasibleSchedule"}, {"detail", e.what()}}.dump(2) << '\n';
    else
      *sink << "no feasible schedule: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const LimitsExceededWithoutIncumbent& e) {
    Sink sink(o.output, out);
    if (o.format == "json")
      *sink << json{{"status", "LimitsExceededWithoutIncumbent"}, {"detail", e.what()}}.dump(2) << '\n';
    else
      *sink << "search limits reached before any schedule was found: " << e.what() << '\n';
    return kExitInfeasible;
  }
  const auto obj = objective(inst, result.schedule);
  Sink sink(o.output, out);
  const char* proof = result.proof == Proof::Optimal ? "Optimal" : "BestFound";
  if (o.format == "json") {
    json doc = schedule_to_json(inst, result.schedule);
    doc["proof"] = proof;
    doc["nodes"] = result.nodes;
    doc["incumbents"] = json::array();
    for (const auto& h : result.history) doc["incumbents"].push_back({{"node", h.node}, {"Z", h.value}});
    *sink << doc.dump(2) << '\n';
  } else if (o.format == "csv") {
    print_schedule_csv(*sink, inst, result.schedule);
  } else {
    *sink << "proof: " << proof << " after " << result.nodes << " nodes\n";
    print_schedule_human(*sink, inst, result.schedule, obj);
  }
  return kExitOk;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  for (double a : o.alphas)
    if (!(a > 0.0 && a <= 1.0)) throw UsageError("--alphas values must lie in (0, 1]");
  const auto inst = read_instance(o.input);
  SweepOptions opts;
  opts.edm = edm_config(o);
  opts.limits = search_limits(o);
  opts.run_exact = o.with_exact;
  opts.threads = o.threads;
  const auto rows = sweep(inst, o.alphas, opts);
  Sink sink(o.output, out);
  if (o.format == "json") {
    *sink << sweep_to_json(inst, rows, o.timing).dump(2) << '\n';
  } else if (o.format == "csv") {
    write_sweep_csv(*sink, rows, o.timing);
  } else {
    *sink << "  alpha  A_alpha        Z_EDM        Z_ref    gap%  status\n";
    for (const auto& r : rows) {
      *sink << std::setw(7) << num(r.alpha, 2) << std::setw(9) << r.a_alpha << std::setw(13)
            << (r.z_edm ? num(*r.z_edm, 4) : "-") << std::setw(13) << (r.z_ref ? num(*r.z_ref, 4) : "-")
            << std::setw(8) << (r.gap ? num(*r.gap, 2) : "-") << "  " << to_string(r.status);
      if (!r.note.empty()) *sink << "  (" << r.note << ')';
      *sink << '\n';
    }
  }
  for (const auto& r : rows)
    if (r.status == ScenarioStatus::Infeasible) return kExitInfeasible;
  return kExitOk;
}

int cmd_gen(const Options& o, std::ostream& out) {
  const auto spec = random_instance_spec(o.gen, o.seed);
  build_instance(spec);  // a generated file must always validate
  Sink sink(o.output, out);
  *sink << instance_spec_to_json(spec).dump(2) << '\n';
  return kExitOk;
}

int cmd_fixture_stats(const Options& o, std::ostream& out) {
  std::string path = o.fixture;
  if (path.empty()) {
    const char* env = std::getenv("SKILLSCHED_FIXTURE");
    path = env && *env ? env : SKILLSCHED_DEFAULT_FIXTURE;
  }
  const auto rows = load_table1_fixture(path);
  std::vector<double> gaps, scales;
  std::size_t infeasible = 0;
  for (const auto& r : rows) {
    if (r.infeasible()) {
      ++infeasible;
      continue;
    }
    gaps.push_back(*r.gap);
    scales.push_back(scale_index(r.op, r.skills, r.a_alpha));
  }
  const auto st = gap_stats(gaps, scales);
  const auto m = weibull_moments(st.weibull_beta, st.weibull_eta);
  Sink sink(o.output, out);
  if (o.format == "json") {
    json doc{{"rows", rows.size()},         {"infeasible_rows", infeasible},
             {"n", st.n},                   {"mean", st.mean},
             {"stddev", st.stddev},         {"weibull_beta", st.weibull_beta},
             {"weibull_eta", st.weibull_eta}, {"weibull_fitted", st.fitted},
             {"excluded_zero", st.excluded_zero_count},
             {"weibull_mean", m.mean},      {"weibull_stddev", m.stddev},
             {"pearson_scale_gap", st.correlation_with_scale}};
    *sink << doc.dump(2) << '\n';
  } else {
    *sink << "rows " << rows.size() << " (" << infeasible << " infeasible)\n"
          << "gap mean " << num(st.mean, 4) << "  std " << num(st.stddev, 4) << "  n " << st.n << '\n'
          << "weibull beta " << num(st.weibull_beta, 4) << "  eta " << num(st.weibull_eta, 4)
          << "  on " << st.fitted << " positive gaps (" << st.excluded_zero_count << " zero)\n"
          << "weibull mean " << num(m.mean, 4) << "  std " << num(m.stddev, 4) << '\n'
          << "pearson(scale, gap) " << num(st.correlation_with_scale, 4) << '\n';
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Skilled-workforce scheduling: nested-knapsack heuristic, exact search, scenario sweeps",
               "skillsched"};
  app.require_subcommand(1, 1);

  const std::vector<std::string> formats{"human", "json", "csv"};
  auto add_solver_flags = [&](CLI::App* sub) {
    sub->add_option("--ordering", o.ordering, "Efficacy ratio: workload = w/(p*crew), time = w/p")
        ->check(CLI::IsMember({"workload", "time"}));
    sub->add_option("--capacity", o.capacity, "gated = per-unit headcount check, literal = knapsack only")
        ->check(CLI::IsMember({"gated", "literal"}));
    sub->add_flag("--allow-overflow", o.allow_overflow, "Place jobs past the horizon instead of failing");
  };
  auto add_limits = [&](CLI::App* sub) {
    sub->add_option("--max-nodes", o.max_nodes, "Node budget of the exact search");
    sub->add_option("--max-seconds", o.max_seconds, "Wall-clock budget; keeps the best schedule found");
  };
  auto add_io = [&](CLI::App* sub, bool csv) {
    sub->add_option("-o,--output", o.output, "Write the report here instead of stdout");
    auto f = sub->add_option("--format", o.format, "Report format");
    f->check(CLI::IsMember(csv ? formats : std::vector<std::string>{"human", "json"}));
  };

  auto* validate = app.add_subcommand("validate", "Check an instance, or a schedule against it");
  validate->add_option("instance", o.input, "Instance file")->required();
  validate->add_option("--schedule", o.schedule, "Schedule file (JSON export)");
  validate->add_option("--workforce", o.workforce, "Override b_k, e.g. S1=6")->delimiter(',');
  add_io(validate, false);

  auto* solve = app.add_subcommand("solve", "Run the nested-knapsack heuristic");
  solve->add_option("instance", o.input, "Instance file")->required();
  solve->add_option("--workforce", o.workforce, "Override b_k, e.g. S1=6")->delimiter(',');
  add_solver_flags(solve);
  add_io(solve, true);

  auto* exact = app.add_subcommand("exact", "Branch-and-bound optimum");
  exact->add_option("instance", o.input, "Instance file")->required();
  exact->add_option("--workforce", o.workforce, "Override b_k, e.g. S1=6")->delimiter(',');
  add_limits(exact);
  add_io(exact, true);

  auto* sw = app.add_subcommand("sweep", "Evaluate the instance over workforce levels");
  sw->add_option("instance", o.input, "Instance file")->required();
  sw->add_option("--alphas", o.alphas, "Comma-separated levels in (0, 1]")->delimiter(',');
  sw->add_flag("--exact", o.with_exact, "Also run the exact search per level");
  sw->add_flag("--timing", o.timing, "Include wall-clock columns");
  sw->add_option("--threads", o.threads, "Worker threads, 0 = hardware");
  add_solver_flags(sw);
  add_limits(sw);
  add_io(sw, true);

  auto* gen = app.add_subcommand("gen", "Write a seeded random instance");
  gen->add_option("--seed", o.seed, "Random seed");
  gen->add_option("--jobs", o.gen.jobs, "Number of jobs");
  gen->add_option("--skills", o.gen.skills, "Number of skills");
  gen->add_option("--horizon", o.gen.horizon, "Horizon T");
  gen->add_option("--min-duration", o.gen.min_duration);
  gen->add_option("--max-duration", o.gen.max_duration);
  gen->add_option("--min-crew", o.gen.min_crew);
  gen->add_option("--max-crew", o.gen.max_crew);
  gen->add_option("--density", o.gen.density, "Probability a job needs a given skill");
  gen->add_option("--alpha", o.gen.alpha, "Workforce level used to size b_k");
  gen->add_flag("--single-skill", o.gen.single_skill_jobs, "Every job needs exactly one skill");
  gen->add_option("-o,--output", o.output, "Write the instance here instead of stdout");

  auto* fx = app.add_subcommand("fixture-stats", "Gap statistics over the published comparison table");
  fx->add_option("--fixture", o.fixture, "Table file (default: $SKILLSCHED_FIXTURE or the bundled copy)");
  add_io(fx, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate) return cmd_validate(o, out);
    if (*solve) return cmd_solve(o, out);
    if (*exact) return cmd_exact(o, out);
    if (*sw) return cmd_sweep(o, out);
    if (*gen) return cmd_gen(o, out);
    if (*fx) return cmd_fixture_stats(o, out);
  } catch (const FeasibilityError& e) {
    err << "FeasibilityError: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace skillsched

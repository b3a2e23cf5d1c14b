// Acceptance gate: one PASS/FAIL line per criterion. Usage: acceptance [1-8]...
// With no argument every criterion runs. Exit status is nonzero on any FAIL.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "instances.hpp"
#include "oracles.hpp"
#include "skillsched/edm.hpp"
#include "skillsched/exact.hpp"
#include "skillsched/fixture.hpp"
#include "skillsched/generator.hpp"
#include "skillsched/knapsack.hpp"
#include "skillsched/scenario.hpp"
#include "skillsched/stats.hpp"

using namespace skillsched;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// Worked two-job example.
Verdict criterion1() {
  Verdict v;
  const auto t0 = Clock::now();
  const auto inst = testdata::pair();
  const auto w = edm_solve(inst);
  EdmConfig by_time;
  by_time.ordering = OrderingRule::EfficacyPerTime;
  const auto t = edm_solve(inst, by_time);
  const auto x = exact_solve(inst);
  const double elapsed = seconds_since(t0);

  const int j1 = inst.job_index("job1"), j2 = inst.job_index("job2"), s = inst.skill_index("S");
  v.require(w.objective && w.objective->z_unit == 5.0, "w/(p*lambda) TWCT 5");
  v.require(w.schedule.start_of(j2, s) == 0 && w.schedule.start_of(j1, s) == 2, "starts job2:0 job1:2");
  v.require(t.objective && t.objective->z_unit == 4.0, "w/p TWCT 4");
  v.require(x.proof == Proof::Optimal && x.value * inst.weight_scale() == 4.0, "exact 4");
  v.require(elapsed < 0.010, "runtime < 10 ms");
  v.detail << "w/(p*lambda) " << (w.objective ? fmt(w.objective->z_unit, 1) : "none") << ", w/p "
           << (t.objective ? fmt(t.objective->z_unit, 1) : "none") << ", exact "
           << fmt(x.value * inst.weight_scale(), 1) << ", " << fmt(elapsed * 1e3, 2) << " ms";
  return v;
}

// Fixture gap closure.
Verdict criterion2() {
  Verdict v;
  const auto rows = load_table1_fixture(SKILLSCHED_FIXTURE_PATH);
  int populated = 0, mismatched = 0;
  double worst = 0.0;
  std::vector<int> na;
  for (const auto& r : rows) {
    if (r.infeasible()) {
      na.push_back(r.no);
      continue;
    }
    ++populated;
    const double g = std::round(gap_percent(*r.z_edm, r.z_ref) * 100.0) / 100.0;
    const double d = std::abs(g - *r.gap);
    worst = std::max(worst, d);
    if (d > 0.005 + 1e-9) ++mismatched;
  }
  v.require(rows.size() == kTable1Rows, "212 rows");
  v.require(populated == 209, "209 populated rows");
  v.require(mismatched == 0, "every recomputed gap within 0.005");
  v.require(na == std::vector<int>{164, 177, 212}, "rows 164, 177, 212 infeasible");
  v.detail << populated << " rows checked, " << mismatched << " mismatches, worst |diff| " << fmt(worst, 4)
           << ", infeasible rows " << na.size();
  return v;
}

// Fixture statistics.
Verdict criterion3() {
  Verdict v;
  const auto t0 = Clock::now();
  const auto rows = load_table1_fixture(SKILLSCHED_FIXTURE_PATH);
  std::vector<double> gaps, scales;
  for (const auto& r : rows) {
    if (r.infeasible()) continue;
    gaps.push_back(*r.gap);
    scales.push_back(scale_index(r.op, r.skills, r.a_alpha));
  }
  const auto st = gap_stats(gaps, scales);
  const auto m = weibull_moments(0.83, 0.24);
  const double elapsed = seconds_since(t0);
  v.require(st.correlation_with_scale >= 0.14 && st.correlation_with_scale <= 0.28, "Pearson in [0.14, 0.28]");
  v.require(st.weibull_beta >= 0.63 && st.weibull_beta <= 1.03, "beta in [0.63, 1.03]");
  v.require(st.weibull_eta >= 0.16 && st.weibull_eta <= 0.32, "eta in [0.16, 0.32]");
  v.require(std::abs(m.mean - 0.26) <= 0.02, "moment mean within 0.02 of 0.26");
  v.require(elapsed < 1.0, "runtime < 1 s");
  v.detail << "pearson " << fmt(st.correlation_with_scale) << ", beta " << fmt(st.weibull_beta) << ", eta "
           << fmt(st.weibull_eta) << " (" << st.fitted << " positive gaps, " << st.excluded_zero_count
           << " zeros), moments mean " << fmt(m.mean) << " std " << fmt(m.stddev);
  return v;
}

// Oracle study on desk-scale instances.
Verdict criterion4() {
  Verdict v;
  const auto t0 = Clock::now();
  const auto params = GeneratorParams::desk();
  const SearchLimits limits{10'000'000, std::chrono::milliseconds{0}, SearchMode::ProveOptimal};
  int complete = 0, overflow = 0, infeasible = 0, instances = 0;
  int dirty = 0, above = 0, chain = 0, overflow_bad = 0;
  double gap_sum = 0.0;
  std::uint64_t nodes = 0;
  // run until 300 instances carried a complete EDM schedule
  for (std::uint64_t seed = 1; complete < 300; ++seed) {
    const auto inst = random_instance(params, seed);
    ++instances;
    if (inst.job_count() > 5 || inst.skill_count() > 2 || inst.horizon() > 8) v.require(false, "desk bounds");
    const auto e = edm_solve(inst);
    const auto report = check_schedule(inst, e.schedule);
    if (e.schedule.status == ScheduleStatus::Complete) {
      ++complete;
      if (!report.feasible()) ++dirty;
    } else {
      ++overflow;
      // no placed pair may break a constraint; only the unplaced ones are missing
      const bool only_missing = std::all_of(report.violations.begin(), report.violations.end(),
                                            [](const Violation& x) { return x.kind == ViolationKind::MissingStart; });
      if (!only_missing || report.violations.size() != e.schedule.unplaced.size()) ++overflow_bad;
    }

    double z_star;
    try {
      const auto x = exact_solve(inst, limits);
      nodes += x.nodes;
      if (x.proof != Proof::Optimal) v.require(false, "exact proof within budget");
      z_star = x.value;
    } catch (const NoFeasibleSchedule&) {
      ++infeasible;
      if (e.objective) v.require(false, "EDM schedule on an infeasible instance");
      continue;
    }
    std::vector<double> per_skill;
    for (int k = 0; k < inst.skill_count(); ++k) {
      if (inst.jobs_of_skill(k).empty()) continue;
      per_skill.push_back(exact_single_skill(inst, k, limits).value);
    }
    const double lb = skill_lower_bound(per_skill);
    const double z_edm = e.objective ? e.objective->z : std::numeric_limits<double>::infinity();
    if (z_edm < z_star - 1e-9) ++above;
    if (lb > z_star + 1e-9 || z_star > z_edm + 1e-9) ++chain;
    if (e.objective) gap_sum += gap_percent(z_edm, z_star);
  }
  const double elapsed = seconds_since(t0);
  v.require(instances >= 300, ">= 300 instances");
  v.require(dirty == 0, "complete EDM schedules pass check_schedule");
  v.require(overflow_bad == 0, "overflow schedules break no constraint on placed pairs");
  v.require(above == 0, "Z_EDM >= Z*");
  v.require(chain == 0, "max Z_k* <= Z* <= Z_EDM");
  v.require(elapsed < 60.0, "runtime < 60 s");
  v.detail << instances << " instances, " << complete << " complete EDM schedules, " << overflow
           << " overflow, " << infeasible << " infeasible; mean gap " << fmt(gap_sum / complete, 2)
           << "%, " << nodes << " nodes, " << fmt(elapsed, 2) << " s";
  return v;
}

// Single-skill jobs decompose.
Verdict criterion5() {
  Verdict v;
  GeneratorParams params = GeneratorParams::desk();
  params.jobs = 5;
  params.single_skill_jobs = true;
  const SearchLimits limits{10'000'000, std::chrono::milliseconds{0}, SearchMode::ProveOptimal};
  int compared = 0, mismatched = 0, infeasible = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 1; compared < 100; ++seed) {
    const auto inst = random_instance(params, seed);
    double global;
    try {
      global = exact_solve(inst, limits).value;
    } catch (const NoFeasibleSchedule&) {
      ++infeasible;
      continue;
    }
    double composed = 0.0;
    for (int k = 0; k < inst.skill_count(); ++k)
      if (!inst.jobs_of_skill(k).empty()) composed += exact_single_skill(inst, k, limits).value;
    const double d = std::abs(composed - global);
    worst = std::max(worst, d);
    if (d > 1e-9) ++mismatched;
    ++compared;
  }
  v.require(mismatched == 0, "composed optimum equals global optimum");
  v.detail << compared << " instances, " << mismatched << " mismatches, worst |diff| " << worst << ", "
           << infeasible << " infeasible skipped";
  return v;
}

// Knapsack bounds against brute force.
Verdict criterion6() {
  Verdict v;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(6);
  int sets = 0, order_bad = 0, exact_cases = 0, exact_bad = 0, fill_cases = 0, fill_bad = 0;
  for (; sets < 1000; ++sets) {
    const int n = std::uniform_int_distribution<int>(1, 15)(rng);
    std::vector<KnapsackItem> items;
    std::int64_t total = 0;
    for (int i = 0; i < n; ++i) {
      KnapsackItem it{i, std::uniform_real_distribution<double>(0.05, 1.0)(rng),
                      std::uniform_int_distribution<int>(1, 6)(rng), std::uniform_int_distribution<int>(1, 4)(rng)};
      total += it.size();
      items.push_back(it);
    }
    const std::int64_t cap = std::uniform_int_distribution<std::int64_t>(0, total)(rng);
    const auto rule = sets % 2 ? OrderingRule::EfficacyPerTime : OrderingRule::EfficacyPerWorkload;
    // the bounds hold for the value-per-size order
    const auto ordered = efficacy_order(items, OrderingRule::EfficacyPerWorkload);
    const auto frac = dantzig_fractional(ordered, cap);
    const auto prefix = dantzig_integer_prefix(ordered, cap);
    const double best = oracle::knapsack_best(items, cap);
    if (frac.value < best - 1e-9 || best < prefix.value - 1e-9) ++order_bad;
    if (frac.split == 0 || frac.x[frac.split - 1] == 0.0) {
      ++exact_cases;
      if (std::abs(prefix.value - best) > 1e-9) ++exact_bad;
    }
    // residual fill over the items left after the prefix of either order
    const auto other = efficacy_order(items, rule);
    const auto cut = dantzig_integer_prefix(other, cap);
    std::vector<KnapsackItem> rest(other.begin() + static_cast<std::ptrdiff_t>(cut.cut), other.end());
    if (rest.size() > 12) rest.resize(12);
    const std::int64_t residual = std::uniform_int_distribution<std::int64_t>(0, std::max<std::int64_t>(cap, 1))(rng);
    const auto fill = residual_fill(rest, residual);
    std::int64_t used = 0;
    for (auto i : fill) used += rest[i].size();
    ++fill_cases;
    if (used > residual || fill.size() != oracle::max_cardinality(rest, residual)) ++fill_bad;
  }
  const double elapsed = seconds_since(t0);
  v.require(order_bad == 0, "fractional >= brute force >= prefix");
  v.require(exact_bad == 0, "prefix optimal when nothing is fractional");
  v.require(fill_bad == 0, "residual fill has maximum cardinality");
  v.require(elapsed < 30.0, "runtime < 30 s");
  v.detail << sets << " sets, " << exact_cases << " with no fractional item, " << fill_cases
           << " residual fills; failures " << order_bad << "/" << exact_bad << "/" << fill_bad << ", "
           << fmt(elapsed, 2) << " s";
  return v;
}

// A random feasible schedule: pairs in random order, each at a random start that
// keeps its own usage table under b_k. Empty when some pair has no slot.
std::optional<Schedule> random_feasible(const Instance& inst, std::mt19937_64& rng) {
  std::vector<Operation> ops;
  for (int m = 0; m < inst.job_count(); ++m)
    for (int k = 0; k < inst.skill_count(); ++k)
      if (inst.requires_skill(m, k)) ops.push_back({m, k});
  std::shuffle(ops.begin(), ops.end(), rng);
  const int T = inst.horizon();
  std::vector<std::vector<int>> use(inst.skill_count(), std::vector<int>(T, 0));
  Schedule s;
  for (const auto& op : ops) {
    const int p = inst.duration(op.job, op.skill), c = inst.crew(op.job, op.skill);
    std::vector<int> slots;
    for (int st = 0; st + p <= T; ++st) {
      bool ok = true;
      for (int u = st; u < st + p; ++u) ok = ok && use[op.skill][u] + c <= inst.available(op.skill);
      if (ok) slots.push_back(st);
    }
    if (slots.empty()) return std::nullopt;
    const int st = slots[std::uniform_int_distribution<std::size_t>(0, slots.size() - 1)(rng)];
    for (int u = st; u < st + p; ++u) use[op.skill][u] += c;
    s.starts.push_back({op.job, op.skill, st});
  }
  s.status = ScheduleStatus::Complete;
  return s;
}

// Per-unit feasibility implies every nested prefix fits, not conversely.
Verdict criterion7() {
  Verdict v;
  std::mt19937_64 rng(7);
  GeneratorParams params;
  params.jobs = 8;
  params.skills = 3;
  params.horizon = 10;
  int feasible = 0, broken = 0, skipped = 0;
  for (std::uint64_t seed = 1; feasible < 500; ++seed) {
    const auto inst = random_instance(params, seed);
    const auto s = random_feasible(inst, rng);
    if (!s || !check_schedule(inst, *s).feasible()) {
      ++skipped;
      continue;
    }
    ++feasible;
    for (int k = 0; k < inst.skill_count(); ++k) {
      const auto nested = nested_capacity_check(inst, *s, k);
      if (!std::all_of(nested.begin(), nested.end(), [](bool b) { return b; })) ++broken;
    }
  }
  v.require(broken == 0, "feasible schedules satisfy every nested prefix");

  InstanceSpec spec{3, {{"S", 2}}, {{"long", 1.0, {{"S", 2, 1}}}, {"wide", 1.0, {{"S", 1, 2}}}}};
  const auto inst = build_instance(spec);
  const auto s = testdata::make_schedule(inst, {{"long", "S", 0}, {"wide", "S", 1}});
  const auto nested = nested_capacity_check(inst, s, 0);
  const auto report = check_schedule(inst, s);
  const bool nested_ok = std::all_of(nested.begin(), nested.end(), [](bool b) { return b; });
  const bool unit2 = report.violations.size() == 1 &&
                     report.violations[0].kind == ViolationKind::HeadcountExceeded &&
                     report.violations[0].unit == 2;
  v.require(nested_ok, "counterexample passes every nested prefix");
  v.require(unit2, "counterexample exceeds headcount at unit 2 only");
  v.detail << feasible << " feasible schedules (" << skipped << " draws skipped), " << broken
           << " nested failures; counterexample nested " << (nested_ok ? "all true" : "not all true")
           << ", headcount " << (unit2 ? "exceeded at unit 2" : "not as expected");
  return v;
}

// Industrial-size timing.
Verdict criterion8() {
  Verdict v;
  GeneratorParams params;
  params.jobs = 229;
  params.skills = 34;
  params.horizon = 80;
  params.density = 0.1;
  const auto inst = random_instance(params, 1);
  auto t0 = Clock::now();
  const auto e = edm_solve(inst);
  const double edm_s = seconds_since(t0);
  t0 = Clock::now();
  const auto rows = sweep(inst, {kDefaultAlphas.begin(), kDefaultAlphas.end()});
  const double sweep_s = seconds_since(t0);
  v.require(edm_s <= 1.0, "EDM <= 1 s");
  v.require(rows.size() == 7, "seven sweep rows");
  v.require(sweep_s <= 5.0, "sweep <= 5 s");
  v.detail << inst.job_count() << " jobs, " << inst.skill_count() << " skills, T " << inst.horizon() << ", "
           << op_count(inst).total << " ops, status " << to_string(e.schedule.status) << "; EDM "
           << fmt(edm_s, 4) << " s, sweep " << fmt(sweep_s, 4) << " s";
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Verdict()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                       criterion5, criterion6, criterion7, criterion8};
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
  if (which.empty())
    for (int i = 1; i <= 8; ++i) which.push_back(i);

  bool all = true;
  for (int n : which) {
    if (n < 1 || n > 8) {
      std::cerr << "unknown criterion " << n << "\n";
      return 2;
    }
    Verdict v;
    try {
      v = criteria[n - 1]();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << "exception: " << e.what();
    }
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << n << ": " << v.detail.str() << std::endl;
    all = all && v.pass;
  }
  return all ? 0 : 1;
}

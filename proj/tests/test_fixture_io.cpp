#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "instances.hpp"
#include "skillsched/edm.hpp"
#include "skillsched/exact.hpp"
#include "skillsched/fixture.hpp"
#include "skillsched/generator.hpp"
#include "skillsched/io.hpp"

using namespace skillsched;

#ifndef SKILLSCHED_FIXTURE_PATH
#error "SKILLSCHED_FIXTURE_PATH must be defined"
#endif

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("skillsched_test_" + name);
}

}  // namespace

TEST_SUITE("fixture") {

TEST_CASE("table loads with pinned content") {
  CHECK(fixture_checksum(SKILLSCHED_FIXTURE_PATH) == kTable1Checksum);
  const auto rows = load_table1_fixture(SKILLSCHED_FIXTURE_PATH);
  REQUIRE(rows.size() == kTable1Rows);

  const auto& r1 = rows[0];
  CHECK(r1.no == 1);
  CHECK(r1.jobs == 10);
  CHECK(r1.op == 11);
  CHECK(r1.skills == 7);
  CHECK(r1.a_alpha == 18);
  CHECK(r1.z_ref == 78.4614);
  CHECK(*r1.z_edm == 78.461403);
  CHECK(*r1.gap == 0.0);

  const auto& r150 = rows[149];
  CHECK(r150.no == 150);
  REQUIRE(r150.cpu_seconds);
  CHECK(*r150.cpu_seconds == 15579);
  CHECK(*r150.gap == 0.53);

  std::set<int> na;
  for (const auto& r : rows)
    if (r.infeasible()) na.insert(r.no);
  CHECK(na == std::set<int>{164, 177, 212});
}

TEST_CASE("malformed tables are rejected") {
  const auto path = temp_file("bad.csv");
  {
    std::ofstream out(path);
    out << "no,M,OP,K,A_alpha,Z_LB,Z_ref,CPU_sec,Z_EDM,Gap_pct\n1,10,11,7,18,,78.4,1,x,0.00\n";
  }
  CHECK_THROWS_AS(load_table1_fixture(path.string()), FixtureParseError);
  {
    std::ofstream out(path);
    out << "wrong,header\n";
  }
  CHECK_THROWS_AS(load_table1_fixture(path.string()), FixtureParseError);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_table1_fixture(path.string()), FixtureParseError);
}

}  // TEST_SUITE

TEST_SUITE("io") {

TEST_CASE("instance document round trip") {
  const auto spec = random_instance_spec(GeneratorParams{}, 5);
  const auto doc = instance_spec_to_json(spec);
  const auto back = instance_spec_from_json(doc);
  CHECK(instance_spec_to_json(back) == doc);
  CHECK(instance_checksum(build_instance(back)) == instance_checksum(build_instance(spec)));

  const auto path = temp_file("inst.json");
  write_instance(path.string(), spec);
  CHECK(instance_checksum(read_instance(path.string())) == instance_checksum(build_instance(spec)));
  std::filesystem::remove(path);
}

TEST_CASE("checksum tracks content") {
  const auto a = testdata::pair();
  const auto b = testdata::pair(6);
  CHECK(instance_checksum(a) != instance_checksum(b));
  CHECK(checksum_hex(instance_checksum(a)).size() == 16);
}

TEST_CASE("malformed instance documents") {
  CHECK_THROWS_AS(instance_spec_from_json(json::parse("[]")), FormatError);
  CHECK_THROWS_AS(instance_spec_from_json(json::parse(R"({"horizon": "3"})")), FormatError);
  CHECK_THROWS_AS(instance_spec_from_json(json::parse(R"({"horizon": 3, "skills": [], "jobs": [{"id": 4}]})")),
                  FormatError);
  CHECK_THROWS_AS(read_instance("/nonexistent/instance.json"), FormatError);
}

TEST_CASE("schedule export re-parses into the same schedule") {
  const auto inst = random_instance(GeneratorParams{}, 8);
  const auto r = edm_solve(inst);
  const auto doc = schedule_to_json(inst, r.schedule);
  const auto back = schedule_from_json(inst, json::parse(doc.dump()));
  CHECK(back.starts == r.schedule.starts);
  CHECK(back.status == r.schedule.status);
  CHECK(back.unplaced == r.schedule.unplaced);
  CHECK(schedule_to_json(inst, back) == doc);
  if (r.objective) CHECK(doc["objective"]["Z"].get<double>() == r.objective->z);
}

TEST_CASE("pair export") {
  const auto inst = testdata::pair();
  const auto doc = schedule_to_json(inst, edm_solve(inst).schedule);
  CHECK(doc["status"] == "Complete");
  CHECK(doc["objective"]["Z_unit"] == 5.0);
  CHECK(doc["starts"][0]["job"] == "job1");
  CHECK(doc["starts"][0]["start"] == 2);
}

TEST_CASE("feasibility report json") {
  const auto inst = testdata::pair();
  const auto bad = testdata::make_schedule(inst, {{"job2", "S", 0}, {"job1", "S", 1}});
  const auto doc = report_to_json(inst, check_schedule(inst, bad));
  CHECK(doc["feasible"] == false);
  CHECK(doc["violations"][0]["kind"] == "HeadcountExceeded");
  CHECK(doc["violations"][0]["unit"] == 2);
}

}  // TEST_SUITE

TEST_SUITE("generator") {

TEST_CASE("same seed, same bytes") {
  const auto a = instance_spec_to_json(random_instance_spec(GeneratorParams{}, 42)).dump();
  const auto b = instance_spec_to_json(random_instance_spec(GeneratorParams{}, 42)).dump();
  const auto c = instance_spec_to_json(random_instance_spec(GeneratorParams{}, 43)).dump();
  CHECK(a == b);
  CHECK(a != c);
}

TEST_CASE("every job gets at least one requirement") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto inst = random_instance(GeneratorParams{}, seed);
    CHECK(inst.job_count() == 10);
    CHECK(inst.skill_count() == 7);
    CHECK(op_count(inst).total >= 10);
  }
}

TEST_CASE("single-skill jobs") {
  GeneratorParams p;
  p.single_skill_jobs = true;
  const auto inst = random_instance(p, 1);
  CHECK(op_count(inst).total == inst.job_count());
}

TEST_CASE("unsatisfiable parameters") {
  GeneratorParams p;
  p.max_duration = 40;
  CHECK_THROWS_AS(random_instance_spec(p, 1), UnsatisfiableParams);
  GeneratorParams q;
  q.density = 0.0;
  CHECK_THROWS_AS(random_instance_spec(q, 1), UnsatisfiableParams);
  GeneratorParams r;
  r.workforce = std::vector<int>{1, 2};
  CHECK_THROWS_AS(random_instance_spec(r, 1), UnsatisfiableParams);
}

TEST_CASE("desk preset stays within a million nodes") {
  const auto p = GeneratorParams::desk();
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto inst = random_instance(p, seed);
    CHECK(inst.job_count() <= 5);
    CHECK(inst.skill_count() <= 2);
    CHECK(inst.horizon() <= 8);
    try {
      const auto r = exact_solve(inst, {1'000'000, std::chrono::milliseconds{0}, SearchMode::ProveOptimal});
      CHECK(r.proof == Proof::Optimal);
      CHECK(r.nodes <= 1'000'000);
    } catch (const NoFeasibleSchedule&) {
      // proven infeasible inside the budget
    }
  }
}

}  // TEST_SUITE

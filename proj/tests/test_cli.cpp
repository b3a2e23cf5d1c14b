#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "instances.hpp"
#include "skillsched/cli.hpp"
#include "skillsched/io.hpp"

using namespace skillsched;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "skillsched");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const InstanceSpec& spec) {
  const auto path = (std::filesystem::temp_directory_path() / ("skillsched_cli_" + name)).string();
  write_instance(path, spec);
  return path;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("solve the pair: unit-weight TWCT 5") {
  const auto path = write_temp("pair.json", testdata::pair_spec());
  const auto r = cli({"solve", path});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("Z_unit = 5.000000") != std::string::npos);
  CHECK(r.out.find("Z      = 2.500000") != std::string::npos);

  const auto j = cli({"solve", path, "--format", "json"});
  CHECK(j.code == kExitOk);
  const auto doc = json::parse(j.out);
  CHECK(doc["objective"]["Z_unit"] == 5.0);

  const auto t = cli({"solve", path, "--ordering", "time", "--format", "json"});
  CHECK(json::parse(t.out)["objective"]["Z_unit"] == 4.0);

  const auto csv = cli({"solve", path, "--format", "csv"});
  CHECK(csv.out == "job,skill,start,duration,crew\njob1,S,2,1,5\njob2,S,0,2,1\n");
}

TEST_CASE("exact on the pair: 4") {
  const auto path = write_temp("pair.json", testdata::pair_spec());
  const auto r = cli({"exact", path, "--format", "json"});
  CHECK(r.code == kExitOk);
  const auto doc = json::parse(r.out);
  CHECK(doc["objective"]["Z_unit"] == 4.0);
  CHECK(doc["proof"] == "Optimal");
  CHECK(cli({"exact", path}).out.find("Z_unit = 4.000000") != std::string::npos);
}

TEST_CASE("validate the over-committed toy: exit 2") {
  InstanceSpec s{2, {{"S", 1}}, {}};
  for (auto id : {"a", "b", "c"}) s.jobs.push_back({id, 1.0, {{"S", 1, 1}}});
  // write the raw document; the library refuses to build it
  const auto path = (std::filesystem::temp_directory_path() / "skillsched_cli_toy.json").string();
  std::ofstream(path) << instance_spec_to_json(s).dump();
  const auto r = cli({"validate", path});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("FeasibilityError") != std::string::npos);
}

TEST_CASE("validate a schedule file") {
  const auto inst_path = write_temp("pair.json", testdata::pair_spec());
  const auto sched_path = (std::filesystem::temp_directory_path() / "skillsched_cli_sched.json").string();
  const auto inst = testdata::pair();
  std::ofstream(sched_path) << schedule_to_json(
      inst, testdata::make_schedule(inst, {{"job2", "S", 0}, {"job1", "S", 1}}));
  const auto bad = cli({"validate", inst_path, "--schedule", sched_path, "--format", "json"});
  CHECK(bad.code == kExitInfeasible);
  CHECK(json::parse(bad.out)["feasible"] == false);

  std::ofstream(sched_path) << schedule_to_json(
      inst, testdata::make_schedule(inst, {{"job2", "S", 0}, {"job1", "S", 2}}));
  CHECK(cli({"validate", inst_path, "--schedule", sched_path}).code == kExitOk);
}

TEST_CASE("usage errors") {
  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"frobnicate"}).code == kExitUsage);
  CHECK(cli({"solve"}).code == kExitUsage);
  CHECK(cli({"solve", "/nonexistent.json"}).code == kExitUsage);
  const auto path = write_temp("pair.json", testdata::pair_spec());
  CHECK(cli({"solve", path, "--ordering", "fastest"}).code == kExitUsage);
  CHECK(cli({"solve", path, "--workforce", "S=4"}).code == kExitUsage);
  CHECK(cli({"--help"}).code == kExitOk);
}

TEST_CASE("overflow gives exit 1 with the payload") {
  InstanceSpec s{3, {{"S", 2}}, {{"a", 1.0, {{"S", 2, 1}}}, {"b", 1.0, {{"S", 2, 2}}}}};
  const auto path = write_temp("overflow.json", s);
  const auto r = cli({"solve", path, "--format", "json"});
  CHECK(r.code == kExitInfeasible);
  CHECK(json::parse(r.out)["status"] == "Overflow");
  CHECK(cli({"solve", path, "--allow-overflow"}).code == kExitInfeasible);
}

TEST_CASE("workforce override") {
  const auto path = write_temp("pair.json", testdata::pair_spec());
  const auto r = cli({"solve", path, "--workforce", "S=6", "--format", "json"});
  CHECK(r.code == kExitOk);
  CHECK(json::parse(r.out)["objective"]["Z_unit"] == 4.0);
}

TEST_CASE("sweep reports") {
  const auto path = write_temp("pair.json", testdata::pair_spec());
  const auto csv = cli({"sweep", path, "--format", "csv"});
  CHECK(csv.code == kExitOk);
  CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 8);
  CHECK(csv.out == cli({"sweep", path, "--format", "csv", "--threads", "4"}).out);

  const auto j = cli({"sweep", path, "--alphas", "0.5,0.1", "--exact", "--format", "json"});
  const auto doc = json::parse(j.out);
  REQUIRE(doc["rows"].size() == 2);
  CHECK(doc["rows"][0]["alpha"] == 0.1);
  CHECK(doc["rows"][1]["status"] == "Optimal");
  CHECK(cli({"sweep", path, "--alphas", "0"}).code == kExitUsage);
}

TEST_CASE("gen writes a valid instance, then validate and solve succeed") {
  for (int seed = 1; seed <= 100; ++seed) {
    const auto path = (std::filesystem::temp_directory_path() / "skillsched_cli_gen.json").string();
    const auto g = cli({"gen", "--seed", std::to_string(seed), "-o", path});
    REQUIRE(g.code == kExitOk);
    const auto v = cli({"validate", path});
    CHECK(v.code == kExitOk);
    const auto s = cli({"solve", path, "--format", "json"});
    CHECK(s.code == kExitOk);
    const auto doc = json::parse(s.out);
    const auto inst = read_instance(path);
    CHECK(schedule_to_json(inst, schedule_from_json(inst, doc)) == doc);
  }
}

TEST_CASE("gen is deterministic") {
  CHECK(cli({"gen", "--seed", "9"}).out == cli({"gen", "--seed", "9"}).out);
  CHECK(cli({"gen", "--seed", "9", "--jobs", "4", "--skills", "2", "--horizon", "8"}).code == kExitOk);
}

TEST_CASE("fixture-stats") {
  const auto r = cli({"fixture-stats", "--format", "json"});
  REQUIRE(r.code == kExitOk);
  const auto doc = json::parse(r.out);
  CHECK(doc["rows"] == 212);
  CHECK(doc["infeasible_rows"] == 3);
  CHECK(doc["n"] == 209);

  CHECK(setenv("SKILLSCHED_FIXTURE", "/nonexistent.csv", 1) == 0);
  CHECK(cli({"fixture-stats"}).code == kExitUsage);
  unsetenv("SKILLSCHED_FIXTURE");
}

}  // TEST_SUITE

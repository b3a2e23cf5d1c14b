#include "skillsched/fixture.hpp"

#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>

namespace skillsched {

namespace {

const char* const kHeader = "no,M,OP,K,A_alpha,Z_LB,Z_ref,CPU_sec,Z_EDM,Gap_pct";

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw FixtureParseError("fixture line " + std::to_string(line) + ": " + what);
}

int to_int(const std::string& s, std::size_t line, const char* column) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty())
    fail(line, std::string("bad integer in ") + column);
  return v;
}

std::optional<double> to_opt_double(const std::string& s, std::size_t line, const char* column) {
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    fail(line, std::string("bad number in ") + column);
  return v;
}

}  // namespace

std::vector<Table1Row> load_table1_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FixtureParseError("cannot open fixture '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || split(line) != split(kHeader))
    throw FixtureParseError("fixture header must be: " + std::string(kHeader));

  std::vector<Table1Row> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto f = split(line);
    if (f.size() != 10) fail(lineno, "expected 10 fields, got " + std::to_string(f.size()));
    Table1Row r;
    r.no = to_int(f[0], lineno, "no");
    r.jobs = to_int(f[1], lineno, "M");
    r.op = to_int(f[2], lineno, "OP");
    r.skills = to_int(f[3], lineno, "K");
    r.a_alpha = to_int(f[4], lineno, "A_alpha");
    r.z_lb = to_opt_double(f[5], lineno, "Z_LB");
    const auto ref = to_opt_double(f[6], lineno, "Z_ref");
    if (!ref) fail(lineno, "Z_ref is required");
    r.z_ref = *ref;
    r.cpu_seconds = to_opt_double(f[7], lineno, "CPU_sec");
    r.z_edm = to_opt_double(f[8], lineno, "Z_EDM");
    r.gap = to_opt_double(f[9], lineno, "Gap_pct");
    if (r.z_edm.has_value() != r.gap.has_value())
      fail(lineno, "Z_EDM and Gap_pct must be both present or both absent");
    rows.push_back(r);
  }
  return rows;
}

std::uint64_t fixture_checksum(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FixtureParseError("cannot open fixture '" + path + "'");
  std::uint64_t h = 14695981039346656037ull;
  for (std::istreambuf_iterator<char> it(in), end; it != end; ++it) {
    h ^= static_cast<unsigned char>(*it);
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace skillsched

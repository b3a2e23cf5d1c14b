#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace skillsched {

class FixtureParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One row of the published B&B vs EDM comparison table.
struct Table1Row {
  int no = 0;
  int jobs = 0;
  int op = 0;
  int skills = 0;
  int a_alpha = 0;
  std::optional<double> z_lb;
  /// Z* when the search finished, otherwise the best value found.
  double z_ref = 0.0;
  /// Absent when the search ran past its 3-hour budget.
  std::optional<double> cpu_seconds;
  std::optional<double> z_edm;
  std::optional<double> gap;

  /// EDM could not keep every completion inside the horizon.
  bool infeasible() const { return !z_edm.has_value(); }
};

/// Columns: no,M,OP,K,A_alpha,Z_LB,Z_ref,CPU_sec,Z_EDM,Gap_pct
/// (empty field = absent value).
std::vector<Table1Row> load_table1_fixture(const std::string& path);

/// FNV-1a of the fixture bytes, and the value of the shipped file.
std::uint64_t fixture_checksum(const std::string& path);
inline constexpr std::uint64_t kTable1Checksum = 0xd37781c50757b444ull;

inline constexpr std::size_t kTable1Rows = 212;

}  // namespace skillsched

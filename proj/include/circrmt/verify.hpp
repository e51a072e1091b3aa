#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace circrmt {

enum class VerifyLevel { Fast, Full };
VerifyLevel parse_level(const std::string& text);

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::Fast;
  std::uint64_t seed = 20240917ULL;
  unsigned threads = 1;
  /// Criteria to run; empty means every criterion of the level
  /// (fast: 1-3, full: 1-9).
  std::vector<int> criteria;
};

struct CheckResult {
  int criterion = 0;
  std::string name;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  bool soft = false;   // a failing soft check is a warning
  std::string timing;  // wall-clock data, kept out of the primary report
};

struct VerifyReport {
  VerifyOptions options;
  std::vector<CheckResult> checks;

  bool criterion_passed(int criterion) const;
  bool passed() const;
  std::vector<int> criteria() const;
};

/// Runs one acceptance criterion (1-9) and returns its checks.
std::vector<CheckResult> run_criterion(int criterion, const VerifyOptions& options);
VerifyReport run_verify(const VerifyOptions& options);

/// Deterministic text report; contains no timings.
void write_report(std::ostream& os, const VerifyReport& report);
std::string report_text(const VerifyReport& report);
/// Timings of the checks that recorded any, one per line.
void write_timings(std::ostream& os, const VerifyReport& report);

}  // namespace circrmt

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <iostream>
#include <string>

#include "circrmt/verify.hpp"

// Usage: circrmt_acceptance [criterion ...]
// With no arguments every criterion 1-9 runs. Each criterion prints one
// "criterion k: PASS|FAIL" line followed by its failing and warning rows.
int main(int argc, char** argv) {
  circrmt::VerifyOptions options;
  options.level = circrmt::VerifyLevel::Full;
  options.seed = 7;
  if (const char* t = std::getenv("CIRCRMT_THREADS")) options.threads = static_cast<unsigned>(std::stoul(t));
  try {
    for (int a = 1; a < argc; ++a) options.criteria.push_back(std::stoi(argv[a]));
    if (options.criteria.empty())
      for (int k = 1; k <= 9; ++k) options.criteria.push_back(k);

    bool ok = true;
    for (int k : options.criteria) {
      const auto checks = circrmt::run_criterion(k, options);
      bool pass = true;
      for (const auto& c : checks) pass = pass && (c.passed || c.soft);
      ok = ok && pass;
      std::cout << "criterion " << k << ": " << (pass ? "PASS" : "FAIL") << '\n';
      for (const auto& c : checks) {
        if (c.passed) continue;
        char buf[160];
        std::snprintf(buf, sizeof buf, "measured=%.6g expected=%.6g tol=%.3g", c.measured, c.expected, c.tolerance);
        std::cout << "  [" << (c.soft ? "WARN" : "FAIL") << "] " << c.name << ": " << buf << '\n';
      }
      for (const auto& c : checks)
        if (!c.timing.empty()) std::cerr << "  c" << k << ' ' << c.name << ": " << c.timing << '\n';
    }
    return ok ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

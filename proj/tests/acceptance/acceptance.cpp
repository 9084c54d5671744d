// One line per acceptance criterion; exit status 0 iff all pass.
#include <cstdio>

#include "ewinv/checks.hpp"

int main() {
  int failed = 0;
  for (const ewinv::CheckResult& r : ewinv::run_checks({})) {
    std::printf("%2d %-12s %-40s %s (%.1f s)\n", r.number, r.name.c_str(), r.title.c_str(), r.passed ? "PASS" : "FAIL",
                r.seconds);
    if (!r.passed) {
      ++failed;
      std::printf("   %s\n", r.details.dump().c_str());
    }
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}

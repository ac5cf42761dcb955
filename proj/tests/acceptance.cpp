// Runs every acceptance check with the shipped defaults and prints one line
// per criterion. Exit status is nonzero unless all of them pass.
#include <chrono>
#include <cstdio>

#include "cgolab/config.hpp"
#include "cgolab/scenarios.hpp"

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  const cgolab::Report report = cgolab::run_scenario("full-suite", cgolab::Config());
  int failed = 0;
  for (const auto& rec : report.records) {
    if (!rec.error.empty()) {
      std::printf("%-4s %-28s FAIL  error: %s\n", rec.id.c_str(), rec.name.c_str(),
                  rec.error.c_str());
      ++failed;
      continue;
    }
    std::printf("%-4s %-28s %s  %.6g %s %.6g\n", rec.id.c_str(), rec.name.c_str(),
                rec.pass ? "PASS" : "FAIL", rec.value, rec.relation.c_str(), rec.threshold);
    if (!rec.pass) ++failed;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%zu/%zu passed in %.1f s\n", report.records.size() - failed,
              report.records.size(), secs);
  return failed == 0 ? 0 : 1;
}

// Release gate: runs every verification suite and prints one line per
// criterion. Exits nonzero if anything fails.

#include <chrono>
#include <cstdio>

#include "synchro/suites.hpp"

int main() {
  using clock = std::chrono::steady_clock;
  bool all_pass = true;
  int index = 0;

  for (const auto& suite : synchro::suites::all_suites()) {
    ++index;
    auto begin = clock::now();
    std::vector<synchro::suites::CheckResult> results;
    std::string error;
    try {
      results = suite.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    double seconds = std::chrono::duration<double>(clock::now() - begin).count();

    bool pass = error.empty();
    long long checks = 0;
    std::string first_failure = error;
    for (const auto& r : results) {
      ++checks;
      if (!r.pass && pass) {
        pass = false;
        first_failure = r.name + " [" + r.detail + "]";
      }
    }
    all_pass &= pass;
    if (pass)
      std::printf("PASS %2d %-22s (%6.2fs, %lld checks) %s\n", index, suite.name.c_str(), seconds,
                  checks, suite.summary.c_str());
    else
      std::printf("FAIL %2d %-22s (%6.2fs) %s\n", index, suite.name.c_str(), seconds,
                  first_failure.c_str());
    std::fflush(stdout);
  }
  return all_pass ? 0 : 1;
}

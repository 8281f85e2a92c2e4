#pragma once

#include <functional>
#include <string>
#include <vector>

namespace synchro {
namespace suites {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct Suite {
  std::string name;
  std::string summary;
  std::function<std::vector<CheckResult>()> run;
};

/// The verification suites, in release-gate order.
const std::vector<Suite>& all_suites();

const Suite* find_suite(const std::string& name);

}  // namespace suites
}  // namespace synchro

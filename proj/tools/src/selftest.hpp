#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace dieudonne::selftest {

struct SuiteResult {
  std::string name;
  int cases = 0;
  int passed = 0;
  int failed = 0;
  int precision_errors = 0;
  /// First few failure messages, in case order.
  std::vector<std::string> failures;
};

struct Options {
  std::uint64_t seed = 1;
  /// 0: default precision per height.
  int precision = 0;
};

std::vector<SuiteResult> run_all(const Options& options);

nlohmann::json report(const Options& options, const std::vector<SuiteResult>& suites);

/// 0 when every case passed, 3 when the only failures are precision errors, 4 otherwise.
int exit_code(const std::vector<SuiteResult>& suites);

}  // namespace dieudonne::selftest

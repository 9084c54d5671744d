#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "ewinv/geometry.hpp"

namespace ewinv {

/// Options shared by every named check.
struct CheckOptions {
  CorrectionSign sign = CorrectionSign::minus;
  std::uint64_t seed = 0;
};

struct CheckResult {
  int number = 0;
  std::string name;
  std::string title;
  bool passed = false;
  nlohmann::json details;
  double seconds = 0;
};

/// Check names in their fixed reporting order.
const std::vector<std::string>& check_names();

/// Runs one named check; throws unknown_id for other names.
CheckResult run_check(const std::string& name, const CheckOptions& options = {});

/// Runs the named checks (all when empty) and returns them in reporting order.
std::vector<CheckResult> run_checks(const std::vector<std::string>& names, const CheckOptions& options = {});

}  // namespace ewinv

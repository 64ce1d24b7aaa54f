#pragma once

#include <string>
#include <vector>

#include "stieltjes/builtins.hpp"

namespace stieltjes::repro {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// The per-builtin slice of the acceptance checks; deterministic.
std::vector<CheckResult> reproduce_builtin(
    const std::string& name, const builtins::BuiltinParams& params);

}  // namespace stieltjes::repro

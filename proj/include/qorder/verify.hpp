#pragma once

// Registry of named property checks, one per library invariant. Each check
// is deterministic given the seed and produces the same report for any
// worker count.

#include "qorder/parallel.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace qorder {

struct VerifyOptions {
  std::uint64_t seed = 7;
  Exec exec;
};

struct CheckOutcome {
  bool passed = false;
  std::string detail;
};

struct Check {
  std::string module;
  std::string name;
  std::string description;
  std::function<CheckOutcome(const VerifyOptions&)> run;

  std::string id() const { return module + "/" + name; }
};

struct CheckResult {
  std::string id;
  bool passed = false;
  std::string detail;
};

const std::vector<Check>& check_registry();

// Checks matching `suite`: "all", a module name, or a full "module/name" id.
// Throws std::invalid_argument when nothing matches.
std::vector<const Check*> select_checks(const std::vector<Check>& checks, const std::string& suite);

// Runs the selection in registry order. An exception inside a check is a
// failure whose detail is the exception message.
std::vector<CheckResult> run_checks(const std::vector<const Check*>& selection, const VerifyOptions& opts);

}  // namespace qorder

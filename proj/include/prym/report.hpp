#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "prym/effectivity.hpp"

namespace prym {

inline constexpr const char* kToolVersion = "0.1.0";

struct SuiteReport {
  std::string tool_version;
  std::string timestamp;  // UTC, ISO 8601
  std::vector<SuiteEntry> entries;

  [[nodiscard]] bool all_pass() const;
  [[nodiscard]] nlohmann::json to_json() const;
};

nlohmann::json to_json(const SuiteEntry& e);

/// Every check at once: the vanishing suites for i = 2..max_i, the
/// decomposition suite for g = 6..max_g, and the class solver, pencil tables
/// and divisorial pairs for i = 1..max_i. Entries come in a fixed order.
/// ParameterError unless max_i >= 2 and max_g >= 6.
SuiteReport verify_all(int max_i, int max_g);

}  // namespace prym

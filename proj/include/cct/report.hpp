#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "cct/transforms.hpp"

namespace cct {

inline constexpr const char* kVersion = "0.1.0";

struct SuiteMeta {
  std::uint64_t seed = 42;
  long long samples = 0;
  int partitions = 8;
  long long runtime_ms = 0;
  std::string version = kVersion;
};

/// Machine-readable result of one verification suite.
struct SuiteReport {
  std::string suite;
  std::vector<CaseResult> cases;
  SuiteMeta meta;

  bool all_pass() const;
};

nlohmann::json to_json(const CaseResult& c);
CaseResult case_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SuiteReport& r);
SuiteReport report_from_json(const nlohmann::json& j);

/// True when the two reports agree on every numeric and boolean field
/// (runtime_ms excluded); the determinism contract.
bool reports_numerically_equal(const SuiteReport& a, const SuiteReport& b);

/// RFC-4180-style CSV field quoting: quote when the field contains a comma,
/// a quote, or a line break; embedded quotes doubled.
std::string csv_field(const std::string& value);

std::string csv_row(const std::vector<std::string>& fields);

}  // namespace cct

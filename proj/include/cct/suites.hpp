#pragma once

#include "cct/radon.hpp"
#include "cct/report.hpp"

namespace cct {

/// Knobs shared by every verification suite. samples == 0 picks the
/// per-suite default documented in the shipped config file.
struct SuiteOptions {
  std::uint64_t seed = 42;
  long long samples = 0;
  int partitions = 8;
};

/// The named suites, in canonical order ("all" excluded).
const std::vector<std::string>& suite_names();

bool is_suite_name(const std::string& name);

/// Default sample count for a suite (what samples == 0 resolves to).
long long suite_default_samples(const std::string& name);

/// Run one named suite, or "all" (concatenated cases, names prefixed with
/// the owning suite).
SuiteReport run_suite(const std::string& name, const SuiteOptions& opts);

}  // namespace cct

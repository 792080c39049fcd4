#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ringstab/report.hpp"
#include "ringstab/specfile.hpp"

namespace ringstab {

/// Options shared by every suite run.
struct SuiteOptions {
  unsigned n_override = 0;  // 0 = use the per-ring n from the spec file
  std::optional<std::vector<elem>> ideal_gens;  // restrict ideal-driven checks
  std::size_t cap_override = 0;  // 0 = use the per-ring cap
  std::uint64_t seed = 20260823;  // base seed for every sampled check
};

/// Canonical suite list, in the order "all" runs them.
const std::vector<std::string>& suite_names();
/// True for every canonical suite name and for "all".
bool is_suite_name(const std::string& name);

std::string tool_version();

/// Runs one suite (or "all") against every ring declared in the spec, in
/// declaration order.  Appends wall-clock entries to timings when given.
/// Throws RingstabError for unknown suite names and invalid option
/// combinations (n = 2 is accepted only by the identities suite).
Report run_suite(const SpecFile& spec, const std::string& suite,
                 const SuiteOptions& opt, Timings* timings = nullptr);

}  // namespace ringstab

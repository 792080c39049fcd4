#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ringstab/mat.hpp"

namespace ringstab {

/// Outcome of one check.  `unverified` means a cap was hit and the check was
/// neither confirmed nor refuted; suites must surface it, never hide it.
enum class Status { pass, fail, unverified };

std::string status_name(Status s);
Status status_from_name(const std::string& name);

/// Canonical matrix encoding used everywhere a matrix appears in a report:
/// row-major element codes, decimal, comma-separated ("1,0,0,0,1,0,0,0,1").
std::string encode_matrix(const Mat& m);

/// One verified statement inside a suite.
struct CheckResult {
  std::string name;    // stable identifier, unique within the suite run
  Status status = Status::pass;
  std::string detail;  // deterministic one-line summary
  std::vector<std::string> witnesses;  // canonical-encoded matrices/elements
  std::map<std::string, std::string> data;  // extra deterministic fields

  bool operator==(const CheckResult&) const = default;
};

/// All checks one suite ran against one declared ring.
struct SuiteResult {
  std::string suite;
  std::string ring_name;        // declaration name from the spec file
  std::string ring_descriptor;  // family string, e.g. "zmod(4)"
  unsigned n = 3;
  std::vector<CheckResult> checks;

  Status status() const;  // fail dominates, then unverified, then pass
  bool operator==(const SuiteResult&) const = default;
};

/// Full tool report.  Value purposely excludes wall-clock data so identical
/// invocations serialize byte-identically; timings ride along separately and
/// appear only in the text rendering.
struct Report {
  std::string tool = "ringstab";
  std::string version;
  unsigned schema_version = 1;
  std::vector<SuiteResult> suites;

  Status status() const;
  bool operator==(const Report&) const = default;
};

int report_exit_code(const Report& r);  // 0 pass, 1 fail, 2 unverified-only

using Timings = std::vector<std::pair<std::string, double>>;

/// JSON schema (schema_version 1, keys sorted lexicographically):
///   {"checks_failed": int, "checks_passed": int, "checks_unverified": int,
///    "schema_version": 1, "status": "pass|fail|unverified",
///    "suites": [{"checks": [{"data": {..}, "detail": str, "name": str,
///                            "status": str, "witnesses": [str]}],
///                "n": int, "ring": str, "ring_descriptor": str,
///                "status": str, "suite": str}],
///    "tool": "ringstab", "version": str}
std::string report_to_json(const Report& r);
Report report_from_json(const std::string& text);

std::string report_to_text(const Report& r, const Timings* timings = nullptr);

}  // namespace ringstab

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ringstab/ring.hpp"
#include "ringstab/subgroup.hpp"

namespace ringstab {

/// Parse error with 1-based location inside the spec file.
struct SpecParseError : RingstabError {
  SpecParseError(const std::string& origin, std::size_t line, std::size_t col,
                 const std::string& message)
      : RingstabError(origin + ":" + std::to_string(line) + ":" +
                      std::to_string(col) + ": " + message),
        line(line),
        col(col) {}

  std::size_t line, col;
};

/// One `[ring NAME]` section, built and axiom-checked.
struct RingDecl {
  std::string name;        // section name, unique within the file
  Ring ring;               // constructed ring (axioms verified)
  unsigned n = 3;          // matrix dimension for suites on this ring
  std::size_t cap = default_closure_cap;  // closure/enumeration budget
};

/// Parsed ring specification file.
struct SpecFile {
  std::string origin;           // path or "<string>"
  std::vector<RingDecl> rings;  // declaration order
  unsigned default_n = 3;
  std::size_t default_cap = default_closure_cap;

  const RingDecl* find(const std::string& name) const;
};

/// Grammar: ini-style sections.  Top level allows `n = K` and `cap = N`
/// defaults.  Each `[ring NAME]` section takes `family = zmod | trunc_poly |
/// matrix | upper_triangular | product | explicit` plus the family's
/// parameters (`m`, `base`, `k`, `parts`, `order`, `add`, `mul`) and optional
/// per-ring `n` / `cap` overrides.  `base` and `parts` refer to rings
/// declared earlier in the same file.  Comments start with `#` or `;`.
/// Unknown keys, malformed values and axiom violations are rejected with a
/// line:column location.
SpecFile parse_ring_spec(const std::string& path);
SpecFile parse_ring_spec_text(const std::string& text,
                              const std::string& origin = "<string>");

}  // namespace ringstab

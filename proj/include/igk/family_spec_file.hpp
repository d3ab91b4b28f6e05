#pragma once

#include <string>
#include <string_view>

#include "igk/families.hpp"

namespace igk {

// JSON family description:
// {"kind": "finite"|"real_line", "n": 1, "C": "...", "F": ["..."], "psi": "...",
//  "domain": {"lower": [..|null], "upper": [..|null]},
//  "points": [...], "labels": [...], "quadrature_order": 64, "name": "..."}
// C and F are expressions in x; psi uses theta1..thetan (or theta when n = 1).
ExponentialFamily parse_family_spec(std::string_view json_text);
ExponentialFamily load_family_spec(const std::string& path);

// Builtin name or, failing that, a path to a spec file.
ExponentialFamily resolve_family(const std::string& family, const std::string& spec_path);

}  // namespace igk

#pragma once

#include <string>
#include <vector>

#include "annogate/core/types.hpp"

namespace annogate::provider {

// Scans the completion for the last line matching the `LABELS:` contract
// (case-insensitive, whitespace-tolerant) and produces one Vote per expected
// dimension key. Malformed output never throws; it yields invalid votes:
//   - key absent from the line            -> invalid
//   - key assigned a value outside {0,1}  -> invalid
//   - key assigned twice with conflict    -> invalid (consistent repeats ok)
// raw_fragment keeps the matched `key=value` text for audit.
std::vector<core::Vote> parse_votes(const std::string& completion_text,
                                    const std::vector<std::string>& dimension_keys,
                                    int pass_index);

}  // namespace annogate::provider

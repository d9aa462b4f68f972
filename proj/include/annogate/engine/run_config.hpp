#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace annogate::engine {

enum class TiePolicy { negative, positive, fail };

TiePolicy tie_policy_from_string(const std::string& s);
const char* tie_policy_name(TiePolicy p);

struct RunConfig {
    int passes = 7;            // repeated classifications per sample; floor 3
    double temperature = 0.6;  // must stay above 0 for consistency to mean anything
    int min_valid_votes = 1;   // below this a dimension is unresolvable
    TiePolicy tie_policy = TiePolicy::negative;
    int concurrency_limit = 4;
    std::optional<std::uint64_t> seed;  // offline providers

    void validate() const;
    bool operator==(const RunConfig&) const = default;
};

}  // namespace annogate::engine

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "annogate/core/types.hpp"

namespace annogate::workflow {

enum class SplitSide { refinement, holdout };

const char* split_side_name(SplitSide s);
SplitSide split_side_from_string(const std::string& s);

struct SplitSpec {
    double fraction = 0.25;  // refinement share
    std::uint64_t seed = 0;
    std::map<std::string, SplitSide> assignment;

    std::vector<std::string> ids(SplitSide side) const;
    bool contains(const std::string& sample_id) const { return assignment.count(sample_id) > 0; }
    SplitSide side(const std::string& sample_id) const;  // UnknownSampleId on a miss
};

// Seeded uniform partition of the gold-labeled sample ids. Deterministic in
// (ids, seed, fraction) regardless of gold-record order; both sides always
// end up non-empty. The refinement side gets round(fraction * n) samples.
SplitSpec split(const std::vector<core::GoldRecord>& gold, double fraction, std::uint64_t seed);

SplitSpec load_split(const std::filesystem::path& path);
void write_split(const std::filesystem::path& path, const SplitSpec& spec);

}  // namespace annogate::workflow

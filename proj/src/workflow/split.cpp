#include "annogate/workflow/split.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "annogate/error.hpp"
#include "annogate/util.hpp"

namespace annogate::workflow {

using nlohmann::json;

const char* split_side_name(SplitSide s) {
    return s == SplitSide::refinement ? "refinement" : "holdout";
}

SplitSide split_side_from_string(const std::string& s) {
    if (s == "refinement") return SplitSide::refinement;
    if (s == "holdout") return SplitSide::holdout;
    throw Error(Errc::config_invalid, "unknown split side '" + s + "'");
}

std::vector<std::string> SplitSpec::ids(SplitSide side) const {
    std::vector<std::string> out;
    for (const auto& [id, s] : assignment)
        if (s == side) out.push_back(id);
    return out;
}

SplitSide SplitSpec::side(const std::string& sample_id) const {
    auto it = assignment.find(sample_id);
    if (it == assignment.end())
        throw Error(Errc::unknown_sample_id, "sample '" + sample_id + "' is not in the split");
    return it->second;
}

SplitSpec split(const std::vector<core::GoldRecord>& gold, double fraction, std::uint64_t seed) {
    if (gold.size() < 2)
        throw Error(Errc::too_few_gold,
                    "need at least 2 gold-labeled samples to split, have " +
                        std::to_string(gold.size()));

    std::vector<std::string> ids;
    ids.reserve(gold.size());
    for (const auto& g : gold) ids.push_back(g.sample_id);
    std::sort(ids.begin(), ids.end());

    auto n = static_cast<std::int64_t>(ids.size());
    auto k = static_cast<std::int64_t>(std::llround(fraction * static_cast<double>(n)));
    if (!(fraction > 0.0 && fraction < 1.0) || k < 1 || k >= n)
        throw Error(Errc::degenerate_split,
                    "fraction " + std::to_string(fraction) + " of " + std::to_string(n) +
                        " gold samples leaves one side empty");

    // Hand-rolled Fisher-Yates on a counter-based stream: std::shuffle is
    // implementation-defined and would break cross-platform reproducibility.
    std::uint64_t counter = 0;
    auto next = [&] { return splitmix64(seed + 0x9E3779B97F4A7C15ULL * ++counter); };
    for (std::int64_t i = n - 1; i > 0; --i) {
        auto j = bounded(next(), static_cast<std::uint64_t>(i + 1));
        std::swap(ids[static_cast<size_t>(i)], ids[j]);
    }

    SplitSpec spec;
    spec.fraction = fraction;
    spec.seed = seed;
    for (std::int64_t i = 0; i < n; ++i)
        spec.assignment[ids[static_cast<size_t>(i)]] =
            i < k ? SplitSide::refinement : SplitSide::holdout;
    return spec;
}

SplitSpec load_split(const std::filesystem::path& path) {
    json j = json::parse(read_file(path), nullptr, false);
    if (j.is_discarded())
        throw Error(Errc::malformed_row, "split file " + path.string() + " is not valid JSON");
    SplitSpec spec;
    spec.fraction = j.at("fraction").get<double>();
    spec.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& [id, side] : j.at("assignment").items())
        spec.assignment[id] = split_side_from_string(side.get<std::string>());
    return spec;
}

void write_split(const std::filesystem::path& path, const SplitSpec& spec) {
    json assignment = json::object();
    for (const auto& [id, side] : spec.assignment) assignment[id] = split_side_name(side);
    json j;
    j["fraction"] = spec.fraction;
    j["seed"] = spec.seed;
    j["assignment"] = std::move(assignment);
    write_file(path, j.dump(2) + "\n");
}

}  // namespace annogate::workflow

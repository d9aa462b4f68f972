#include "annogate/engine/aggregate.hpp"

#include "annogate/error.hpp"

namespace annogate::engine {

TiePolicy tie_policy_from_string(const std::string& s) {
    if (s == "negative") return TiePolicy::negative;
    if (s == "positive") return TiePolicy::positive;
    if (s == "fail") return TiePolicy::fail;
    throw Error(Errc::config_invalid, "unknown tie_policy '" + s + "'");
}

const char* tie_policy_name(TiePolicy p) {
    switch (p) {
        case TiePolicy::negative: return "negative";
        case TiePolicy::positive: return "positive";
        case TiePolicy::fail: return "fail";
    }
    return "negative";
}

void RunConfig::validate() const {
    if (passes < 3)
        throw Error(Errc::config_invalid,
                    "passes must be at least 3, got " + std::to_string(passes));
    if (temperature <= 0.0)
        throw Error(Errc::config_invalid, "temperature must be above 0 for repeated sampling");
    if (temperature > 1.0) throw Error(Errc::config_invalid, "temperature must be in (0,1]");
    if (min_valid_votes < 1 || min_valid_votes > passes)
        throw Error(Errc::config_invalid, "min_valid_votes must be in [1, passes]");
    if (concurrency_limit < 1) throw Error(Errc::config_invalid, "concurrency_limit must be >= 1");
}

core::AggregatedAnnotation aggregate(const core::VoteSet& votes, TiePolicy tie_policy) {
    int positive = 0, negative = 0;
    for (const auto& v : votes.votes) {
        if (!v.valid) continue;
        (*v.label == core::Label::positive ? positive : negative) += 1;
    }
    int valid = positive + negative;
    if (valid == 0)
        throw Error(Errc::no_valid_votes,
                    votes.sample_id + "/" + votes.dimension_key + " has no valid votes");

    core::AggregatedAnnotation out;
    out.sample_id = votes.sample_id;
    out.dimension_key = votes.dimension_key;
    out.valid_votes = valid;

    if (positive == negative) {
        if (tie_policy == TiePolicy::fail)
            throw Error(Errc::tie_unresolved,
                        votes.sample_id + "/" + votes.dimension_key + " split " +
                            std::to_string(positive) + "-" + std::to_string(negative));
        out.tie = true;
        out.label = tie_policy == TiePolicy::positive ? core::Label::positive : core::Label::negative;
        out.consistency = Rational(1, 2);
    } else {
        out.label = positive > negative ? core::Label::positive : core::Label::negative;
        out.consistency = Rational(std::max(positive, negative), valid);
    }
    return out;
}

}  // namespace annogate::engine

#pragma once

#include "annogate/core/types.hpp"
#include "annogate/engine/run_config.hpp"

namespace annogate::engine {

// Modal label and consistency over the valid votes of one (sample, dimension).
// Invalid votes are excluded from numerator and denominator alike. An exact
// split is a tie: consistency 1/2, tie=true, label chosen by policy (or
// TieUnresolved under TiePolicy::fail). Throws NoValidVotes when no vote is
// valid.
core::AggregatedAnnotation aggregate(const core::VoteSet& votes, TiePolicy tie_policy);

}  // namespace annogate::engine

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "annogate/eval/metrics.hpp"

namespace annogate::eval {

struct MetricDelta {
    std::string dimension;
    MetricSet before;
    MetricSet after;
    std::optional<Rational> d_accuracy;  // after minus before; absent if either side is
    std::optional<Rational> d_precision;
    std::optional<Rational> d_recall;
    std::optional<Rational> d_f1;
};

struct DeltaReport {
    std::vector<MetricDelta> dimensions;
};

// Before/after metric comparison of two runs over the same samples and
// dimensions, e.g. across a codebook revision. Refuses runs whose sample-id
// sets differ (SampleSetMismatch) or whose dimension sets differ
// (DimensionMismatch). Comparing a run against itself yields all-zero deltas.
DeltaReport compare_runs(const std::vector<core::AggregatedAnnotation>& before,
                         const std::vector<core::GoldRecord>& before_gold,
                         const std::vector<core::AggregatedAnnotation>& after,
                         const std::vector<core::GoldRecord>& after_gold);

}  // namespace annogate::eval

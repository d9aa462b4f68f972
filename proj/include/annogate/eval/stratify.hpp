#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "annogate/eval/metrics.hpp"

namespace annogate::eval {

struct StratumMetrics {
    ConfusionMatrix cm;
    std::optional<Rational> accuracy;
    std::optional<Rational> tpr;  // recall
    std::optional<Rational> tnr;
    std::int64_t pairs = 0;
};

// Evaluated (sample, dimension) pairs pooled across dimensions and split by
// consistency: exactly 1.0 versus below 1.0. Deltas are full minus partial in
// percentage points; a delta is absent when either stratum's value is
// undefined (an empty stratum is reported, never raised).
struct StratifiedMetrics {
    StratumMetrics full;
    StratumMetrics partial;
    std::optional<Rational> delta_accuracy_pp;
    std::optional<Rational> delta_tpr_pp;
    std::optional<Rational> delta_tnr_pp;
    Rational share_full;  // full pairs / evaluated pairs
    std::int64_t evaluated_pairs = 0;
    std::int64_t unresolved_pairs = 0;
};

StratifiedMetrics stratify(const std::vector<core::AggregatedAnnotation>& aggregates,
                           const std::vector<core::GoldRecord>& gold);

}  // namespace annogate::eval

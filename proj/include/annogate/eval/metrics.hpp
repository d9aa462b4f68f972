#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "annogate/core/types.hpp"
#include "annogate/rational.hpp"

namespace annogate::eval {

struct ConfusionMatrix {
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::int64_t tn = 0;
    std::int64_t fn = 0;

    std::int64_t total() const { return tp + fp + tn + fn; }
    bool operator==(const ConfusionMatrix&) const = default;
};

// A metric is absent exactly when its denominator is zero; it is never
// silently reported as 0 or 1.
struct MetricSet {
    std::optional<Rational> accuracy;
    std::optional<Rational> precision;
    std::optional<Rational> recall;
    std::optional<Rational> f1;
    std::int64_t support_positive = 0;  // gold positives among evaluated pairs
    std::int64_t support_negative = 0;

    bool operator==(const MetricSet&) const = default;
};

// Counts over the samples that appear in both inputs for the dimension and
// carry a resolved aggregate. Unresolved pairs are excluded from the matrix
// and tallied into unresolved_out when given. Throws NoOverlap when nothing
// is comparable.
ConfusionMatrix confusion(const std::vector<core::AggregatedAnnotation>& aggregates,
                          const std::vector<core::GoldRecord>& gold,
                          const std::string& dimension_key,
                          std::int64_t* unresolved_out = nullptr);

// Exact rational metrics from a matrix. Throws EmptyMatrix when total is 0.
MetricSet metrics(const ConfusionMatrix& cm);

}  // namespace annogate::eval

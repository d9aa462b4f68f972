#pragma once

#include <optional>
#include <string>
#include <vector>

#include "annogate/core/types.hpp"
#include "annogate/rational.hpp"

namespace annogate::workflow {

enum class ReviewReason { unresolvable, tie, low_consistency, positive_prediction };

const char* review_reason_name(ReviewReason r);

enum class ReviewMode { edge_cases, positives, both };

ReviewMode review_mode_from_string(const std::string& s);

struct ReviewEntry {
    std::string sample_id;
    std::string dimension_key;
    ReviewReason reason;
    std::optional<core::Label> label;
    std::optional<Rational> consistency;  // absent for unresolvable entries
};

// Ordered most review-worthy first: ascending consistency with absent values
// leading, then sample_id, then dimension.
struct ReviewQueue {
    std::vector<ReviewEntry> entries;
};

// edge_cases flags everything short of a clean unanimous resolution
// (consistency below 1, ties, unresolvables); positives flags modal-positive
// predictions; both unions them with one entry per (sample, dimension).
ReviewQueue build_review_queue(const std::vector<core::AggregatedAnnotation>& aggregates,
                               ReviewMode mode);

std::string review_queue_csv(const ReviewQueue& queue);

}  // namespace annogate::workflow

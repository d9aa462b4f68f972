#include "annogate/workflow/review.hpp"

#include <algorithm>

#include "annogate/error.hpp"
#include "annogate/util.hpp"

namespace annogate::workflow {

const char* review_reason_name(ReviewReason r) {
    switch (r) {
        case ReviewReason::unresolvable: return "unresolvable";
        case ReviewReason::tie: return "tie";
        case ReviewReason::low_consistency: return "low_consistency";
        case ReviewReason::positive_prediction: return "positive_prediction";
    }
    return "";
}

ReviewMode review_mode_from_string(const std::string& s) {
    if (s == "edge_cases") return ReviewMode::edge_cases;
    if (s == "positives") return ReviewMode::positives;
    if (s == "both") return ReviewMode::both;
    throw Error(Errc::config_invalid, "unknown review mode '" + s + "'");
}

namespace {

bool is_edge_case(const core::AggregatedAnnotation& a) {
    return !a.resolved() || a.tie || (a.consistency && *a.consistency < Rational(1, 1));
}

bool is_positive(const core::AggregatedAnnotation& a) {
    return a.resolved() && a.label == core::Label::positive;
}

ReviewReason reason_for(const core::AggregatedAnnotation& a) {
    if (!a.resolved()) return ReviewReason::unresolvable;
    if (a.tie) return ReviewReason::tie;
    if (a.consistency && *a.consistency < Rational(1, 1)) return ReviewReason::low_consistency;
    return ReviewReason::positive_prediction;
}

}  // namespace

ReviewQueue build_review_queue(const std::vector<core::AggregatedAnnotation>& aggregates,
                               ReviewMode mode) {
    ReviewQueue queue;
    for (const auto& a : aggregates) {
        bool take = false;
        if (mode == ReviewMode::edge_cases || mode == ReviewMode::both) take = is_edge_case(a);
        if (!take && (mode == ReviewMode::positives || mode == ReviewMode::both))
            take = is_positive(a);
        if (!take) continue;
        ReviewEntry e;
        e.sample_id = a.sample_id;
        e.dimension_key = a.dimension_key;
        e.reason = mode == ReviewMode::positives ? ReviewReason::positive_prediction
                                                 : reason_for(a);
        e.label = a.label;
        e.consistency = a.consistency;
        queue.entries.push_back(std::move(e));
    }
    std::sort(queue.entries.begin(), queue.entries.end(),
              [](const ReviewEntry& x, const ReviewEntry& y) {
                  if (x.consistency.has_value() != y.consistency.has_value())
                      return !x.consistency.has_value();
                  if (x.consistency && y.consistency && *x.consistency != *y.consistency)
                      return *x.consistency < *y.consistency;
                  if (x.sample_id != y.sample_id) return x.sample_id < y.sample_id;
                  return x.dimension_key < y.dimension_key;
              });
    return queue;
}

std::string review_queue_csv(const ReviewQueue& queue) {
    std::string csv = "sample_id,dimension,reason,label,consistency\n";
    for (const auto& e : queue.entries) {
        csv += csv_join({e.sample_id, e.dimension_key, review_reason_name(e.reason),
                         e.label ? core::label_cell(*e.label) : "",
                         e.consistency ? e.consistency->decimals(6) : ""}) +
               "\n";
    }
    return csv;
}

}  // namespace annogate::workflow

#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "annogate/eval/compare.hpp"
#include "annogate/eval/metrics.hpp"
#include "annogate/eval/stratify.hpp"

namespace annogate::eval {

struct DimensionEvaluation {
    std::string dimension;
    ConfusionMatrix cm;
    MetricSet metrics;
    std::int64_t unresolved = 0;
};

// One evaluation per dimension key, in the given order. A dimension whose
// overlapping pairs are all unresolved gets an all-undefined MetricSet.
std::vector<DimensionEvaluation> evaluate_dimensions(
    const std::vector<core::AggregatedAnnotation>& aggregates,
    const std::vector<core::GoldRecord>& gold, const std::vector<std::string>& dimension_keys);

// Report files round metrics to 3 decimals; undefined renders as JSON null
// or an empty CSV cell.
nlohmann::json metrics_report_json(const std::vector<DimensionEvaluation>& evals);
std::string metrics_report_csv(const std::vector<DimensionEvaluation>& evals);
nlohmann::json stratified_report_json(const StratifiedMetrics& s);
nlohmann::json delta_report_json(const DeltaReport& report);

nlohmann::json metric_cell(const std::optional<Rational>& r);  // null when undefined

}  // namespace annogate::eval

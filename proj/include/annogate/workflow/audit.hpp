#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "annogate/core/types.hpp"
#include "annogate/rational.hpp"

namespace annogate::workflow {

struct Disagreement {
    std::string sample_id;
    std::string dimension_key;
    core::Label gold_label;
    core::Label predicted;
    Rational consistency;
};

// Cross-check of the human labels themselves. A disagreement where the model
// was highly self-consistent is the strongest hint that a gold label (or the
// codebook) deserves a second look, so the list is sorted by consistency
// descending.
struct AuditReport {
    std::map<std::string, Rational> agreement_by_dimension;
    Rational overall_agreement;
    std::vector<Disagreement> disagreements;
    std::int64_t compared_pairs = 0;
    std::int64_t unresolved_pairs = 0;
};

AuditReport audit_human_labels(const std::vector<core::AggregatedAnnotation>& aggregates,
                               const std::vector<core::GoldRecord>& gold);

nlohmann::json audit_report_json(const AuditReport& report);

}  // namespace annogate::workflow

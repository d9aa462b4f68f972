#pragma once

#include <optional>
#include <string>
#include <vector>

#include "annogate/core/types.hpp"
#include "annogate/engine/runner.hpp"
#include "annogate/eval/report_io.hpp"
#include "annogate/workflow/ledger.hpp"
#include "annogate/workflow/split.hpp"

namespace annogate::workflow {

// Researcher-chosen minimums; a metric without a threshold is never gated.
struct GateThresholds {
    std::optional<Rational> accuracy;
    std::optional<Rational> precision;
    std::optional<Rational> recall;
    std::optional<Rational> f1;

    bool any() const { return accuracy || precision || recall || f1; }
};

struct DimensionVerdict {
    std::string dimension;
    bool passed = true;
    std::vector<std::string> failures;  // "f1 0.690 < 0.700", "precision undefined"
};

struct EvaluationReport {
    std::string stage;  // refinement | holdout
    std::string run_id;
    int codebook_version = 0;
    std::vector<eval::DimensionEvaluation> evaluations;
    std::vector<DimensionVerdict> verdicts;
    bool all_passed = true;
};

// Metrics on the refinement split only, recorded into the ledger. Hard-fails
// with HoldoutLeak if the run contains any holdout-split sample: holdout data
// must not inform codebook iteration. Closed once the ledger is frozen.
EvaluationReport evaluate_refinement(const engine::RunManifest& manifest,
                                     const std::vector<core::AggregatedAnnotation>& aggregates,
                                     const std::vector<core::GoldRecord>& gold,
                                     const SplitSpec& split, const core::Codebook& codebook,
                                     const GateThresholds& thresholds, CodebookLedger& ledger);

// The one-shot final evaluation: requires a prior refinement evaluation and
// the latest registered codebook version, then freezes the ledger.
EvaluationReport evaluate_holdout(const engine::RunManifest& manifest,
                                  const std::vector<core::AggregatedAnnotation>& aggregates,
                                  const std::vector<core::GoldRecord>& gold,
                                  const SplitSpec& split, const core::Codebook& codebook,
                                  const GateThresholds& thresholds, CodebookLedger& ledger);

// Full-corpus labeling, refused until the ledger is frozen. The returned
// manifest carries the holdout metrics so the labels ship with their
// validation evidence.
engine::RunResult label_full_corpus(const std::vector<core::TextSample>& samples,
                                    const core::Codebook& codebook,
                                    const engine::RunConfig& config,
                                    provider::CompletionProvider& prov,
                                    const engine::RunPaths& paths, const std::string& run_id,
                                    const CodebookLedger& ledger,
                                    const provider::ProviderConfig* pricing = nullptr);

nlohmann::json verdicts_json(const EvaluationReport& report);

}  // namespace annogate::workflow

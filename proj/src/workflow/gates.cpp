#include "annogate/workflow/gates.hpp"

#include <set>

#include "annogate/error.hpp"
#include "annogate/util.hpp"

namespace annogate::workflow {

using nlohmann::json;

namespace {

void check_threshold(DimensionVerdict& v, const char* name, const std::optional<Rational>& value,
                     const std::optional<Rational>& minimum) {
    if (!minimum) return;
    if (!value) {
        v.passed = false;
        v.failures.push_back(std::string(name) + " undefined");
    } else if (*value < *minimum) {
        v.passed = false;
        v.failures.push_back(std::string(name) + " " + value->decimals(3) + " < " +
                             minimum->decimals(3));
    }
}

std::vector<core::GoldRecord> gold_on_side(const std::vector<core::GoldRecord>& gold,
                                           const SplitSpec& split, SplitSide side) {
    std::vector<core::GoldRecord> out;
    for (const auto& g : gold)
        if (split.contains(g.sample_id) && split.side(g.sample_id) == side) out.push_back(g);
    return out;
}

EvaluationReport build_report(const std::string& stage, const engine::RunManifest& manifest,
                              const std::vector<core::AggregatedAnnotation>& aggregates,
                              const std::vector<core::GoldRecord>& side_gold,
                              const core::Codebook& codebook, const GateThresholds& thresholds) {
    std::set<std::string> covered;
    for (const auto& a : aggregates) covered.insert(a.sample_id);
    for (const auto& g : side_gold)
        if (!covered.count(g.sample_id))
            throw Error(Errc::incomplete_run, "run " + manifest.run_id + " does not cover " +
                                                  stage + " sample '" + g.sample_id + "'");

    EvaluationReport report;
    report.stage = stage;
    report.run_id = manifest.run_id;
    report.codebook_version = manifest.codebook_version;
    report.evaluations = eval::evaluate_dimensions(aggregates, side_gold, codebook.dimension_keys());
    for (const auto& e : report.evaluations) {
        DimensionVerdict v;
        v.dimension = e.dimension;
        check_threshold(v, "accuracy", e.metrics.accuracy, thresholds.accuracy);
        check_threshold(v, "precision", e.metrics.precision, thresholds.precision);
        check_threshold(v, "recall", e.metrics.recall, thresholds.recall);
        check_threshold(v, "f1", e.metrics.f1, thresholds.f1);
        report.all_passed = report.all_passed && v.passed;
        report.verdicts.push_back(std::move(v));
    }
    return report;
}

LedgerEvaluation ledger_entry(const EvaluationReport& report) {
    LedgerEvaluation e;
    e.run_id = report.run_id;
    e.codebook_version = report.codebook_version;
    e.recorded_at = now_iso8601();
    e.metrics = eval::metrics_report_json(report.evaluations);
    e.verdicts = verdicts_json(report);
    e.passed = report.all_passed;
    return e;
}

}  // namespace

json verdicts_json(const EvaluationReport& report) {
    json j = json::object();
    for (const auto& v : report.verdicts) j[v.dimension] = v.passed ? "pass" : "fail";
    return j;
}

EvaluationReport evaluate_refinement(const engine::RunManifest& manifest,
                                     const std::vector<core::AggregatedAnnotation>& aggregates,
                                     const std::vector<core::GoldRecord>& gold,
                                     const SplitSpec& split, const core::Codebook& codebook,
                                     const GateThresholds& thresholds, CodebookLedger& ledger) {
    if (ledger.frozen)
        throw Error(Errc::already_frozen,
                    "holdout evaluation has already run; refinement is closed");
    if (!ledger.find_version(manifest.codebook_version))
        throw Error(Errc::version_conflict, "codebook version " +
                                                std::to_string(manifest.codebook_version) +
                                                " is not registered in the ledger");
    for (const auto& a : aggregates)
        if (split.contains(a.sample_id) && split.side(a.sample_id) == SplitSide::holdout)
            throw Error(Errc::holdout_leak, "run " + manifest.run_id +
                                                " contains holdout sample '" + a.sample_id +
                                                "'; holdout data must not drive refinement");

    auto report = build_report("refinement", manifest, aggregates,
                               gold_on_side(gold, split, SplitSide::refinement), codebook,
                               thresholds);
    ledger.refinement_evaluations.push_back(ledger_entry(report));
    return report;
}

EvaluationReport evaluate_holdout(const engine::RunManifest& manifest,
                                  const std::vector<core::AggregatedAnnotation>& aggregates,
                                  const std::vector<core::GoldRecord>& gold,
                                  const SplitSpec& split, const core::Codebook& codebook,
                                  const GateThresholds& thresholds, CodebookLedger& ledger) {
    if (ledger.frozen)
        throw Error(Errc::already_frozen, "the ledger admits exactly one holdout evaluation");
    if (ledger.refinement_evaluations.empty())
        throw Error(Errc::refinement_required,
                    "run a refinement evaluation before the holdout evaluation");
    if (manifest.codebook_version != ledger.latest_version())
        throw Error(Errc::stale_codebook,
                    "run used codebook version " + std::to_string(manifest.codebook_version) +
                        " but the latest registered version is " +
                        std::to_string(ledger.latest_version()));

    auto report = build_report("holdout", manifest, aggregates,
                               gold_on_side(gold, split, SplitSide::holdout), codebook, thresholds);
    ledger.holdout_evaluation = ledger_entry(report);
    ledger.frozen = true;
    return report;
}

engine::RunResult label_full_corpus(const std::vector<core::TextSample>& samples,
                                    const core::Codebook& codebook,
                                    const engine::RunConfig& config,
                                    provider::CompletionProvider& prov,
                                    const engine::RunPaths& paths, const std::string& run_id,
                                    const CodebookLedger& ledger,
                                    const provider::ProviderConfig* pricing) {
    if (!ledger.frozen || !ledger.holdout_evaluation)
        throw Error(Errc::unvalidated_codebook,
                    "full-corpus labeling requires a completed holdout evaluation");
    if (codebook.version != ledger.latest_version())
        throw Error(Errc::stale_codebook,
                    "codebook version " + std::to_string(codebook.version) +
                        " is not the latest registered version " +
                        std::to_string(ledger.latest_version()));

    auto result = engine::annotate_corpus(samples, codebook, config, prov, paths, run_id,
                                          "corpus", pricing);
    json validation;
    validation["holdout_run_id"] = ledger.holdout_evaluation->run_id;
    validation["codebook_version"] = ledger.holdout_evaluation->codebook_version;
    validation["metrics"] = ledger.holdout_evaluation->metrics;
    result.manifest.validation = std::move(validation);
    engine::write_manifest(paths.manifest(), result.manifest);
    return result;
}

}  // namespace annogate::workflow

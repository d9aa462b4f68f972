#include "annogate/eval/report_io.hpp"

#include "annogate/error.hpp"
#include "annogate/util.hpp"

namespace annogate::eval {

using nlohmann::json;

std::vector<DimensionEvaluation> evaluate_dimensions(
    const std::vector<core::AggregatedAnnotation>& aggregates,
    const std::vector<core::GoldRecord>& gold, const std::vector<std::string>& dimension_keys) {
    std::vector<DimensionEvaluation> out;
    for (const auto& key : dimension_keys) {
        DimensionEvaluation e;
        e.dimension = key;
        e.cm = confusion(aggregates, gold, key, &e.unresolved);
        if (e.cm.total() > 0) e.metrics = metrics(e.cm);
        out.push_back(std::move(e));
    }
    return out;
}

json metric_cell(const std::optional<Rational>& r) {
    if (!r) return nullptr;
    return r->rounded3();
}

namespace {

json metric_set_json(const MetricSet& m) {
    json j;
    j["accuracy"] = metric_cell(m.accuracy);
    j["precision"] = metric_cell(m.precision);
    j["recall"] = metric_cell(m.recall);
    j["f1"] = metric_cell(m.f1);
    j["support_positive"] = m.support_positive;
    j["support_negative"] = m.support_negative;
    return j;
}

std::string metric_csv_cell(const std::optional<Rational>& r) {
    return r ? r->decimals(3) : "";
}

}  // namespace

json metrics_report_json(const std::vector<DimensionEvaluation>& evals) {
    json dims = json::object();
    for (const auto& e : evals) {
        json j = metric_set_json(e.metrics);
        j["tp"] = e.cm.tp;
        j["fp"] = e.cm.fp;
        j["tn"] = e.cm.tn;
        j["fn"] = e.cm.fn;
        j["unresolved"] = e.unresolved;
        dims[e.dimension] = std::move(j);
    }
    json report;
    report["dimensions"] = std::move(dims);
    return report;
}

std::string metrics_report_csv(const std::vector<DimensionEvaluation>& evals) {
    std::string csv = "dimension,accuracy,precision,recall,f1,tp,fp,tn,fn\n";
    for (const auto& e : evals) {
        csv += csv_join({e.dimension, metric_csv_cell(e.metrics.accuracy),
                         metric_csv_cell(e.metrics.precision), metric_csv_cell(e.metrics.recall),
                         metric_csv_cell(e.metrics.f1), std::to_string(e.cm.tp),
                         std::to_string(e.cm.fp), std::to_string(e.cm.tn),
                         std::to_string(e.cm.fn)}) +
               "\n";
    }
    return csv;
}

json stratified_report_json(const StratifiedMetrics& s) {
    auto stratum = [](const StratumMetrics& m) {
        json j;
        j["pairs"] = m.pairs;
        j["accuracy"] = metric_cell(m.accuracy);
        j["tpr"] = metric_cell(m.tpr);
        j["tnr"] = metric_cell(m.tnr);
        j["tp"] = m.cm.tp;
        j["fp"] = m.cm.fp;
        j["tn"] = m.cm.tn;
        j["fn"] = m.cm.fn;
        return j;
    };
    json j;
    j["full_consistency"] = stratum(s.full);
    j["partial_consistency"] = stratum(s.partial);
    json deltas;
    deltas["accuracy_pp"] = metric_cell(s.delta_accuracy_pp);
    deltas["tpr_pp"] = metric_cell(s.delta_tpr_pp);
    deltas["tnr_pp"] = metric_cell(s.delta_tnr_pp);
    j["delta"] = std::move(deltas);
    j["share_full"] = s.share_full.rounded3();
    j["evaluated_pairs"] = s.evaluated_pairs;
    j["unresolved_pairs"] = s.unresolved_pairs;
    return j;
}

json delta_report_json(const DeltaReport& report) {
    json dims = json::object();
    for (const auto& d : report.dimensions) {
        json j;
        j["before"] = metric_set_json(d.before);
        j["after"] = metric_set_json(d.after);
        json delta;
        delta["accuracy"] = metric_cell(d.d_accuracy);
        delta["precision"] = metric_cell(d.d_precision);
        delta["recall"] = metric_cell(d.d_recall);
        delta["f1"] = metric_cell(d.d_f1);
        j["delta"] = std::move(delta);
        dims[d.dimension] = std::move(j);
    }
    json j;
    j["dimensions"] = std::move(dims);
    return j;
}

}  // namespace annogate::eval

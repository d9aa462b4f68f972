#include "annogate/eval/compare.hpp"

#include <set>

#include "annogate/error.hpp"

namespace annogate::eval {

namespace {

std::optional<Rational> diff(const std::optional<Rational>& after,
                             const std::optional<Rational>& before) {
    if (!after || !before) return std::nullopt;
    return *after - *before;
}

MetricSet side_metrics(const std::vector<core::AggregatedAnnotation>& aggs,
                       const std::vector<core::GoldRecord>& gold, const std::string& dim) {
    try {
        return metrics(confusion(aggs, gold, dim));
    } catch (const Error& e) {
        if (e.code() == Errc::empty_matrix) return MetricSet{};
        throw;
    }
}

}  // namespace

DeltaReport compare_runs(const std::vector<core::AggregatedAnnotation>& before,
                         const std::vector<core::GoldRecord>& before_gold,
                         const std::vector<core::AggregatedAnnotation>& after,
                         const std::vector<core::GoldRecord>& after_gold) {
    std::set<std::string> samples_a, samples_b, dims_a, dims_b;
    for (const auto& a : before) { samples_a.insert(a.sample_id); dims_a.insert(a.dimension_key); }
    for (const auto& a : after) { samples_b.insert(a.sample_id); dims_b.insert(a.dimension_key); }
    if (samples_a != samples_b)
        throw Error(Errc::sample_set_mismatch, "runs cover different sample sets (" +
                                                   std::to_string(samples_a.size()) + " vs " +
                                                   std::to_string(samples_b.size()) + " ids)");
    if (dims_a != dims_b)
        throw Error(Errc::dimension_mismatch, "runs cover different dimension sets");

    DeltaReport report;
    for (const auto& dim : dims_a) {
        MetricDelta d;
        d.dimension = dim;
        d.before = side_metrics(before, before_gold, dim);
        d.after = side_metrics(after, after_gold, dim);
        d.d_accuracy = diff(d.after.accuracy, d.before.accuracy);
        d.d_precision = diff(d.after.precision, d.before.precision);
        d.d_recall = diff(d.after.recall, d.before.recall);
        d.d_f1 = diff(d.after.f1, d.before.f1);
        report.dimensions.push_back(std::move(d));
    }
    return report;
}

}  // namespace annogate::eval

#include "annogate/eval/metrics.hpp"

#include <map>

#include "annogate/error.hpp"

namespace annogate::eval {

ConfusionMatrix confusion(const std::vector<core::AggregatedAnnotation>& aggregates,
                          const std::vector<core::GoldRecord>& gold,
                          const std::string& dimension_key, std::int64_t* unresolved_out) {
    std::map<std::string, const core::AggregatedAnnotation*> by_sample;
    for (const auto& a : aggregates)
        if (a.dimension_key == dimension_key) by_sample[a.sample_id] = &a;

    ConfusionMatrix cm;
    std::int64_t unresolved = 0;
    bool any = false;
    for (const auto& g : gold) {
        auto g_label = g.labels.find(dimension_key);
        if (g_label == g.labels.end()) continue;
        auto it = by_sample.find(g.sample_id);
        if (it == by_sample.end()) continue;
        any = true;
        const auto& a = *it->second;
        if (!a.resolved() || !a.label) {
            ++unresolved;
            continue;
        }
        bool gold_pos = g_label->second == core::Label::positive;
        bool pred_pos = *a.label == core::Label::positive;
        if (gold_pos && pred_pos) ++cm.tp;
        else if (gold_pos) ++cm.fn;
        else if (pred_pos) ++cm.fp;
        else ++cm.tn;
    }
    if (!any)
        throw Error(Errc::no_overlap,
                    "no sample carries both a gold label and an aggregate for dimension '" +
                        dimension_key + "'");
    if (unresolved_out) *unresolved_out = unresolved;
    return cm;
}

MetricSet metrics(const ConfusionMatrix& cm) {
    if (cm.total() == 0) throw Error(Errc::empty_matrix, "confusion matrix has no evaluated pairs");
    MetricSet m;
    m.support_positive = cm.tp + cm.fn;
    m.support_negative = cm.tn + cm.fp;
    m.accuracy = Rational(cm.tp + cm.tn, cm.total());
    if (cm.tp + cm.fp > 0) m.precision = Rational(cm.tp, cm.tp + cm.fp);
    if (cm.tp + cm.fn > 0) m.recall = Rational(cm.tp, cm.tp + cm.fn);
    if (m.precision && m.recall) {
        Rational sum = *m.precision + *m.recall;
        if (sum.num() != 0) m.f1 = Rational(2, 1) * *m.precision * *m.recall / sum;
    }
    return m;
}

}  // namespace annogate::eval

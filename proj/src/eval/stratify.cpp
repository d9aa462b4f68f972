#include "annogate/eval/stratify.hpp"

#include <map>

#include "annogate/error.hpp"

namespace annogate::eval {

namespace {

void finish_stratum(StratumMetrics& s) {
    s.pairs = s.cm.total();
    if (s.pairs > 0) s.accuracy = Rational(s.cm.tp + s.cm.tn, s.pairs);
    if (s.cm.tp + s.cm.fn > 0) s.tpr = Rational(s.cm.tp, s.cm.tp + s.cm.fn);
    if (s.cm.tn + s.cm.fp > 0) s.tnr = Rational(s.cm.tn, s.cm.tn + s.cm.fp);
}

std::optional<Rational> delta_pp(const std::optional<Rational>& full,
                                 const std::optional<Rational>& partial) {
    if (!full || !partial) return std::nullopt;
    return (*full - *partial) * Rational(100, 1);
}

}  // namespace

StratifiedMetrics stratify(const std::vector<core::AggregatedAnnotation>& aggregates,
                           const std::vector<core::GoldRecord>& gold) {
    std::map<std::string, const core::GoldRecord*> gold_by_sample;
    for (const auto& g : gold) gold_by_sample[g.sample_id] = &g;

    StratifiedMetrics out;
    for (const auto& a : aggregates) {
        auto g_it = gold_by_sample.find(a.sample_id);
        if (g_it == gold_by_sample.end()) continue;
        auto l_it = g_it->second->labels.find(a.dimension_key);
        if (l_it == g_it->second->labels.end()) continue;
        if (!a.resolved() || !a.label || !a.consistency) {
            ++out.unresolved_pairs;
            continue;
        }
        bool fully = *a.consistency == Rational(1, 1);
        StratumMetrics& s = fully ? out.full : out.partial;
        bool gold_pos = l_it->second == core::Label::positive;
        bool pred_pos = *a.label == core::Label::positive;
        if (gold_pos && pred_pos) ++s.cm.tp;
        else if (gold_pos) ++s.cm.fn;
        else if (pred_pos) ++s.cm.fp;
        else ++s.cm.tn;
    }

    finish_stratum(out.full);
    finish_stratum(out.partial);
    out.evaluated_pairs = out.full.pairs + out.partial.pairs;
    if (out.evaluated_pairs == 0)
        throw Error(Errc::no_overlap, "no resolvable (sample, dimension) pair overlaps the gold set");
    out.share_full = Rational(out.full.pairs, out.evaluated_pairs);
    out.delta_accuracy_pp = delta_pp(out.full.accuracy, out.partial.accuracy);
    out.delta_tpr_pp = delta_pp(out.full.tpr, out.partial.tpr);
    out.delta_tnr_pp = delta_pp(out.full.tnr, out.partial.tnr);
    return out;
}

}  // namespace annogate::eval

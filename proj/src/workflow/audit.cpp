#include "annogate/workflow/audit.hpp"

#include <algorithm>

#include "annogate/error.hpp"

namespace annogate::workflow {

using nlohmann::json;

AuditReport audit_human_labels(const std::vector<core::AggregatedAnnotation>& aggregates,
                               const std::vector<core::GoldRecord>& gold) {
    std::map<std::string, const core::GoldRecord*> gold_by_sample;
    for (const auto& g : gold) gold_by_sample[g.sample_id] = &g;

    AuditReport report;
    std::map<std::string, std::pair<std::int64_t, std::int64_t>> agree_total;  // dim -> (agree, total)
    for (const auto& a : aggregates) {
        auto g_it = gold_by_sample.find(a.sample_id);
        if (g_it == gold_by_sample.end()) continue;
        auto l_it = g_it->second->labels.find(a.dimension_key);
        if (l_it == g_it->second->labels.end()) continue;
        if (!a.resolved() || !a.label || !a.consistency) {
            ++report.unresolved_pairs;
            continue;
        }
        auto& [agree, total] = agree_total[a.dimension_key];
        ++total;
        ++report.compared_pairs;
        if (*a.label == l_it->second) {
            ++agree;
        } else {
            report.disagreements.push_back(
                {a.sample_id, a.dimension_key, l_it->second, *a.label, *a.consistency});
        }
    }
    if (report.compared_pairs == 0)
        throw Error(Errc::no_overlap, "no resolvable aggregate overlaps the gold set");

    std::int64_t agreed = 0;
    for (const auto& [dim, counts] : agree_total) {
        report.agreement_by_dimension[dim] = Rational(counts.first, counts.second);
        agreed += counts.first;
    }
    report.overall_agreement = Rational(agreed, report.compared_pairs);
    std::sort(report.disagreements.begin(), report.disagreements.end(),
              [](const Disagreement& x, const Disagreement& y) {
                  if (x.consistency != y.consistency) return y.consistency < x.consistency;
                  if (x.sample_id != y.sample_id) return x.sample_id < y.sample_id;
                  return x.dimension_key < y.dimension_key;
              });
    return report;
}

json audit_report_json(const AuditReport& report) {
    json agreement = json::object();
    for (const auto& [dim, rate] : report.agreement_by_dimension)
        agreement[dim] = rate.rounded3();
    json disagreements = json::array();
    for (const auto& d : report.disagreements) {
        json j;
        j["sample_id"] = d.sample_id;
        j["dimension"] = d.dimension_key;
        j["gold"] = d.gold_label == core::Label::positive ? 1 : 0;
        j["predicted"] = d.predicted == core::Label::positive ? 1 : 0;
        j["consistency"] = d.consistency.rounded3();
        disagreements.push_back(std::move(j));
    }
    json j;
    j["agreement_by_dimension"] = std::move(agreement);
    j["overall_agreement"] = report.overall_agreement.rounded3();
    j["disagreements"] = std::move(disagreements);
    j["compared_pairs"] = report.compared_pairs;
    j["unresolved_pairs"] = report.unresolved_pairs;
    return j;
}

}  // namespace annogate::workflow

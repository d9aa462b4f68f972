#include "annogate/eval/summary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "annogate/error.hpp"

namespace annogate::eval {

double percentile(const std::vector<double>& sorted, double p) {
    if (sorted.empty()) return 0.0;
    if (sorted.size() == 1) return sorted[0];
    double rank = p * static_cast<double>(sorted.size() - 1);
    auto lo = static_cast<size_t>(rank);
    if (lo + 1 >= sorted.size()) return sorted.back();
    double frac = rank - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

namespace {

DistributionRow row_for(const std::vector<MetricSet>& sets,
                        const std::optional<Rational> MetricSet::*field, const char* name) {
    std::vector<double> values;
    for (const auto& s : sets)
        if (s.*field) values.push_back((s.*field)->value());
    if (values.empty())
        throw Error(Errc::all_undefined, std::string(name) + " is undefined for every task");
    std::sort(values.begin(), values.end());
    DistributionRow row;
    row.count = static_cast<std::int64_t>(values.size());
    row.minimum = values.front();
    row.maximum = values.back();
    row.p25 = percentile(values, 0.25);
    row.median = percentile(values, 0.50);
    row.p75 = percentile(values, 0.75);
    double sum = 0;
    for (double v : values) sum += v;
    row.mean = sum / static_cast<double>(values.size());
    return row;
}

}  // namespace

SummaryDistribution summarize(const std::vector<MetricSet>& sets) {
    SummaryDistribution s;
    s.accuracy = row_for(sets, &MetricSet::accuracy, "accuracy");
    s.precision = row_for(sets, &MetricSet::precision, "precision");
    s.recall = row_for(sets, &MetricSet::recall, "recall");
    s.f1 = row_for(sets, &MetricSet::f1, "f1");
    return s;
}

std::string render_summary_table(const SummaryDistribution& s) {
    char line[160];
    std::string out =
        "metric         min     p25    mean  median     p75     max  tasks\n";
    auto add = [&](const char* name, const DistributionRow& r) {
        std::snprintf(line, sizeof line, "%-10s %7.3f %7.3f %7.3f %7.3f %7.3f %7.3f %6lld\n",
                      name, r.minimum, r.p25, r.mean, r.median, r.p75, r.maximum,
                      static_cast<long long>(r.count));
        out += line;
    };
    add("accuracy", s.accuracy);
    add("precision", s.precision);
    add("recall", s.recall);
    add("f1", s.f1);
    return out;
}

}  // namespace annogate::eval

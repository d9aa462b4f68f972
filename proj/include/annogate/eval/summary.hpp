#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "annogate/eval/metrics.hpp"

namespace annogate::eval {

struct DistributionRow {
    double minimum = 0;
    double p25 = 0;
    double mean = 0;
    double median = 0;
    double p75 = 0;
    double maximum = 0;
    std::int64_t count = 0;  // defined values the row was computed over
};

struct SummaryDistribution {
    DistributionRow accuracy;
    DistributionRow precision;
    DistributionRow recall;
    DistributionRow f1;
};

// Percentiles by linear interpolation between order statistics; the median is
// the 50th percentile, which for even counts is the midpoint of the two middle
// values. `sorted` must be ascending.
double percentile(const std::vector<double>& sorted, double p);

// Cross-task distribution per metric, computed over defined values only.
// Throws AllUndefined naming the first metric with no defined value.
SummaryDistribution summarize(const std::vector<MetricSet>& sets);

// Fixed-width console block, 3 decimals per cell.
std::string render_summary_table(const SummaryDistribution& s);

}  // namespace annogate::eval

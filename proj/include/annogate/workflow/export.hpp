#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "annogate/core/types.hpp"
#include "annogate/rational.hpp"

namespace annogate::workflow {

enum class ExportFormat { csv, jsonl };

ExportFormat export_format_from_string(const std::string& s);

struct ExportOptions {
    Rational min_consistency = Rational(1, 1);  // inclusive
    ExportFormat format = ExportFormat::csv;
};

struct ExportResult {
    std::int64_t rows = 0;
    std::filesystem::path path;
};

// Training-data export. A sample qualifies when every dimension resolved and
// the minimum consistency across its dimensions meets the filter; that
// minimum is the row's consistency column. Rows carry text, 0/1 labels per
// dimension, and provenance (codebook version, run id), and the CSV re-loads
// as a gold file since extra columns are ignored there. Zero rows is a
// warning condition, not an error.
ExportResult export_training_data(const std::vector<core::TextSample>& corpus,
                                  const std::vector<core::AggregatedAnnotation>& aggregates,
                                  const core::Codebook& codebook, const std::string& run_id,
                                  const ExportOptions& options,
                                  const std::filesystem::path& out_path);

}  // namespace annogate::workflow

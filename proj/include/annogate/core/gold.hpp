#pragma once

#include <filesystem>
#include <vector>

#include "annogate/core/types.hpp"

namespace annogate::core {

// Gold CSV: header `sample_id,<dim_key_1>,...,<dim_key_n>` with 0/1 cells.
// An optional `annotator_ids` column is ';'-separated. Columns that are
// neither sample_id, a codebook dimension, nor annotator_ids are ignored, so
// files carrying extra provenance columns load unchanged.
std::vector<GoldRecord> parse_gold_csv(const std::string& content, const Codebook& codebook);

std::vector<GoldRecord> join_gold(const std::vector<TextSample>& corpus,
                                  const std::filesystem::path& gold_path,
                                  const Codebook& codebook);

std::string serialize_gold_csv(const std::vector<GoldRecord>& records, const Codebook& codebook);
void write_gold_csv(const std::filesystem::path& path, const std::vector<GoldRecord>& records,
                    const Codebook& codebook);

}  // namespace annogate::core

#pragma once

#include <filesystem>
#include <vector>

#include "annogate/core/types.hpp"

namespace annogate::core {

enum class CorpusFormat { jsonl, csv };

CorpusFormat corpus_format_from_string(const std::string& s);

// Order-preserving load. Rejects duplicate ids, empty texts, malformed rows.
std::vector<TextSample> load_corpus(const std::filesystem::path& path, CorpusFormat format);

std::string serialize_corpus_jsonl(const std::vector<TextSample>& samples);
std::string serialize_corpus_csv(const std::vector<TextSample>& samples);
void write_corpus(const std::filesystem::path& path, const std::vector<TextSample>& samples,
                  CorpusFormat format);

}  // namespace annogate::core

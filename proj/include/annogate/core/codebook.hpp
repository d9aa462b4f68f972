#pragma once

#include <filesystem>
#include <string>

#include "annogate/core/types.hpp"

namespace annogate::core {

// Codebook file layout:
//
//   codebook_id: <id>
//   version: <n>
//   parent_version: <n>      (line present only for non-root versions)
//
//   ## PREAMBLE
//   <shared instruction text>
//
//   ## DIMENSION <key> | <name>
//   <definition text>            (one section per dimension, order kept)
//
//   ## OUTPUT
//   <response-format text>

Codebook parse_codebook(const std::string& content);
Codebook load_codebook(const std::filesystem::path& path);

std::string serialize_codebook(const Codebook& cb);
void write_codebook(const std::filesystem::path& path, const Codebook& cb);

// Structural checks shared by the loader and by in-memory construction.
void validate_codebook(const Codebook& cb);

}  // namespace annogate::core

#pragma once

#include <filesystem>
#include <string>

#include "annogate/cli/config.hpp"

namespace annogate::cli {

// Each command returns the process exit code on success paths; failures
// throw annogate::Error and the caller maps Error::exit_code().

int cmd_init(const std::filesystem::path& directory);

int cmd_annotate(const ProjectConfig& config, const std::string& split_name,
                 const std::string& run_id, bool yes);

int cmd_evaluate(const ProjectConfig& config, const std::string& run_id, const std::string& stage);

int cmd_review(const ProjectConfig& config, const std::string& run_id, const std::string& mode,
               int limit);

int cmd_export(const ProjectConfig& config, const std::string& run_id,
               const std::string& min_consistency, const std::string& format);

}  // namespace annogate::cli

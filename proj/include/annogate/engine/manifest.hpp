#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "annogate/engine/run_config.hpp"
#include "annogate/provider/types.hpp"

namespace annogate::engine {

enum class RunStatus { running, complete, failed };

const char* run_status_name(RunStatus s);
RunStatus run_status_from_string(const std::string& s);

// Immutable record of one annotation run; the checkpoint map is what makes a
// killed run resumable.
struct RunManifest {
    std::string run_id;
    std::string codebook_id;
    int codebook_version = 0;
    RunConfig config;
    std::string split;  // refinement | holdout | corpus
    std::string started_at;
    std::string finished_at;
    provider::UsageRecord usage;
    double estimated_cost = 0.0;
    RunStatus status = RunStatus::running;
    std::map<std::string, int> checkpoint;  // sample_id -> completed passes
    std::uint64_t sample_set_hash = 0;
    std::size_t sample_count = 0;
    nlohmann::json validation;  // holdout metrics attached to corpus runs

    nlohmann::json to_json() const;
    static RunManifest from_json(const nlohmann::json& j);
};

RunManifest load_manifest(const std::filesystem::path& path);
void write_manifest(const std::filesystem::path& path, const RunManifest& m);

}  // namespace annogate::engine

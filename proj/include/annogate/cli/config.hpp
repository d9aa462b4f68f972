#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "annogate/core/corpus.hpp"
#include "annogate/engine/run_config.hpp"
#include "annogate/provider/types.hpp"
#include "annogate/workflow/gates.hpp"

namespace annogate::cli {

// One declarative project file drives every command; flags override it.
// Format is JSON with // and /* */ comments allowed. Unknown keys are
// rejected so a typo cannot silently fall back to a default.
struct ProjectConfig {
    std::filesystem::path config_path;  // absolute; relative paths resolve against its directory

    std::filesystem::path corpus_path;
    core::CorpusFormat corpus_format = core::CorpusFormat::jsonl;
    std::filesystem::path gold_path;
    std::filesystem::path codebook_path;
    std::filesystem::path state_dir;

    std::string provider_type = "http";  // http | scripted
    provider::ProviderConfig provider;   // temperature mirrors run.temperature
    std::filesystem::path fixture_path;  // scripted provider responses

    engine::RunConfig run;
    double split_fraction = 0.25;
    std::uint64_t split_seed = 0;
    workflow::GateThresholds thresholds;
    double cost_ceiling_usd = 5.0;  // corpus runs estimated above this need --yes
};

// Parse + structural validation. `overrides` are dotted assignments from
// --set, e.g. "run.passes=9"; they are applied before validation and are
// subject to the same unknown-key rejection.
ProjectConfig load_project_config(const std::filesystem::path& path,
                                  const std::vector<std::string>& overrides);

// Existence checks for the referenced input files, separated from parsing so
// a freshly scaffolded config parses cleanly and reports its stub paths.
void validate_project_paths(const ProjectConfig& config);

// The commented template `init` writes.
std::string config_template();

}  // namespace annogate::cli

#pragma once

#include <filesystem>
#include <vector>

#include "annogate/core/types.hpp"
#include "annogate/engine/manifest.hpp"
#include "annogate/engine/run_config.hpp"
#include "annogate/provider/types.hpp"

namespace annogate::engine {

struct RunPaths {
    std::filesystem::path dir;

    std::filesystem::path manifest() const { return dir / "manifest.json"; }
    std::filesystem::path passes_log() const { return dir / "passes.jsonl"; }
    std::filesystem::path votes() const { return dir / "votes.jsonl"; }
    std::filesystem::path aggregates() const { return dir / "aggregates.csv"; }
};

struct RunResult {
    RunManifest manifest;
    std::vector<core::VoteSet> vote_sets;                 // sample x dimension, canonical order
    std::vector<core::AggregatedAnnotation> aggregates;   // same order
    std::int64_t new_requests = 0;                        // issued by this invocation
};

// One sample, in memory, no checkpointing: issues exactly config.passes
// completions and aggregates per dimension. Dimensions with fewer than
// min_valid_votes valid votes come back unresolved instead of failing.
std::vector<core::AggregatedAnnotation> annotate_sample(const core::TextSample& sample,
                                                        const core::Codebook& codebook,
                                                        const RunConfig& config,
                                                        provider::CompletionProvider& prov);

// Checkpointed corpus run. Up to concurrency_limit samples are in flight at
// once; every completed (sample, pass) is appended to the passes log before
// the next request, so a killed run resumes where it stopped and produces
// outputs identical to an uninterrupted one under a deterministic provider.
// Auth errors abort the run; transient provider failures degrade to invalid
// votes for that pass. Re-invoking a complete run issues zero requests.
RunResult annotate_corpus(const std::vector<core::TextSample>& samples,
                          const core::Codebook& codebook, const RunConfig& config,
                          provider::CompletionProvider& prov, const RunPaths& paths,
                          const std::string& run_id, const std::string& split_name,
                          const provider::ProviderConfig* pricing = nullptr);

// Readers for persisted run outputs.
std::vector<core::AggregatedAnnotation> load_aggregates(const std::filesystem::path& csv_path);
void write_aggregates(const std::filesystem::path& csv_path,
                      const std::vector<core::AggregatedAnnotation>& aggregates);

}  // namespace annogate::engine

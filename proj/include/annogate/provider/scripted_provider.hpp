#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "annogate/provider/types.hpp"

namespace annogate::provider {

// Record-replay provider for offline runs and tests. Fixture is JSONL,
// one {"match": ..., "text": ...} object per line. Lookup order per request:
//   1. "<sample_id>#<pass_index>"
//   2. "<sample_id>"
//   3. bundle hash (16 hex chars of system+user text)
// A miss is an endpoint error, which the engine records as invalid votes.
class ScriptedProvider : public CompletionProvider {
public:
    explicit ScriptedProvider(std::map<std::string, std::string> responses)
        : responses_(std::move(responses)) {}

    static ScriptedProvider from_fixture(const std::filesystem::path& path);

    CompletionResult complete(const CompletionRequest& request) override;

private:
    std::map<std::string, std::string> responses_;
};

}  // namespace annogate::provider

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "annogate/core/types.hpp"

namespace annogate::provider {

struct ProviderConfig {
    std::string endpoint_url;  // e.g. https://api.openai.com/v1
    std::string model_name;
    double temperature = 0.6;
    double timeout_seconds = 60.0;
    int max_retries = 5;
    int requests_per_minute = 60;
    double price_per_1k_input_tokens = 0.0;
    double price_per_1k_output_tokens = 0.0;
    int backoff_base_ms = 250;  // doubled per retry

    void validate() const;
};

struct PromptBundle {
    std::string system_text;  // preamble + dimension definitions + output contract
    std::string user_text;    // delimited sample text
    int codebook_version = 0;
    std::vector<std::string> dimension_keys;  // codebook order
};

// Identifies one pass so offline providers can key on it; the HTTP provider
// ignores everything but the bundle.
struct CompletionRequest {
    PromptBundle bundle;
    std::string sample_id;
    int pass_index = 0;
};

struct CompletionResult {
    std::string text;
    std::int64_t input_tokens = 0;
    std::int64_t output_tokens = 0;
    std::int64_t latency_ms = 0;
    int attempt_count = 1;
};

struct UsageRecord {
    std::int64_t total_requests = 0;
    std::int64_t total_input_tokens = 0;
    std::int64_t total_output_tokens = 0;

    void add(const CompletionResult& r) {
        ++total_requests;
        total_input_tokens += r.input_tokens;
        total_output_tokens += r.output_tokens;
    }
};

// tokens/1000 * price, summed over both directions. Pure.
double estimate_cost(const UsageRecord& usage, const ProviderConfig& config);

// Offline token approximation: ceil(characters / 4).
std::int64_t approx_tokens(std::string_view text);

class CompletionProvider {
public:
    virtual ~CompletionProvider() = default;
    // Must be safe to call from multiple threads.
    virtual CompletionResult complete(const CompletionRequest& request) = 0;
};

}  // namespace annogate::provider

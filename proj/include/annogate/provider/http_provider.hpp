#pragma once

#include <memory>
#include <string>

#include "annogate/provider/clock.hpp"
#include "annogate/provider/rate_limiter.hpp"
#include "annogate/provider/types.hpp"

namespace annogate::provider {

// Chat-completion client. POSTs {endpoint_url}/chat/completions with
//   {"model", "temperature", "messages":[{system},{user}]}
// and reads choices[0].message.content plus usage token counts.
//
// Transient failures (HTTP 429/5xx, timeouts, connection errors) retry with
// exponential backoff up to max_retries; 401/403 raise AuthError immediately
// and other 4xx raise EndpointError without retry. Every attempt passes
// through the shared rate limiter first.
class HttpProvider : public CompletionProvider {
public:
    HttpProvider(ProviderConfig config, std::string api_key, Clock& clock);

    CompletionResult complete(const CompletionRequest& request) override;

private:
    ProviderConfig config_;
    std::string api_key_;
    Clock& clock_;
    RateLimiter limiter_;
    std::string host_base_;  // scheme://host[:port]
    std::string path_base_;  // leading path of endpoint_url, may be empty
};

}  // namespace annogate::provider

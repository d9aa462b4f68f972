#include "annogate/provider/http_provider.hpp"

#include <cmath>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "annogate/error.hpp"

namespace annogate::provider {

using nlohmann::json;

void ProviderConfig::validate() const {
    if (max_retries < 0) throw Error(Errc::config_invalid, "max_retries must be >= 0");
    if (requests_per_minute < 1) throw Error(Errc::config_invalid, "requests_per_minute must be >= 1");
    if (temperature < 0.0 || temperature > 1.0)
        throw Error(Errc::config_invalid, "temperature must be in [0,1]");
    if (price_per_1k_input_tokens < 0.0 || price_per_1k_output_tokens < 0.0)
        throw Error(Errc::config_invalid, "token prices must be >= 0");
    if (timeout_seconds <= 0.0) throw Error(Errc::config_invalid, "timeout must be positive");
}

double estimate_cost(const UsageRecord& usage, const ProviderConfig& config) {
    return static_cast<double>(usage.total_input_tokens) / 1000.0 * config.price_per_1k_input_tokens +
           static_cast<double>(usage.total_output_tokens) / 1000.0 * config.price_per_1k_output_tokens;
}

std::int64_t approx_tokens(std::string_view text) {
    return static_cast<std::int64_t>((text.size() + 3) / 4);
}

namespace {

std::pair<std::string, std::string> split_endpoint(const std::string& url) {
    size_t scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        throw Error(Errc::config_invalid, "endpoint_url must start with http:// or https://");
    size_t path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, ""};
    std::string path = url.substr(path_start);
    while (!path.empty() && path.back() == '/') path.pop_back();
    return {url.substr(0, path_start), path};
}

bool transient_status(int status) { return status == 429 || (status >= 500 && status < 600); }

}  // namespace

HttpProvider::HttpProvider(ProviderConfig config, std::string api_key, Clock& clock)
    : config_(std::move(config)),
      api_key_(std::move(api_key)),
      clock_(clock),
      limiter_(config_.requests_per_minute, clock) {
    config_.validate();
    std::tie(host_base_, path_base_) = split_endpoint(config_.endpoint_url);
}

CompletionResult HttpProvider::complete(const CompletionRequest& request) {
    json body = {
        {"model", config_.model_name},
        {"temperature", config_.temperature},
        {"messages",
         {{{"role", "system"}, {"content", request.bundle.system_text}},
          {{"role", "user"}, {"content", request.bundle.user_text}}}},
    };
    const std::string payload = body.dump();
    const std::string path = path_base_ + "/chat/completions";

    httplib::Headers headers;
    if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

    int attempts = 0;
    int last_status = 0;
    bool last_was_timeout = false;
    std::string last_detail;
    auto started = clock_.now();

    while (attempts <= config_.max_retries) {
        limiter_.acquire();
        ++attempts;

        httplib::Client client(host_base_);
        client.set_connection_timeout(std::chrono::milliseconds(
            static_cast<int>(config_.timeout_seconds * 1000)));
        client.set_read_timeout(std::chrono::milliseconds(
            static_cast<int>(config_.timeout_seconds * 1000)));
        client.set_write_timeout(std::chrono::milliseconds(
            static_cast<int>(config_.timeout_seconds * 1000)));

        auto res = client.Post(path, headers, payload, "application/json");
        if (!res) {
            auto err = res.error();
            last_was_timeout = err == httplib::Error::ConnectionTimeout ||
                               err == httplib::Error::Read || err == httplib::Error::Write;
            last_status = 0;
            last_detail = httplib::to_string(err);
        } else if (res->status == 401 || res->status == 403) {
            throw Error(Errc::auth_error, "endpoint returned HTTP " + std::to_string(res->status));
        } else if (res->status >= 200 && res->status < 300) {
            json reply = json::parse(res->body, nullptr, false);
            if (reply.is_discarded() || !reply.contains("choices") || reply["choices"].empty())
                throw Error(Errc::endpoint_error, "malformed completion response body");
            CompletionResult out;
            out.text = reply["choices"][0].value("message", json::object()).value("content", "");
            if (reply.contains("usage") && reply["usage"].is_object()) {
                out.input_tokens = reply["usage"].value("prompt_tokens", std::int64_t(0));
                out.output_tokens = reply["usage"].value("completion_tokens", std::int64_t(0));
            } else {
                out.input_tokens =
                    approx_tokens(request.bundle.system_text) + approx_tokens(request.bundle.user_text);
                out.output_tokens = approx_tokens(out.text);
            }
            out.attempt_count = attempts;
            out.latency_ms = (clock_.now() - started).count();
            return out;
        } else if (!transient_status(res->status)) {
            throw Error(Errc::endpoint_error, "endpoint returned HTTP " + std::to_string(res->status));
        } else {
            last_status = res->status;
            last_was_timeout = false;
            last_detail = "HTTP " + std::to_string(res->status);
        }

        if (attempts <= config_.max_retries) {
            auto delay = std::chrono::milliseconds(
                static_cast<std::int64_t>(config_.backoff_base_ms) << (attempts - 1));
            clock_.sleep_for(delay);
        }
    }

    std::string detail = last_detail + " after " + std::to_string(attempts) + " attempts";
    if (last_status == 429) throw Error(Errc::rate_limit_exhausted, detail);
    if (last_was_timeout) throw Error(Errc::request_timeout, detail);
    throw Error(Errc::endpoint_error, detail);
}

}  // namespace annogate::provider

#include "annogate/provider/scripted_provider.hpp"

#include <nlohmann/json.hpp>

#include "annogate/error.hpp"
#include "annogate/provider/prompt.hpp"
#include "annogate/util.hpp"

namespace annogate::provider {

using nlohmann::json;

ScriptedProvider ScriptedProvider::from_fixture(const std::filesystem::path& path) {
    std::map<std::string, std::string> responses;
    auto lines = split_lines(read_file(path));
    for (size_t i = 0; i < lines.size(); ++i) {
        if (trim(lines[i]).empty()) continue;
        json row = json::parse(lines[i], nullptr, false);
        if (row.is_discarded() || !row.is_object() || !row.contains("match") || !row.contains("text"))
            throw Error(Errc::malformed_row,
                        "fixture line " + std::to_string(i + 1) + ": expected {\"match\",\"text\"}");
        responses[row["match"].get<std::string>()] = row["text"].get<std::string>();
    }
    return ScriptedProvider(std::move(responses));
}

CompletionResult ScriptedProvider::complete(const CompletionRequest& request) {
    const std::string* text = nullptr;
    for (const std::string& key : {request.sample_id + "#" + std::to_string(request.pass_index),
                                   request.sample_id, bundle_hash(request.bundle)}) {
        if (auto it = responses_.find(key); it != responses_.end()) {
            text = &it->second;
            break;
        }
    }
    if (!text)
        throw Error(Errc::endpoint_error, "no scripted response for sample '" + request.sample_id +
                                              "' pass " + std::to_string(request.pass_index));
    CompletionResult out;
    out.text = *text;
    out.input_tokens =
        approx_tokens(request.bundle.system_text) + approx_tokens(request.bundle.user_text);
    out.output_tokens = approx_tokens(out.text);
    out.attempt_count = 1;
    return out;
}

}  // namespace annogate::provider

#include "annogate/engine/manifest.hpp"

#include "annogate/error.hpp"
#include "annogate/util.hpp"

namespace annogate::engine {

using nlohmann::json;

const char* run_status_name(RunStatus s) {
    switch (s) {
        case RunStatus::running: return "running";
        case RunStatus::complete: return "complete";
        case RunStatus::failed: return "failed";
    }
    return "running";
}

RunStatus run_status_from_string(const std::string& s) {
    if (s == "running") return RunStatus::running;
    if (s == "complete") return RunStatus::complete;
    if (s == "failed") return RunStatus::failed;
    throw Error(Errc::malformed_row, "unknown run status '" + s + "'");
}

json RunManifest::to_json() const {
    json j;
    j["run_id"] = run_id;
    j["codebook"] = {{"codebook_id", codebook_id}, {"version", codebook_version}};
    json cfg;
    cfg["passes"] = config.passes;
    cfg["temperature"] = config.temperature;
    cfg["min_valid_votes"] = config.min_valid_votes;
    cfg["tie_policy"] = tie_policy_name(config.tie_policy);
    cfg["concurrency_limit"] = config.concurrency_limit;
    if (config.seed)
        cfg["seed"] = *config.seed;
    else
        cfg["seed"] = nullptr;
    j["config"] = cfg;
    j["split"] = split;
    j["started_at"] = started_at;
    j["finished_at"] = finished_at;
    j["usage"] = {{"total_requests", usage.total_requests},
                  {"total_input_tokens", usage.total_input_tokens},
                  {"total_output_tokens", usage.total_output_tokens},
                  {"estimated_cost", estimated_cost}};
    j["status"] = run_status_name(status);
    j["checkpoint"] = checkpoint;
    j["sample_set_hash"] = hex64(sample_set_hash);
    j["sample_count"] = sample_count;
    j["validation"] = validation;
    return j;
}

RunManifest RunManifest::from_json(const json& j) {
    RunManifest m;
    m.run_id = j.at("run_id").get<std::string>();
    m.codebook_id = j.at("codebook").at("codebook_id").get<std::string>();
    m.codebook_version = j.at("codebook").at("version").get<int>();
    const auto& cfg = j.at("config");
    m.config.passes = cfg.at("passes").get<int>();
    m.config.temperature = cfg.at("temperature").get<double>();
    m.config.min_valid_votes = cfg.at("min_valid_votes").get<int>();
    m.config.tie_policy = tie_policy_from_string(cfg.at("tie_policy").get<std::string>());
    m.config.concurrency_limit = cfg.at("concurrency_limit").get<int>();
    if (!cfg.at("seed").is_null()) m.config.seed = cfg.at("seed").get<std::uint64_t>();
    m.split = j.at("split").get<std::string>();
    m.started_at = j.at("started_at").get<std::string>();
    m.finished_at = j.at("finished_at").get<std::string>();
    const auto& u = j.at("usage");
    m.usage.total_requests = u.at("total_requests").get<std::int64_t>();
    m.usage.total_input_tokens = u.at("total_input_tokens").get<std::int64_t>();
    m.usage.total_output_tokens = u.at("total_output_tokens").get<std::int64_t>();
    m.estimated_cost = u.at("estimated_cost").get<double>();
    m.status = run_status_from_string(j.at("status").get<std::string>());
    m.checkpoint = j.at("checkpoint").get<std::map<std::string, int>>();
    m.sample_set_hash = std::stoull(j.at("sample_set_hash").get<std::string>(), nullptr, 16);
    m.sample_count = j.at("sample_count").get<std::size_t>();
    m.validation = j.value("validation", json());
    return m;
}

RunManifest load_manifest(const std::filesystem::path& path) {
    json j = json::parse(read_file(path), nullptr, false);
    if (j.is_discarded()) throw Error(Errc::malformed_row, "manifest is not valid JSON: " + path.string());
    return RunManifest::from_json(j);
}

void write_manifest(const std::filesystem::path& path, const RunManifest& m) {
    write_file(path, m.to_json().dump(2) + "\n");
}

}  // namespace annogate::engine

#include "annogate/engine/runner.hpp"

#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <thread>

#include <nlohmann/json.hpp>

#include "annogate/engine/aggregate.hpp"
#include "annogate/error.hpp"
#include "annogate/provider/http_provider.hpp"
#include "annogate/provider/parse.hpp"
#include "annogate/provider/prompt.hpp"
#include "annogate/util.hpp"

namespace annogate::engine {

using nlohmann::json;

namespace {

struct PassRecord {
    bool ok = false;  // provider returned a completion
    std::string text;
    std::int64_t input_tokens = 0;
    std::int64_t output_tokens = 0;
    std::int64_t latency_ms = 0;
    int attempt_count = 1;
};

json pass_record_json(const std::string& sample_id, int pass, const PassRecord& r) {
    json j;
    j["sample_id"] = sample_id;
    j["pass"] = pass;
    j["ok"] = r.ok;
    if (r.ok)
        j["text"] = r.text;
    else
        j["text"] = nullptr;
    j["input_tokens"] = r.input_tokens;
    j["output_tokens"] = r.output_tokens;
    j["latency_ms"] = r.latency_ms;
    j["attempts"] = r.attempt_count;
    return j;
}

// Tolerates a torn trailing line from a crash mid-append.
std::map<std::string, std::map<int, PassRecord>> load_pass_log(const std::filesystem::path& path) {
    std::map<std::string, std::map<int, PassRecord>> out;
    if (!std::filesystem::exists(path)) return out;
    auto lines = split_lines(read_file(path));
    for (size_t i = 0; i < lines.size(); ++i) {
        if (trim(lines[i]).empty()) continue;
        json j = json::parse(lines[i], nullptr, false);
        if (j.is_discarded()) {
            if (i + 1 == lines.size()) break;
            throw Error(Errc::malformed_row, "pass log line " + std::to_string(i + 1) + " is corrupt");
        }
        PassRecord r;
        r.ok = j.at("ok").get<bool>();
        if (r.ok) r.text = j.at("text").get<std::string>();
        r.input_tokens = j.at("input_tokens").get<std::int64_t>();
        r.output_tokens = j.at("output_tokens").get<std::int64_t>();
        r.latency_ms = j.at("latency_ms").get<std::int64_t>();
        r.attempt_count = j.at("attempts").get<int>();
        out[j.at("sample_id").get<std::string>()][j.at("pass").get<int>()] = std::move(r);
    }
    return out;
}

std::uint64_t hash_sample_ids(const std::vector<core::TextSample>& samples) {
    std::string material;
    for (const auto& s : samples) {
        material += s.id;
        material += '\x1f';
    }
    return fnv1a64(material);
}

// Unresolved rows carry no label or consistency; they surface in the review
// queue instead of aborting the run. A tie under the fail policy is treated
// the same way here so one tied sample cannot sink a corpus run.
core::AggregatedAnnotation aggregate_or_unresolved(const core::VoteSet& vs, const RunConfig& cfg) {
    core::AggregatedAnnotation agg;
    agg.sample_id = vs.sample_id;
    agg.dimension_key = vs.dimension_key;
    int valid = 0;
    for (const auto& v : vs.votes) valid += v.valid ? 1 : 0;
    agg.valid_votes = valid;
    if (valid < cfg.min_valid_votes) {
        agg.unresolved = true;
        return agg;
    }
    try {
        agg = aggregate(vs, cfg.tie_policy);
    } catch (const Error& e) {
        if (e.code() != Errc::tie_unresolved) throw;
        agg.tie = true;
        agg.unresolved = true;
    }
    return agg;
}

std::string consistency_cell(const core::AggregatedAnnotation& a) {
    return a.consistency ? a.consistency->decimals(6) : "";
}

}  // namespace

std::vector<core::AggregatedAnnotation> annotate_sample(const core::TextSample& sample,
                                                        const core::Codebook& codebook,
                                                        const RunConfig& config,
                                                        provider::CompletionProvider& prov) {
    config.validate();
    auto bundle = provider::render_prompt(codebook, sample);

    std::vector<std::vector<core::Vote>> per_pass;
    per_pass.reserve(static_cast<size_t>(config.passes));
    for (int pass = 0; pass < config.passes; ++pass) {
        provider::CompletionRequest req{bundle, sample.id, pass};
        try {
            auto result = prov.complete(req);
            per_pass.push_back(provider::parse_votes(result.text, bundle.dimension_keys, pass));
        } catch (const Error& e) {
            if (e.code() == Errc::auth_error) throw;
            per_pass.push_back(provider::parse_votes("", bundle.dimension_keys, pass));
        }
    }

    std::vector<core::AggregatedAnnotation> out;
    for (size_t d = 0; d < bundle.dimension_keys.size(); ++d) {
        core::VoteSet vs;
        vs.sample_id = sample.id;
        vs.dimension_key = bundle.dimension_keys[d];
        vs.requested_passes = config.passes;
        for (auto& votes : per_pass) vs.votes.push_back(votes[d]);
        out.push_back(aggregate_or_unresolved(vs, config));
    }
    return out;
}

RunResult annotate_corpus(const std::vector<core::TextSample>& samples,
                          const core::Codebook& codebook, const RunConfig& config,
                          provider::CompletionProvider& prov, const RunPaths& paths,
                          const std::string& run_id, const std::string& split_name,
                          const provider::ProviderConfig* pricing) {
    config.validate();
    if (samples.empty()) throw Error(Errc::empty_corpus, "no samples selected for run " + run_id);

    std::filesystem::create_directories(paths.dir);

    RunManifest manifest;
    bool resuming = std::filesystem::exists(paths.manifest());
    if (resuming) {
        manifest = load_manifest(paths.manifest());
        if (manifest.codebook_id != codebook.codebook_id ||
            manifest.codebook_version != codebook.version)
            throw Error(Errc::manifest_conflict,
                        "run " + run_id + " was started with codebook " + manifest.codebook_id +
                            " v" + std::to_string(manifest.codebook_version));
        if (manifest.config != config)
            throw Error(Errc::manifest_conflict, "run " + run_id + " was started with a different config");
        if (manifest.sample_set_hash != hash_sample_ids(samples) ||
            manifest.sample_count != samples.size())
            throw Error(Errc::manifest_conflict, "run " + run_id + " covered a different sample set");
        if (manifest.split != split_name)
            throw Error(Errc::manifest_conflict, "run " + run_id + " annotated split '" +
                                                     manifest.split + "', not '" + split_name + "'");
    } else {
        manifest.run_id = run_id;
        manifest.codebook_id = codebook.codebook_id;
        manifest.codebook_version = codebook.version;
        manifest.config = config;
        manifest.split = split_name;
        manifest.started_at = now_iso8601();
        manifest.status = RunStatus::running;
        manifest.sample_set_hash = hash_sample_ids(samples);
        manifest.sample_count = samples.size();
        write_manifest(paths.manifest(), manifest);
    }

    auto records = load_pass_log(paths.passes_log());

    std::mutex log_mu;
    std::atomic<size_t> next_sample{0};
    std::atomic<std::int64_t> new_requests{0};
    std::atomic<bool> abort{false};
    std::exception_ptr hard_error;
    std::mutex error_mu;

    auto worker = [&] {
        while (!abort.load()) {
            size_t idx = next_sample.fetch_add(1);
            if (idx >= samples.size()) return;
            const auto& sample = samples[idx];
            auto bundle = provider::render_prompt(codebook, sample);
            for (int pass = 0; pass < config.passes; ++pass) {
                if (abort.load()) return;
                {
                    std::lock_guard<std::mutex> lock(log_mu);
                    auto s_it = records.find(sample.id);
                    if (s_it != records.end() && s_it->second.count(pass)) continue;
                }
                provider::CompletionRequest req{bundle, sample.id, pass};
                PassRecord rec;
                try {
                    auto result = prov.complete(req);
                    rec.ok = true;
                    rec.text = std::move(result.text);
                    rec.input_tokens = result.input_tokens;
                    rec.output_tokens = result.output_tokens;
                    rec.latency_ms = result.latency_ms;
                    rec.attempt_count = result.attempt_count;
                } catch (const Error& e) {
                    if (e.code() == Errc::auth_error) {
                        std::lock_guard<std::mutex> lock(error_mu);
                        if (!hard_error) hard_error = std::current_exception();
                        abort.store(true);
                        return;
                    }
                    rec.ok = false;
                }
                new_requests.fetch_add(1);
                std::lock_guard<std::mutex> lock(log_mu);
                append_line(paths.passes_log(), pass_record_json(sample.id, pass, rec).dump());
                records[sample.id][pass] = std::move(rec);
            }
        }
    };

    size_t n_workers = std::min<size_t>(static_cast<size_t>(config.concurrency_limit), samples.size());
    std::vector<std::thread> threads;
    threads.reserve(n_workers);
    for (size_t i = 0; i < n_workers; ++i) threads.emplace_back(worker);
    for (auto& t : threads) t.join();

    if (hard_error) {
        manifest.status = RunStatus::failed;
        manifest.finished_at = now_iso8601();
        write_manifest(paths.manifest(), manifest);
        std::rethrow_exception(hard_error);
    }

    // Finalize: canonical order throughout so results do not depend on how
    // the worker threads interleaved.
    RunResult out;
    std::string canonical_log;
    provider::UsageRecord usage;
    auto keys = codebook.dimension_keys();

    for (const auto& sample : samples) {
        const auto& per_pass_records = records.at(sample.id);
        std::vector<std::vector<core::Vote>> per_pass_votes;
        for (int pass = 0; pass < config.passes; ++pass) {
            const auto& rec = per_pass_records.at(pass);
            canonical_log += pass_record_json(sample.id, pass, rec).dump() + "\n";
            usage.total_requests += 1;
            usage.total_input_tokens += rec.input_tokens;
            usage.total_output_tokens += rec.output_tokens;
            per_pass_votes.push_back(
                provider::parse_votes(rec.ok ? rec.text : "", keys, pass));
        }
        for (size_t d = 0; d < keys.size(); ++d) {
            core::VoteSet vs;
            vs.sample_id = sample.id;
            vs.dimension_key = keys[d];
            vs.requested_passes = config.passes;
            for (auto& votes : per_pass_votes) vs.votes.push_back(votes[d]);
            out.aggregates.push_back(aggregate_or_unresolved(vs, config));
            out.vote_sets.push_back(std::move(vs));
        }
        manifest.checkpoint[sample.id] = config.passes;
    }

    write_file(paths.passes_log(), canonical_log);

    std::string votes_jsonl;
    for (const auto& vs : out.vote_sets) {
        for (const auto& v : vs.votes) {
            json row;
            row["sample_id"] = vs.sample_id;
            row["dimension"] = vs.dimension_key;
            row["pass"] = v.pass_index;
            if (v.valid)
                row["label"] = v.label == core::Label::positive ? 1 : 0;
            else
                row["label"] = nullptr;
            row["valid"] = v.valid;
            row["raw"] = v.raw_fragment;
            votes_jsonl += row.dump() + "\n";
        }
    }
    write_file(paths.votes(), votes_jsonl);
    write_aggregates(paths.aggregates(), out.aggregates);

    manifest.usage = usage;
    manifest.estimated_cost = pricing ? provider::estimate_cost(usage, *pricing) : 0.0;
    manifest.status = RunStatus::complete;
    manifest.finished_at = now_iso8601();
    write_manifest(paths.manifest(), manifest);

    out.manifest = std::move(manifest);
    out.new_requests = new_requests.load();
    return out;
}

void write_aggregates(const std::filesystem::path& csv_path,
                      const std::vector<core::AggregatedAnnotation>& aggregates) {
    std::string csv = "sample_id,dimension,label,consistency,tie,valid_votes\n";
    for (const auto& a : aggregates) {
        csv += csv_join({a.sample_id, a.dimension_key,
                         a.label ? core::label_cell(*a.label) : "", consistency_cell(a),
                         a.tie ? "1" : "0", std::to_string(a.valid_votes)}) +
               "\n";
    }
    write_file(csv_path, csv);
}

std::vector<core::AggregatedAnnotation> load_aggregates(const std::filesystem::path& csv_path) {
    auto rows = csv_parse(read_file(csv_path));
    if (rows.empty() || rows[0] != std::vector<std::string>{"sample_id", "dimension", "label",
                                                            "consistency", "tie", "valid_votes"})
        throw Error(Errc::malformed_row, "unexpected aggregates header in " + csv_path.string());
    std::vector<core::AggregatedAnnotation> out;
    for (size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() != 6)
            throw Error(Errc::malformed_row,
                        "aggregates line " + std::to_string(r + 1) + ": wrong field count");
        core::AggregatedAnnotation a;
        a.sample_id = row[0];
        a.dimension_key = row[1];
        if (row[2] == "1")
            a.label = core::Label::positive;
        else if (row[2] == "0")
            a.label = core::Label::negative;
        a.tie = row[4] == "1";
        a.valid_votes = std::stoi(row[5]);
        if (!row[3].empty() && a.valid_votes > 0) {
            // The cell is the 6-decimal rendering of modal/valid; valid counts
            // are small, so the modal count is recoverable exactly.
            long long modal = std::llround(std::stod(row[3]) * a.valid_votes);
            a.consistency = Rational(modal, a.valid_votes);
        }
        a.unresolved = row[2].empty();
        out.push_back(std::move(a));
    }
    return out;
}

}  // namespace annogate::engine

#include "annogate/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <set>

#include <signal.h>
#include <unistd.h>

#include "annogate/core/codebook.hpp"
#include "annogate/core/corpus.hpp"
#include "annogate/core/gold.hpp"
#include "annogate/engine/runner.hpp"
#include "annogate/error.hpp"
#include "annogate/eval/compare.hpp"
#include "annogate/eval/report_io.hpp"
#include "annogate/eval/stratify.hpp"
#include "annogate/eval/summary.hpp"
#include "annogate/provider/http_provider.hpp"
#include "annogate/provider/prompt.hpp"
#include "annogate/provider/scripted_provider.hpp"
#include "annogate/util.hpp"
#include "annogate/workflow/audit.hpp"
#include "annogate/workflow/export.hpp"
#include "annogate/workflow/gates.hpp"
#include "annogate/workflow/review.hpp"
#include "annogate/workflow/state_dir.hpp"

namespace annogate::cli {

namespace {

// One CLI process per project at a time. A lock left behind by a dead
// process (crash, kill) is detected through its pid and reclaimed.
class ProjectLock {
public:
    explicit ProjectLock(std::filesystem::path path) : path_(std::move(path)) {
        if (std::filesystem::exists(path_)) {
            long pid = 0;
            try {
                pid = std::stol(trim(read_file(path_)));
            } catch (...) {
            }
            if (pid > 0 && (kill(static_cast<pid_t>(pid), 0) == 0 || errno == EPERM))
                throw Error(Errc::project_locked,
                            "project is in use by pid " + std::to_string(pid) + " (lock file " +
                                path_.string() + ")");
        }
        write_file(path_, std::to_string(getpid()) + "\n");
    }
    ~ProjectLock() {
        std::error_code ec;
        std::filesystem::remove(path_, ec);
    }
    ProjectLock(const ProjectLock&) = delete;
    ProjectLock& operator=(const ProjectLock&) = delete;

private:
    std::filesystem::path path_;
};

// Crash injection for resume testing: completes the Nth request, then kills
// the process without unwinding, exactly like a mid-run SIGKILL.
class AbortAfterProvider : public provider::CompletionProvider {
public:
    AbortAfterProvider(std::unique_ptr<provider::CompletionProvider> inner, long long limit)
        : inner_(std::move(inner)), limit_(limit) {}

    provider::CompletionResult complete(const provider::CompletionRequest& request) override {
        auto result = inner_->complete(request);
        if (count_.fetch_add(1) + 1 >= limit_) std::_Exit(9);
        return result;
    }

private:
    std::unique_ptr<provider::CompletionProvider> inner_;
    long long limit_;
    std::atomic<long long> count_{0};
};

std::unique_ptr<provider::CompletionProvider> build_provider(const ProjectConfig& cfg) {
    std::unique_ptr<provider::CompletionProvider> prov;
    if (cfg.provider_type == "scripted") {
        prov = std::make_unique<provider::ScriptedProvider>(
            provider::ScriptedProvider::from_fixture(cfg.fixture_path));
    } else {
        static provider::SystemClock clock;
        const char* key = std::getenv("ANNOGATE_API_KEY");
        prov = std::make_unique<provider::HttpProvider>(cfg.provider, key ? key : "", clock);
    }
    if (const char* abort_after = std::getenv("ANNOGATE_ABORT_AFTER_REQUESTS")) {
        long long limit = std::atoll(abort_after);
        if (limit > 0) prov = std::make_unique<AbortAfterProvider>(std::move(prov), limit);
    }
    return prov;
}

workflow::SplitSpec ensure_split(const workflow::StateDir& state,
                                 const std::vector<core::GoldRecord>& gold,
                                 const ProjectConfig& cfg) {
    if (std::filesystem::exists(state.split_file())) {
        auto spec = workflow::load_split(state.split_file());
        std::printf("using existing split (%zu refinement / %zu holdout); delete %s to re-split\n",
                    spec.ids(workflow::SplitSide::refinement).size(),
                    spec.ids(workflow::SplitSide::holdout).size(),
                    state.split_file().c_str());
        return spec;
    }
    auto spec = workflow::split(gold, cfg.split_fraction, cfg.split_seed);
    workflow::write_split(state.split_file(), spec);
    std::printf("created split: %zu refinement / %zu holdout (fraction %.3g, seed %llu)\n",
                spec.ids(workflow::SplitSide::refinement).size(),
                spec.ids(workflow::SplitSide::holdout).size(), cfg.split_fraction,
                static_cast<unsigned long long>(cfg.split_seed));
    return spec;
}

std::vector<core::TextSample> samples_for_side(const std::vector<core::TextSample>& corpus,
                                               const workflow::SplitSpec& split,
                                               workflow::SplitSide side) {
    std::set<std::string> wanted;
    for (const auto& [id, s] : split.assignment)
        if (s == side) wanted.insert(id);
    std::vector<core::TextSample> out;
    for (const auto& s : corpus)
        if (wanted.erase(s.id)) out.push_back(s);
    if (!wanted.empty())
        throw Error(Errc::unknown_sample_id,
                    "split references sample '" + *wanted.begin() + "' missing from the corpus");
    return out;
}

core::Codebook load_and_register_codebook(const ProjectConfig& cfg,
                                          const workflow::StateDir& state,
                                          workflow::CodebookLedger& ledger) {
    auto codebook = core::load_codebook(cfg.codebook_path);
    auto serialized = core::serialize_codebook(codebook);
    workflow::register_version(ledger, codebook, serialized);
    workflow::write_ledger(state.ledger_file(), ledger);
    auto archive = state.codebooks() /
                   (codebook.codebook_id + ".v" + std::to_string(codebook.version) + ".txt");
    if (!std::filesystem::exists(archive)) write_file(archive, serialized);
    return codebook;
}

engine::RunManifest load_run_manifest(const workflow::StateDir& state, const std::string& run_id) {
    engine::RunPaths paths{state.run_dir(run_id)};
    if (!std::filesystem::exists(paths.manifest()))
        throw Error(Errc::incomplete_run, "run '" + run_id + "' has no manifest under " +
                                              state.runs().string());
    auto manifest = engine::load_manifest(paths.manifest());
    if (manifest.status != engine::RunStatus::complete)
        throw Error(Errc::incomplete_run,
                    "run '" + run_id + "' is " +
                        std::string(engine::run_status_name(manifest.status)) +
                        "; re-run annotate to finish it");
    return manifest;
}

void preview_corpus_cost(const ProjectConfig& cfg, const std::vector<core::TextSample>& samples,
                         const core::Codebook& codebook, bool yes) {
    // Advisory only: real token counts come back from the endpoint.
    constexpr std::int64_t assumed_output_tokens = 16;
    provider::UsageRecord usage;
    for (const auto& s : samples) {
        auto bundle = provider::render_prompt(codebook, s);
        usage.total_input_tokens +=
            (provider::approx_tokens(bundle.system_text) + provider::approx_tokens(bundle.user_text)) *
            cfg.run.passes;
        usage.total_output_tokens += assumed_output_tokens * cfg.run.passes;
        usage.total_requests += cfg.run.passes;
    }
    double cost = provider::estimate_cost(usage, cfg.provider);
    std::printf("corpus run: %zu samples x %d passes = %lld requests, estimated cost $%.2f\n",
                samples.size(), cfg.run.passes, static_cast<long long>(usage.total_requests),
                cost);
    if (cost > cfg.cost_ceiling_usd && !yes)
        throw Error(Errc::config_invalid,
                    "estimated cost $" + std::to_string(cost) + " exceeds the ceiling $" +
                        std::to_string(cfg.cost_ceiling_usd) + "; re-run with --yes to proceed");
}

std::vector<core::GoldRecord> gold_on_side(const std::vector<core::GoldRecord>& gold,
                                           const workflow::SplitSpec& split,
                                           workflow::SplitSide side) {
    std::vector<core::GoldRecord> out;
    for (const auto& g : gold)
        if (split.contains(g.sample_id) && split.side(g.sample_id) == side) out.push_back(g);
    return out;
}

void write_json_report(const std::filesystem::path& path, const nlohmann::json& j) {
    write_file(path, j.dump(2) + "\n");
}

std::string snippet(const std::string& text, size_t max_bytes) {
    std::string flat;
    flat.reserve(text.size());
    for (char c : text) flat += (c == '\n' || c == '\r' || c == '\t') ? ' ' : c;
    if (flat.size() <= max_bytes) return flat;
    size_t cut = max_bytes;
    while (cut > 0 && (static_cast<unsigned char>(flat[cut]) & 0xC0) == 0x80) --cut;
    return flat.substr(0, cut) + "...";
}

const char* sample_word(size_t n) { return n == 1 ? "sample" : "samples"; }

}  // namespace

int cmd_init(const std::filesystem::path& directory) {
    if (std::filesystem::exists(directory) && !std::filesystem::is_empty(directory))
        throw Error(Errc::non_empty_directory,
                    "refusing to scaffold into non-empty directory " + directory.string());
    std::filesystem::create_directories(directory);
    write_file(directory / "annogate.jsonc", config_template());
    write_file(directory / "codebook.txt",
               "codebook_id: example\n"
               "version: 1\n"
               "\n"
               "## PREAMBLE\n"
               "You are annotating text samples for a research project. Read each sample\n"
               "carefully and decide every dimension independently of the others.\n"
               "\n"
               "## DIMENSION relevance | Relevance\n"
               "The sample is on topic for the study. Mark 1 when the text concerns the\n"
               "study's subject matter, 0 otherwise.\n"
               "\n"
               "## DIMENSION tone_negative | Negative tone\n"
               "The sample expresses a negative sentiment toward its subject. Mark 1 when\n"
               "clearly negative, 0 otherwise.\n"
               "\n"
               "## OUTPUT\n"
               "Answer with exactly one final line of the form\n"
               "LABELS: <dimension>=<0 or 1>; ...\n"
               "covering every dimension.\n");
    workflow::StateDir state{directory / "state"};
    state.ensure_layout();
    std::printf("scaffolded %s\n", directory.c_str());
    std::printf("  annogate.jsonc  project configuration (edit the stub paths)\n");
    std::printf("  codebook.txt    example codebook skeleton\n");
    std::printf("  state/          run artifacts, splits, ledger, reports\n");
    return 0;
}

int cmd_annotate(const ProjectConfig& cfg, const std::string& split_name,
                 const std::string& run_id, bool yes) {
    if (run_id.empty()) throw Error(Errc::config_invalid, "--run-id is required");
    if (split_name != "refinement" && split_name != "holdout" && split_name != "corpus")
        throw Error(Errc::config_invalid,
                    "--split must be refinement, holdout, or corpus, got '" + split_name + "'");
    validate_project_paths(cfg);
    workflow::StateDir state{cfg.state_dir};
    state.ensure_layout();
    ProjectLock lock(state.lock_file());

    auto corpus = core::load_corpus(cfg.corpus_path, cfg.corpus_format);
    auto ledger = workflow::load_ledger(state.ledger_file());
    auto codebook = load_and_register_codebook(cfg, state, ledger);
    auto gold = core::join_gold(corpus, cfg.gold_path, codebook);

    std::vector<core::TextSample> samples;
    if (split_name == "corpus") {
        std::set<std::string> gold_ids;
        for (const auto& g : gold) gold_ids.insert(g.sample_id);
        for (const auto& s : corpus)
            if (!gold_ids.count(s.id)) samples.push_back(s);
    } else {
        auto split = ensure_split(state, gold, cfg);
        samples = samples_for_side(corpus, split,
                                   split_name == "refinement" ? workflow::SplitSide::refinement
                                                              : workflow::SplitSide::holdout);
    }
    if (samples.empty())
        throw Error(Errc::empty_corpus, "no samples to annotate for split '" + split_name + "'");

    auto prov = build_provider(cfg);
    engine::RunPaths paths{state.run_dir(run_id)};

    engine::RunResult result = [&] {
        if (split_name == "corpus") {
            preview_corpus_cost(cfg, samples, codebook, yes);
            return workflow::label_full_corpus(samples, codebook, cfg.run, *prov, paths, run_id,
                                               ledger, &cfg.provider);
        }
        return engine::annotate_corpus(samples, codebook, cfg.run, *prov, paths, run_id,
                                       split_name, &cfg.provider);
    }();

    std::int64_t unresolved = 0;
    for (const auto& a : result.aggregates) unresolved += a.resolved() ? 0 : 1;
    std::printf("run %s complete: %zu %s, %lld new requests this invocation\n", run_id.c_str(),
                samples.size(), sample_word(samples.size()),
                static_cast<long long>(result.new_requests));
    std::printf("usage: %lld requests, %lld input + %lld output tokens, estimated cost $%.2f\n",
                static_cast<long long>(result.manifest.usage.total_requests),
                static_cast<long long>(result.manifest.usage.total_input_tokens),
                static_cast<long long>(result.manifest.usage.total_output_tokens),
                result.manifest.estimated_cost);
    if (unresolved > 0)
        std::printf("%lld (sample, dimension) pairs are unresolved and queued for review\n",
                    static_cast<long long>(unresolved));
    std::printf("artifacts: %s\n", paths.dir.c_str());
    return 0;
}

int cmd_evaluate(const ProjectConfig& cfg, const std::string& run_id, const std::string& stage) {
    if (run_id.empty()) throw Error(Errc::config_invalid, "--run-id is required");
    if (stage != "refinement" && stage != "holdout")
        throw Error(Errc::config_invalid,
                    "--stage must be refinement or holdout, got '" + stage + "'");
    validate_project_paths(cfg);
    workflow::StateDir state{cfg.state_dir};
    state.ensure_layout();
    ProjectLock lock(state.lock_file());

    auto corpus = core::load_corpus(cfg.corpus_path, cfg.corpus_format);
    auto ledger = workflow::load_ledger(state.ledger_file());
    auto codebook = load_and_register_codebook(cfg, state, ledger);
    auto gold = core::join_gold(corpus, cfg.gold_path, codebook);
    if (!std::filesystem::exists(state.split_file()))
        throw Error(Errc::config_invalid,
                    "no split recorded yet; run `annotate --split refinement` first");
    auto split = workflow::load_split(state.split_file());

    auto manifest = load_run_manifest(state, run_id);
    engine::RunPaths paths{state.run_dir(run_id)};
    auto aggregates = engine::load_aggregates(paths.aggregates());

    const workflow::LedgerEvaluation* previous =
        ledger.refinement_evaluations.empty() ? nullptr : &ledger.refinement_evaluations.back();
    std::string previous_run = previous ? previous->run_id : "";

    workflow::EvaluationReport report =
        stage == "refinement"
            ? workflow::evaluate_refinement(manifest, aggregates, gold, split, codebook,
                                            cfg.thresholds, ledger)
            : workflow::evaluate_holdout(manifest, aggregates, gold, split, codebook,
                                         cfg.thresholds, ledger);
    workflow::write_ledger(state.ledger_file(), ledger);

    auto side = stage == "refinement" ? workflow::SplitSide::refinement
                                      : workflow::SplitSide::holdout;
    auto side_gold = gold_on_side(gold, split, side);

    auto report_path = [&](const char* kind) {
        return state.reports() / (run_id + "." + stage + "." + kind);
    };
    write_json_report(report_path("metrics.json"), eval::metrics_report_json(report.evaluations));
    write_file(report_path("metrics.csv"), eval::metrics_report_csv(report.evaluations));
    write_json_report(report_path("stratified.json"),
                      eval::stratified_report_json(eval::stratify(aggregates, side_gold)));
    write_json_report(report_path("audit.json"),
                      workflow::audit_report_json(workflow::audit_human_labels(aggregates, side_gold)));

    if (stage == "refinement" && !previous_run.empty()) {
        try {
            auto prev_aggregates =
                engine::load_aggregates(engine::RunPaths{state.run_dir(previous_run)}.aggregates());
            auto delta = eval::compare_runs(prev_aggregates, side_gold, aggregates, side_gold);
            write_json_report(report_path("delta.json"), eval::delta_report_json(delta));
            std::printf("delta report vs run %s: %s\n", previous_run.c_str(),
                        report_path("delta.json").c_str());
        } catch (const Error& e) {
            if (e.code() != Errc::sample_set_mismatch && e.code() != Errc::dimension_mismatch)
                throw;
            std::printf("skipping delta report: %s\n", e.what());
        }
    }

    std::printf("%s evaluation of run %s (codebook v%d)\n", stage.c_str(), run_id.c_str(),
                report.codebook_version);
    std::vector<eval::MetricSet> sets;
    for (const auto& e : report.evaluations) sets.push_back(e.metrics);
    try {
        std::fputs(eval::render_summary_table(eval::summarize(sets)).c_str(), stdout);
    } catch (const Error& e) {
        if (e.code() != Errc::all_undefined) throw;
        std::printf("(summary omitted: %s)\n", e.what());
    }
    for (const auto& v : report.verdicts) {
        if (v.passed) {
            std::printf("  %s: PASS\n", v.dimension.c_str());
        } else {
            std::string reasons;
            for (const auto& f : v.failures) reasons += (reasons.empty() ? "" : "; ") + f;
            std::printf("  %s: FAIL (%s)\n", v.dimension.c_str(), reasons.c_str());
        }
    }
    if (!cfg.thresholds.any()) std::printf("  (no thresholds configured; nothing gated)\n");
    if (stage == "holdout")
        std::printf("ledger frozen: codebook v%d is validated; full-corpus labeling unlocked\n",
                    report.codebook_version);
    else if (!report.all_passed)
        std::printf("thresholds not met; consider a codebook revision before the holdout stage\n");
    std::printf("reports: %s\n", state.reports().c_str());
    return 0;
}

int cmd_review(const ProjectConfig& cfg, const std::string& run_id, const std::string& mode,
               int limit) {
    if (run_id.empty()) throw Error(Errc::config_invalid, "--run-id is required");
    if (limit < 0) throw Error(Errc::config_invalid, "--limit must be non-negative");
    validate_project_paths(cfg);
    workflow::StateDir state{cfg.state_dir};
    state.ensure_layout();
    ProjectLock lock(state.lock_file());

    load_run_manifest(state, run_id);
    auto aggregates = engine::load_aggregates(engine::RunPaths{state.run_dir(run_id)}.aggregates());
    auto queue = workflow::build_review_queue(aggregates, workflow::review_mode_from_string(mode));

    auto out = state.reports() / (run_id + ".review.csv");
    write_file(out, workflow::review_queue_csv(queue));

    if (queue.entries.empty()) {
        std::printf("review queue empty: every annotation is unanimous and resolved\n");
        std::printf("wrote %s\n", out.c_str());
        return 0;
    }

    std::map<std::string, std::string> text_by_id;
    for (const auto& s : core::load_corpus(cfg.corpus_path, cfg.corpus_format))
        text_by_id[s.id] = s.text;

    std::printf("review queue: %zu entries (showing up to %d), lowest consistency first\n",
                queue.entries.size(), limit);
    std::printf("%-12s %-20s %-16s %-19s text\n", "consistency", "sample", "dimension", "reason");
    int shown = 0;
    for (const auto& e : queue.entries) {
        if (shown++ >= limit) break;
        std::string c = e.consistency ? e.consistency->decimals(3) : "-";
        auto t = text_by_id.find(e.sample_id);
        std::printf("%-12s %-20s %-16s %-19s %s\n", c.c_str(), e.sample_id.c_str(),
                    e.dimension_key.c_str(), review_reason_name(e.reason),
                    t == text_by_id.end() ? "" : snippet(t->second, 120).c_str());
    }
    std::printf("wrote %s\n", out.c_str());
    return 0;
}

int cmd_export(const ProjectConfig& cfg, const std::string& run_id,
               const std::string& min_consistency, const std::string& format) {
    if (run_id.empty()) throw Error(Errc::config_invalid, "--run-id is required");
    Rational filter;
    try {
        filter = Rational::from_decimal(min_consistency);
    } catch (const std::domain_error&) {
        throw Error(Errc::config_invalid,
                    "--min-consistency must be a decimal, got '" + min_consistency + "'");
    }
    if (filter < Rational(0, 1) || filter > Rational(1, 1))
        throw Error(Errc::config_invalid, "--min-consistency must be in [0, 1]");
    validate_project_paths(cfg);
    workflow::StateDir state{cfg.state_dir};
    state.ensure_layout();
    ProjectLock lock(state.lock_file());

    auto corpus = core::load_corpus(cfg.corpus_path, cfg.corpus_format);
    auto codebook = core::load_codebook(cfg.codebook_path);
    auto manifest = load_run_manifest(state, run_id);
    codebook.version = manifest.codebook_version;  // provenance follows the run
    auto aggregates = engine::load_aggregates(engine::RunPaths{state.run_dir(run_id)}.aggregates());

    workflow::ExportOptions options;
    options.min_consistency = filter;
    options.format = workflow::export_format_from_string(format);
    auto out = state.reports() /
               (run_id + ".training." + (options.format == workflow::ExportFormat::csv ? "csv" : "jsonl"));
    auto result = workflow::export_training_data(corpus, aggregates, codebook, run_id, options, out);

    if (result.rows == 0)
        std::printf("warning: export is empty; no sample meets min consistency %s\n",
                    filter.decimals(3).c_str());
    std::printf("exported %lld %s -> %s\n", static_cast<long long>(result.rows),
                result.rows == 1 ? "row" : "rows", out.c_str());
    return 0;
}

}  // namespace annogate::cli

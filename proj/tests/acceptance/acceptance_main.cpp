// End-to-end acceptance checks. Each criterion prints exactly one PASS/FAIL
// line; the binary exits nonzero if any fail. Oracles here are written
// independently of the library code paths they check.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "annogate/cli/commands.hpp"
#include "annogate/core/codebook.hpp"
#include "annogate/engine/aggregate.hpp"
#include "annogate/engine/runner.hpp"
#include "annogate/error.hpp"
#include "annogate/eval/compare.hpp"
#include "annogate/eval/metrics.hpp"
#include "annogate/eval/stratify.hpp"
#include "annogate/eval/summary.hpp"
#include "annogate/provider/http_provider.hpp"
#include "annogate/provider/parse.hpp"
#include "annogate/provider/prompt.hpp"
#include "annogate/provider/scripted_provider.hpp"
#include "annogate/provider/sim_provider.hpp"
#include "annogate/provider/types.hpp"
#include "annogate/util.hpp"
#include "annogate/workflow/gates.hpp"
#include "annogate/workflow/ledger.hpp"
#include "annogate/workflow/split.hpp"

namespace {

using namespace annogate;
using core::AggregatedAnnotation;
using core::GoldRecord;
using core::Label;
using std::chrono::steady_clock;

struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed ? seed : 0x9E3779B97F4A7C15ULL) {}
    std::uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    std::uint64_t below(std::uint64_t n) { return next() % n; }
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

double seconds_since(steady_clock::time_point t0) {
    return std::chrono::duration<double>(steady_clock::now() - t0).count();
}

core::Codebook make_codebook(const std::vector<std::string>& keys, int version) {
    core::Codebook cb;
    cb.codebook_id = "acceptbook";
    cb.version = version;
    if (version > 1) cb.parent_version = version - 1;
    cb.preamble = "Annotate each sample.";
    for (const auto& k : keys) cb.dimensions.push_back({k, k + " name", "Definition of " + k + "."});
    cb.output_contract = "Answer with one LABELS line.";
    return cb;
}

AggregatedAnnotation resolved(const std::string& sample, const std::string& dim, Label label,
                              std::int64_t modal, std::int64_t valid) {
    AggregatedAnnotation a;
    a.sample_id = sample;
    a.dimension_key = dim;
    a.label = label;
    a.consistency = Rational(modal, valid);
    a.valid_votes = valid;
    return a;
}

AggregatedAnnotation unresolved(const std::string& sample, const std::string& dim) {
    AggregatedAnnotation a;
    a.sample_id = sample;
    a.dimension_key = dim;
    a.unresolved = true;
    return a;
}

GoldRecord gold_rec(const std::string& sample, const std::string& dim, int value) {
    GoldRecord g;
    g.sample_id = sample;
    g.labels[dim] = value ? Label::positive : Label::negative;
    return g;
}

// ---------------------------------------------------------------------------
// 1. metrics over confusion counts equal an independent tally, exactly

bool criterion_exact_metrics(std::string& why) {
    auto t0 = steady_clock::now();
    Rng rng(101);
    for (int f = 0; f < 1000; ++f) {
        std::size_t pairs = f == 0          ? 10000
                            : f % 20 == 5   ? 2000 + rng.below(8001)
                                            : 10 + rng.below(391);
        bool with_noise_dim = f % 3 == 0;
        std::vector<AggregatedAnnotation> aggs;
        std::vector<GoldRecord> gold;
        for (std::size_t i = 0; i < pairs; ++i) {
            std::string id = "s" + std::to_string(i);
            if (with_noise_dim && rng.below(5) == 0) {
                aggs.push_back(resolved(id, "b", rng.below(2) ? Label::positive : Label::negative,
                                        5, 7));
                continue;
            }
            if (rng.below(10) != 0) {
                if (rng.below(10) == 0)
                    aggs.push_back(unresolved(id, "a"));
                else
                    aggs.push_back(resolved(id, "a",
                                            rng.below(2) ? Label::positive : Label::negative,
                                            4 + rng.below(4), 7));
            }
            if (rng.below(10) != 0)
                gold.push_back(gold_rec(id, "a", static_cast<int>(rng.below(2))));
        }

        // independent tally: a flat lookup table and four counters
        std::map<std::string, const AggregatedAnnotation*> by_id;
        for (const auto& a : aggs)
            if (a.dimension_key == "a") by_id[a.sample_id] = &a;
        std::int64_t tp = 0, fp = 0, tn = 0, fn = 0, unres = 0;
        for (const auto& g : gold) {
            auto it = by_id.find(g.sample_id);
            if (it == by_id.end()) continue;
            if (it->second->unresolved) {
                ++unres;
                continue;
            }
            bool truth = g.labels.at("a") == Label::positive;
            bool pred = *it->second->label == Label::positive;
            (truth ? (pred ? tp : fn) : (pred ? fp : tn)) += 1;
        }

        std::int64_t total = tp + fp + tn + fn;
        std::int64_t got_unres = 0;
        if (total == 0) {
            try {
                eval::confusion(aggs, gold, "a", &got_unres);
                why = "fixture " + std::to_string(f) + ": expected an empty-overlap error";
                return false;
            } catch (const Error&) {
                continue;
            }
        }
        auto cm = eval::confusion(aggs, gold, "a", &got_unres);
        if (cm.tp != tp || cm.fp != fp || cm.tn != tn || cm.fn != fn || got_unres != unres) {
            why = "fixture " + std::to_string(f) + ": confusion counts diverge";
            return false;
        }
        auto m = eval::metrics(cm);
        auto expect = [&](const std::optional<Rational>& got, std::int64_t num, std::int64_t den,
                          const char* name) {
            if (den == 0 ? got.has_value() : (!got || *got != Rational(num, den))) {
                why = "fixture " + std::to_string(f) + ": " + name + " diverges";
                return false;
            }
            return true;
        };
        if (!expect(m.accuracy, tp + tn, total, "accuracy")) return false;
        if (!expect(m.precision, tp, tp + fp, "precision")) return false;
        if (!expect(m.recall, tp, tp + fn, "recall")) return false;
        // f1 = 2pr/(p+r) reduces to 2tp/(2tp+fp+fn), defined exactly when tp > 0
        if (!expect(m.f1, 2 * tp, tp > 0 ? 2 * tp + fp + fn : 0, "f1")) return false;
    }
    double dt = seconds_since(t0);
    if (dt >= 10.0) {
        why = "took " + std::to_string(dt) + "s, limit 10s";
        return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// 2. exhaustive vote patterns up to nine passes

bool criterion_exhaustive_votes(std::string& why) {
    auto t0 = steady_clock::now();
    for (int len = 1; len <= 9; ++len) {
        for (unsigned mask = 0; mask < (1u << len); ++mask) {
            core::VoteSet vs;
            vs.sample_id = "s";
            vs.dimension_key = "a";
            int ones = 0;
            for (int i = 0; i < len; ++i) {
                bool one = (mask >> i) & 1u;
                ones += one ? 1 : 0;
                vs.votes.push_back({i, one ? Label::positive : Label::negative, "a", true});
            }
            auto agg = engine::aggregate(vs, engine::TiePolicy::positive);
            std::int64_t modal = std::max(ones, len - ones);
            if (!agg.consistency || *agg.consistency != Rational(modal, len)) {
                why = "len " + std::to_string(len) + " mask " + std::to_string(mask) +
                      ": consistency is not modal/valid";
                return false;
            }
            if (*agg.consistency < Rational(1, 2)) {
                why = "consistency below one half";
                return false;
            }
            bool tied = 2 * ones == len;
            if (agg.tie != tied) {
                why = "tie flag wrong";
                return false;
            }
            if (!tied && *agg.label != (ones > len - ones ? Label::positive : Label::negative)) {
                why = "modal label wrong";
                return false;
            }
        }
    }
    double dt = seconds_since(t0);
    if (dt >= 1.0) {
        why = "took " + std::to_string(dt) + "s, limit 1s";
        return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// 3. the simulated annotator obeys the repeated-sampling law

bool criterion_simulator_law(std::string& why) {
    auto t0 = steady_clock::now();
    const int samples = 20000;
    const int passes = 7;
    const double p = 0.8;

    // closed-form references, computed here rather than hardcoded
    double expect_full = std::pow(p, passes) + std::pow(1.0 - p, passes);
    double expect_modal = 0.0;
    for (int k = (passes + 1) / 2; k <= passes; ++k) {
        double comb = 1.0;
        for (int i = 0; i < k; ++i) comb = comb * (passes - i) / (i + 1);
        expect_modal += comb * std::pow(p, k) * std::pow(1.0 - p, passes - k);
    }

    std::map<std::string, std::map<std::string, Label>> truth;
    for (int i = 0; i < samples; ++i)
        truth["s" + std::to_string(i)]["a"] = i % 2 ? Label::positive : Label::negative;
    provider::SimulatedProvider sim(truth, p, 20260819);

    int full = 0, modal_correct = 0;
    for (const auto& [id, labels] : truth) {
        core::VoteSet vs;
        vs.sample_id = id;
        vs.dimension_key = "a";
        for (int pass = 0; pass < passes; ++pass) {
            provider::CompletionRequest req;
            req.sample_id = id;
            req.pass_index = pass;
            auto votes = provider::parse_votes(sim.complete(req).text, {"a"}, pass);
            vs.votes.push_back(votes.at(0));
        }
        auto agg = engine::aggregate(vs, engine::TiePolicy::negative);
        if (*agg.consistency == Rational(1, 1)) ++full;
        if (*agg.label == labels.at("a")) ++modal_correct;
    }

    double got_full = static_cast<double>(full) / samples;
    double got_modal = static_cast<double>(modal_correct) / samples;
    if (std::fabs(got_full - expect_full) > 0.01) {
        why = "P(unanimous) " + std::to_string(got_full) + " vs " + std::to_string(expect_full);
        return false;
    }
    if (std::fabs(got_modal - expect_modal) > 0.01) {
        why = "P(modal correct) " + std::to_string(got_modal) + " vs " +
              std::to_string(expect_modal);
        return false;
    }
    double dt = seconds_since(t0);
    if (dt >= 30.0) {
        why = "took " + std::to_string(dt) + "s, limit 30s";
        return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// 4. the unanimous stratum is more accurate than the split one

bool criterion_stratification_direction(std::string& why) {
    const int samples = 10000;
    const int passes = 7;
    const int reps = 100;

    std::map<std::string, std::map<std::string, Label>> truth;
    for (int i = 0; i < samples; ++i)
        truth["s" + std::to_string(i)]["a"] = i % 2 ? Label::positive : Label::negative;
    std::vector<GoldRecord> gold;
    for (const auto& [id, labels] : truth)
        gold.push_back(gold_rec(id, "a", labels.at("a") == Label::positive ? 1 : 0));

    int successes = 0;
    for (int rep = 0; rep < reps; ++rep) {
        provider::SimulatedProvider sim(truth, 0.6, 7919ull * rep + 13);
        int toggle = 0;
        for (const auto& [id, labels] : truth)
            if (toggle++ % 2 == 0) sim.set_sample_correctness(id, 0.95);

        std::vector<AggregatedAnnotation> aggs;
        aggs.reserve(truth.size());
        for (const auto& [id, labels] : truth) {
            core::VoteSet vs;
            vs.sample_id = id;
            vs.dimension_key = "a";
            for (int pass = 0; pass < passes; ++pass) {
                provider::CompletionRequest req;
                req.sample_id = id;
                req.pass_index = pass;
                auto votes = provider::parse_votes(sim.complete(req).text, {"a"}, pass);
                vs.votes.push_back(votes.at(0));
            }
            auto agg = engine::aggregate(vs, engine::TiePolicy::negative);
            agg.sample_id = id;
            aggs.push_back(agg);
        }
        auto s = eval::stratify(aggs, gold);
        if (s.full.accuracy && s.partial.accuracy && *s.full.accuracy > *s.partial.accuracy)
            ++successes;
    }
    if (successes < 99) {
        why = "full stratum beat partial in only " + std::to_string(successes) + "/100 runs";
        return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// 5. protocol defaults and floors

bool criterion_protocol_constants(std::string& why) {
    engine::RunConfig def;
    if (def.passes != 7 || def.temperature != 0.6) {
        why = "defaults are not 7 passes at temperature 0.6";
        return false;
    }
    provider::ProviderConfig pc;
    if (pc.temperature != 0.6) {
        why = "provider default temperature is not 0.6";
        return false;
    }
    auto throws = [](engine::RunConfig c) {
        try {
            c.validate();
        } catch (const Error&) {
            return true;
        }
        return false;
    };
    engine::RunConfig ok = def;
    if (throws(ok)) {
        why = "default config fails validation";
        return false;
    }
    ok.passes = 3;
    if (throws(ok)) {
        why = "3 passes must be allowed";
        return false;
    }
    ok.temperature = 1.0;
    if (throws(ok)) {
        why = "temperature 1.0 must be allowed";
        return false;
    }
    engine::RunConfig bad = def;
    bad.passes = 2;
    if (!throws(bad)) {
        why = "2 passes must be rejected";
        return false;
    }
    bad = def;
    bad.temperature = 0.0;
    if (!throws(bad)) {
        why = "temperature 0 must be rejected";
        return false;
    }
    bad = def;
    bad.temperature = 1.2;
    if (!throws(bad)) {
        why = "temperature above 1 must be rejected";
        return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// 6. no ordering of operations bypasses the gates

bool criterion_gate_orderings(std::string& why) {
    namespace fs = std::filesystem;
    auto cb1 = make_codebook({"a"}, 1);
    auto cb2 = make_codebook({"a"}, 2);
    auto cs1 = core::serialize_codebook(cb1);
    auto cs2 = core::serialize_codebook(cb2);

    workflow::SplitSpec split;
    split.fraction = 0.5;
    split.seed = 1;
    split.assignment = {{"r1", workflow::SplitSide::refinement},
                        {"r2", workflow::SplitSide::refinement},
                        {"h1", workflow::SplitSide::holdout},
                        {"h2", workflow::SplitSide::holdout}};
    std::vector<GoldRecord> gold = {gold_rec("r1", "a", 1), gold_rec("r2", "a", 0),
                                    gold_rec("h1", "a", 1), gold_rec("h2", "a", 0)};
    std::vector<AggregatedAnnotation> ref_aggs = {resolved("r1", "a", Label::positive, 6, 7),
                                                  resolved("r2", "a", Label::negative, 7, 7)};
    std::vector<AggregatedAnnotation> hold_aggs = {resolved("h1", "a", Label::positive, 7, 7),
                                                   resolved("h2", "a", Label::negative, 5, 7)};
    auto leak_aggs = ref_aggs;
    leak_aggs.push_back(resolved("h1", "a", Label::positive, 7, 7));

    std::vector<core::TextSample> corpus = {{"c1", "corpus text", {}}};
    provider::ScriptedProvider corpus_provider(
        std::map<std::string, std::string>{{"c1", "LABELS: a=1"}});
    engine::RunConfig run_cfg;
    run_cfg.passes = 3;
    workflow::GateThresholds none;

    fs::path base = fs::temp_directory_path() / ("annogate_gates_" + std::to_string(getpid()));
    fs::create_directories(base);

    int label_successes = 0;
    int run_counter = 0;
    Rng rng(606);
    for (int seq = 0; seq < 300; ++seq) {
        workflow::CodebookLedger ledger;
        register_version(ledger, cb1, cs1);
        bool frozen = false, registered2 = false;
        int refinements = 0, eval_counter = 0;

        for (int step = 0; step < 6; ++step) {
            int op = static_cast<int>(rng.below(5));
            auto latest_cb = [&] { return registered2 ? cb2 : cb1; };
            auto manifest = [&](const std::string& prefix) {
                engine::RunManifest m;
                m.run_id = prefix + std::to_string(seq) + "-" + std::to_string(eval_counter++);
                m.codebook_id = "acceptbook";
                m.codebook_version = ledger.latest_version();
                return m;
            };
            bool ok = false;
            Errc code = Errc::config_invalid;
            try {
                switch (op) {
                    case 0: register_version(ledger, cb2, cs2); break;
                    case 1:
                        evaluate_refinement(manifest("r"), ref_aggs, gold, split, latest_cb(),
                                            none, ledger);
                        break;
                    case 2:
                        evaluate_refinement(manifest("l"), leak_aggs, gold, split, latest_cb(),
                                            none, ledger);
                        break;
                    case 3:
                        evaluate_holdout(manifest("h"), hold_aggs, gold, split, latest_cb(), none,
                                         ledger);
                        break;
                    case 4: {
                        engine::RunPaths paths{base / ("run" + std::to_string(run_counter++))};
                        auto result = workflow::label_full_corpus(
                            corpus, latest_cb(), run_cfg, corpus_provider, paths,
                            "c" + std::to_string(run_counter), ledger);
                        if (result.manifest.validation.is_null()) {
                            why = "corpus labeling succeeded without validation evidence";
                            return false;
                        }
                        break;
                    }
                }
                ok = true;
            } catch (const Error& e) {
                code = e.code();
            }

            bool expected;
            switch (op) {
                case 0: expected = registered2 || !frozen; break;
                case 1: expected = !frozen; break;
                case 2: expected = false; break;
                case 3: expected = !frozen && refinements >= 1; break;
                default: expected = frozen; break;
            }
            if (ok != expected) {
                why = "seq " + std::to_string(seq) + " step " + std::to_string(step) + " op " +
                      std::to_string(op) + (ok ? " succeeded unexpectedly" : " failed: ") +
                      (ok ? "" : errc_name(code));
                return false;
            }
            if (op == 2 && !ok && code != Errc::holdout_leak && code != Errc::already_frozen) {
                why = "leaking evaluation failed with the wrong error: " +
                      std::string(errc_name(code));
                return false;
            }
            if (ok) {
                if (op == 0) registered2 = true;
                if (op == 1) ++refinements;
                if (op == 3) frozen = true;
                if (op == 4) ++label_successes;
            }
            if (ledger.frozen != frozen) {
                why = "ledger freeze state diverged from the model";
                return false;
            }
        }
    }
    std::filesystem::remove_all(base);
    if (label_successes == 0) {
        why = "no ordering ever reached corpus labeling; the fuzzer is too weak";
        return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// 7. CLI runs are byte-identical, including kill and resume

int run_shell(const std::string& cmd) {
    int rc = std::system(cmd.c_str());
    if (rc == -1) return -1;
    if (WIFEXITED(rc)) return WEXITSTATUS(rc);
    return 128;
}

void write_project(const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    write_file(dir / "annogate.jsonc", R"({
  "corpus": {"path": "corpus.jsonl"},
  "gold": {"path": "gold.csv"},
  "codebook": {"path": "codebook.txt"},
  "state_dir": "state",
  "provider": {"type": "scripted", "fixture_path": "fixture.jsonl"},
  "run": {"passes": 7, "temperature": 0.6, "concurrency_limit": 4},
  "split": {"fraction": 0.25, "seed": 42},
  "thresholds": {"f1": 0.5}
}
)");
    write_file(dir / "codebook.txt",
               "codebook_id: support\n"
               "version: 1\n"
               "\n"
               "## PREAMBLE\n"
               "Label customer feedback messages.\n"
               "\n"
               "## DIMENSION relevance | Relevance\n"
               "The message is about our product.\n"
               "\n"
               "## DIMENSION urgency | Urgency\n"
               "The message needs a response within a day.\n"
               "\n"
               "## OUTPUT\n"
               "Finish with one line: LABELS: relevance=<0 or 1>; urgency=<0 or 1>\n");
    std::string corpus;
    const char* ids[] = {"g1", "g2", "g3", "g4", "g5", "g6", "g7", "g8", "c9", "c10"};
    for (const char* id : ids)
        corpus += std::string("{\"id\":\"") + id + "\",\"text\":\"message from " + id + "\"}\n";
    write_file(dir / "corpus.jsonl", corpus);
    write_file(dir / "gold.csv",
               "sample_id,relevance,urgency\n"
               "g1,1,0\n"
               "g2,1,1\n"
               "g3,0,0\n"
               "g4,1,1\n"
               "g5,0,1\n"
               "g6,1,1\n"
               "g7,1,0\n"
               "g8,0,0\n");
    std::string fixture;
    auto add = [&](const std::string& match, const std::string& text) {
        fixture += nlohmann::json{{"match", match}, {"text", text}}.dump() + "\n";
    };
    for (int pass = 0; pass <= 4; ++pass)
        add("g1#" + std::to_string(pass), "LABELS: relevance=1; urgency=0");
    add("g1#5", "LABELS: relevance=0; urgency=0");
    add("g1#6", "LABELS: relevance=0; urgency=0");
    add("g2#3", "Hmm, hard to say.");
    add("g2", "LABELS: relevance=1; urgency=1");
    add("g3", "LABELS: relevance=0; urgency=0");
    add("g4", "LABELS: relevance=1; urgency=0");
    add("g5", "LABELS: relevance=0; urgency=1");
    add("g6", "LABELS: relevance=1; urgency=1");
    add("g7", "LABELS: relevance=1; urgency=0");
    add("g8", "LABELS: relevance=0; urgency=0");
    add("c9", "LABELS: relevance=1; urgency=0");
    add("c10", "LABELS: relevance=0; urgency=1");
    write_file(dir / "fixture.jsonl", fixture);
}

bool snapshot_tree(const std::filesystem::path& root, std::map<std::string, std::string>& out,
                   std::string& why) {
    namespace fs = std::filesystem;
    if (!fs::exists(root)) {
        why = "missing state tree " + root.string();
        return false;
    }
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (!entry.is_regular_file()) continue;
        out[fs::relative(entry.path(), root).string()] = read_file(entry.path());
    }
    return true;
}

bool criterion_cli_determinism(std::string& why) {
    namespace fs = std::filesystem;
    auto t0 = steady_clock::now();
    const char* bin = std::getenv("ANNOGATE_BIN");
    if (!bin || !*bin) {
        why = "ANNOGATE_BIN is not set";
        return false;
    }
    fs::path base = fs::temp_directory_path() / ("annogate_e2e_" + std::to_string(getpid()));
    fs::remove_all(base);
    fs::path tree_a = base / "a";
    fs::path tree_b = base / "b";
    write_project(tree_a);
    write_project(tree_b);

    int step = 0;
    auto run = [&](const fs::path& tree, const std::string& args, const std::string& extra_env,
                   int expected_exit) {
        std::string log = (base / ("step" + std::to_string(step++) + ".log")).string();
        std::string cmd = "ANNOGATE_FIXED_CLOCK=1700000000 " + extra_env + " \"" +
                          std::string(bin) + "\" -c \"" + (tree / "annogate.jsonc").string() +
                          "\" " + args + " > \"" + log + "\" 2>&1";
        int got = run_shell(cmd);
        if (got != expected_exit) {
            why = "step " + std::to_string(step - 1) + " (" + args + ") exited " +
                  std::to_string(got) + ", expected " + std::to_string(expected_exit) +
                  "; log: " + log;
            return false;
        }
        return true;
    };

    // tree A is killed five requests into its first run, then resumed
    if (!run(tree_a, "annotate --split refinement --run-id r1",
             "ANNOGATE_ABORT_AFTER_REQUESTS=5", 9))
        return false;
    struct Step {
        const char* args;
    };
    const Step steps[] = {
        {"annotate --split refinement --run-id r1"},
        {"evaluate --run-id r1 --stage refinement"},
        {"annotate --split holdout --run-id h1"},
        {"evaluate --run-id h1 --stage holdout"},
        {"annotate --split corpus --run-id c1 --yes"},
        {"review --run-id c1 --mode both --limit 5"},
        {"export --run-id c1 --min-consistency 0.7 --format csv"},
    };
    for (const auto& s : steps)
        if (!run(tree_a, s.args, "", 0)) return false;
    for (const auto& s : steps)
        if (!run(tree_b, s.args, "", 0)) return false;

    std::map<std::string, std::string> snap_a, snap_b;
    if (!snapshot_tree(tree_a / "state", snap_a, why)) return false;
    if (!snapshot_tree(tree_b / "state", snap_b, why)) return false;
    if (snap_a.size() != snap_b.size()) {
        why = "state trees hold " + std::to_string(snap_a.size()) + " vs " +
              std::to_string(snap_b.size()) + " files";
        return false;
    }
    for (const auto& [rel, content] : snap_a) {
        auto it = snap_b.find(rel);
        if (it == snap_b.end()) {
            why = "file " + rel + " exists only in the interrupted tree";
            return false;
        }
        if (it->second != content) {
            why = "file " + rel + " differs between the interrupted and clean trees";
            return false;
        }
    }
    if (snap_a.count("runs/r1/aggregates.csv") == 0 || snap_a.count("ledger.json") == 0 ||
        snap_a.count("reports/c1.training.csv") == 0) {
        why = "expected artifacts are missing from the state tree";
        return false;
    }
    fs::remove_all(base);
    double dt = seconds_since(t0);
    if (dt >= 60.0) {
        why = "took " + std::to_string(dt) + "s, limit 60s";
        return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// 8. comparing a run with itself gives exactly zero deltas

bool criterion_delta_zero(std::string& why) {
    Rng rng(808);
    for (int f = 0; f < 50; ++f) {
        std::vector<AggregatedAnnotation> aggs;
        std::vector<GoldRecord> gold;
        std::size_t n = 5 + rng.below(36);
        for (std::size_t i = 0; i < n; ++i) {
            std::string id = "s" + std::to_string(i);
            GoldRecord g;
            g.sample_id = id;
            for (const char* dim : {"a", "b"}) {
                g.labels[dim] = rng.below(2) ? Label::positive : Label::negative;
                if (rng.below(8) == 0)
                    aggs.push_back(unresolved(id, dim));
                else
                    aggs.push_back(resolved(id, dim,
                                            rng.below(2) ? Label::positive : Label::negative,
                                            4 + rng.below(4), 7));
            }
            gold.push_back(g);
        }
        auto report = eval::compare_runs(aggs, gold, aggs, gold);
        for (const auto& d : report.dimensions) {
            if (!(d.before == d.after)) {
                why = "fixture " + std::to_string(f) + ": sides differ on " + d.dimension;
                return false;
            }
            for (const auto* delta : {&d.d_accuracy, &d.d_precision, &d.d_recall, &d.d_f1}) {
                if (delta->has_value() && **delta != Rational(0, 1)) {
                    why = "fixture " + std::to_string(f) + ": nonzero self-delta on " +
                          d.dimension;
                    return false;
                }
            }
            if (d.before.accuracy && !d.d_accuracy) {
                why = "defined metric lost its delta";
                return false;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// 9. summary statistics match a sort-based oracle

bool criterion_summary_oracle(std::string& why) {
    Rng rng(909);
    char buf[160];
    for (int f = 0; f < 500; ++f) {
        std::size_t n = 1 + rng.below(40);
        std::vector<eval::MetricSet> sets;
        for (std::size_t i = 0; i < n; ++i) {
            eval::MetricSet m;
            auto maybe = [&](std::optional<Rational>& field) {
                if (i == 0 || rng.below(5) != 0) {
                    std::int64_t den = 1 + static_cast<std::int64_t>(rng.below(20));
                    field = Rational(static_cast<std::int64_t>(rng.below(den + 1)), den);
                }
            };
            maybe(m.accuracy);
            maybe(m.precision);
            maybe(m.recall);
            maybe(m.f1);
            sets.push_back(m);
        }
        auto s = eval::summarize(sets);

        auto oracle = [&](const std::optional<Rational> eval::MetricSet::*field,
                          eval::DistributionRow& row) {
            std::vector<double> v;
            for (const auto& m : sets)
                if (m.*field) v.push_back((m.*field)->value());
            std::sort(v.begin(), v.end());
            auto interp = [&](double p) {
                if (v.size() == 1) return v[0];
                double rank = p * static_cast<double>(v.size() - 1);
                auto lo = static_cast<std::size_t>(rank);
                if (lo + 1 >= v.size()) return v.back();
                return v[lo] + (rank - static_cast<double>(lo)) * (v[lo + 1] - v[lo]);
            };
            double sum = 0;
            for (double x : v) sum += x;
            row.minimum = v.front();
            row.p25 = interp(0.25);
            row.median = interp(0.5);
            row.p75 = interp(0.75);
            row.maximum = v.back();
            row.mean = sum / static_cast<double>(v.size());
            row.count = static_cast<std::int64_t>(v.size());
        };

        const std::optional<Rational> eval::MetricSet::*fields[] = {
            &eval::MetricSet::accuracy, &eval::MetricSet::precision, &eval::MetricSet::recall,
            &eval::MetricSet::f1};
        const eval::DistributionRow* got_rows[] = {&s.accuracy, &s.precision, &s.recall, &s.f1};
        const char* names[] = {"accuracy", "precision", "recall", "f1"};
        for (int m = 0; m < 4; ++m) {
            eval::DistributionRow want;
            oracle(fields[m], want);
            const auto& got = *got_rows[m];
            const double cells[][2] = {{got.minimum, want.minimum}, {got.p25, want.p25},
                                       {got.mean, want.mean},       {got.median, want.median},
                                       {got.p75, want.p75},         {got.maximum, want.maximum}};
            if (got.count != want.count) {
                why = std::string(names[m]) + " count diverges";
                return false;
            }
            for (const auto& cell : cells) {
                if (std::fabs(cell[0] - cell[1]) > 1e-12) {
                    why = "fixture " + std::to_string(f) + ": " + names[m] +
                          " diverges beyond 1e-12";
                    return false;
                }
            }
            if (f % 25 == 0) {
                std::snprintf(buf, sizeof buf, "%-10s %7.3f %7.3f %7.3f %7.3f %7.3f %7.3f %6lld",
                              names[m], want.minimum, want.p25, want.mean, want.median, want.p75,
                              want.maximum, static_cast<long long>(want.count));
                auto table = eval::render_summary_table(s);
                if (table.find(buf) == std::string::npos) {
                    why = std::string("table row for ") + names[m] +
                          " is not formatted to three decimals";
                    return false;
                }
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// 10. the HTTP provider speaks the chat-completions protocol

struct FakeEndpoint {
    httplib::Server server;
    std::thread thread;
    int port = 0;

    explicit FakeEndpoint(const std::function<void(const httplib::Request&, httplib::Response&)>& handler) {
        server.Post("/v1/chat/completions", handler);
        port = server.bind_to_any_port("127.0.0.1");
        thread = std::thread([this] { server.listen_after_bind(); });
        server.wait_until_ready();
    }
    ~FakeEndpoint() {
        server.stop();
        thread.join();
    }
    std::string url() const { return "http://127.0.0.1:" + std::to_string(port) + "/v1"; }
};

bool criterion_wire_protocol(std::string& why) {
    using nlohmann::json;
    auto cb = make_codebook({"a"}, 1);
    core::TextSample sample{"s1", "wire sample", {}};
    provider::CompletionRequest req;
    req.bundle = provider::render_prompt(cb, sample);
    req.sample_id = "s1";
    req.pass_index = 0;

    provider::ProviderConfig config;
    config.model_name = "test-model";
    config.temperature = 0.6;
    config.timeout_seconds = 5;
    config.max_retries = 5;
    config.requests_per_minute = 600;
    config.backoff_base_ms = 250;
    config.price_per_1k_input_tokens = 0.03;
    config.price_per_1k_output_tokens = 0.06;

    std::string reply = json{
        {"choices", json::array({json{{"message", json{{"role", "assistant"},
                                                       {"content", "LABELS: a=1"}}}}})},
        {"usage", json{{"prompt_tokens", 500}, {"completion_tokens", 20}}}}.dump();

    {  // request body shape and usage mapping
        std::mutex mu;
        std::vector<json> bodies;
        std::vector<std::string> auths;
        FakeEndpoint ep([&](const httplib::Request& r, httplib::Response& res) {
            std::lock_guard<std::mutex> lock(mu);
            bodies.push_back(json::parse(r.body));
            auths.push_back(r.get_header_value("Authorization"));
            res.set_content(reply, "application/json");
        });
        auto cfg = config;
        cfg.endpoint_url = ep.url();
        provider::ManualClock clock;
        provider::HttpProvider http(cfg, "sk-test", clock);
        auto result = http.complete(req);
        if (result.text != "LABELS: a=1" || result.input_tokens != 500 ||
            result.output_tokens != 20 || result.attempt_count != 1) {
            why = "completion result does not reflect the response body";
            return false;
        }
        provider::UsageRecord usage;
        usage.add(result);
        if (usage.total_requests != 1 || usage.total_input_tokens != 500 ||
            usage.total_output_tokens != 20) {
            why = "usage accounting does not match the reported token counts";
            return false;
        }
        if (bodies.size() != 1 || auths.at(0) != "Bearer sk-test") {
            why = "expected one authenticated request";
            return false;
        }
        const json& b = bodies.at(0);
        if (b.at("model") != "test-model" || b.at("temperature").get<double>() != 0.6) {
            why = "body carries the wrong model or temperature";
            return false;
        }
        if (b.at("messages").size() != 2 || b["messages"][0].at("role") != "system" ||
            b["messages"][1].at("role") != "user" ||
            b["messages"][0].at("content") != req.bundle.system_text ||
            b["messages"][1].at("content") != req.bundle.user_text) {
            why = "messages do not carry the system and user texts";
            return false;
        }
    }

    {  // 429 handling: exponential backoff, attempt count, eventual success
        std::atomic<int> hits{0};
        FakeEndpoint ep([&](const httplib::Request&, httplib::Response& res) {
            if (hits.fetch_add(1) < 2) {
                res.status = 429;
                res.set_content("slow down", "text/plain");
            } else {
                res.set_content(reply, "application/json");
            }
        });
        auto cfg = config;
        cfg.endpoint_url = ep.url();
        provider::ManualClock clock;
        provider::HttpProvider http(cfg, "sk-test", clock);
        auto result = http.complete(req);
        if (result.attempt_count != 3 || hits.load() != 3) {
            why = "two 429s then success must take exactly three attempts";
            return false;
        }
        auto sleeps = clock.sleeps();
        if (sleeps.size() != 2 || sleeps[0] != std::chrono::milliseconds(250) ||
            sleeps[1] != std::chrono::milliseconds(500)) {
            why = "backoff sleeps are not 250ms then 500ms";
            return false;
        }
    }

    {  // pacing: never more than requests_per_minute in any rolling minute
        std::mutex mu;
        std::vector<long long> arrivals;
        provider::ManualClock clock;
        FakeEndpoint ep([&](const httplib::Request&, httplib::Response& res) {
            {
                std::lock_guard<std::mutex> lock(mu);
                arrivals.push_back(clock.now().count());
            }
            res.set_content(reply, "application/json");
        });
        auto cfg = config;
        cfg.endpoint_url = ep.url();
        cfg.requests_per_minute = 2;
        provider::HttpProvider http(cfg, "sk-test", clock);
        for (int i = 0; i < 6; ++i) http.complete(req);
        std::vector<long long> expected = {0, 0, 60000, 60000, 120000, 120000};
        if (arrivals != expected) {
            why = "request arrival times do not respect the sliding window";
            return false;
        }
        for (std::size_t i = 0; i < arrivals.size(); ++i) {
            int in_window = 0;
            for (std::size_t j = 0; j <= i; ++j)
                if (arrivals[j] > arrivals[i] - 60000) ++in_window;
            if (in_window > 2) {
                why = "more than two requests landed inside one minute";
                return false;
            }
        }
    }

    {  // cost estimate equals the hand-computed bill
        provider::UsageRecord usage;
        usage.total_requests = 200000;
        usage.total_input_tokens = 200000LL * 500;
        usage.total_output_tokens = 200000LL * 20;
        double hand = 100000000.0 / 1000.0 * 0.03 + 4000000.0 / 1000.0 * 0.06;
        double got = provider::estimate_cost(usage, config);
        if (got != hand) {
            why = "estimate_cost diverges from the hand arithmetic";
            return false;
        }
        if (std::fabs(got - 3240.0) > 1e-6) {
            why = "the reference bill is not 3240 dollars";
            return false;
        }
    }
    return true;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        bool (*fn)(std::string&);
    };
    const Criterion criteria[] = {
        {"exact metrics match an independent tally over 1000 fixtures", criterion_exact_metrics},
        {"every vote pattern up to nine passes yields modal consistency of at least one half",
         criterion_exhaustive_votes},
        {"the simulated annotator obeys the repeated-sampling law", criterion_simulator_law},
        {"the unanimous stratum outperforms the split stratum", criterion_stratification_direction},
        {"defaults are seven passes at temperature 0.6 with hard floors",
         criterion_protocol_constants},
        {"no operation ordering reaches corpus labeling before a holdout-validated freeze",
         criterion_gate_orderings},
        {"CLI runs are byte-identical across executions, including kill and resume",
         criterion_cli_determinism},
        {"comparing a run with itself yields exactly zero deltas", criterion_delta_zero},
        {"summary distributions match a sort-based oracle to twelve decimals",
         criterion_summary_oracle},
        {"the HTTP provider speaks the chat-completions wire protocol", criterion_wire_protocol},
    };

    int failures = 0;
    int index = 0;
    for (const auto& c : criteria) {
        ++index;
        std::string why;
        bool ok = false;
        try {
            ok = c.fn(why);
        } catch (const std::exception& e) {
            why = std::string("unhandled exception: ") + e.what();
        }
        if (ok) {
            std::printf("PASS [%d/10]: %s\n", index, c.name);
        } else {
            std::printf("FAIL [%d/10]: %s (%s)\n", index, c.name, why.c_str());
            ++failures;
        }
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}

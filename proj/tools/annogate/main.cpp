#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "annogate/cli/commands.hpp"
#include "annogate/cli/config.hpp"
#include "annogate/error.hpp"

int main(int argc, char** argv) {
    CLI::App app{"annogate: repeated-sampling LLM annotation with consistency scores,\n"
                 "gold-label validation, and a leakage-gated labeling workflow"};
    app.require_subcommand(1);
    app.fallthrough();

    const char* env_config = std::getenv("ANNOGATE_CONFIG");
    std::string config_path = env_config ? env_config : "annogate.jsonc";
    std::vector<std::string> overrides;
    app.add_option("-c,--config", config_path,
                   "project config file (default: $ANNOGATE_CONFIG or annogate.jsonc)");
    app.add_option("--set", overrides, "override a config value, e.g. --set run.passes=9");

    auto* init = app.add_subcommand("init", "scaffold a new project directory");
    std::string init_dir;
    init->add_option("directory", init_dir, "directory to create")->required();

    auto* annotate = app.add_subcommand("annotate", "run repeated-sampling annotation");
    std::string an_split, an_run_id;
    bool an_yes = false;
    annotate->add_option("--split", an_split, "refinement | holdout | corpus")->required();
    annotate->add_option("--run-id", an_run_id, "name for this run's artifact directory")
        ->required();
    annotate->add_flag("--yes", an_yes, "proceed past the cost ceiling without asking");

    auto* evaluate = app.add_subcommand("evaluate", "validate a run against gold labels");
    std::string ev_run_id, ev_stage;
    evaluate->add_option("--run-id", ev_run_id, "run to evaluate")->required();
    evaluate->add_option("--stage", ev_stage, "refinement | holdout (holdout freezes the ledger)")
        ->required();

    auto* review = app.add_subcommand("review", "build the human-review queue");
    std::string rv_run_id, rv_mode = "edge_cases";
    int rv_limit = 20;
    review->add_option("--run-id", rv_run_id, "run to triage")->required();
    review->add_option("--mode", rv_mode, "edge_cases | positives | both (default edge_cases)");
    review->add_option("--limit", rv_limit, "console rows to show (file gets all rows)");

    auto* exp = app.add_subcommand("export", "export consistency-filtered training data");
    std::string ex_run_id, ex_min = "1.0", ex_format = "csv";
    exp->add_option("--run-id", ex_run_id, "run to export from")->required();
    exp->add_option("--min-consistency", ex_min, "inclusive consistency filter (default 1.0)");
    exp->add_option("--format", ex_format, "csv | jsonl (default csv)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (init->parsed()) return annogate::cli::cmd_init(init_dir);
        auto cfg = annogate::cli::load_project_config(config_path, overrides);
        if (annotate->parsed())
            return annogate::cli::cmd_annotate(cfg, an_split, an_run_id, an_yes);
        if (evaluate->parsed()) return annogate::cli::cmd_evaluate(cfg, ev_run_id, ev_stage);
        if (review->parsed()) return annogate::cli::cmd_review(cfg, rv_run_id, rv_mode, rv_limit);
        if (exp->parsed()) return annogate::cli::cmd_export(cfg, ex_run_id, ex_min, ex_format);
        return 1;
    } catch (const annogate::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return e.exit_code();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

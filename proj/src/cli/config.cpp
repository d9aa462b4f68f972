#include "annogate/cli/config.hpp"

#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

#include "annogate/error.hpp"
#include "annogate/util.hpp"

namespace annogate::cli {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& section) {
    for (const auto& [key, value] : obj.items())
        if (!allowed.count(key))
            throw Error(Errc::config_invalid,
                        "unknown config key '" + (section.empty() ? key : section + "." + key) +
                            "'");
}

// Recovers the intended decimal exactly from the JSON text of the number, so
// a threshold written as 0.7 compares as 7/10, not as the nearest double.
Rational rational_from_number(const json& j, const std::string& where) {
    if (!j.is_number())
        throw Error(Errc::config_invalid, where + " must be a number");
    std::string text = j.dump();
    try {
        if (text.find_first_of("eE") == std::string::npos) return Rational::from_decimal(text);
    } catch (const std::domain_error&) {
    }
    return Rational(std::llround(j.get<double>() * 1e9), 1000000000);
}

void apply_override(json& doc, const std::string& assignment) {
    auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw Error(Errc::config_invalid, "--set expects key.path=value, got '" + assignment + "'");
    std::string value_text = assignment.substr(eq + 1);
    json value = json::parse(value_text, nullptr, false);
    if (value.is_discarded()) value = value_text;  // bare strings need no quotes

    json* node = &doc;
    auto keys = split(assignment.substr(0, eq), '.');
    for (size_t i = 0; i + 1 < keys.size(); ++i) {
        if (!node->is_object())
            throw Error(Errc::config_invalid, "--set path '" + assignment + "' crosses a non-object");
        node = &(*node)[keys[i]];
    }
    if (!node->is_object())
        throw Error(Errc::config_invalid, "--set path '" + assignment + "' crosses a non-object");
    (*node)[keys.back()] = std::move(value);
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
}

}  // namespace

ProjectConfig load_project_config(const std::filesystem::path& path,
                                  const std::vector<std::string>& overrides) {
    if (!std::filesystem::exists(path))
        throw Error(Errc::config_invalid, "config file not found: " + path.string());
    json doc = json::parse(read_file(path), nullptr, false, /*ignore_comments=*/true);
    if (doc.is_discarded() || !doc.is_object())
        throw Error(Errc::config_invalid, "config file is not a JSON object: " + path.string());

    for (const auto& o : overrides) apply_override(doc, o);

    reject_unknown_keys(doc, {"corpus", "gold", "codebook", "state_dir", "provider", "run",
                              "split", "thresholds", "cost"},
                        "");

    ProjectConfig cfg;
    cfg.config_path = std::filesystem::absolute(path);
    auto base = cfg.config_path.parent_path();

    try {
        const json& corpus = doc.at("corpus");
        reject_unknown_keys(corpus, {"path", "format"}, "corpus");
        cfg.corpus_path = resolve(base, corpus.at("path").get<std::string>());
        if (corpus.contains("format"))
            cfg.corpus_format = core::corpus_format_from_string(corpus.at("format").get<std::string>());

        const json& gold = doc.at("gold");
        reject_unknown_keys(gold, {"path"}, "gold");
        cfg.gold_path = resolve(base, gold.at("path").get<std::string>());

        const json& codebook = doc.at("codebook");
        reject_unknown_keys(codebook, {"path"}, "codebook");
        cfg.codebook_path = resolve(base, codebook.at("path").get<std::string>());

        cfg.state_dir = resolve(base, doc.at("state_dir").get<std::string>());

        const json& prov = doc.at("provider");
        reject_unknown_keys(prov,
                            {"type", "endpoint_url", "model_name", "timeout_seconds",
                             "max_retries", "requests_per_minute", "price_per_1k_input_tokens",
                             "price_per_1k_output_tokens", "backoff_base_ms", "fixture_path"},
                            "provider");
        cfg.provider_type = prov.value("type", "http");
        if (cfg.provider_type != "http" && cfg.provider_type != "scripted")
            throw Error(Errc::config_invalid,
                        "provider.type must be http or scripted, got '" + cfg.provider_type + "'");
        cfg.provider.endpoint_url = prov.value("endpoint_url", "");
        cfg.provider.model_name = prov.value("model_name", "");
        cfg.provider.timeout_seconds = prov.value("timeout_seconds", 60.0);
        cfg.provider.max_retries = prov.value("max_retries", 5);
        cfg.provider.requests_per_minute = prov.value("requests_per_minute", 60);
        cfg.provider.price_per_1k_input_tokens = prov.value("price_per_1k_input_tokens", 0.0);
        cfg.provider.price_per_1k_output_tokens = prov.value("price_per_1k_output_tokens", 0.0);
        cfg.provider.backoff_base_ms = prov.value("backoff_base_ms", 250);
        if (prov.contains("fixture_path"))
            cfg.fixture_path = resolve(base, prov.at("fixture_path").get<std::string>());

        const json& run = doc.at("run");
        reject_unknown_keys(run,
                            {"passes", "temperature", "min_valid_votes", "tie_policy",
                             "concurrency_limit", "seed"},
                            "run");
        cfg.run.passes = run.value("passes", 7);
        cfg.run.temperature = run.value("temperature", 0.6);
        cfg.run.min_valid_votes = run.value("min_valid_votes", 1);
        cfg.run.tie_policy =
            engine::tie_policy_from_string(run.value("tie_policy", std::string("negative")));
        cfg.run.concurrency_limit = run.value("concurrency_limit", 4);
        if (run.contains("seed")) cfg.run.seed = run.at("seed").get<std::uint64_t>();
        cfg.provider.temperature = cfg.run.temperature;

        const json& split = doc.at("split");
        reject_unknown_keys(split, {"fraction", "seed"}, "split");
        cfg.split_fraction = split.value("fraction", 0.25);
        if (!split.contains("seed"))
            throw Error(Errc::config_invalid,
                        "split.seed is required; splits must be reproducible");
        cfg.split_seed = split.at("seed").get<std::uint64_t>();

        if (doc.contains("thresholds")) {
            const json& th = doc.at("thresholds");
            reject_unknown_keys(th, {"accuracy", "precision", "recall", "f1"}, "thresholds");
            auto read = [&](const char* name) -> std::optional<Rational> {
                if (!th.contains(name)) return std::nullopt;
                Rational r = rational_from_number(th.at(name), std::string("thresholds.") + name);
                if (r < Rational(0, 1) || r > Rational(1, 1))
                    throw Error(Errc::config_invalid,
                                std::string("thresholds.") + name + " must be in [0, 1]");
                return r;
            };
            cfg.thresholds.accuracy = read("accuracy");
            cfg.thresholds.precision = read("precision");
            cfg.thresholds.recall = read("recall");
            cfg.thresholds.f1 = read("f1");
        }

        if (doc.contains("cost")) {
            const json& cost = doc.at("cost");
            reject_unknown_keys(cost, {"ceiling_usd"}, "cost");
            cfg.cost_ceiling_usd = cost.value("ceiling_usd", 5.0);
        }
    } catch (const json::exception& e) {
        throw Error(Errc::config_invalid, std::string("config error: ") + e.what());
    }

    try {
        cfg.run.validate();
        if (cfg.provider_type == "http") cfg.provider.validate();
    } catch (const Error& e) {
        throw Error(Errc::config_invalid, e.what());
    }
    if (cfg.provider_type == "scripted" && cfg.fixture_path.empty())
        throw Error(Errc::config_invalid, "provider.fixture_path is required for type scripted");
    if (cfg.provider_type == "http" && (cfg.provider.endpoint_url.empty() || cfg.provider.model_name.empty()))
        throw Error(Errc::config_invalid,
                    "provider.endpoint_url and provider.model_name are required for type http");
    if (!(cfg.split_fraction > 0.0 && cfg.split_fraction < 1.0))
        throw Error(Errc::config_invalid, "split.fraction must be in (0, 1)");
    if (cfg.cost_ceiling_usd < 0.0)
        throw Error(Errc::config_invalid, "cost.ceiling_usd must be non-negative");
    return cfg;
}

void validate_project_paths(const ProjectConfig& config) {
    std::string missing;
    for (const auto& p : {config.corpus_path, config.gold_path, config.codebook_path}) {
        if (!std::filesystem::exists(p)) missing += "\n  " + p.string();
    }
    if (config.provider_type == "scripted" && !std::filesystem::exists(config.fixture_path))
        missing += "\n  " + config.fixture_path.string();
    if (!missing.empty())
        throw Error(Errc::config_invalid, "referenced files do not exist:" + missing);
}

std::string config_template() {
    return R"(// annogate project configuration. Comments are allowed; unknown keys are
// rejected. Relative paths resolve against this file's directory.
{
  "corpus": {
    "path": "corpus.jsonl",   // one {"id","text"} object per line (or csv)
    "format": "jsonl"
  },
  "gold": {
    "path": "gold.csv"        // header: sample_id,<dimension keys...>
  },
  "codebook": {
    "path": "codebook.txt"
  },
  "state_dir": "state",

  "provider": {
    "type": "http",           // http | scripted (offline replay fixture)
    "endpoint_url": "https://api.openai.com/v1",
    "model_name": "gpt-4",
    "timeout_seconds": 60,
    "max_retries": 5,
    "requests_per_minute": 60,
    "price_per_1k_input_tokens": 0.03,
    "price_per_1k_output_tokens": 0.06,
    "backoff_base_ms": 250,
    "fixture_path": "fixture.jsonl"  // used when type is scripted
  },

  "run": {
    "passes": 7,              // repeated classifications per sample, minimum 3
    "temperature": 0.6,       // must be above 0
    "min_valid_votes": 1,
    "tie_policy": "negative", // negative | positive | fail
    "concurrency_limit": 4
  },

  "split": {
    "fraction": 0.25,         // share of gold samples used for refinement
    "seed": 42
  },

  "thresholds": {
    "f1": 0.7                 // optional minimums: accuracy, precision, recall, f1
  },

  "cost": {
    "ceiling_usd": 5.0        // corpus runs estimated above this need --yes
  }
}
)";
}

}  // namespace annogate::cli

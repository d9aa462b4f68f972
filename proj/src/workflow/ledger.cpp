#include "annogate/workflow/ledger.hpp"

#include <algorithm>

#include "annogate/error.hpp"
#include "annogate/util.hpp"

namespace annogate::workflow {

using nlohmann::json;

const LedgerVersion* CodebookLedger::find_version(int v) const {
    for (const auto& lv : versions)
        if (lv.version == v) return &lv;
    return nullptr;
}

void register_version(CodebookLedger& ledger, const core::Codebook& codebook,
                      const std::string& serialized) {
    if (!ledger.codebook_id.empty() && ledger.codebook_id != codebook.codebook_id)
        throw Error(Errc::version_conflict, "ledger tracks codebook '" + ledger.codebook_id +
                                                "', not '" + codebook.codebook_id + "'");

    std::string hash = hex64(fnv1a64(serialized));
    if (const auto* existing = ledger.find_version(codebook.version)) {
        if (existing->content_hash != hash)
            throw Error(Errc::version_conflict,
                        "codebook version " + std::to_string(codebook.version) +
                            " is already registered with different content");
        return;
    }

    if (ledger.frozen)
        throw Error(Errc::already_frozen,
                    "ledger is frozen; no new codebook version may be registered");
    if (codebook.parent_version && !ledger.find_version(*codebook.parent_version))
        throw Error(Errc::version_conflict,
                    "parent version " + std::to_string(*codebook.parent_version) +
                        " is not registered");
    if (!ledger.versions.empty() &&
        ledger.versions.front().dimension_keys != codebook.dimension_keys())
        throw Error(Errc::dimension_mismatch,
                    "dimension keys changed across versions of codebook '" +
                        codebook.codebook_id + "'");

    LedgerVersion lv;
    lv.version = codebook.version;
    lv.parent_version = codebook.parent_version;
    lv.dimension_keys = codebook.dimension_keys();
    lv.content_hash = hash;
    lv.registered_at = now_iso8601();
    ledger.codebook_id = codebook.codebook_id;
    ledger.versions.push_back(std::move(lv));
    std::sort(ledger.versions.begin(), ledger.versions.end(),
              [](const LedgerVersion& a, const LedgerVersion& b) { return a.version < b.version; });
}

namespace {

json evaluation_json(const LedgerEvaluation& e) {
    json j;
    j["run_id"] = e.run_id;
    j["codebook_version"] = e.codebook_version;
    j["recorded_at"] = e.recorded_at;
    j["metrics"] = e.metrics;
    j["verdicts"] = e.verdicts;
    j["passed"] = e.passed;
    return j;
}

LedgerEvaluation evaluation_from_json(const json& j) {
    LedgerEvaluation e;
    e.run_id = j.at("run_id").get<std::string>();
    e.codebook_version = j.at("codebook_version").get<int>();
    e.recorded_at = j.at("recorded_at").get<std::string>();
    e.metrics = j.at("metrics");
    e.verdicts = j.at("verdicts");
    e.passed = j.at("passed").get<bool>();
    return e;
}

}  // namespace

CodebookLedger load_ledger(const std::filesystem::path& path) {
    CodebookLedger ledger;
    if (!std::filesystem::exists(path)) return ledger;
    json j = json::parse(read_file(path), nullptr, false);
    if (j.is_discarded())
        throw Error(Errc::malformed_row, "ledger file " + path.string() + " is not valid JSON");
    ledger.codebook_id = j.at("codebook_id").get<std::string>();
    ledger.frozen = j.at("frozen").get<bool>();
    for (const auto& vj : j.at("versions")) {
        LedgerVersion lv;
        lv.version = vj.at("version").get<int>();
        if (!vj.at("parent_version").is_null())
            lv.parent_version = vj.at("parent_version").get<int>();
        lv.dimension_keys = vj.at("dimension_keys").get<std::vector<std::string>>();
        lv.content_hash = vj.at("content_hash").get<std::string>();
        lv.registered_at = vj.at("registered_at").get<std::string>();
        ledger.versions.push_back(std::move(lv));
    }
    for (const auto& ej : j.at("refinement_evaluations"))
        ledger.refinement_evaluations.push_back(evaluation_from_json(ej));
    if (!j.at("holdout_evaluation").is_null())
        ledger.holdout_evaluation = evaluation_from_json(j.at("holdout_evaluation"));
    return ledger;
}

void write_ledger(const std::filesystem::path& path, const CodebookLedger& ledger) {
    json versions = json::array();
    for (const auto& lv : ledger.versions) {
        json vj;
        vj["version"] = lv.version;
        vj["parent_version"] = lv.parent_version ? json(*lv.parent_version) : json(nullptr);
        vj["dimension_keys"] = lv.dimension_keys;
        vj["content_hash"] = lv.content_hash;
        vj["registered_at"] = lv.registered_at;
        versions.push_back(std::move(vj));
    }
    json evals = json::array();
    for (const auto& e : ledger.refinement_evaluations) evals.push_back(evaluation_json(e));
    json j;
    j["codebook_id"] = ledger.codebook_id;
    j["frozen"] = ledger.frozen;
    j["versions"] = std::move(versions);
    j["refinement_evaluations"] = std::move(evals);
    j["holdout_evaluation"] =
        ledger.holdout_evaluation ? evaluation_json(*ledger.holdout_evaluation) : json(nullptr);
    write_file(path, j.dump(2) + "\n");
}

}  // namespace annogate::workflow

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "annogate/core/types.hpp"

namespace annogate::workflow {

struct LedgerVersion {
    int version = 1;
    std::optional<int> parent_version;
    std::vector<std::string> dimension_keys;
    std::string content_hash;  // fingerprint of the serialized codebook
    std::string registered_at;
};

struct LedgerEvaluation {
    std::string run_id;
    int codebook_version = 0;
    std::string recorded_at;
    nlohmann::json metrics;   // per-dimension metric report
    nlohmann::json verdicts;  // dimension -> "pass" | "fail"
    bool passed = false;
};

// Audit trail of codebook iteration. Refinement evaluations accumulate per
// version; the single holdout evaluation freezes the ledger, after which no
// new version may be registered and full-corpus labeling unlocks.
struct CodebookLedger {
    std::string codebook_id;
    std::vector<LedgerVersion> versions;  // ascending by version number
    std::vector<LedgerEvaluation> refinement_evaluations;
    std::optional<LedgerEvaluation> holdout_evaluation;
    bool frozen = false;

    int latest_version() const { return versions.empty() ? 0 : versions.back().version; }
    const LedgerVersion* find_version(int v) const;
};

// Idempotent for byte-identical re-registration of a known version. Rejects
// content drift under a reused version number (VersionConflict), dimension
// key-set changes across versions (DimensionMismatch), unregistered parents,
// and any new version once frozen (AlreadyFrozen).
void register_version(CodebookLedger& ledger, const core::Codebook& codebook,
                      const std::string& serialized);

CodebookLedger load_ledger(const std::filesystem::path& path);  // missing file -> empty ledger
void write_ledger(const std::filesystem::path& path, const CodebookLedger& ledger);

}  // namespace annogate::workflow

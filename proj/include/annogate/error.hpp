#pragma once

#include <stdexcept>
#include <string>

namespace annogate {

// Error classes map 1:1 to CLI exit codes and stay stable across releases.
enum class ErrorClass : int {
    usage = 1,     // configuration / invocation problems
    data = 2,      // corpus, codebook, gold, run-artifact validation
    provider = 3,  // completion endpoint failures
    gate = 4,      // workflow-order violations
};

enum class Errc {
    // usage / config
    config_invalid,
    non_empty_directory,
    project_locked,
    // data validation
    malformed_row,
    duplicate_id,
    empty_corpus,
    missing_dimension,
    duplicate_dimension_key,
    missing_output_contract,
    unknown_sample_id,
    incomplete_labels,
    no_valid_votes,
    tie_unresolved,
    manifest_conflict,
    incomplete_run,
    no_overlap,
    empty_matrix,
    all_undefined,
    sample_set_mismatch,
    dimension_mismatch,
    too_few_gold,
    degenerate_split,
    version_conflict,
    // provider
    rate_limit_exhausted,
    endpoint_error,
    request_timeout,
    auth_error,
    // workflow gates
    holdout_leak,
    stale_codebook,
    already_frozen,
    unvalidated_codebook,
    refinement_required,
};

inline ErrorClass error_class(Errc c) {
    switch (c) {
        case Errc::config_invalid:
        case Errc::non_empty_directory:
        case Errc::project_locked:
            return ErrorClass::usage;
        case Errc::rate_limit_exhausted:
        case Errc::endpoint_error:
        case Errc::request_timeout:
        case Errc::auth_error:
            return ErrorClass::provider;
        case Errc::holdout_leak:
        case Errc::stale_codebook:
        case Errc::already_frozen:
        case Errc::unvalidated_codebook:
        case Errc::refinement_required:
            return ErrorClass::gate;
        default:
            return ErrorClass::data;
    }
}

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::config_invalid: return "ConfigInvalid";
        case Errc::non_empty_directory: return "NonEmptyDirectory";
        case Errc::project_locked: return "ProjectLocked";
        case Errc::malformed_row: return "MalformedRow";
        case Errc::duplicate_id: return "DuplicateId";
        case Errc::empty_corpus: return "EmptyCorpus";
        case Errc::missing_dimension: return "MissingDimension";
        case Errc::duplicate_dimension_key: return "DuplicateDimensionKey";
        case Errc::missing_output_contract: return "MissingOutputContract";
        case Errc::unknown_sample_id: return "UnknownSampleId";
        case Errc::incomplete_labels: return "IncompleteLabels";
        case Errc::no_valid_votes: return "NoValidVotes";
        case Errc::tie_unresolved: return "TieUnresolved";
        case Errc::manifest_conflict: return "ManifestConflict";
        case Errc::incomplete_run: return "IncompleteRun";
        case Errc::no_overlap: return "NoOverlap";
        case Errc::empty_matrix: return "EmptyMatrix";
        case Errc::all_undefined: return "AllUndefined";
        case Errc::sample_set_mismatch: return "SampleSetMismatch";
        case Errc::dimension_mismatch: return "DimensionMismatch";
        case Errc::too_few_gold: return "TooFewGold";
        case Errc::degenerate_split: return "DegenerateSplit";
        case Errc::version_conflict: return "VersionConflict";
        case Errc::rate_limit_exhausted: return "RateLimitExhausted";
        case Errc::endpoint_error: return "EndpointError";
        case Errc::request_timeout: return "Timeout";
        case Errc::auth_error: return "AuthError";
        case Errc::holdout_leak: return "HoldoutLeak";
        case Errc::stale_codebook: return "StaleCodebook";
        case Errc::already_frozen: return "AlreadyFrozen";
        case Errc::unvalidated_codebook: return "UnvalidatedCodebook";
        case Errc::refinement_required: return "RefinementRequired";
    }
    return "Error";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const { return code_; }
    ErrorClass cls() const { return error_class(code_); }
    int exit_code() const { return static_cast<int>(cls()); }

private:
    Errc code_;
};

}  // namespace annogate

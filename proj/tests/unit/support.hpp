#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <unistd.h>

#include "annogate/core/types.hpp"

namespace testsup {

// Unique per process and per instance; removed on scope exit.
struct TempDir {
    std::filesystem::path path;

    TempDir() {
        static std::atomic<int> n{0};
        path = std::filesystem::temp_directory_path() /
               ("annogate_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(n.fetch_add(1)));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
};

inline annogate::core::Codebook make_codebook(const std::vector<std::string>& keys,
                                              int version = 1) {
    annogate::core::Codebook cb;
    cb.codebook_id = "testbook";
    cb.version = version;
    if (version > 1) cb.parent_version = version - 1;
    cb.preamble = "Annotate each sample.";
    for (const auto& k : keys)
        cb.dimensions.push_back({k, k + " name", "Definition of " + k + "."});
    cb.output_contract = "Answer with one LABELS line.";
    return cb;
}

inline annogate::core::Vote vote(int pass, int label) {
    annogate::core::Vote v;
    v.pass_index = pass;
    v.valid = true;
    v.label = label == 1 ? annogate::core::Label::positive : annogate::core::Label::negative;
    return v;
}

inline annogate::core::Vote invalid_vote(int pass) {
    annogate::core::Vote v;
    v.pass_index = pass;
    return v;
}

inline annogate::core::VoteSet vote_set(const std::string& sample, const std::string& dim,
                                        const std::vector<int>& labels) {
    annogate::core::VoteSet vs;
    vs.sample_id = sample;
    vs.dimension_key = dim;
    vs.requested_passes = static_cast<int>(labels.size());
    for (size_t i = 0; i < labels.size(); ++i) {
        // -1 marks an invalid vote
        vs.votes.push_back(labels[i] < 0 ? invalid_vote(static_cast<int>(i))
                                         : vote(static_cast<int>(i), labels[i]));
    }
    return vs;
}

inline annogate::core::AggregatedAnnotation resolved_agg(const std::string& sample,
                                                         const std::string& dim,
                                                         annogate::core::Label label,
                                                         std::int64_t modal, std::int64_t valid) {
    annogate::core::AggregatedAnnotation a;
    a.sample_id = sample;
    a.dimension_key = dim;
    a.label = label;
    a.consistency = annogate::Rational(modal, valid);
    a.valid_votes = static_cast<int>(valid);
    return a;
}

inline annogate::core::AggregatedAnnotation unresolved_agg(const std::string& sample,
                                                           const std::string& dim,
                                                           int valid_votes = 0) {
    annogate::core::AggregatedAnnotation a;
    a.sample_id = sample;
    a.dimension_key = dim;
    a.valid_votes = valid_votes;
    a.unresolved = true;
    return a;
}

inline annogate::core::GoldRecord gold_record(const std::string& sample,
                                              const std::vector<std::pair<std::string, int>>& kv) {
    annogate::core::GoldRecord g;
    g.sample_id = sample;
    for (const auto& [k, v] : kv)
        g.labels[k] = v == 1 ? annogate::core::Label::positive : annogate::core::Label::negative;
    return g;
}

// Deterministic test-local generator, unrelated to the library's stream.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed ^ 0x2545F4914F6CDD1DULL) {}
    std::uint64_t next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
    std::uint64_t below(std::uint64_t n) { return next() % n; }
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

}  // namespace testsup

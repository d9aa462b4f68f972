#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "annogate/rational.hpp"

namespace annogate::core {

// Labels are a real enum end to end; 0/1 appears only in file formats.
enum class Label { negative = 0, positive = 1 };

inline const char* label_cell(Label l) { return l == Label::positive ? "1" : "0"; }

struct TextSample {
    std::string id;
    std::string text;
    std::map<std::string, std::string> metadata;

    bool operator==(const TextSample&) const = default;
};

struct Dimension {
    std::string key;         // stable across codebook versions
    std::string name;        // human-readable
    std::string definition;  // instruction text, editable between versions

    bool operator==(const Dimension&) const = default;
};

struct Codebook {
    std::string codebook_id;
    int version = 1;
    std::string preamble;
    std::vector<Dimension> dimensions;
    std::string output_contract;
    std::optional<int> parent_version;

    bool operator==(const Codebook&) const = default;

    std::vector<std::string> dimension_keys() const {
        std::vector<std::string> keys;
        keys.reserve(dimensions.size());
        for (const auto& d : dimensions) keys.push_back(d.key);
        return keys;
    }
};

struct GoldRecord {
    std::string sample_id;
    std::map<std::string, Label> labels;  // dimension key -> label
    std::vector<std::string> annotator_ids;

    bool operator==(const GoldRecord&) const = default;
};

struct Vote {
    int pass_index = 0;
    std::optional<Label> label;  // absent iff !valid
    std::string raw_fragment;
    bool valid = false;
};

struct VoteSet {
    std::string sample_id;
    std::string dimension_key;
    std::vector<Vote> votes;  // one per recorded pass, valid or not
    int requested_passes = 0;
};

struct AggregatedAnnotation {
    std::string sample_id;
    std::string dimension_key;
    std::optional<Label> label;             // modal label; absent when no valid vote
    std::optional<Rational> consistency;    // modal count / valid count
    bool tie = false;
    int valid_votes = 0;
    bool unresolved = false;  // valid votes below the run's minimum

    bool resolved() const { return !unresolved; }
};

}  // namespace annogate::core

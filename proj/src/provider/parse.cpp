#include "annogate/provider/parse.hpp"

#include <map>

#include "annogate/util.hpp"

namespace annogate::provider {

namespace {

struct Assignment {
    std::string value;
    std::string fragment;
    bool conflict = false;
};

// Returns the assignment list if the line matches `LABELS: ...`, else nullopt.
std::optional<std::map<std::string, Assignment>> match_labels_line(const std::string& line) {
    std::string t = trim(line);
    if (lower(t).rfind("labels", 0) != 0) return std::nullopt;
    size_t pos = 6;
    while (pos < t.size() && std::isspace(static_cast<unsigned char>(t[pos]))) ++pos;
    if (pos >= t.size() || t[pos] != ':') return std::nullopt;
    std::string rest = t.substr(pos + 1);

    std::map<std::string, Assignment> assignments;
    for (const auto& piece : split(rest, ';')) {
        std::string frag = trim(piece);
        if (frag.empty()) continue;
        size_t eq = frag.find('=');
        if (eq == std::string::npos) continue;
        std::string key = lower(trim(frag.substr(0, eq)));
        std::string value = trim(frag.substr(eq + 1));
        if (key.empty()) continue;
        auto [it, inserted] = assignments.try_emplace(key, Assignment{value, frag});
        if (!inserted) {
            if (it->second.value != value) it->second.conflict = true;
            it->second.fragment += " | " + frag;
        }
    }
    return assignments;
}

}  // namespace

std::vector<core::Vote> parse_votes(const std::string& completion_text,
                                    const std::vector<std::string>& dimension_keys,
                                    int pass_index) {
    std::optional<std::map<std::string, Assignment>> found;
    for (const auto& line : split_lines(completion_text)) {
        if (auto m = match_labels_line(line)) found = std::move(m);
    }

    std::vector<core::Vote> votes;
    votes.reserve(dimension_keys.size());
    for (const auto& key : dimension_keys) {
        core::Vote v;
        v.pass_index = pass_index;
        if (found) {
            auto it = found->find(lower(key));
            if (it != found->end()) {
                v.raw_fragment = it->second.fragment;
                if (!it->second.conflict && (it->second.value == "0" || it->second.value == "1")) {
                    v.valid = true;
                    v.label = it->second.value == "1" ? core::Label::positive : core::Label::negative;
                }
            }
        }
        votes.push_back(std::move(v));
    }
    return votes;
}

}  // namespace annogate::provider

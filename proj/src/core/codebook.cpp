#include "annogate/core/codebook.hpp"

#include <set>

#include "annogate/error.hpp"
#include "annogate/util.hpp"

namespace annogate::core {

namespace {

// Drops leading and trailing blank lines, keeps interior structure.
std::string canonical_block(const std::vector<std::string>& lines, size_t begin, size_t end) {
    while (begin < end && trim(lines[begin]).empty()) ++begin;
    while (end > begin && trim(lines[end - 1]).empty()) --end;
    std::string out;
    for (size_t i = begin; i < end; ++i) {
        if (i > begin) out += '\n';
        out += lines[i];
    }
    return out;
}

}  // namespace

Codebook parse_codebook(const std::string& content) {
    auto lines = split_lines(content);
    Codebook cb;
    cb.version = 0;

    size_t i = 0;
    for (; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        if (line.rfind("## ", 0) == 0) break;
        std::string t = trim(line);
        if (t.empty()) continue;
        size_t colon = t.find(':');
        if (colon == std::string::npos)
            throw Error(Errc::malformed_row, "codebook header line '" + t + "' is not key: value");
        std::string key = trim(t.substr(0, colon));
        std::string value = trim(t.substr(colon + 1));
        if (key == "codebook_id") {
            cb.codebook_id = value;
        } else if (key == "version") {
            cb.version = std::stoi(value);
        } else if (key == "parent_version") {
            cb.parent_version = std::stoi(value);
        } else {
            throw Error(Errc::malformed_row, "unknown codebook header key '" + key + "'");
        }
    }

    bool saw_output = false;
    while (i < lines.size()) {
        std::string heading = trim(lines[i].substr(3));
        size_t body_begin = i + 1;
        size_t body_end = body_begin;
        while (body_end < lines.size() && lines[body_end].rfind("## ", 0) != 0) ++body_end;
        std::string body = canonical_block(lines, body_begin, body_end);

        if (heading == "PREAMBLE") {
            cb.preamble = body;
        } else if (heading == "OUTPUT") {
            cb.output_contract = body;
            saw_output = true;
        } else if (heading.rfind("DIMENSION ", 0) == 0) {
            std::string rest = trim(heading.substr(10));
            size_t bar = rest.find('|');
            Dimension d;
            d.key = trim(bar == std::string::npos ? rest : rest.substr(0, bar));
            d.name = bar == std::string::npos ? d.key : trim(rest.substr(bar + 1));
            d.definition = body;
            if (d.key.empty())
                throw Error(Errc::malformed_row, "DIMENSION section with empty key");
            cb.dimensions.push_back(std::move(d));
        } else {
            throw Error(Errc::malformed_row, "unknown codebook section '## " + heading + "'");
        }
        i = body_end;
    }

    if (!saw_output) throw Error(Errc::missing_output_contract, "codebook has no ## OUTPUT section");
    validate_codebook(cb);
    return cb;
}

Codebook load_codebook(const std::filesystem::path& path) {
    return parse_codebook(read_file(path));
}

void validate_codebook(const Codebook& cb) {
    if (cb.codebook_id.empty())
        throw Error(Errc::malformed_row, "codebook_id missing");
    if (cb.version < 1)
        throw Error(Errc::malformed_row, "codebook version must be a positive integer");
    if (cb.parent_version && *cb.parent_version >= cb.version)
        throw Error(Errc::version_conflict,
                    "parent_version must be smaller than version in codebook '" + cb.codebook_id + "'");
    if (cb.version == 1 && cb.parent_version)
        throw Error(Errc::version_conflict, "version 1 is the root and cannot name a parent");
    if (cb.version > 1 && !cb.parent_version)
        throw Error(Errc::version_conflict,
                    "version " + std::to_string(cb.version) + " must name its parent_version");
    if (cb.dimensions.empty()) throw Error(Errc::missing_dimension, "codebook defines no dimensions");
    std::set<std::string> keys;
    for (const auto& d : cb.dimensions)
        if (!keys.insert(d.key).second) throw Error(Errc::duplicate_dimension_key, d.key);
}

std::string serialize_codebook(const Codebook& cb) {
    std::string out;
    out += "codebook_id: " + cb.codebook_id + "\n";
    out += "version: " + std::to_string(cb.version) + "\n";
    if (cb.parent_version) out += "parent_version: " + std::to_string(*cb.parent_version) + "\n";
    out += "\n## PREAMBLE\n" + cb.preamble + "\n";
    for (const auto& d : cb.dimensions)
        out += "\n## DIMENSION " + d.key + " | " + d.name + "\n" + d.definition + "\n";
    out += "\n## OUTPUT\n" + cb.output_contract + "\n";
    return out;
}

void write_codebook(const std::filesystem::path& path, const Codebook& cb) {
    write_file(path, serialize_codebook(cb));
}

}  // namespace annogate::core

#include "annogate/core/corpus.hpp"

#include <set>

#include <nlohmann/json.hpp>

#include "annogate/error.hpp"
#include "annogate/util.hpp"

namespace annogate::core {

using nlohmann::json;

CorpusFormat corpus_format_from_string(const std::string& s) {
    if (s == "jsonl") return CorpusFormat::jsonl;
    if (s == "csv") return CorpusFormat::csv;
    throw Error(Errc::config_invalid, "unknown corpus format '" + s + "' (expected jsonl or csv)");
}

static void check_and_push(std::vector<TextSample>& out, std::set<std::string>& seen,
                           TextSample sample, size_t line_no) {
    if (sample.id.empty())
        throw Error(Errc::malformed_row, "line " + std::to_string(line_no) + ": empty id");
    if (trim(sample.text).empty())
        throw Error(Errc::malformed_row,
                    "line " + std::to_string(line_no) + ": empty text for id '" + sample.id + "'");
    if (!seen.insert(sample.id).second)
        throw Error(Errc::duplicate_id, sample.id);
    out.push_back(std::move(sample));
}

static std::vector<TextSample> load_jsonl(const std::string& content) {
    std::vector<TextSample> samples;
    std::set<std::string> seen;
    auto lines = split_lines(content);
    for (size_t i = 0; i < lines.size(); ++i) {
        size_t line_no = i + 1;
        if (trim(lines[i]).empty()) continue;
        json row = json::parse(lines[i], nullptr, false);
        if (row.is_discarded() || !row.is_object())
            throw Error(Errc::malformed_row, "line " + std::to_string(line_no) + ": not a JSON object");
        if (!row.contains("id") || !row["id"].is_string())
            throw Error(Errc::malformed_row, "line " + std::to_string(line_no) + ": missing string 'id'");
        if (!row.contains("text") || !row["text"].is_string())
            throw Error(Errc::malformed_row, "line " + std::to_string(line_no) + ": missing string 'text'");
        TextSample s;
        s.id = row["id"].get<std::string>();
        s.text = row["text"].get<std::string>();
        for (auto it = row.begin(); it != row.end(); ++it) {
            if (it.key() == "id" || it.key() == "text") continue;
            s.metadata[it.key()] =
                it.value().is_string() ? it.value().get<std::string>() : it.value().dump();
        }
        check_and_push(samples, seen, std::move(s), line_no);
    }
    return samples;
}

static std::vector<TextSample> load_csv(const std::string& content) {
    auto rows = csv_parse(content);
    if (rows.empty()) throw Error(Errc::empty_corpus, "no header row");
    const auto& header = rows[0];
    int id_col = -1, text_col = -1;
    for (size_t c = 0; c < header.size(); ++c) {
        if (header[c] == "id") id_col = static_cast<int>(c);
        if (header[c] == "text") text_col = static_cast<int>(c);
    }
    if (id_col < 0 || text_col < 0)
        throw Error(Errc::malformed_row, "header must include 'id' and 'text' columns");

    std::vector<TextSample> samples;
    std::set<std::string> seen;
    for (size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        size_t line_no = r + 1;
        if (row.size() != header.size())
            throw Error(Errc::malformed_row,
                        "line " + std::to_string(line_no) + ": expected " +
                            std::to_string(header.size()) + " fields, got " + std::to_string(row.size()));
        TextSample s;
        s.id = row[static_cast<size_t>(id_col)];
        s.text = row[static_cast<size_t>(text_col)];
        for (size_t c = 0; c < header.size(); ++c) {
            if (static_cast<int>(c) == id_col || static_cast<int>(c) == text_col) continue;
            s.metadata[header[c]] = row[c];
        }
        check_and_push(samples, seen, std::move(s), line_no);
    }
    return samples;
}

std::vector<TextSample> load_corpus(const std::filesystem::path& path, CorpusFormat format) {
    std::string content = read_file(path);
    auto samples = format == CorpusFormat::jsonl ? load_jsonl(content) : load_csv(content);
    if (samples.empty()) throw Error(Errc::empty_corpus, path.string());
    return samples;
}

std::string serialize_corpus_jsonl(const std::vector<TextSample>& samples) {
    std::string out;
    for (const auto& s : samples) {
        json row;
        row["id"] = s.id;
        row["text"] = s.text;
        for (const auto& [k, v] : s.metadata) row[k] = v;
        out += row.dump();
        out += '\n';
    }
    return out;
}

std::string serialize_corpus_csv(const std::vector<TextSample>& samples) {
    // Metadata keys are unioned so every row has the same width.
    std::set<std::string> meta_keys;
    for (const auto& s : samples)
        for (const auto& [k, v] : s.metadata) meta_keys.insert(k);
    std::vector<std::string> header = {"id", "text"};
    header.insert(header.end(), meta_keys.begin(), meta_keys.end());
    std::string out = csv_join(header) + "\n";
    for (const auto& s : samples) {
        std::vector<std::string> row = {s.id, s.text};
        for (const auto& k : meta_keys) {
            auto it = s.metadata.find(k);
            row.push_back(it == s.metadata.end() ? "" : it->second);
        }
        out += csv_join(row) + "\n";
    }
    return out;
}

void write_corpus(const std::filesystem::path& path, const std::vector<TextSample>& samples,
                  CorpusFormat format) {
    write_file(path, format == CorpusFormat::jsonl ? serialize_corpus_jsonl(samples)
                                                   : serialize_corpus_csv(samples));
}

}  // namespace annogate::core

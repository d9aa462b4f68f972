#include "annogate/core/gold.hpp"

#include <map>
#include <set>

#include "annogate/error.hpp"
#include "annogate/util.hpp"

namespace annogate::core {

std::vector<GoldRecord> parse_gold_csv(const std::string& content, const Codebook& codebook) {
    auto rows = csv_parse(content);
    if (rows.empty()) throw Error(Errc::malformed_row, "gold file has no header row");
    const auto& header = rows[0];

    std::map<std::string, size_t> col;
    for (size_t c = 0; c < header.size(); ++c) col[header[c]] = c;
    if (!col.count("sample_id"))
        throw Error(Errc::malformed_row, "gold header must include 'sample_id'");

    std::vector<std::pair<std::string, size_t>> dim_cols;
    std::vector<std::string> missing;
    for (const auto& d : codebook.dimensions) {
        auto it = col.find(d.key);
        if (it == col.end())
            missing.push_back(d.key);
        else
            dim_cols.emplace_back(d.key, it->second);
    }
    if (!missing.empty()) {
        std::string joined;
        for (const auto& k : missing) joined += (joined.empty() ? "" : ", ") + k;
        throw Error(Errc::incomplete_labels, "gold header missing dimension columns: " + joined);
    }

    std::vector<GoldRecord> records;
    std::set<std::string> seen;
    for (size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        size_t line_no = r + 1;
        if (row.size() != header.size())
            throw Error(Errc::malformed_row, "gold line " + std::to_string(line_no) +
                                                 ": field count does not match header");
        GoldRecord rec;
        rec.sample_id = row[col["sample_id"]];
        if (rec.sample_id.empty())
            throw Error(Errc::malformed_row, "gold line " + std::to_string(line_no) + ": empty sample_id");
        if (!seen.insert(rec.sample_id).second)
            throw Error(Errc::duplicate_id, "gold has two rows for sample '" + rec.sample_id + "'");
        for (const auto& [key, c] : dim_cols) {
            const std::string& cell = row[c];
            if (cell == "1")
                rec.labels[key] = Label::positive;
            else if (cell == "0")
                rec.labels[key] = Label::negative;
            else if (cell.empty())
                throw Error(Errc::incomplete_labels,
                            rec.sample_id + " missing label for dimension '" + key + "'");
            else
                throw Error(Errc::malformed_row, "gold line " + std::to_string(line_no) +
                                                     ": value '" + cell + "' for '" + key +
                                                     "' is not 0/1");
        }
        if (auto it = col.find("annotator_ids"); it != col.end() && !row[it->second].empty())
            rec.annotator_ids = split(row[it->second], ';');
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<GoldRecord> join_gold(const std::vector<TextSample>& corpus,
                                  const std::filesystem::path& gold_path,
                                  const Codebook& codebook) {
    auto records = parse_gold_csv(read_file(gold_path), codebook);
    std::set<std::string> corpus_ids;
    for (const auto& s : corpus) corpus_ids.insert(s.id);
    for (const auto& rec : records)
        if (!corpus_ids.count(rec.sample_id)) throw Error(Errc::unknown_sample_id, rec.sample_id);
    return records;
}

std::string serialize_gold_csv(const std::vector<GoldRecord>& records, const Codebook& codebook) {
    std::vector<std::string> header = {"sample_id"};
    for (const auto& d : codebook.dimensions) header.push_back(d.key);
    header.push_back("annotator_ids");
    std::string out = csv_join(header) + "\n";
    for (const auto& rec : records) {
        std::vector<std::string> row = {rec.sample_id};
        for (const auto& d : codebook.dimensions) {
            auto it = rec.labels.find(d.key);
            row.push_back(it == rec.labels.end() ? "" : label_cell(it->second));
        }
        std::string ann;
        for (size_t i = 0; i < rec.annotator_ids.size(); ++i)
            ann += (i ? ";" : "") + rec.annotator_ids[i];
        row.push_back(ann);
        out += csv_join(row) + "\n";
    }
    return out;
}

void write_gold_csv(const std::filesystem::path& path, const std::vector<GoldRecord>& records,
                    const Codebook& codebook) {
    write_file(path, serialize_gold_csv(records, codebook));
}

}  // namespace annogate::core

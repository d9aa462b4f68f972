#include "annogate/workflow/export.hpp"

#include <map>
#include <optional>

#include <nlohmann/json.hpp>

#include "annogate/error.hpp"
#include "annogate/util.hpp"

namespace annogate::workflow {

using nlohmann::json;

ExportFormat export_format_from_string(const std::string& s) {
    if (s == "csv") return ExportFormat::csv;
    if (s == "jsonl") return ExportFormat::jsonl;
    throw Error(Errc::config_invalid, "unknown export format '" + s + "'");
}

ExportResult export_training_data(const std::vector<core::TextSample>& corpus,
                                  const std::vector<core::AggregatedAnnotation>& aggregates,
                                  const core::Codebook& codebook, const std::string& run_id,
                                  const ExportOptions& options,
                                  const std::filesystem::path& out_path) {
    auto keys = codebook.dimension_keys();
    std::map<std::string, std::map<std::string, const core::AggregatedAnnotation*>> by_sample;
    for (const auto& a : aggregates) by_sample[a.sample_id][a.dimension_key] = &a;

    std::string body;
    if (options.format == ExportFormat::csv) {
        std::vector<std::string> header{"sample_id", "text"};
        header.insert(header.end(), keys.begin(), keys.end());
        header.insert(header.end(), {"consistency", "codebook_version", "run_id"});
        body = csv_join(header) + "\n";
    }

    std::int64_t rows = 0;
    for (const auto& sample : corpus) {
        auto s_it = by_sample.find(sample.id);
        if (s_it == by_sample.end()) continue;
        std::optional<Rational> min_consistency;
        std::vector<const core::AggregatedAnnotation*> dims;
        bool complete = true;
        for (const auto& key : keys) {
            auto d_it = s_it->second.find(key);
            if (d_it == s_it->second.end() || !d_it->second->resolved() ||
                !d_it->second->label || !d_it->second->consistency) {
                complete = false;
                break;
            }
            dims.push_back(d_it->second);
            if (!min_consistency || *d_it->second->consistency < *min_consistency)
                min_consistency = *d_it->second->consistency;
        }
        if (!complete || *min_consistency < options.min_consistency) continue;

        ++rows;
        if (options.format == ExportFormat::csv) {
            std::vector<std::string> row{sample.id, sample.text};
            for (const auto* a : dims) row.push_back(core::label_cell(*a->label));
            row.push_back(min_consistency->decimals(6));
            row.push_back(std::to_string(codebook.version));
            row.push_back(run_id);
            body += csv_join(row) + "\n";
        } else {
            json labels = json::object();
            for (size_t i = 0; i < keys.size(); ++i)
                labels[keys[i]] = *dims[i]->label == core::Label::positive ? 1 : 0;
            json j;
            j["sample_id"] = sample.id;
            j["text"] = sample.text;
            j["labels"] = std::move(labels);
            j["consistency"] = std::stod(min_consistency->decimals(6));
            j["codebook_version"] = codebook.version;
            j["run_id"] = run_id;
            body += j.dump() + "\n";
        }
    }

    write_file(out_path, body);
    return {rows, out_path};
}

}  // namespace annogate::workflow

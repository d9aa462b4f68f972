#pragma once

#include <filesystem>
#include <string>

namespace annogate::workflow {

// On-disk project state. Everything the workflow persists between CLI
// invocations lives under one root.
struct StateDir {
    std::filesystem::path root;

    std::filesystem::path codebooks() const { return root / "codebooks"; }
    std::filesystem::path splits() const { return root / "splits"; }
    std::filesystem::path split_file() const { return splits() / "split.json"; }
    std::filesystem::path runs() const { return root / "runs"; }
    std::filesystem::path run_dir(const std::string& run_id) const { return runs() / run_id; }
    std::filesystem::path ledger_file() const { return root / "ledger.json"; }
    std::filesystem::path reports() const { return root / "reports"; }
    std::filesystem::path lock_file() const { return root / "lock"; }

    void ensure_layout() const {
        std::filesystem::create_directories(codebooks());
        std::filesystem::create_directories(splits());
        std::filesystem::create_directories(runs());
        std::filesystem::create_directories(reports());
    }
};

}  // namespace annogate::workflow

#include "annogate/provider/sim_provider.hpp"

#include "annogate/error.hpp"
#include "annogate/util.hpp"

namespace annogate::provider {

CompletionResult simulate_completion(const std::string& sample_id,
                                     const std::map<std::string, core::Label>& truth,
                                     const std::map<std::string, double>& correctness_by_dim,
                                     double default_correctness, std::uint64_t seed,
                                     int pass_index) {
    std::string line = "LABELS: ";
    bool first = true;
    for (const auto& [key, true_label] : truth) {
        double p = default_correctness;
        if (auto it = correctness_by_dim.find(key); it != correctness_by_dim.end()) p = it->second;
        double draw = unit_draw(cell_key(seed, sample_id, key, pass_index));
        core::Label emitted =
            draw < p ? true_label
                     : (true_label == core::Label::positive ? core::Label::negative
                                                            : core::Label::positive);
        if (!first) line += "; ";
        line += key;
        line += '=';
        line += core::label_cell(emitted);
        first = false;
    }

    CompletionResult out;
    out.text = line;
    out.output_tokens = approx_tokens(out.text);
    out.attempt_count = 1;
    return out;
}

CompletionResult SimulatedProvider::complete(const CompletionRequest& request) {
    auto it = truth_.find(request.sample_id);
    if (it == truth_.end())
        throw Error(Errc::endpoint_error, "no simulated truth for sample '" + request.sample_id + "'");

    double p = default_correctness_;
    if (auto sp = correctness_by_sample_.find(request.sample_id); sp != correctness_by_sample_.end())
        p = sp->second;

    auto out = simulate_completion(request.sample_id, it->second, correctness_by_dim_, p, seed_,
                                   request.pass_index);
    out.input_tokens =
        approx_tokens(request.bundle.system_text) + approx_tokens(request.bundle.user_text);
    return out;
}

}  // namespace annogate::provider

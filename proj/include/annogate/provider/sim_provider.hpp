#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "annogate/provider/types.hpp"

namespace annogate::provider {

// Emits a contract-conformant LABELS line where each dimension independently
// matches its true label with probability p and flips otherwise. The draw for
// a given (seed, sample, dimension, pass) cell is fixed regardless of call
// order or thread interleaving.
CompletionResult simulate_completion(const std::string& sample_id,
                                     const std::map<std::string, core::Label>& truth,
                                     const std::map<std::string, double>& correctness_by_dim,
                                     double default_correctness, std::uint64_t seed,
                                     int pass_index);

class SimulatedProvider : public CompletionProvider {
public:
    SimulatedProvider(std::map<std::string, std::map<std::string, core::Label>> truth_by_sample,
                      double default_correctness, std::uint64_t seed)
        : truth_(std::move(truth_by_sample)),
          default_correctness_(default_correctness),
          seed_(seed) {}

    void set_dimension_correctness(std::string dimension_key, double p) {
        correctness_by_dim_[std::move(dimension_key)] = p;
    }
    void set_sample_correctness(std::string sample_id, double p) {
        correctness_by_sample_[std::move(sample_id)] = p;
    }

    CompletionResult complete(const CompletionRequest& request) override;

private:
    std::map<std::string, std::map<std::string, core::Label>> truth_;
    std::map<std::string, double> correctness_by_dim_;
    std::map<std::string, double> correctness_by_sample_;
    double default_correctness_;
    std::uint64_t seed_;
};

}  // namespace annogate::provider

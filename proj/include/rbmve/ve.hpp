#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "rbmve/dataset.hpp"
#include "rbmve/rbm.hpp"

namespace rbmve {

struct VeConfig {
    std::size_t n_candidates = 5000;
    std::optional<double> tolerance;  // nullopt = auto (training-data MSE)
    std::size_t oscillations = 1;
    std::uint64_t seed = 0;
};

struct VeResult {
    Dataset virtual_examples;                  // the accepted reconstructions
    std::vector<std::size_t> accepted_indices; // rows of the candidate set
    std::vector<double> candidate_errors;      // SSE per candidate
    double tolerance_used = 0.0;
};

/// n x dims matrix of independent Uniform[0,1) draws, filled row-major.
Dataset sample_uniform(std::size_t n, std::size_t dims, std::uint64_t seed);

/// The paper's tolerance choice: reconstruction MSE of the training data.
/// Throws DegenerateToleranceError when that MSE is zero (the filter would
/// accept nothing but exact fixed points).
double auto_tolerance(const Rbm& model, const Dataset& training_data);

/// Runs each candidate through `oscillations` reconstruction passes and
/// keeps those whose SSE against the original candidate is <= tolerance
/// (ties accepted). The stored virtual example is the reconstruction, not
/// the raw candidate. Candidate order is preserved among accepted rows.
VeResult generate_virtual_examples(const Rbm& model, const Dataset& candidates,
                                   double tolerance,
                                   std::size_t oscillations = 1);

}  // namespace rbmve

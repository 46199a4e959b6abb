#include "rbmve/ve.hpp"

#include <cmath>
#include <string>

#include "rbmve/errors.hpp"
#include "rbmve/rng.hpp"

namespace rbmve {

Dataset sample_uniform(std::size_t n, std::size_t dims, std::uint64_t seed) {
    if (n < 1 || dims < 1) {
        throw InvalidInputError("need at least one candidate row and one dimension");
    }
    Rng rng(seed);
    Dataset out(n, dims);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t d = 0; d < dims; ++d) {
            out(r, d) = rng.uniform();
        }
    }
    return out;
}

double auto_tolerance(const Rbm& model, const Dataset& training_data) {
    const double mse = dataset_mse(model, training_data);
    if (mse == 0.0) {
        throw DegenerateToleranceError(
            "training reconstruction MSE is zero; the tolerance filter is undefined");
    }
    return mse;
}

VeResult generate_virtual_examples(const Rbm& model, const Dataset& candidates,
                                   double tolerance, std::size_t oscillations) {
    if (candidates.dims() != model.n_visible()) {
        throw DimensionError("candidate width " + std::to_string(candidates.dims()) +
                             " does not match model visible size " +
                             std::to_string(model.n_visible()));
    }
    if (!std::isfinite(tolerance) || tolerance <= 0.0) {
        throw ToleranceError("tolerance must be positive and finite, got " +
                             std::to_string(tolerance));
    }
    if (oscillations < 1) {
        throw InvalidInputError("need at least one oscillation");
    }

    Dataset recon = reconstruct(model, candidates);
    for (std::size_t k = 1; k < oscillations; ++k) {
        recon = reconstruct(model, recon);
    }

    VeResult result;
    result.tolerance_used = tolerance;
    result.candidate_errors.resize(candidates.rows());
    result.virtual_examples = Dataset(0, candidates.dims());
    for (std::size_t r = 0; r < candidates.rows(); ++r) {
        const double err = per_example_sse(candidates.row(r), recon.row(r));
        result.candidate_errors[r] = err;
        if (err <= tolerance) {
            result.accepted_indices.push_back(r);
            result.virtual_examples.append_row(recon.row(r));
        }
    }
    return result;
}

}  // namespace rbmve

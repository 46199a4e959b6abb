#pragma once

#include <string_view>

#include "rbmve/dataset.hpp"
#include "rbmve/rbm.hpp"

namespace rbmve {

/// Three-way reading of an ADM ratio:
///   (0, 1]  same probability distribution as the training data
///   (1, 2)  similar or partial space of the training data
///   [2, inf) increasingly different distribution
/// An ADM of exactly 0 (perfect test reconstruction) is reported as
/// SameDistribution; zero error cannot signal divergence.
enum class AdmBand { SameDistribution, SimilarPartial, Different };

std::string_view to_string(AdmBand band);
AdmBand band_from_string(std::string_view text);

struct AdmValue {
    double mse_trn;
    double mse_tst;
    double adm;  // mse_tst / mse_trn, unrounded
    AdmBand band;
};

/// Throws InvalidInputError on NaN/negative/non-finite input.
AdmBand classify_band(double adm);

/// ADM = mse_tst / mse_trn. Throws DegenerateToleranceError when
/// mse_trn == 0 and InvalidInputError on NaN/negative input.
AdmValue compute_adm(double mse_tst, double mse_trn);

/// ADM of `test_data` against `training_data`, both reconstructed through
/// the same trained model.
AdmValue adm_between(const Rbm& model, const Dataset& training_data,
                     const Dataset& test_data);

}  // namespace rbmve

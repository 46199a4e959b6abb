#include "rbmve/adm.hpp"

#include <cmath>
#include <string>

#include "rbmve/errors.hpp"

namespace rbmve {

std::string_view to_string(AdmBand band) {
    switch (band) {
        case AdmBand::SameDistribution: return "same-distribution";
        case AdmBand::SimilarPartial: return "similar-partial";
        case AdmBand::Different: return "different";
    }
    throw InvalidInputError("unknown band value");
}

AdmBand band_from_string(std::string_view text) {
    if (text == "same-distribution") return AdmBand::SameDistribution;
    if (text == "similar-partial") return AdmBand::SimilarPartial;
    if (text == "different") return AdmBand::Different;
    throw InvalidInputError("unknown band name '" + std::string(text) + "'");
}

AdmBand classify_band(double adm) {
    if (std::isnan(adm) || adm < 0.0 || std::isinf(adm)) {
        throw InvalidInputError("ADM must be a finite non-negative value");
    }
    if (adm <= 1.0) return AdmBand::SameDistribution;
    if (adm < 2.0) return AdmBand::SimilarPartial;
    return AdmBand::Different;
}

AdmValue compute_adm(double mse_tst, double mse_trn) {
    if (std::isnan(mse_tst) || std::isnan(mse_trn) || mse_tst < 0.0 ||
        mse_trn < 0.0 || std::isinf(mse_tst) || std::isinf(mse_trn)) {
        throw InvalidInputError("reconstruction MSEs must be finite and non-negative");
    }
    if (mse_trn == 0.0) {
        throw DegenerateToleranceError(
            "training reconstruction MSE is zero; ADM is undefined");
    }
    const double adm = mse_tst / mse_trn;
    return {mse_trn, mse_tst, adm, classify_band(adm)};
}

AdmValue adm_between(const Rbm& model, const Dataset& training_data,
                     const Dataset& test_data) {
    return compute_adm(dataset_mse(model, test_data),
                       dataset_mse(model, training_data));
}

}  // namespace rbmve

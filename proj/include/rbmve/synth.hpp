#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "rbmve/dataset.hpp"

namespace rbmve {

/// One uniform interval of a per-dimension mixture.
struct Mode {
    double low;
    double high;
    double weight;

    bool operator==(const Mode&) const = default;
};

/// Per-dimension mixture of uniform intervals inside [0, 1]. Weights are
/// normalised to sum to one at construction.
class DistributionSpec {
public:
    /// Throws InvalidSpecError unless every dimension has at least one mode,
    /// every mode has 0 <= low < high <= 1 and a positive finite weight.
    explicit DistributionSpec(std::vector<std::vector<Mode>> modes_per_dim);

    /// The stock 4-D spec used by the bundled experiment: 2/3/2/4 modes per
    /// dimension, every interval 0.1 wide, evenly spaced, equal weights.
    /// configs/default4d.json is this spec on disk.
    static DistributionSpec default_4d();

    /// JSON form: { "dims": [ [ {"low","high","weight"}, ... ], ... ] }.
    static DistributionSpec from_json_string(const std::string& text);
    std::string to_json_string() const;
    static DistributionSpec load(const std::filesystem::path& path);
    void save(const std::filesystem::path& path) const;

    std::size_t dims() const { return modes_.size(); }
    const std::vector<Mode>& modes(std::size_t dim) const {
        return modes_[dim];
    }

    bool operator==(const DistributionSpec&) const = default;

private:
    std::vector<std::vector<Mode>> modes_;
};

/// Draws n rows with independent dimensions: per dimension one uniform draw
/// picks a mode by weight, a second places the value inside its interval.
/// Consumption order is row-major over (row, dimension).
Dataset generate_synthetic(const DistributionSpec& spec, std::size_t n,
                           std::uint64_t seed);

/// Headerless comma-separated reals, one dataset row per newline-terminated
/// line, numbers printed with round-trip-exact shortest formatting so that
/// load(save(d)) == d bit for bit.
void save_csv(const Dataset& data, const std::filesystem::path& path);
Dataset load_csv(const std::filesystem::path& path);

struct DimHistogram {
    std::vector<double> edges;        // n_bins + 1 uniform edges over [0, 1]
    std::vector<std::size_t> counts;  // sum to the dataset row count
    std::vector<double> density;      // count / (N * bin_width)
};

struct HistogramSet {
    std::size_t n_bins = 0;
    std::vector<DimHistogram> per_dim;
};

/// Uniform bins over [0, 1], right-open except the last which closes at 1.0.
/// Throws EmptyDatasetError / InvalidInputError (n_bins < 2).
HistogramSet compute_histograms(const Dataset& data, std::size_t n_bins);

/// CSV with header row: dim,bin_low,bin_high,count,density.
void save_histograms_csv(const HistogramSet& hist,
                         const std::filesystem::path& path);

}  // namespace rbmve

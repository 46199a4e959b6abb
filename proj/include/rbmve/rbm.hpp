#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "rbmve/dataset.hpp"
#include "rbmve/rng.hpp"

namespace rbmve {

/// Restricted Boltzmann Machine parameters. Weights are row-major,
/// n_visible x n_hidden. All parameters are kept finite; validate() is run
/// after every operation that brings parameters in from outside.
class Rbm {
public:
    /// Zero-initialised model of the given shape.
    Rbm(std::size_t n_visible, std::size_t n_hidden);

    std::size_t n_visible() const { return n_visible_; }
    std::size_t n_hidden() const { return n_hidden_; }

    double weight(std::size_t i, std::size_t j) const {
        return weights_[i * n_hidden_ + j];
    }
    double& weight(std::size_t i, std::size_t j) {
        return weights_[i * n_hidden_ + j];
    }

    std::vector<double>& weights() { return weights_; }
    const std::vector<double>& weights() const { return weights_; }
    std::vector<double>& visible_bias() { return visible_bias_; }
    const std::vector<double>& visible_bias() const { return visible_bias_; }
    std::vector<double>& hidden_bias() { return hidden_bias_; }
    const std::vector<double>& hidden_bias() const { return hidden_bias_; }

    /// Throws InvalidInputError if any parameter is NaN/Inf or a buffer has
    /// drifted out of shape.
    void validate() const;

    bool operator==(const Rbm&) const = default;

private:
    std::size_t n_visible_;
    std::size_t n_hidden_;
    std::vector<double> weights_;
    std::vector<double> visible_bias_;
    std::vector<double> hidden_bias_;
};

struct TrainConfig {
    std::size_t epochs = 500;
    double learning_rate = 0.1;
    std::size_t batch_size = 10;
    double weight_init_stddev = 0.01;
    std::uint64_t seed = 0;
};

struct TrainResult {
    Rbm model;
    std::vector<double> mse_trace;  // dataset_mse after each epoch
};

/// Logistic function, strictly inside (0, 1) for finite input.
double sigmoid(double x);

/// sigmoid(W^T v + hidden_bias), elementwise. Throws DimensionError if v
/// does not have n_visible entries.
std::vector<double> hidden_activations(const Rbm& model,
                                       std::span<const double> visible);

/// sigmoid(W h + visible_bias), elementwise. Throws DimensionError if h
/// does not have n_hidden entries.
std::vector<double> visible_reconstruction(const Rbm& model,
                                           std::span<const double> hidden);

/// One oscillation: visible -> hidden -> visible, mean-field probabilities
/// at both layers, no sampling. Deterministic; output entries in (0, 1).
Dataset reconstruct(const Rbm& model, const Dataset& data);

/// Sum over dimensions of squared differences.
double per_example_sse(std::span<const double> x, std::span<const double> r);

/// Mean over examples of per-example SSE against the one-oscillation
/// reconstruction. Throws EmptyDatasetError for a zero-row dataset.
double dataset_mse(const Rbm& model, const Dataset& data);

/// One CD-1 update on rows [row_begin, row_end). The whole chain runs on
/// mean-field probabilities: p = sigmoid(W^T v + c), v' = sigmoid(W p + b),
/// p' = sigmoid(W^T v' + c), then
///   W += (lr/m) * sum(v p^T - v' p'^T)
///   b += (lr/m) * sum(v - v')
///   c += (lr/m) * sum(p - p')
/// with m the number of rows in the slice.
void cd1_minibatch(Rbm& model, const Dataset& data, std::size_t row_begin,
                   std::size_t row_end, double learning_rate);

/// Trains a fresh model with CD-1. Weights start from a zero-mean Gaussian
/// with config.weight_init_stddev (drawn row-major over the weight matrix,
/// two uniform draws per weight; see Rng), biases start at zero. Mini-batches
/// are contiguous slices of `data` in row order, the final short batch
/// included; the update itself consumes no randomness, so a seed fixes the
/// run bit-for-bit. Throws EmptyDatasetError / InvalidConfigError.
TrainResult train_cd1(const Dataset& data, std::size_t n_hidden,
                      const TrainConfig& config);

/// Model serialization: JSON document
///   { "version": 1, "n_visible", "n_hidden",
///     "weights" (n_visible rows of n_hidden), "visible_bias", "hidden_bias" }
/// with numbers at full round-trip precision.
std::string model_to_json_string(const Rbm& model);
Rbm model_from_json_string(const std::string& text);
void save_model(const Rbm& model, const std::filesystem::path& path);
Rbm load_model(const std::filesystem::path& path);

}  // namespace rbmve

#include "rbmve/rbm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "rbmve/errors.hpp"

namespace rbmve {

Rbm::Rbm(std::size_t n_visible, std::size_t n_hidden)
    : n_visible_(n_visible),
      n_hidden_(n_hidden),
      weights_(n_visible * n_hidden, 0.0),
      visible_bias_(n_visible, 0.0),
      hidden_bias_(n_hidden, 0.0) {
    if (n_visible < 1 || n_hidden < 1) {
        throw InvalidInputError("model needs at least one visible and one hidden unit");
    }
}

void Rbm::validate() const {
    if (weights_.size() != n_visible_ * n_hidden_ ||
        visible_bias_.size() != n_visible_ || hidden_bias_.size() != n_hidden_) {
        throw InvalidInputError("model parameter buffers do not match its shape");
    }
    auto finite = [](const std::vector<double>& v) {
        return std::all_of(v.begin(), v.end(),
                           [](double x) { return std::isfinite(x); });
    };
    if (!finite(weights_) || !finite(visible_bias_) || !finite(hidden_bias_)) {
        throw InvalidInputError("model contains non-finite parameters");
    }
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

std::vector<double> hidden_activations(const Rbm& model,
                                       std::span<const double> visible) {
    if (visible.size() != model.n_visible()) {
        throw DimensionError("visible vector has " + std::to_string(visible.size()) +
                             " entries, model expects " +
                             std::to_string(model.n_visible()));
    }
    std::vector<double> h(model.n_hidden());
    for (std::size_t j = 0; j < model.n_hidden(); ++j) {
        double a = model.hidden_bias()[j];
        for (std::size_t i = 0; i < model.n_visible(); ++i) {
            a += model.weight(i, j) * visible[i];
        }
        h[j] = sigmoid(a);
    }
    return h;
}

std::vector<double> visible_reconstruction(const Rbm& model,
                                           std::span<const double> hidden) {
    if (hidden.size() != model.n_hidden()) {
        throw DimensionError("hidden vector has " + std::to_string(hidden.size()) +
                             " entries, model expects " +
                             std::to_string(model.n_hidden()));
    }
    std::vector<double> v(model.n_visible());
    for (std::size_t i = 0; i < model.n_visible(); ++i) {
        double a = model.visible_bias()[i];
        for (std::size_t j = 0; j < model.n_hidden(); ++j) {
            a += model.weight(i, j) * hidden[j];
        }
        v[i] = sigmoid(a);
    }
    return v;
}

Dataset reconstruct(const Rbm& model, const Dataset& data) {
    if (data.dims() != model.n_visible()) {
        throw DimensionError("dataset width " + std::to_string(data.dims()) +
                             " does not match model visible size " +
                             std::to_string(model.n_visible()));
    }
    Dataset out(data.rows(), data.dims());
    for (std::size_t r = 0; r < data.rows(); ++r) {
        const auto h = hidden_activations(model, data.row(r));
        const auto v = visible_reconstruction(model, h);
        std::copy(v.begin(), v.end(), out.row(r).begin());
    }
    return out;
}

double per_example_sse(std::span<const double> x, std::span<const double> r) {
    if (x.size() != r.size()) {
        throw DimensionError("SSE over vectors of lengths " +
                             std::to_string(x.size()) + " and " +
                             std::to_string(r.size()));
    }
    double sse = 0.0;
    for (std::size_t d = 0; d < x.size(); ++d) {
        const double diff = x[d] - r[d];
        sse += diff * diff;
    }
    return sse;
}

double dataset_mse(const Rbm& model, const Dataset& data) {
    if (data.empty()) {
        throw EmptyDatasetError("reconstruction MSE of an empty dataset");
    }
    const Dataset recon = reconstruct(model, data);
    double total = 0.0;
    for (std::size_t r = 0; r < data.rows(); ++r) {
        total += per_example_sse(data.row(r), recon.row(r));
    }
    return total / static_cast<double>(data.rows());
}

void cd1_minibatch(Rbm& model, const Dataset& data, std::size_t row_begin,
                   std::size_t row_end, double learning_rate) {
    if (row_begin >= row_end || row_end > data.rows()) {
        throw InvalidInputError("mini-batch rows [" + std::to_string(row_begin) +
                                ", " + std::to_string(row_end) +
                                ") out of range for " + std::to_string(data.rows()) +
                                " rows");
    }
    const std::size_t nv = model.n_visible();
    const std::size_t nh = model.n_hidden();
    const std::size_t m = row_end - row_begin;

    std::vector<double> dw(nv * nh, 0.0);
    std::vector<double> db(nv, 0.0);
    std::vector<double> dc(nh, 0.0);

    for (std::size_t r = row_begin; r < row_end; ++r) {
        const auto v = data.row(r);
        const auto p = hidden_activations(model, v);
        const auto vn = visible_reconstruction(model, p);
        const auto pn = hidden_activations(model, vn);
        for (std::size_t i = 0; i < nv; ++i) {
            for (std::size_t j = 0; j < nh; ++j) {
                dw[i * nh + j] += v[i] * p[j] - vn[i] * pn[j];
            }
            db[i] += v[i] - vn[i];
        }
        for (std::size_t j = 0; j < nh; ++j) {
            dc[j] += p[j] - pn[j];
        }
    }

    const double step = learning_rate / static_cast<double>(m);
    for (std::size_t k = 0; k < nv * nh; ++k) model.weights()[k] += step * dw[k];
    for (std::size_t i = 0; i < nv; ++i) model.visible_bias()[i] += step * db[i];
    for (std::size_t j = 0; j < nh; ++j) model.hidden_bias()[j] += step * dc[j];
}

TrainResult train_cd1(const Dataset& data, std::size_t n_hidden,
                      const TrainConfig& config) {
    if (data.empty()) {
        throw EmptyDatasetError("cannot train on an empty dataset");
    }
    if (n_hidden < 1) {
        throw InvalidConfigError("n_hidden must be at least 1");
    }
    if (config.epochs < 1 || config.batch_size < 1) {
        throw InvalidConfigError("epochs and batch_size must be at least 1");
    }
    if (!std::isfinite(config.learning_rate) || config.learning_rate < 0.0) {
        throw InvalidConfigError("learning_rate must be finite and non-negative");
    }
    if (!std::isfinite(config.weight_init_stddev) ||
        config.weight_init_stddev <= 0.0) {
        throw InvalidConfigError("weight_init_stddev must be finite and positive");
    }

    Rbm model(data.dims(), n_hidden);
    Rng rng(config.seed);
    for (std::size_t k = 0; k < data.dims() * n_hidden; ++k) {
        model.weights()[k] = config.weight_init_stddev * rng.gaussian();
    }

    TrainResult result{std::move(model), {}};
    result.mse_trace.reserve(config.epochs);
    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        for (std::size_t start = 0; start < data.rows(); start += config.batch_size) {
            const std::size_t end = std::min(start + config.batch_size, data.rows());
            cd1_minibatch(result.model, data, start, end, config.learning_rate);
        }
        result.mse_trace.push_back(dataset_mse(result.model, data));
    }
    result.model.validate();
    return result;
}

// --- model serialization ----------------------------------------------

std::string model_to_json_string(const Rbm& model) {
    nlohmann::json j;
    j["version"] = 1;
    j["n_visible"] = model.n_visible();
    j["n_hidden"] = model.n_hidden();
    auto rows = nlohmann::json::array();
    for (std::size_t i = 0; i < model.n_visible(); ++i) {
        auto row = nlohmann::json::array();
        for (std::size_t k = 0; k < model.n_hidden(); ++k) {
            row.push_back(model.weight(i, k));
        }
        rows.push_back(std::move(row));
    }
    j["weights"] = std::move(rows);
    j["visible_bias"] = model.visible_bias();
    j["hidden_bias"] = model.hidden_bias();
    return j.dump(2) + "\n";
}

Rbm model_from_json_string(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("model JSON: ") + e.what(), 0, 0);
    }
    try {
        if (j.at("version").get<int>() != 1) {
            throw InvalidInputError("unsupported model version");
        }
        const auto nv = j.at("n_visible").get<std::size_t>();
        const auto nh = j.at("n_hidden").get<std::size_t>();
        Rbm model(nv, nh);
        const auto& rows = j.at("weights");
        if (rows.size() != nv) {
            throw DimensionError("model JSON: expected " + std::to_string(nv) +
                                 " weight rows, got " + std::to_string(rows.size()));
        }
        for (std::size_t i = 0; i < nv; ++i) {
            const auto& row = rows[i];
            if (row.size() != nh) {
                throw DimensionError("model JSON: weight row " + std::to_string(i + 1) +
                                     " has " + std::to_string(row.size()) +
                                     " entries, expected " + std::to_string(nh));
            }
            for (std::size_t k = 0; k < nh; ++k) {
                model.weight(i, k) = row[k].get<double>();
            }
        }
        model.visible_bias() = j.at("visible_bias").get<std::vector<double>>();
        model.hidden_bias() = j.at("hidden_bias").get<std::vector<double>>();
        model.validate();
        return model;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("model JSON: ") + e.what(), 0, 0);
    }
}

void save_model(const Rbm& model, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << model_to_json_string(model);
    if (!out) {
        throw IoError("failed while writing " + path.string());
    }
}

Rbm load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open model file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return model_from_json_string(buf.str());
}

}  // namespace rbmve

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <string>
#include <vector>

#include "rbmve/adm.hpp"
#include "rbmve/errors.hpp"
#include "rbmve/experiment.hpp"
#include "rbmve/rbm.hpp"
#include "rbmve/synth.hpp"
#include "rbmve/ve.hpp"

namespace py = pybind11;
using namespace rbmve;

namespace {

using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

Dataset dataset_from_array(const DoubleArray& array) {
    if (array.ndim() != 2) {
        throw DimensionError("expected a 2-D array of shape (rows, dims)");
    }
    const auto rows = static_cast<std::size_t>(array.shape(0));
    const auto dims = static_cast<std::size_t>(array.shape(1));
    std::vector<double> values(rows * dims);
    std::memcpy(values.data(), array.data(), rows * dims * sizeof(double));
    return Dataset::from_values(rows, dims, std::move(values));
}

py::array_t<double> array_from_dataset(const Dataset& data) {
    py::array_t<double> out({data.rows(), data.dims()});
    std::memcpy(out.mutable_data(), data.values().data(),
                data.values().size() * sizeof(double));
    return out;
}

py::array_t<double> vector_to_array(const std::vector<double>& values) {
    py::array_t<double> out(values.size());
    std::memcpy(out.mutable_data(), values.data(), values.size() * sizeof(double));
    return out;
}

std::vector<double> array_to_vector(const DoubleArray& array) {
    if (array.ndim() != 1) {
        throw DimensionError("expected a 1-D array");
    }
    return {array.data(), array.data() + array.shape(0)};
}

py::array_t<double> weights_to_array(const Rbm& model) {
    py::array_t<double> out({model.n_visible(), model.n_hidden()});
    std::memcpy(out.mutable_data(), model.weights().data(),
                model.weights().size() * sizeof(double));
    return out;
}

}  // namespace

PYBIND11_MODULE(_rbmve, m) {
    m.doc() = "RBM virtual-example generation and reconstruction-error "
              "distribution scoring";

    py::register_exception<Error>(m, "Error");

    py::enum_<AdmBand>(m, "AdmBand")
        .value("SameDistribution", AdmBand::SameDistribution)
        .value("SimilarPartial", AdmBand::SimilarPartial)
        .value("Different", AdmBand::Different);

    py::class_<Rbm>(m, "Rbm")
        .def_property_readonly("n_visible", &Rbm::n_visible)
        .def_property_readonly("n_hidden", &Rbm::n_hidden)
        .def_property_readonly("weights", &weights_to_array)
        .def_property_readonly("visible_bias",
                               [](const Rbm& model) {
                                   return vector_to_array(model.visible_bias());
                               })
        .def_property_readonly("hidden_bias",
                               [](const Rbm& model) {
                                   return vector_to_array(model.hidden_bias());
                               })
        .def("save", [](const Rbm& model, const std::string& path) {
            save_model(model, path);
        }, py::arg("path"))
        .def_static("load", [](const std::string& path) { return load_model(path); },
                    py::arg("path"))
        .def("to_json", &model_to_json_string)
        .def_static("from_json", &model_from_json_string, py::arg("text"))
        .def("__eq__", [](const Rbm& a, const Rbm& b) { return a == b; })
        .def("__repr__", [](const Rbm& model) {
            return "<Rbm " + std::to_string(model.n_visible()) + "x" +
                   std::to_string(model.n_hidden()) + ">";
        });

    py::class_<TrainResult>(m, "TrainResult")
        .def_readonly("model", &TrainResult::model)
        .def_property_readonly("mse_trace", [](const TrainResult& result) {
            return vector_to_array(result.mse_trace);
        });

    py::class_<VeResult>(m, "VeResult")
        .def_property_readonly("virtual_examples",
                               [](const VeResult& result) {
                                   return array_from_dataset(result.virtual_examples);
                               })
        .def_readonly("accepted_indices", &VeResult::accepted_indices)
        .def_property_readonly("candidate_errors",
                               [](const VeResult& result) {
                                   return vector_to_array(result.candidate_errors);
                               })
        .def_readonly("tolerance_used", &VeResult::tolerance_used);

    py::class_<AdmValue>(m, "AdmValue")
        .def_readonly("mse_trn", &AdmValue::mse_trn)
        .def_readonly("mse_tst", &AdmValue::mse_tst)
        .def_readonly("adm", &AdmValue::adm)
        .def_readonly("band", &AdmValue::band)
        .def("__repr__", [](const AdmValue& value) {
            return "<AdmValue adm=" + std::to_string(value.adm) + " band=" +
                   std::string(to_string(value.band)) + ">";
        });

    py::class_<DistributionSpec>(m, "DistributionSpec")
        .def_static("default_4d", &DistributionSpec::default_4d)
        .def_static("from_json", &DistributionSpec::from_json_string, py::arg("text"))
        .def_static("load", [](const std::string& path) {
            return DistributionSpec::load(path);
        }, py::arg("path"))
        .def("to_json", &DistributionSpec::to_json_string)
        .def("save", [](const DistributionSpec& spec, const std::string& path) {
            spec.save(path);
        }, py::arg("path"))
        .def_property_readonly("dims", &DistributionSpec::dims)
        .def("modes", [](const DistributionSpec& spec, std::size_t dim) {
            if (dim >= spec.dims()) throw DimensionError("dimension out of range");
            py::list out;
            for (const auto& mode : spec.modes(dim)) {
                out.append(py::make_tuple(mode.low, mode.high, mode.weight));
            }
            return out;
        }, py::arg("dim"))
        .def("__eq__", [](const DistributionSpec& a, const DistributionSpec& b) {
            return a == b;
        });

    py::class_<ExperimentReport>(m, "ExperimentReport")
        .def_readonly("mse_trn", &ExperimentReport::mse_trn)
        .def_readonly("tolerance_used", &ExperimentReport::tolerance_used)
        .def_readonly("n_candidates", &ExperimentReport::n_candidates)
        .def_readonly("n_accepted", &ExperimentReport::n_accepted)
        .def_readonly("mse_ve", &ExperimentReport::mse_ve)
        .def_readonly("adm", &ExperimentReport::adm)
        .def_readonly("band", &ExperimentReport::band)
        .def_property_readonly("mse_trace", [](const ExperimentReport& report) {
            return vector_to_array(report.mse_trace);
        })
        .def_readonly("seed", &ExperimentReport::seed)
        .def("to_json", &report_to_json_string);

    m.def("sigmoid", &sigmoid, py::arg("x"));

    m.def("reconstruct", [](const Rbm& model, const DoubleArray& data) {
        return array_from_dataset(reconstruct(model, dataset_from_array(data)));
    }, py::arg("model"), py::arg("data"),
       "One mean-field oscillation of every row: visible -> hidden -> visible.");

    m.def("hidden_activations", [](const Rbm& model, const DoubleArray& visible) {
        return vector_to_array(hidden_activations(model, array_to_vector(visible)));
    }, py::arg("model"), py::arg("visible"));

    m.def("visible_reconstruction", [](const Rbm& model, const DoubleArray& hidden) {
        return vector_to_array(visible_reconstruction(model, array_to_vector(hidden)));
    }, py::arg("model"), py::arg("hidden"));

    m.def("per_example_sse", [](const DoubleArray& x, const DoubleArray& r) {
        return per_example_sse(array_to_vector(x), array_to_vector(r));
    }, py::arg("x"), py::arg("r"));

    m.def("dataset_mse", [](const Rbm& model, const DoubleArray& data) {
        return dataset_mse(model, dataset_from_array(data));
    }, py::arg("model"), py::arg("data"),
       "Mean over rows of the per-example reconstruction SSE.");

    m.def("train_cd1", [](const DoubleArray& data, std::size_t n_hidden,
                          std::size_t epochs, double learning_rate,
                          std::size_t batch_size, double weight_init_stddev,
                          std::uint64_t seed) {
        TrainConfig config;
        config.epochs = epochs;
        config.learning_rate = learning_rate;
        config.batch_size = batch_size;
        config.weight_init_stddev = weight_init_stddev;
        config.seed = seed;
        return train_cd1(dataset_from_array(data), n_hidden, config);
    }, py::arg("data"), py::arg("n_hidden") = 16, py::arg("epochs") = 500,
       py::arg("learning_rate") = 0.1, py::arg("batch_size") = 10,
       py::arg("weight_init_stddev") = 0.01, py::arg("seed") = 0,
       "Train a fresh RBM with mean-field CD-1; deterministic given the seed.");

    m.def("sample_uniform", [](std::size_t n, std::size_t dims, std::uint64_t seed) {
        return array_from_dataset(sample_uniform(n, dims, seed));
    }, py::arg("n"), py::arg("dims"), py::arg("seed") = 0);

    m.def("auto_tolerance", [](const Rbm& model, const DoubleArray& training_data) {
        return auto_tolerance(model, dataset_from_array(training_data));
    }, py::arg("model"), py::arg("training_data"),
       "The VE acceptance tolerance: reconstruction MSE of the training data.");

    m.def("generate_virtual_examples",
          [](const Rbm& model, const DoubleArray& candidates, double tolerance,
             std::size_t oscillations) {
              return generate_virtual_examples(model, dataset_from_array(candidates),
                                               tolerance, oscillations);
          },
          py::arg("model"), py::arg("candidates"), py::arg("tolerance"),
          py::arg("oscillations") = 1,
          "Keep candidates whose reconstruction SSE is within the tolerance; "
          "the stored examples are the reconstructions.");

    m.def("compute_adm", [](double mse_tst, double mse_trn) {
        return compute_adm(mse_tst, mse_trn);
    }, py::arg("mse_tst"), py::arg("mse_trn"));

    m.def("classify_band", &classify_band, py::arg("adm"));

    m.def("adm_between", [](const Rbm& model, const DoubleArray& training_data,
                            const DoubleArray& test_data) {
        return adm_between(model, dataset_from_array(training_data),
                           dataset_from_array(test_data));
    }, py::arg("model"), py::arg("training_data"), py::arg("test_data"));

    m.def("generate_synthetic", [](const DistributionSpec& spec, std::size_t n,
                                   std::uint64_t seed) {
        return array_from_dataset(generate_synthetic(spec, n, seed));
    }, py::arg("spec"), py::arg("n"), py::arg("seed") = 0);

    m.def("save_csv", [](const DoubleArray& data, const std::string& path) {
        save_csv(dataset_from_array(data), path);
    }, py::arg("data"), py::arg("path"));

    m.def("load_csv", [](const std::string& path) {
        return array_from_dataset(load_csv(path));
    }, py::arg("path"));

    m.def("compute_histograms", [](const DoubleArray& data, std::size_t n_bins) {
        const auto hist = compute_histograms(dataset_from_array(data), n_bins);
        py::list out;
        for (const auto& h : hist.per_dim) {
            py::dict entry;
            entry["edges"] = vector_to_array(h.edges);
            py::array_t<std::size_t> counts(h.counts.size());
            std::memcpy(counts.mutable_data(), h.counts.data(),
                        h.counts.size() * sizeof(std::size_t));
            entry["counts"] = counts;
            entry["density"] = vector_to_array(h.density);
            out.append(entry);
        }
        return out;
    }, py::arg("data"), py::arg("n_bins"));

    m.def("run_experiment", [](const std::string& out_dir,
                               const std::string& config_path,
                               const std::string& config_json) {
        ExperimentConfig config;
        if (!config_path.empty() && !config_json.empty()) {
            throw InvalidConfigError("pass config_path or config_json, not both");
        }
        if (!config_path.empty()) {
            config = ExperimentConfig::load(config_path);
        } else if (!config_json.empty()) {
            config = ExperimentConfig::from_json_string(config_json);
        }
        return run_experiment(config, out_dir);
    }, py::arg("out_dir"), py::arg("config_path") = std::string(),
       py::arg("config_json") = std::string(),
       "Run the full synth/train/genve/adm pipeline into out_dir.");

#ifdef VERSION_INFO
    m.attr("__version__") = VERSION_INFO;
#else
    m.attr("__version__") = "dev";
#endif
}

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rbmve/adm.hpp"
#include "rbmve/errors.hpp"
#include "rbmve/experiment.hpp"
#include "rbmve/rbm.hpp"
#include "rbmve/synth.hpp"
#include "rbmve/ve.hpp"

namespace {

using nlohmann::json;

rbmve::DistributionSpec load_spec_or_default(const std::string& spec_path) {
    if (spec_path.empty()) return rbmve::DistributionSpec::default_4d();
    return rbmve::DistributionSpec::load(spec_path);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw rbmve::IoError("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw rbmve::IoError("failed while writing " + path.string());
}

void cmd_synth(const std::string& spec_path, std::size_t n, std::uint64_t seed,
               const std::string& out) {
    const auto spec = load_spec_or_default(spec_path);
    const auto data = rbmve::generate_synthetic(spec, n, seed);
    rbmve::save_csv(data, out);
    std::cout << "wrote " << data.rows() << "x" << data.dims() << " dataset to "
              << out << "\n";
}

void cmd_train(const std::string& data_path, std::size_t hidden,
               const rbmve::TrainConfig& config, const std::string& out,
               std::string trace_path) {
    const auto data = rbmve::load_csv(data_path);
    const auto result = rbmve::train_cd1(data, hidden, config);
    rbmve::save_model(result.model, out);

    if (trace_path.empty()) {
        std::filesystem::path p(out);
        p.replace_extension();
        trace_path = p.string() + ".trace.csv";
    }
    std::ostringstream trace;
    trace << "epoch,mse\n";
    for (std::size_t e = 0; e < result.mse_trace.size(); ++e) {
        trace << (e + 1) << ',' << json(result.mse_trace[e]).dump() << '\n';
    }
    write_text(trace_path, trace.str());

    std::cout << "trained " << data.dims() << "x" << hidden << " model on "
              << data.rows() << " examples over " << config.epochs << " epochs\n"
              << "final mse: " << result.mse_trace.back() << "\n"
              << "model: " << out << "\ntrace: " << trace_path << "\n";
}

void cmd_adm(const std::string& model_path, const std::string& train_path,
             const std::string& test_path, const std::string& json_path) {
    const auto model = rbmve::load_model(model_path);
    const auto training = rbmve::load_csv(train_path);
    const auto test = rbmve::load_csv(test_path);
    const auto adm = rbmve::adm_between(model, training, test);
    std::cout << "adm " << std::fixed << std::setprecision(4) << adm.adm
              << std::defaultfloat << " (" << rbmve::to_string(adm.band) << ")\n";
    if (!json_path.empty()) {
        json j;
        j["mse_trn"] = adm.mse_trn;
        j["mse_tst"] = adm.mse_tst;
        j["adm"] = adm.adm;
        j["band"] = rbmve::to_string(adm.band);
        write_text(json_path, j.dump(2) + "\n");
    }
}

void cmd_experiment(const std::string& config_path, const std::string& out_dir) {
    rbmve::ExperimentConfig config;
    if (!config_path.empty()) config = rbmve::ExperimentConfig::load(config_path);
    const auto report = rbmve::run_experiment(config, out_dir);
    std::cout << "mse_trn " << report.mse_trn << "\n"
              << "tolerance " << report.tolerance_used << "\n"
              << "accepted " << report.n_accepted << " of " << report.n_candidates
              << "\n"
              << "mse_ve " << report.mse_ve << "\n"
              << "adm " << std::fixed << std::setprecision(4) << report.adm
              << std::defaultfloat << " (" << rbmve::to_string(report.band)
              << ")\n"
              << "report: " << (std::filesystem::path(out_dir) / "report.json").string()
              << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"RBM virtual-example generation and distribution scoring"};
    app.require_subcommand(1);

    // synth
    auto* synth = app.add_subcommand("synth", "Generate a synthetic multi-modal dataset");
    std::string synth_spec, synth_out;
    std::size_t synth_n = 1000;
    std::uint64_t synth_seed = 0;
    synth->add_option("--spec", synth_spec, "DistributionSpec JSON file (default: built-in 4-D spec)");
    synth->add_option("--n", synth_n, "Number of examples")->check(CLI::PositiveNumber);
    synth->add_option("--seed", synth_seed, "RNG seed");
    synth->add_option("--out", synth_out, "Output dataset CSV")->required();
    synth->callback([&] { cmd_synth(synth_spec, synth_n, synth_seed, synth_out); });

    // train
    auto* train = app.add_subcommand("train", "Train an RBM with CD-1");
    std::string train_data, train_out, train_trace;
    std::size_t train_hidden = 16;
    rbmve::TrainConfig train_config;
    train->add_option("--data", train_data, "Training dataset CSV")->required();
    train->add_option("--hidden", train_hidden, "Hidden units")->check(CLI::PositiveNumber);
    train->add_option("--epochs", train_config.epochs, "Training epochs")->check(CLI::PositiveNumber);
    train->add_option("--lr", train_config.learning_rate, "Learning rate");
    train->add_option("--batch", train_config.batch_size, "Mini-batch size")->check(CLI::PositiveNumber);
    train->add_option("--init-std", train_config.weight_init_stddev, "Weight init stddev");
    train->add_option("--seed", train_config.seed, "RNG seed");
    train->add_option("--out", train_out, "Output model JSON")->required();
    train->add_option("--trace", train_trace, "MSE trace CSV (default: <out>.trace.csv)");
    train->callback([&] { cmd_train(train_data, train_hidden, train_config, train_out, train_trace); });

    // genve
    auto* genve = app.add_subcommand("genve", "Generate virtual examples from uniform candidates");
    std::string genve_model, genve_train, genve_tolerance = "auto", genve_out, genve_stats;
    std::size_t genve_candidates = 5000, genve_oscillations = 1;
    std::uint64_t genve_seed = 0;
    genve->add_option("--model", genve_model, "Trained model JSON")->required();
    genve->add_option("--train-data", genve_train, "Training dataset CSV (required with --tolerance auto)");
    genve->add_option("--candidates", genve_candidates, "Number of uniform candidates")->check(CLI::PositiveNumber);
    genve->add_option("--tolerance", genve_tolerance, "Acceptance tolerance: 'auto' or a positive real");
    genve->add_option("--oscillations", genve_oscillations, "Reconstruction passes per candidate")->check(CLI::PositiveNumber);
    genve->add_option("--seed", genve_seed, "RNG seed");
    genve->add_option("--out", genve_out, "Output VE dataset CSV")->required();
    genve->add_option("--stats", genve_stats, "Output stats JSON")->required();
    genve->callback([&] {
        const auto model = rbmve::load_model(genve_model);
        std::optional<rbmve::Dataset> training;
        if (!genve_train.empty()) training = rbmve::load_csv(genve_train);

        double tolerance = 0.0;
        if (genve_tolerance == "auto") {
            if (!training) {
                throw CLI::ValidationError("--tolerance auto requires --train-data");
            }
            tolerance = rbmve::auto_tolerance(model, *training);
        } else {
            const char* first = genve_tolerance.data();
            const char* last = first + genve_tolerance.size();
            const auto res = std::from_chars(first, last, tolerance);
            if (res.ec != std::errc{} || res.ptr != last) {
                throw CLI::ValidationError("--tolerance must be 'auto' or a real number");
            }
        }

        const auto candidates = rbmve::sample_uniform(genve_candidates, model.n_visible(), genve_seed);
        const auto result = rbmve::generate_virtual_examples(model, candidates, tolerance, genve_oscillations);
        rbmve::save_csv(result.virtual_examples, genve_out);

        json stats;
        stats["tolerance_used"] = result.tolerance_used;
        stats["n_candidates"] = candidates.rows();
        stats["n_accepted"] = result.accepted_indices.size();
        if (!result.virtual_examples.empty()) {
            const double mse_ve = rbmve::dataset_mse(model, result.virtual_examples);
            stats["mse_ve"] = mse_ve;
            if (training) {
                const auto adm = rbmve::compute_adm(mse_ve, rbmve::dataset_mse(model, *training));
                stats["adm"] = adm.adm;
                stats["band"] = rbmve::to_string(adm.band);
            } else {
                stats["adm"] = nullptr;
                stats["band"] = nullptr;
            }
        } else {
            stats["mse_ve"] = nullptr;
            stats["adm"] = nullptr;
            stats["band"] = nullptr;
        }
        write_text(genve_stats, stats.dump(2) + "\n");
        std::cout << "accepted " << result.accepted_indices.size() << " of "
                  << candidates.rows() << " candidates (tolerance "
                  << result.tolerance_used << ")\n"
                  << "ve: " << genve_out << "\nstats: " << genve_stats << "\n";
    });

    // adm
    auto* adm = app.add_subcommand("adm", "Score a test set against a training set via reconstruction error");
    std::string adm_model, adm_train, adm_test, adm_json;
    adm->add_option("--model", adm_model, "Trained model JSON")->required();
    adm->add_option("--train", adm_train, "Training dataset CSV")->required();
    adm->add_option("--test", adm_test, "Test dataset CSV")->required();
    adm->add_option("--json", adm_json, "Optional machine-readable output JSON");
    adm->callback([&] { cmd_adm(adm_model, adm_train, adm_test, adm_json); });

    // experiment
    auto* experiment = app.add_subcommand("experiment", "Run the full synth/train/genve/adm pipeline");
    std::string exp_config, exp_out;
    experiment->add_option("--config", exp_config, "Experiment config JSON (default: built-in defaults)");
    experiment->add_option("--out-dir", exp_out, "Output directory")->required();
    experiment->callback([&] { cmd_experiment(exp_config, exp_out); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const rbmve::DegenerateToleranceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

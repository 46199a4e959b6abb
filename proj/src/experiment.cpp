#include "rbmve/experiment.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "rbmve/errors.hpp"
#include "text_format.hpp"

namespace rbmve {

namespace {

using nlohmann::json;

json parse_json(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string(what) + ": " + e.what(), 0, 0);
    }
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> known,
                         const char* where) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* k : known) {
            if (key == k) {
                ok = true;
                break;
            }
        }
        if (!ok) {
            throw InvalidConfigError("unknown key '" + key + "' in " + where);
        }
    }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << text;
    if (!out) {
        throw IoError("failed while writing " + path.string());
    }
}

std::string ve_stats_json(const VeResult& ve, std::size_t n_candidates,
                          const AdmValue& adm) {
    json j;
    j["tolerance_used"] = ve.tolerance_used;
    j["n_candidates"] = n_candidates;
    j["n_accepted"] = ve.accepted_indices.size();
    j["mse_ve"] = adm.mse_tst;
    j["adm"] = adm.adm;
    j["band"] = to_string(adm.band);
    return j.dump(2) + "\n";
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_string(
    const std::string& text, const std::filesystem::path& base_dir) {
    const json j = parse_json(text, "experiment config");
    try {
        reject_unknown_keys(j, {"seed", "spec", "n_train", "n_hidden", "train", "ve", "n_bins"},
                            "experiment config");
        ExperimentConfig config;
        if (j.contains("seed")) config.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("n_train")) config.n_train = j["n_train"].get<std::size_t>();
        if (j.contains("n_hidden")) config.n_hidden = j["n_hidden"].get<std::size_t>();
        if (j.contains("n_bins")) config.n_bins = j["n_bins"].get<std::size_t>();
        if (j.contains("spec")) {
            if (j["spec"].is_string()) {
                std::filesystem::path spec_path = j["spec"].get<std::string>();
                if (spec_path.is_relative() && !base_dir.empty()) {
                    spec_path = base_dir / spec_path;
                }
                config.spec = DistributionSpec::load(spec_path);
                config.spec_path = spec_path.string();
            } else {
                config.spec = DistributionSpec::from_json_string(j["spec"].dump());
            }
        }
        if (j.contains("train")) {
            const auto& t = j["train"];
            reject_unknown_keys(
                t, {"epochs", "learning_rate", "batch_size", "weight_init_stddev"},
                "train config");
            if (t.contains("epochs")) config.train.epochs = t["epochs"].get<std::size_t>();
            if (t.contains("learning_rate")) config.train.learning_rate = t["learning_rate"].get<double>();
            if (t.contains("batch_size")) config.train.batch_size = t["batch_size"].get<std::size_t>();
            if (t.contains("weight_init_stddev")) config.train.weight_init_stddev = t["weight_init_stddev"].get<double>();
        }
        if (j.contains("ve")) {
            const auto& v = j["ve"];
            reject_unknown_keys(v, {"n_candidates", "tolerance", "oscillations"},
                                "ve config");
            if (v.contains("n_candidates")) config.ve.n_candidates = v["n_candidates"].get<std::size_t>();
            if (v.contains("oscillations")) config.ve.oscillations = v["oscillations"].get<std::size_t>();
            if (v.contains("tolerance")) {
                if (v["tolerance"].is_string()) {
                    if (v["tolerance"].get<std::string>() != "auto") {
                        throw InvalidConfigError(
                            "ve.tolerance must be a positive number or \"auto\"");
                    }
                    config.ve.tolerance.reset();
                } else {
                    config.ve.tolerance = v["tolerance"].get<double>();
                }
            }
        }
        return config;
    } catch (const json::exception& e) {
        throw InvalidConfigError(std::string("experiment config: ") + e.what());
    }
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open experiment config " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_string(buf.str(), path.parent_path());
}

std::string ExperimentConfig::to_json_string() const {
    json j;
    j["seed"] = seed;
    j["spec"] = json::parse(spec.to_json_string());
    if (!spec_path.empty()) j["spec_path"] = spec_path;
    j["n_train"] = n_train;
    j["n_hidden"] = n_hidden;
    j["train"] = {{"epochs", train.epochs},
                  {"learning_rate", train.learning_rate},
                  {"batch_size", train.batch_size},
                  {"weight_init_stddev", train.weight_init_stddev}};
    j["ve"] = {{"n_candidates", ve.n_candidates},
               {"oscillations", ve.oscillations}};
    if (ve.tolerance) {
        j["ve"]["tolerance"] = *ve.tolerance;
    } else {
        j["ve"]["tolerance"] = "auto";
    }
    j["n_bins"] = n_bins;
    return j.dump(2) + "\n";
}

std::string report_to_json_string(const ExperimentReport& report) {
    json j;
    j["mse_trn"] = report.mse_trn;
    j["tolerance_used"] = report.tolerance_used;
    j["n_candidates"] = report.n_candidates;
    j["n_accepted"] = report.n_accepted;
    j["mse_ve"] = report.mse_ve;
    j["adm"] = report.adm;
    j["band"] = to_string(report.band);
    j["mse_trace"] = report.mse_trace;
    j["seeds"] = {{"top", report.seed},
                  {"synth", report.seed_synth},
                  {"train", report.seed_train},
                  {"candidates", report.seed_candidates}};
    j["config"] = json::parse(report.config_json);
    return j.dump(2) + "\n";
}

ExperimentReport run_experiment(const ExperimentConfig& config,
                                const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw IoError("cannot create output directory " + out_dir.string() +
                      ": " + ec.message());
    }

    ExperimentReport report;
    report.seed = config.seed;
    report.seed_synth = config.seed + 1;
    report.seed_train = config.seed + 2;
    report.seed_candidates = config.seed + 3;
    report.config_json = config.to_json_string();

    // First write doubles as the writability probe: an unwritable directory
    // fails here, before any training.
    const Dataset training = generate_synthetic(config.spec, config.n_train,
                                                report.seed_synth);
    save_csv(training, out_dir / "train.csv");

    TrainConfig train_config = config.train;
    train_config.seed = report.seed_train;
    TrainResult trained = train_cd1(training, config.n_hidden, train_config);
    report.mse_trace = trained.mse_trace;
    save_model(trained.model, out_dir / "model.json");
    {
        std::ostringstream trace;
        trace << "epoch,mse\n";
        for (std::size_t e = 0; e < trained.mse_trace.size(); ++e) {
            trace << (e + 1) << ',' << detail::format_double(trained.mse_trace[e])
                  << '\n';
        }
        write_text(out_dir / "trace.csv", trace.str());
    }

    report.mse_trn = dataset_mse(trained.model, training);
    report.tolerance_used = config.ve.tolerance
                                ? *config.ve.tolerance
                                : auto_tolerance(trained.model, training);

    const Dataset candidates = sample_uniform(config.ve.n_candidates,
                                              config.spec.dims(),
                                              report.seed_candidates);
    report.n_candidates = candidates.rows();
    const VeResult ve = generate_virtual_examples(
        trained.model, candidates, report.tolerance_used, config.ve.oscillations);
    report.n_accepted = ve.accepted_indices.size();
    if (report.n_accepted == 0) {
        throw DegenerateToleranceError(
            "no candidate fell within the tolerance; nothing to score");
    }

    report.mse_ve = dataset_mse(trained.model, ve.virtual_examples);
    const AdmValue adm = compute_adm(report.mse_ve, report.mse_trn);
    report.adm = adm.adm;
    report.band = adm.band;

    save_csv(ve.virtual_examples, out_dir / "ve.csv");
    write_text(out_dir / "ve_stats.json",
               ve_stats_json(ve, report.n_candidates, adm));
    save_histograms_csv(compute_histograms(training, config.n_bins),
                        out_dir / "hist_train.csv");
    save_histograms_csv(compute_histograms(ve.virtual_examples, config.n_bins),
                        out_dir / "hist_ve.csv");
    write_text(out_dir / "report.json", report_to_json_string(report));
    return report;
}

}  // namespace rbmve

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "rbmve/adm.hpp"
#include "rbmve/rbm.hpp"
#include "rbmve/synth.hpp"
#include "rbmve/ve.hpp"

namespace rbmve {

/// Everything the end-to-end pipeline needs. A single top-level seed drives
/// the whole run; stage seeds are derived with fixed offsets so one integer
/// reproduces an experiment:
///   synth data  seed + 1
///   training    seed + 2
///   candidates  seed + 3
struct ExperimentConfig {
    DistributionSpec spec = DistributionSpec::default_4d();
    std::string spec_path;  // empty when the spec was inline
    std::size_t n_train = 1000;
    std::size_t n_hidden = 16;
    TrainConfig train;  // .seed is ignored; derived from `seed`
    VeConfig ve;        // .seed is ignored; derived from `seed`
    std::size_t n_bins = 50;
    std::uint64_t seed = 0;

    /// JSON form:
    ///   { "seed", "n_train", "n_hidden", "n_bins",
    ///     "spec": path-string or inline {"dims": ...},
    ///     "train": { "epochs", "learning_rate", "batch_size",
    ///                "weight_init_stddev" },
    ///     "ve":    { "n_candidates", "tolerance": "auto"|number,
    ///                "oscillations" } }
    /// Every field is optional and defaults as above ("spec" to the stock
    /// 4-D spec). A spec path is resolved relative to the config file's
    /// directory.
    static ExperimentConfig load(const std::filesystem::path& path);
    static ExperimentConfig from_json_string(const std::string& text,
                                             const std::filesystem::path& base_dir = {});

    std::string to_json_string() const;  // resolved form, spec inline
};

struct ExperimentReport {
    double mse_trn = 0.0;
    double tolerance_used = 0.0;
    std::size_t n_candidates = 0;
    std::size_t n_accepted = 0;
    double mse_ve = 0.0;
    double adm = 0.0;
    AdmBand band = AdmBand::SameDistribution;
    std::vector<double> mse_trace;
    std::uint64_t seed = 0;
    std::uint64_t seed_synth = 0;
    std::uint64_t seed_train = 0;
    std::uint64_t seed_candidates = 0;
    std::string config_json;  // resolved config echo, for provenance
};

std::string report_to_json_string(const ExperimentReport& report);

/// Runs synth -> train -> tolerance -> VE generation -> ADM and writes into
/// out_dir: train.csv, model.json, trace.csv, ve.csv, ve_stats.json,
/// hist_train.csv, hist_ve.csv, report.json. The directory is created (and
/// probed for writability) before any training starts. Reruns with the same
/// config produce byte-identical files.
ExperimentReport run_experiment(const ExperimentConfig& config,
                                const std::filesystem::path& out_dir);

}  // namespace rbmve

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "rbmve/errors.hpp"
#include "rbmve/experiment.hpp"
#include "rbmve/synth.hpp"

using namespace rbmve;
using nlohmann::json;

namespace {

std::filesystem::path temp_root() {
    const auto dir = std::filesystem::temp_directory_path() / "rbmve_exp_tests";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int run_cli(const std::string& args, std::string* output = nullptr) {
    static int counter = 0;
    const auto capture = temp_root() / ("cli_out_" + std::to_string(counter++) + ".txt");
    const std::string cmd = std::string(RBMVE_CLI_PATH) + " " + args + " > " +
                            capture.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    if (output) *output = slurp(capture);
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

// Small but non-degenerate pipeline settings for fast tests.
ExperimentConfig small_config() {
    ExperimentConfig config;
    config.n_train = 80;
    config.n_hidden = 8;
    config.train.epochs = 30;
    config.ve.n_candidates = 300;
    config.ve.tolerance = 0.5;
    config.n_bins = 10;
    config.seed = 5;
    return config;
}

}  // namespace

TEST_CASE("experiment config parsing") {
    SUBCASE("empty object takes the documented defaults") {
        const auto config = ExperimentConfig::from_json_string("{}");
        CHECK(config.seed == 0);
        CHECK(config.n_train == 1000);
        CHECK(config.n_hidden == 16);
        CHECK(config.n_bins == 50);
        CHECK(config.train.epochs == 500);
        CHECK(config.train.learning_rate == 0.1);
        CHECK(config.train.batch_size == 10);
        CHECK(config.train.weight_init_stddev == 0.01);
        CHECK(config.ve.n_candidates == 5000);
        CHECK_FALSE(config.ve.tolerance.has_value());
        CHECK(config.ve.oscillations == 1);
        CHECK(config.spec == DistributionSpec::default_4d());
    }
    SUBCASE("explicit fields and inline spec") {
        const auto config = ExperimentConfig::from_json_string(R"({
            "seed": 9, "n_train": 50, "n_hidden": 4, "n_bins": 8,
            "train": {"epochs": 10, "learning_rate": 0.2, "batch_size": 5,
                      "weight_init_stddev": 0.05},
            "ve": {"n_candidates": 42, "tolerance": 0.125, "oscillations": 2},
            "spec": {"dims": [[{"low": 0.1, "high": 0.6, "weight": 1.0}]]}
        })");
        CHECK(config.seed == 9);
        CHECK(config.n_train == 50);
        CHECK(config.n_hidden == 4);
        CHECK(config.n_bins == 8);
        CHECK(config.train.epochs == 10);
        CHECK(config.train.learning_rate == 0.2);
        CHECK(config.train.batch_size == 5);
        CHECK(config.train.weight_init_stddev == 0.05);
        CHECK(config.ve.n_candidates == 42);
        CHECK(config.ve.tolerance == 0.125);
        CHECK(config.ve.oscillations == 2);
        CHECK(config.spec.dims() == 1);
    }
    SUBCASE("tolerance auto keyword") {
        const auto config = ExperimentConfig::from_json_string(
            R"({"ve": {"tolerance": "auto"}})");
        CHECK_FALSE(config.ve.tolerance.has_value());
        CHECK_THROWS_AS((void)ExperimentConfig::from_json_string(
                            R"({"ve": {"tolerance": "loose"}})"),
                        InvalidConfigError);
    }
    SUBCASE("unknown keys are rejected") {
        CHECK_THROWS_AS((void)ExperimentConfig::from_json_string(R"({"sed": 1})"),
                        InvalidConfigError);
        CHECK_THROWS_AS((void)ExperimentConfig::from_json_string(
                            R"({"train": {"momentum": 0.9}})"),
                        InvalidConfigError);
    }
    SUBCASE("spec path resolves relative to the config directory") {
        const auto dir = temp_root() / "config_rel";
        std::filesystem::create_directories(dir);
        DistributionSpec::default_4d().save(dir / "spec.json");
        std::ofstream(dir / "exp.json") << R"({"spec": "spec.json"})";
        const auto config = ExperimentConfig::load(dir / "exp.json");
        CHECK(config.spec == DistributionSpec::default_4d());
        CHECK(!config.spec_path.empty());
        std::filesystem::remove_all(dir);
    }
    SUBCASE("config echo round-trips") {
        const auto config = small_config();
        const auto echoed = ExperimentConfig::from_json_string(config.to_json_string());
        CHECK(echoed.seed == config.seed);
        CHECK(echoed.n_train == config.n_train);
        CHECK(echoed.ve.tolerance == config.ve.tolerance);
        CHECK(echoed.spec == config.spec);
    }
}

TEST_CASE("run_experiment produces a consistent artifact set") {
    const auto out_dir = temp_root() / "run1";
    std::filesystem::remove_all(out_dir);
    const auto report = run_experiment(small_config(), out_dir);

    SUBCASE("every referenced artifact exists and parses") {
        const auto train = load_csv(out_dir / "train.csv");
        CHECK(train.rows() == 80);
        CHECK(train.dims() == 4);
        const auto model = load_model(out_dir / "model.json");
        CHECK(model.n_visible() == 4);
        CHECK(model.n_hidden() == 8);
        const auto ve = load_csv(out_dir / "ve.csv");
        CHECK(ve.rows() == report.n_accepted);
        CHECK(json::parse(slurp(out_dir / "ve_stats.json")).is_object());
        CHECK(json::parse(slurp(out_dir / "report.json")).is_object());
        CHECK(slurp(out_dir / "hist_train.csv").starts_with("dim,bin_low"));
        CHECK(slurp(out_dir / "hist_ve.csv").starts_with("dim,bin_low"));
        std::size_t trace_lines = 0;
        std::istringstream trace(slurp(out_dir / "trace.csv"));
        std::string line;
        while (std::getline(trace, line)) ++trace_lines;
        CHECK(trace_lines == 1 + report.mse_trace.size());
    }
    SUBCASE("report is internally consistent") {
        CHECK(report.adm == report.mse_ve / report.mse_trn);
        CHECK(report.n_accepted <= report.n_candidates);
        CHECK(report.n_candidates == 300);
        CHECK(report.tolerance_used == 0.5);
        CHECK(report.mse_trace.size() == 30);
        CHECK(report.seed_synth == 6);
        CHECK(report.seed_train == 7);
        CHECK(report.seed_candidates == 8);

        const auto on_disk = json::parse(slurp(out_dir / "report.json"));
        CHECK(on_disk["adm"].get<double>() == report.adm);
        CHECK(on_disk["mse_trn"].get<double>() == report.mse_trn);
        CHECK(on_disk["n_accepted"].get<std::size_t>() == report.n_accepted);
        CHECK(on_disk["band"].get<std::string>() == to_string(report.band));
    }
    SUBCASE("stats sidecar agrees with the report") {
        const auto stats = json::parse(slurp(out_dir / "ve_stats.json"));
        CHECK(stats["tolerance_used"].get<double>() == report.tolerance_used);
        CHECK(stats["n_accepted"].get<std::size_t>() == report.n_accepted);
        CHECK(stats["mse_ve"].get<double>() == report.mse_ve);
        CHECK(stats["adm"].get<double>() == report.adm);
    }
    SUBCASE("rerun is byte-identical") {
        const auto out_dir2 = temp_root() / "run2";
        std::filesystem::remove_all(out_dir2);
        (void)run_experiment(small_config(), out_dir2);
        for (const char* name : {"train.csv", "model.json", "trace.csv", "ve.csv",
                                 "ve_stats.json", "hist_train.csv", "hist_ve.csv",
                                 "report.json"}) {
            CHECK(slurp(out_dir / name) == slurp(out_dir2 / name));
        }
        std::filesystem::remove_all(out_dir2);
    }

    std::filesystem::remove_all(out_dir);
}

TEST_CASE("cli synth") {
    const auto dir = temp_root() / "cli_synth";
    std::filesystem::create_directories(dir);
    const auto out = (dir / "data.csv").string();

    SUBCASE("writes the dataset and reruns byte-identically") {
        CHECK(run_cli("synth --n 50 --seed 3 --out " + out) == 0);
        const auto first = slurp(out);
        const auto data = load_csv(out);
        CHECK(data.rows() == 50);
        CHECK(data.dims() == 4);
        CHECK(run_cli("synth --n 50 --seed 3 --out " + out) == 0);
        CHECK(slurp(out) == first);
    }
    SUBCASE("missing spec file names the path") {
        std::string output;
        CHECK(run_cli("synth --spec " + (dir / "nope.json").string() + " --out " + out,
                      &output) == 2);
        CHECK(output.find("nope.json") != std::string::npos);
    }
    SUBCASE("n = 0 is a usage error") {
        std::string output;
        CHECK(run_cli("synth --n 0 --out " + out, &output) == 1);
        CHECK(output.find("--n") != std::string::npos);
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("cli train/genve/adm pipeline") {
    const auto dir = temp_root() / "cli_pipeline";
    std::filesystem::create_directories(dir);
    const auto data = (dir / "data.csv").string();
    const auto model = (dir / "model.json").string();
    const auto ve = (dir / "ve.csv").string();
    const auto stats = (dir / "stats.json").string();

    REQUIRE(run_cli("synth --n 60 --seed 1 --out " + data) == 0);
    std::string train_output;
    REQUIRE(run_cli("train --data " + data + " --hidden 8 --epochs 25 --seed 2 --out " +
                    model, &train_output) == 0);
    CHECK(train_output.find("final mse:") != std::string::npos);
    CHECK(std::filesystem::exists(dir / "model.trace.csv"));

    SUBCASE("training is reproducible byte for byte") {
        const auto first = slurp(model);
        REQUIRE(run_cli("train --data " + data +
                        " --hidden 8 --epochs 25 --seed 2 --out " + model) == 0);
        CHECK(slurp(model) == first);
    }
    SUBCASE("malformed training CSV is a data error") {
        const auto bad = (dir / "bad.csv").string();
        std::ofstream(bad) << "0.5,oops\n";
        CHECK(run_cli("train --data " + bad + " --epochs 5 --out " + model) == 2);
    }
    SUBCASE("huge tolerance accepts every candidate") {
        REQUIRE(run_cli("genve --model " + model + " --candidates 100 --tolerance 1e9"
                        " --seed 4 --out " + ve + " --stats " + stats) == 0);
        const auto parsed = json::parse(slurp(stats));
        CHECK(parsed["n_candidates"].get<std::size_t>() == 100);
        CHECK(parsed["n_accepted"].get<std::size_t>() == 100);
        CHECK(parsed["adm"].is_null());  // no --train-data given
        CHECK(load_csv(ve).rows() == 100);
    }
    SUBCASE("auto tolerance without train data is a usage error") {
        CHECK(run_cli("genve --model " + model + " --tolerance auto --out " + ve +
                      " --stats " + stats) == 1);
    }
    SUBCASE("zero tolerance is rejected through ToleranceError") {
        std::string output;
        CHECK(run_cli("genve --model " + model + " --train-data " + data +
                      " --candidates 50 --tolerance 0 --seed 4 --out " + ve +
                      " --stats " + stats, &output) == 2);
        CHECK(output.find("tolerance") != std::string::npos);
    }
    SUBCASE("adm of the train file against itself prints 1.0") {
        std::string output;
        const auto adm_json = (dir / "adm.json").string();
        CHECK(run_cli("adm --model " + model + " --train " + data + " --test " + data +
                      " --json " + adm_json, &output) == 0);
        CHECK(output.find("adm 1.0000") != std::string::npos);
        const auto parsed = json::parse(slurp(adm_json));
        CHECK(parsed["adm"].get<double>() == 1.0);
        CHECK(parsed["band"].get<std::string>() == "same-distribution");
    }
    SUBCASE("genve stats and the adm command agree exactly") {
        REQUIRE(run_cli("genve --model " + model + " --train-data " + data +
                        " --candidates 200 --tolerance auto --seed 4 --out " + ve +
                        " --stats " + stats) == 0);
        const auto parsed = json::parse(slurp(stats));
        if (parsed["n_accepted"].get<std::size_t>() > 0) {
            const auto adm_json = (dir / "adm2.json").string();
            REQUIRE(run_cli("adm --model " + model + " --train " + data + " --test " +
                            ve + " --json " + adm_json) == 0);
            const auto via_adm = json::parse(slurp(adm_json));
            CHECK(via_adm["adm"].get<double>() == parsed["adm"].get<double>());
        }
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("cli experiment") {
    const auto dir = temp_root() / "cli_experiment";
    std::filesystem::create_directories(dir);
    const auto config_path = dir / "config.json";
    std::ofstream(config_path) << R"({
        "seed": 5, "n_train": 80, "n_hidden": 8, "n_bins": 10,
        "train": {"epochs": 30},
        "ve": {"n_candidates": 300, "tolerance": 0.5}
    })";

    SUBCASE("runs and reruns byte-identically") {
        const auto out1 = dir / "out1";
        const auto out2 = dir / "out2";
        REQUIRE(run_cli("experiment --config " + config_path.string() +
                        " --out-dir " + out1.string()) == 0);
        REQUIRE(run_cli("experiment --config " + config_path.string() +
                        " --out-dir " + out2.string()) == 0);
        CHECK(slurp(out1 / "report.json") == slurp(out2 / "report.json"));
        CHECK(slurp(out1 / "model.json") == slurp(out2 / "model.json"));
    }
    SUBCASE("unwritable out-dir fails up front") {
        std::string output;
        CHECK(run_cli("experiment --config " + config_path.string() +
                      " --out-dir /proc/rbmve_nowhere/out", &output) == 2);
        CHECK(output.find("error") != std::string::npos);
    }
    SUBCASE("a filter that accepts nothing exits with the degeneracy code") {
        const auto starved = dir / "starved.json";
        std::ofstream(starved) << R"({
            "seed": 5, "n_train": 40, "n_hidden": 4,
            "train": {"epochs": 5},
            "ve": {"n_candidates": 50, "tolerance": 1e-30}
        })";
        CHECK(run_cli("experiment --config " + starved.string() + " --out-dir " +
                      (dir / "starved_out").string()) == 3);
    }
    std::filesystem::remove_all(dir);
}

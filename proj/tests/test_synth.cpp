#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include <doctest.h>

#include "rbmve/errors.hpp"
#include "rbmve/synth.hpp"

using namespace rbmve;

namespace {

bool inside_some_mode(const DistributionSpec& spec, std::size_t dim, double v) {
    for (const auto& m : spec.modes(dim)) {
        if (v >= m.low && v <= m.high) return true;
    }
    return false;
}

std::filesystem::path temp_dir() {
    const auto dir = std::filesystem::temp_directory_path() / "rbmve_synth_tests";
    std::filesystem::create_directories(dir);
    return dir;
}

Dataset big_uniform() {
    std::mt19937_64 eng(99);
    std::vector<double> values(10000);
    for (auto& v : values) v = static_cast<double>(eng() >> 11) * 0x1.0p-53;
    return Dataset::from_values(10000, 1, std::move(values));
}

}  // namespace

TEST_CASE("DistributionSpec validation") {
    using ModeTable = std::vector<std::vector<Mode>>;
    CHECK_THROWS_AS(DistributionSpec(ModeTable{}), InvalidSpecError);
    CHECK_THROWS_AS(DistributionSpec(ModeTable{{}}), InvalidSpecError);
    CHECK_THROWS_AS(DistributionSpec({{{0.5, 0.4, 1.0}}}), InvalidSpecError);
    CHECK_THROWS_AS(DistributionSpec({{{0.5, 0.5, 1.0}}}), InvalidSpecError);
    CHECK_THROWS_AS(DistributionSpec({{{-0.1, 0.4, 1.0}}}), InvalidSpecError);
    CHECK_THROWS_AS(DistributionSpec({{{0.5, 1.2, 1.0}}}), InvalidSpecError);
    CHECK_THROWS_AS(DistributionSpec({{{0.1, 0.4, 0.0}}}), InvalidSpecError);
    CHECK_THROWS_AS(DistributionSpec({{{0.1, 0.4, -2.0}}}), InvalidSpecError);

    SUBCASE("weights are normalised at construction") {
        const DistributionSpec spec({{{0.0, 0.5, 3.0}, {0.5, 1.0, 1.0}}});
        CHECK(spec.modes(0)[0].weight == doctest::Approx(0.75).epsilon(1e-12));
        CHECK(spec.modes(0)[1].weight == doctest::Approx(0.25).epsilon(1e-12));
        double sum = 0.0;
        for (const auto& m : spec.modes(0)) sum += m.weight;
        CHECK(std::abs(sum - 1.0) < 1e-9);
    }
}

TEST_CASE("default 4-D spec shape") {
    const auto spec = DistributionSpec::default_4d();
    REQUIRE(spec.dims() == 4);
    CHECK(spec.modes(0).size() == 2);
    CHECK(spec.modes(1).size() == 3);
    CHECK(spec.modes(2).size() == 2);
    CHECK(spec.modes(3).size() == 4);
    for (std::size_t d = 0; d < 4; ++d) {
        for (const auto& m : spec.modes(d)) {
            CHECK(m.high - m.low == doctest::Approx(0.1).epsilon(1e-12));
            CHECK(m.weight == doctest::Approx(1.0 / spec.modes(d).size()).epsilon(1e-12));
        }
    }
}

TEST_CASE("generate_synthetic") {
    const auto spec = DistributionSpec::default_4d();

    SUBCASE("1000x4 and every value inside a mode of its dimension") {
        const auto data = generate_synthetic(spec, 1000, 42);
        CHECK(data.rows() == 1000);
        CHECK(data.dims() == 4);
        for (std::size_t r = 0; r < data.rows(); ++r) {
            for (std::size_t d = 0; d < 4; ++d) {
                CHECK(inside_some_mode(spec, d, data(r, d)));
            }
        }
    }
    SUBCASE("fixed seed is bit-reproducible") {
        CHECK(generate_synthetic(spec, 200, 7) == generate_synthetic(spec, 200, 7));
        CHECK(generate_synthetic(spec, 200, 7) != generate_synthetic(spec, 200, 8));
    }
    SUBCASE("single narrow mode pins the range") {
        const DistributionSpec narrow({{{0.4, 0.6, 1.0}}});
        const auto data = generate_synthetic(narrow, 500, 3);
        for (double v : data.values()) {
            CHECK(v >= 0.4);
            CHECK(v <= 0.6);
        }
    }
    SUBCASE("two equal-weight modes split roughly evenly") {
        const DistributionSpec two({{{0.0, 0.1, 1.0}, {0.9, 1.0, 1.0}}});
        const auto data = generate_synthetic(two, 10000, 11);
        std::size_t low = 0;
        for (double v : data.values()) {
            if (v <= 0.1) ++low;
        }
        CHECK(std::abs(static_cast<double>(low) / 10000.0 - 0.5) < 0.02);
    }
    SUBCASE("n = 0 is rejected") {
        CHECK_THROWS_AS((void)generate_synthetic(spec, 0, 1), InvalidInputError);
    }
}

TEST_CASE("dataset CSV round-trip") {
    const auto dir = temp_dir();

    SUBCASE("random datasets round-trip exactly") {
        std::mt19937_64 eng(13);
        for (int rep = 0; rep < 10; ++rep) {
            std::vector<double> values(5 * 3);
            for (auto& v : values) v = static_cast<double>(eng() >> 11) * 0x1.0p-53;
            const auto data = Dataset::from_values(5, 3, std::move(values));
            const auto path = dir / "roundtrip.csv";
            save_csv(data, path);
            CHECK(load_csv(path) == data);
        }
    }
    SUBCASE("awkward exact values survive") {
        const auto data = Dataset::from_values(
            2, 3, {0.0, 1.0, 0.1, 1.0 / 3.0, 5e-324, 0.30000000000000004});
        const auto path = dir / "awkward.csv";
        save_csv(data, path);
        CHECK(load_csv(path) == data);
    }
    SUBCASE("out-of-range value reports row and column") {
        const auto path = dir / "range.csv";
        std::ofstream(path) << "0.5,0.5\n0.5,1.5\n";
        try {
            (void)load_csv(path);
            FAIL("expected RangeError");
        } catch (const RangeError& e) {
            CHECK(e.row() == 2);
            CHECK(e.column() == 2);
            CHECK(std::string(e.what()).find("1.5") != std::string::npos);
        }
    }
    SUBCASE("garbage token reports row and column") {
        const auto path = dir / "garbage.csv";
        std::ofstream(path) << "0.5,0.5\n0.5,zebra\n";
        try {
            (void)load_csv(path);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.row() == 2);
            CHECK(e.column() == 2);
        }
    }
    SUBCASE("ragged row is rejected") {
        const auto path = dir / "ragged.csv";
        std::ofstream(path) << "0.5,0.5\n0.5\n";
        CHECK_THROWS_AS((void)load_csv(path), ParseError);
    }
    SUBCASE("empty file") {
        const auto path = dir / "empty.csv";
        std::ofstream(path).close();
        CHECK_THROWS_AS((void)load_csv(path), EmptyDatasetError);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS((void)load_csv(dir / "missing.csv"), IoError);
    }

    std::filesystem::remove_all(dir);
}

TEST_CASE("spec JSON round-trip") {
    const auto spec = DistributionSpec::default_4d();
    CHECK(DistributionSpec::from_json_string(spec.to_json_string()) == spec);

    const auto dir = temp_dir();
    const auto path = dir / "spec.json";
    spec.save(path);
    CHECK(DistributionSpec::load(path) == spec);
    std::filesystem::remove_all(dir);

    CHECK_THROWS_AS((void)DistributionSpec::from_json_string("nope"), ParseError);
    CHECK_THROWS_AS((void)DistributionSpec::from_json_string("{\"dims\": []}"),
                    InvalidSpecError);
}

TEST_CASE("checked-in default spec file matches the built-in spec") {
    const auto path = std::filesystem::path(RBMVE_SOURCE_DIR) / "configs" /
                      "default4d.json";
    CHECK(DistributionSpec::load(path) == DistributionSpec::default_4d());
}

TEST_CASE("compute_histograms") {
    SUBCASE("point mass lands in the right bin") {
        const auto data = Dataset::from_values(4, 1, {0.25, 0.25, 0.25, 0.25});
        const auto hist = compute_histograms(data, 4);
        REQUIRE(hist.per_dim.size() == 1);
        const auto& h = hist.per_dim[0];
        CHECK(h.counts == std::vector<std::size_t>{0, 4, 0, 0});
        CHECK(h.density[1] == doctest::Approx(4.0).epsilon(1e-12));
    }
    SUBCASE("value exactly 1.0 lands in the last bin") {
        const auto data = Dataset::from_values(2, 1, {1.0, 0.0});
        const auto hist = compute_histograms(data, 5);
        CHECK(hist.per_dim[0].counts.front() == 1);
        CHECK(hist.per_dim[0].counts.back() == 1);
    }
    SUBCASE("counts sum to N and density integrates to one") {
        const auto data = big_uniform();
        const auto hist = compute_histograms(data, 13);
        for (const auto& h : hist.per_dim) {
            std::size_t total = 0;
            double integral = 0.0;
            for (std::size_t b = 0; b < hist.n_bins; ++b) {
                total += h.counts[b];
                integral += h.density[b] * (h.edges[b + 1] - h.edges[b]);
            }
            CHECK(total == data.rows());
            CHECK(std::abs(integral - 1.0) < 1e-6);
        }
    }
    SUBCASE("uniform data has near-flat density") {
        const auto data = big_uniform();
        const auto hist = compute_histograms(data, 10);
        for (double d : hist.per_dim[0].density) {
            CHECK(std::abs(d - 1.0) < 0.15);
        }
    }
    SUBCASE("rejects degenerate input") {
        const auto data = Dataset::from_values(1, 1, {0.5});
        CHECK_THROWS_AS((void)compute_histograms(data, 1), InvalidInputError);
        CHECK_THROWS_AS((void)compute_histograms(Dataset(0, 1), 4),
                        EmptyDatasetError);
    }
}

TEST_CASE("histogram CSV output") {
    const auto dir = temp_dir();
    const auto data = Dataset::from_values(3, 2, {0.1, 0.9, 0.2, 0.8, 0.15, 0.95});
    const auto path = dir / "hist.csv";
    save_histograms_csv(compute_histograms(data, 4), path);

    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "dim,bin_low,bin_high,count,density");
    std::size_t lines = 0;
    std::string line;
    while (std::getline(in, line)) ++lines;
    CHECK(lines == 2 * 4);  // dims x bins
    std::filesystem::remove_all(dir);
}

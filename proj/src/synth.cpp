#include "rbmve/synth.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>

#include <nlohmann/json.hpp>

#include "rbmve/errors.hpp"
#include "rbmve/rng.hpp"
#include "text_format.hpp"

namespace rbmve {

namespace {

using detail::format_double;

double parse_field(std::string_view field, std::size_t row, std::size_t col) {
    double value = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc{} || res.ptr != last || field.empty()) {
        throw ParseError("row " + std::to_string(row) + ", column " +
                             std::to_string(col) + ": cannot parse '" +
                             std::string(field) + "' as a real number",
                         row, col);
    }
    return value;
}

}  // namespace

DistributionSpec::DistributionSpec(std::vector<std::vector<Mode>> modes_per_dim)
    : modes_(std::move(modes_per_dim)) {
    if (modes_.empty()) {
        throw InvalidSpecError("spec needs at least one dimension");
    }
    for (std::size_t d = 0; d < modes_.size(); ++d) {
        auto& modes = modes_[d];
        if (modes.empty()) {
            throw InvalidSpecError("dimension " + std::to_string(d + 1) +
                                   " has no modes");
        }
        double total = 0.0;
        for (const auto& m : modes) {
            if (!std::isfinite(m.low) || !std::isfinite(m.high) ||
                m.low < 0.0 || m.high > 1.0 || !(m.low < m.high)) {
                throw InvalidSpecError(
                    "dimension " + std::to_string(d + 1) + ": mode [" +
                    format_double(m.low) + ", " + format_double(m.high) +
                    "] must satisfy 0 <= low < high <= 1");
            }
            if (!std::isfinite(m.weight) || m.weight <= 0.0) {
                throw InvalidSpecError("dimension " + std::to_string(d + 1) +
                                       ": mode weights must be positive");
            }
            total += m.weight;
        }
        for (auto& m : modes) m.weight /= total;
    }
}

DistributionSpec DistributionSpec::default_4d() {
    return DistributionSpec({
        {{0.2, 0.3, 1.0}, {0.7, 0.8, 1.0}},
        {{0.1, 0.2, 1.0}, {0.45, 0.55, 1.0}, {0.8, 0.9, 1.0}},
        {{0.2, 0.3, 1.0}, {0.7, 0.8, 1.0}},
        {{0.05, 0.15, 1.0}, {0.3, 0.4, 1.0}, {0.55, 0.65, 1.0}, {0.8, 0.9, 1.0}},
    });
}

DistributionSpec DistributionSpec::from_json_string(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("spec JSON: ") + e.what(), 0, 0);
    }
    try {
        std::vector<std::vector<Mode>> dims;
        for (const auto& dim : j.at("dims")) {
            std::vector<Mode> modes;
            for (const auto& m : dim) {
                modes.push_back({m.at("low").get<double>(),
                                 m.at("high").get<double>(),
                                 m.at("weight").get<double>()});
            }
            dims.push_back(std::move(modes));
        }
        return DistributionSpec(std::move(dims));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("spec JSON: ") + e.what(), 0, 0);
    }
}

std::string DistributionSpec::to_json_string() const {
    nlohmann::json dims = nlohmann::json::array();
    for (const auto& modes : modes_) {
        nlohmann::json dim = nlohmann::json::array();
        for (const auto& m : modes) {
            dim.push_back({{"low", m.low}, {"high", m.high}, {"weight", m.weight}});
        }
        dims.push_back(std::move(dim));
    }
    return nlohmann::json{{"dims", std::move(dims)}}.dump(2) + "\n";
}

DistributionSpec DistributionSpec::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open spec file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_string(buf.str());
}

void DistributionSpec::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << to_json_string();
    if (!out) {
        throw IoError("failed while writing " + path.string());
    }
}

Dataset generate_synthetic(const DistributionSpec& spec, std::size_t n,
                           std::uint64_t seed) {
    if (n < 1) {
        throw InvalidInputError("need at least one example");
    }
    // Two uniform draws per (row, dimension), row-major: mode pick, then
    // position inside the picked interval.
    Rng rng(seed);
    Dataset out(n, spec.dims());
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t d = 0; d < spec.dims(); ++d) {
            const auto& modes = spec.modes(d);
            const double pick = rng.uniform();
            double cum = 0.0;
            const Mode* chosen = &modes.back();
            for (const auto& m : modes) {
                cum += m.weight;
                if (pick < cum) {
                    chosen = &m;
                    break;
                }
            }
            out(r, d) = chosen->low + rng.uniform() * (chosen->high - chosen->low);
        }
    }
    return out;
}

void save_csv(const Dataset& data, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    std::string line;
    for (std::size_t r = 0; r < data.rows(); ++r) {
        line.clear();
        for (std::size_t d = 0; d < data.dims(); ++d) {
            if (d > 0) line += ',';
            line += format_double(data(r, d));
        }
        line += '\n';
        out << line;
    }
    if (!out) {
        throw IoError("failed while writing " + path.string());
    }
}

Dataset load_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open dataset file " + path.string());
    }
    std::vector<double> values;
    std::size_t rows = 0;
    std::size_t dims = 0;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() && in.peek() == std::char_traits<char>::eof()) break;

        std::size_t col = 0;
        std::size_t start = 0;
        while (true) {
            ++col;
            const std::size_t comma = line.find(',', start);
            const std::string_view field =
                std::string_view(line).substr(start, comma == std::string::npos
                                                         ? std::string::npos
                                                         : comma - start);
            const double v = parse_field(field, lineno, col);
            if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
                throw RangeError("row " + std::to_string(lineno) + ", column " +
                                     std::to_string(col) + ": value " +
                                     std::string(field) + " is outside [0, 1]",
                                 lineno, col);
            }
            values.push_back(v);
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (rows == 0) {
            dims = col;
        } else if (col != dims) {
            throw ParseError("row " + std::to_string(lineno) + " has " +
                                 std::to_string(col) + " columns, expected " +
                                 std::to_string(dims),
                             lineno, col);
        }
        ++rows;
    }
    if (rows == 0) {
        throw EmptyDatasetError("dataset file " + path.string() + " is empty");
    }
    return Dataset::from_values(rows, dims, std::move(values));
}

HistogramSet compute_histograms(const Dataset& data, std::size_t n_bins) {
    if (data.empty()) {
        throw EmptyDatasetError("histogram of an empty dataset");
    }
    if (n_bins < 2) {
        throw InvalidInputError("need at least two histogram bins");
    }
    HistogramSet hist;
    hist.n_bins = n_bins;
    hist.per_dim.resize(data.dims());
    const double width = 1.0 / static_cast<double>(n_bins);
    for (std::size_t d = 0; d < data.dims(); ++d) {
        auto& h = hist.per_dim[d];
        h.edges.resize(n_bins + 1);
        for (std::size_t b = 0; b <= n_bins; ++b) {
            h.edges[b] = static_cast<double>(b) / static_cast<double>(n_bins);
        }
        h.counts.assign(n_bins, 0);
        for (std::size_t r = 0; r < data.rows(); ++r) {
            // right-open bins; 1.0 falls into the last (closed) bin
            auto bin = static_cast<std::size_t>(data(r, d) * static_cast<double>(n_bins));
            if (bin >= n_bins) bin = n_bins - 1;
            ++h.counts[bin];
        }
        h.density.resize(n_bins);
        for (std::size_t b = 0; b < n_bins; ++b) {
            h.density[b] = static_cast<double>(h.counts[b]) /
                           (static_cast<double>(data.rows()) * width);
        }
    }
    return hist;
}

void save_histograms_csv(const HistogramSet& hist,
                         const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << "dim,bin_low,bin_high,count,density\n";
    for (std::size_t d = 0; d < hist.per_dim.size(); ++d) {
        const auto& h = hist.per_dim[d];
        for (std::size_t b = 0; b < hist.n_bins; ++b) {
            out << d << ',' << format_double(h.edges[b]) << ','
                << format_double(h.edges[b + 1]) << ',' << h.counts[b] << ','
                << format_double(h.density[b]) << '\n';
        }
    }
    if (!out) {
        throw IoError("failed while writing " + path.string());
    }
}

}  // namespace rbmve

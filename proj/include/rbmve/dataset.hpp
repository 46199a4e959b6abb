#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rbmve {

/// Row-major matrix of values in [0, 1]. Training examples, uniform
/// candidates and virtual examples all use this shape.
///
/// The zero-row state exists only as an assembly buffer (e.g. a VE filter
/// that accepted nothing); every loader and generator that brings data into
/// the system requires at least one row and one column.
class Dataset {
public:
    Dataset() = default;

    /// Zero-filled rows x dims matrix.
    Dataset(std::size_t rows, std::size_t dims);

    /// Validating entry point: requires rows >= 1, dims >= 1, rows*dims
    /// values, and every value finite within [0, 1]. Throws DimensionError
    /// or RangeError (with the offending row/column, 1-based).
    static Dataset from_values(std::size_t rows, std::size_t dims,
                               std::vector<double> values);

    std::size_t rows() const { return rows_; }
    std::size_t dims() const { return dims_; }
    bool empty() const { return rows_ == 0; }

    double operator()(std::size_t i, std::size_t j) const {
        return values_[i * dims_ + j];
    }
    double& operator()(std::size_t i, std::size_t j) {
        return values_[i * dims_ + j];
    }

    std::span<const double> row(std::size_t i) const {
        return {values_.data() + i * dims_, dims_};
    }
    std::span<double> row(std::size_t i) {
        return {values_.data() + i * dims_, dims_};
    }

    const std::vector<double>& values() const { return values_; }

    /// Copies the given row of `src` onto the end of this dataset.
    /// Throws DimensionError if the widths differ.
    void append_row(std::span<const double> row);

    bool operator==(const Dataset&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t dims_ = 0;
    std::vector<double> values_;
};

}  // namespace rbmve

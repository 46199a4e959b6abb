#include "rbmve/dataset.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "rbmve/errors.hpp"

namespace rbmve {

Dataset::Dataset(std::size_t rows, std::size_t dims)
    : rows_(rows), dims_(dims), values_(rows * dims, 0.0) {}

Dataset Dataset::from_values(std::size_t rows, std::size_t dims,
                             std::vector<double> values) {
    if (rows < 1 || dims < 1) {
        throw DimensionError("dataset must have at least one row and one column, got " +
                             std::to_string(rows) + "x" + std::to_string(dims));
    }
    if (values.size() != rows * dims) {
        throw DimensionError("expected " + std::to_string(rows * dims) +
                             " values for a " + std::to_string(rows) + "x" +
                             std::to_string(dims) + " dataset, got " +
                             std::to_string(values.size()));
    }
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < dims; ++j) {
            const double v = values[i * dims + j];
            if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
                throw RangeError("value " + std::to_string(v) + " at row " +
                                     std::to_string(i + 1) + ", column " +
                                     std::to_string(j + 1) +
                                     " is outside [0, 1]",
                                 i + 1, j + 1);
            }
        }
    }
    Dataset d;
    d.rows_ = rows;
    d.dims_ = dims;
    d.values_ = std::move(values);
    return d;
}

void Dataset::append_row(std::span<const double> row) {
    if (dims_ == 0) dims_ = row.size();
    if (row.size() != dims_) {
        throw DimensionError("appending a row of width " +
                             std::to_string(row.size()) + " to a dataset of width " +
                             std::to_string(dims_));
    }
    values_.insert(values_.end(), row.begin(), row.end());
    ++rows_;
}

}  // namespace rbmve

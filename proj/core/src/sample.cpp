#include "qmelab/sample.hpp"

#include <cmath>
#include <utility>

#include "qmelab/errors.hpp"

namespace qmelab {

namespace {

void validate_entries(const std::vector<double>& data, std::size_t dim) {
    if (dim == 0) {
        throw ValidationError("sample dimension must be at least 1");
    }
    if (data.empty()) {
        throw ValidationError("sample must contain at least one point");
    }
    if (data.size() % dim != 0) {
        throw ValidationError("sample data length is not a multiple of the point dimension");
    }
    for (double v : data) {
        if (!std::isfinite(v)) {
            throw ValidationError("sample entries must be finite");
        }
    }
}

} // namespace

Sample::Sample(std::vector<double> scalars) : Sample(std::move(scalars), 1) {}

Sample::Sample(std::vector<double> data, std::size_t dim) : data_(std::move(data)), dim_(dim) {
    validate_entries(data_, dim_);
}

double Sample::scalar(std::size_t i) const {
    if (dim_ != 1) {
        throw DimensionMismatchError("scalar access requires a one-dimensional sample");
    }
    return data_[i];
}

double Sample::abs_max() const noexcept {
    double m = 0.0;
    for (double v : data_) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

} // namespace qmelab

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qmelab {

// An ordered finite list of D-dimensional real points, stored row-major.
// Duplicates are allowed and order is preserved: a Sample is a multiset with
// stable order. All entries are finite and the list is nonempty; the
// constructors enforce this.
class Sample {
public:
    Sample() = default;

    // Scalar sample (dim = 1).
    explicit Sample(std::vector<double> scalars);

    // D-dimensional sample, data.size() must be a multiple of dim.
    Sample(std::vector<double> data, std::size_t dim);

    std::size_t size() const noexcept { return dim_ == 0 ? 0 : data_.size() / dim_; }
    std::size_t dim() const noexcept { return dim_; }
    bool is_scalar() const noexcept { return dim_ == 1; }

    std::span<const double> point(std::size_t i) const noexcept {
        return {data_.data() + i * dim_, dim_};
    }

    // Value of point i; requires dim() == 1.
    double scalar(std::size_t i) const;

    const std::vector<double>& data() const noexcept { return data_; }

    // Largest |entry| over all points and coordinates.
    double abs_max() const noexcept;

private:
    std::vector<double> data_;
    std::size_t dim_ = 0;
};

} // namespace qmelab

#pragma once

#include <string>
#include <string_view>

#include "qmelab/rng.hpp"
#include "qmelab/sample.hpp"

namespace qmelab {

// Synthetic scalar data sources for experiments. Parsed from
//   gaussian:<mean>,<stddev>
//   uniform:<a>,<b>
//   mixture:<m1>,<s1>,<m2>,<s2>,<w1>
// where w1 is the weight of the first Gaussian component.
struct DistributionSpec {
    enum class Kind { Gaussian, Uniform, Mixture };
    Kind kind = Kind::Gaussian;
    double a = 0.0;       // gaussian/mixture mean 1, uniform lower bound
    double b = 1.0;       // gaussian/mixture stddev 1, uniform upper bound
    double a2 = 0.0;      // mixture mean 2
    double b2 = 1.0;      // mixture stddev 2
    double weight = 0.5;  // mixture weight of component 1

    static DistributionSpec parse(std::string_view text);
    std::string to_string() const;
    void validate() const;
};

// Draws from a DistributionSpec on a SplitMix64 stream. Standard normals
// come from the Marsaglia polar method: draw u, v uniform in (-1, 1) until
// 0 < s = u^2 + v^2 < 1, return u sqrt(-2 ln s / s) and cache the matching
// v sqrt(-2 ln s / s) for the next call. Mixture draws consume one uniform
// for the component choice, then one standard normal. This ordering is part
// of the stream contract; reimplementations must follow it.
class DistributionSampler {
public:
    DistributionSampler(const DistributionSpec& spec, std::uint64_t seed)
        : spec_(spec), rng_(seed) {
        spec_.validate();
    }

    double next();
    Sample sample(std::size_t n);

private:
    double next_standard_normal();

    DistributionSpec spec_;
    SplitMix64 rng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace qmelab

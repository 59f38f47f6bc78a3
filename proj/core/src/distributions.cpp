#include "qmelab/distributions.hpp"

#include <charconv>
#include <cmath>
#include <vector>

#include "qmelab/errors.hpp"

namespace qmelab {

namespace {

std::vector<double> parse_params(std::string_view text) {
    std::vector<double> out;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const auto tok = text.substr(0, comma);
        double v = 0.0;
        const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
            throw ValidationError("cannot parse distribution parameter: " + std::string(tok));
        }
        out.push_back(v);
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

} // namespace

DistributionSpec DistributionSpec::parse(std::string_view text) {
    const auto colon = text.find(':');
    const auto name = text.substr(0, colon);
    const auto params =
        colon == std::string_view::npos ? std::vector<double>{} : parse_params(text.substr(colon + 1));

    DistributionSpec spec;
    if (name == "gaussian") {
        spec.kind = Kind::Gaussian;
        if (params.size() != 2) throw ValidationError("gaussian needs mean,stddev");
        spec.a = params[0];
        spec.b = params[1];
    } else if (name == "uniform") {
        spec.kind = Kind::Uniform;
        if (params.size() != 2) throw ValidationError("uniform needs a,b");
        spec.a = params[0];
        spec.b = params[1];
    } else if (name == "mixture") {
        spec.kind = Kind::Mixture;
        if (params.size() != 5) throw ValidationError("mixture needs m1,s1,m2,s2,w1");
        spec.a = params[0];
        spec.b = params[1];
        spec.a2 = params[2];
        spec.b2 = params[3];
        spec.weight = params[4];
    } else {
        throw ValidationError("unknown distribution: " + std::string(name));
    }
    spec.validate();
    return spec;
}

std::string DistributionSpec::to_string() const {
    switch (kind) {
        case Kind::Gaussian:
            return "gaussian:" + std::to_string(a) + "," + std::to_string(b);
        case Kind::Uniform:
            return "uniform:" + std::to_string(a) + "," + std::to_string(b);
        case Kind::Mixture:
            return "mixture:" + std::to_string(a) + "," + std::to_string(b) + "," +
                   std::to_string(a2) + "," + std::to_string(b2) + "," + std::to_string(weight);
    }
    return "unknown";
}

void DistributionSpec::validate() const {
    switch (kind) {
        case Kind::Gaussian:
            if (!(b > 0.0)) throw ValidationError("gaussian stddev must be positive");
            break;
        case Kind::Uniform:
            if (!(a < b)) throw ValidationError("uniform needs a < b");
            break;
        case Kind::Mixture:
            if (!(b > 0.0 && b2 > 0.0)) throw ValidationError("mixture stddevs must be positive");
            if (!(weight >= 0.0 && weight <= 1.0)) throw ValidationError("mixture weight must lie in [0, 1]");
            break;
    }
}

double DistributionSampler::next_standard_normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * rng_.next_double() - 1.0;
        v = 2.0 * rng_.next_double() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double scale = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * scale;
    has_spare_ = true;
    return u * scale;
}

double DistributionSampler::next() {
    switch (spec_.kind) {
        case DistributionSpec::Kind::Gaussian:
            return spec_.a + spec_.b * next_standard_normal();
        case DistributionSpec::Kind::Uniform:
            return spec_.a + (spec_.b - spec_.a) * rng_.next_double();
        case DistributionSpec::Kind::Mixture: {
            const bool first = rng_.next_double() < spec_.weight;
            const double z = next_standard_normal();
            return first ? spec_.a + spec_.b * z : spec_.a2 + spec_.b2 * z;
        }
    }
    throw ValidationError("unknown distribution kind");
}

Sample DistributionSampler::sample(std::size_t n) {
    if (n == 0) {
        throw ValidationError("cannot draw an empty sample");
    }
    std::vector<double> v(n);
    for (auto& x : v) {
        x = next();
    }
    return Sample(std::move(v));
}

} // namespace qmelab

#include "qmelab/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <vector>

#include "qmelab/errors.hpp"
#include "qmelab/kernel.hpp"
#include "qmelab/rng.hpp"

namespace qmelab {

namespace {

double reference_point(const Sample& x, const ReferenceRule& rule) {
    switch (rule.kind) {
        case ReferenceRule::Kind::ExplicitPoint:
            return rule.point;
        case ReferenceRule::Kind::SampleMean: {
            double s = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                s += x.scalar(i);
            }
            return s / static_cast<double>(x.size());
        }
        case ReferenceRule::Kind::Median: {
            std::vector<double> v(x.data());
            std::sort(v.begin(), v.end());
            const std::size_t n = v.size();
            return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
        }
    }
    throw ValidationError("unknown reference rule");
}

// Overlap of two prepared states, exact or shot-sampled, recovered under the
// positivity guarantee of the Gaussian-kernel coherent map.
ShotEstimate overlap_estimate(const PureState& a, const PureState& b, PathMode mode,
                              std::uint64_t shots, std::uint64_t seed, CostLedger& ledger) {
    if (mode == PathMode::Exact) {
        ShotEstimate est;
        est.value = inner(a, b).real();
        est.seed = seed;
        return est;
    }
    return recover_inner_positive(run_swap_shots(a, b, shots, seed, &ledger));
}

struct NormParts {
    ShotEstimate norm;
    ShotEstimate overlap;
    double c = 0.0;
    double x_ref = 0.0;
};

// Shared by the standalone norm estimator and estimate_K: the prepared cat
// state and truncation dimension come from the caller so every state in one
// run lives in the same Fock space.
NormParts norm_via_reference(const Sample& x, double x_ref, const PureState& nu,
                             const QmePipelineConfig& cfg, PathMode mode, std::uint64_t seed,
                             int dim, CostLedger& ledger) {
    const KernelSpec spec{KernelFamily::Gaussian, cfg.sigma};
    NormParts parts;
    parts.x_ref = x_ref;
    parts.c = mean_inner(spec, Sample(std::vector<double>{x_ref}), x, &ledger);

    const PureState psi_ref = coherent_feature(x_ref, cfg.sigma, dim, cfg.truncation.tol);
    ledger.state_preps += 1;
    parts.overlap = overlap_estimate(psi_ref, nu, mode, cfg.shots_per_inner, seed, ledger);

    if (parts.overlap.value < cfg.overlap_floor) {
        throw OverlapTooSmallError("reference overlap " + std::to_string(parts.overlap.value) +
                                   " below floor " + std::to_string(cfg.overlap_floor) +
                                   " for x_ref = " + std::to_string(x_ref));
    }

    parts.norm.value = parts.c / parts.overlap.value;
    parts.norm.shots = parts.overlap.shots;
    parts.norm.seed = seed;
    parts.norm.clamped = parts.overlap.clamped;
    // N = c / o: first-order error propagation through the quotient.
    parts.norm.std_error =
        parts.c / (parts.overlap.value * parts.overlap.value) * parts.overlap.std_error;
    return parts;
}

int covering_dim(const QmePipelineConfig& cfg, std::initializer_list<double> refs) {
    double u = cfg.truncation.x_abs_max_over_sigma;
    for (double r : refs) {
        u = std::max(u, std::abs(r) / cfg.sigma);
    }
    return min_truncation_dim(u, cfg.truncation.tol);
}

std::uint64_t elapsed_ns(std::chrono::steady_clock::time_point t0) {
    return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(
                                          std::chrono::steady_clock::now() - t0)
                                          .count());
}

} // namespace

PathMode path_mode_from_string(std::string_view name) {
    if (name == "exact" || name == "quantum-exact") return PathMode::Exact;
    if (name == "sampled" || name == "quantum-sampled") return PathMode::Sampled;
    throw ValidationError("unknown path mode: " + std::string(name));
}

ReferenceRule ReferenceRule::parse(std::string_view text) {
    ReferenceRule rule;
    if (text == "mean") {
        rule.kind = Kind::SampleMean;
        return rule;
    }
    if (text == "median") {
        rule.kind = Kind::Median;
        return rule;
    }
    if (text.starts_with("point=")) {
        rule.kind = Kind::ExplicitPoint;
        const auto v = text.substr(6);
        const auto res = std::from_chars(v.data(), v.data() + v.size(), rule.point);
        if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) {
            throw ValidationError("cannot parse reference point value: " + std::string(v));
        }
        return rule;
    }
    throw ValidationError("reference rule must be mean, median, or point=<x>");
}

std::string ReferenceRule::to_string() const {
    switch (kind) {
        case Kind::SampleMean: return "mean";
        case Kind::Median: return "median";
        case Kind::ExplicitPoint: return "point=" + std::to_string(point);
    }
    return "unknown";
}

void QmePipelineConfig::validate() const {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw ValidationError("pipeline sigma must be positive and finite");
    }
    truncation.validate();
    if (shots_per_inner < 1) {
        throw ValidationError("shots_per_inner must be at least 1");
    }
    if (!(overlap_floor > 0.0 && overlap_floor < 1.0)) {
        throw ValidationError("overlap_floor must lie in (0, 1)");
    }
}

nlohmann::json QmePipelineConfig::to_json() const {
    return {{"sigma", sigma},
            {"truncation_tol", truncation.tol},
            {"x_abs_max_over_sigma", truncation.x_abs_max_over_sigma},
            {"shots_per_inner", shots_per_inner},
            {"reference", reference_rule.to_string()},
            {"overlap_floor", overlap_floor}};
}

nlohmann::json NormEstimate::to_json() const {
    return {{"norm", norm.to_json()},
            {"overlap_ref", overlap_ref.to_json()},
            {"c", c},
            {"x_ref", x_ref}};
}

NormEstimate estimate_norm_via_reference(const Sample& x, const QmePipelineConfig& cfg,
                                         PathMode mode, std::uint64_t seed, CostLedger* ledger) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    NormEstimate out;
    const double x_ref = reference_point(x, cfg.reference_rule);
    const int dim = covering_dim(cfg, {x_ref});
    const PureState nu = qme_state(x, cfg.sigma, cfg.truncation, dim, &out.ledger);
    const NormParts parts = norm_via_reference(x, x_ref, nu, cfg, mode, seed, dim, out.ledger);
    out.norm = parts.norm;
    out.overlap_ref = parts.overlap;
    out.c = parts.c;
    out.x_ref = parts.x_ref;
    out.ledger.wall_time_ns = elapsed_ns(t0);
    if (ledger != nullptr) {
        *ledger += out.ledger;
    }
    return out;
}

nlohmann::json KXYEstimate::to_json() const {
    return {{"value", value},
            {"stderr", std_error},
            {"c_x", c_x},
            {"c_y", c_y},
            {"overlap_ref_x", overlap_ref_x.to_json()},
            {"overlap_ref_y", overlap_ref_y.to_json()},
            {"overlap_xy", overlap_xy.to_json()}};
}

KXYEstimate estimate_K(const Sample& x, const Sample& y, const QmePipelineConfig& cfg,
                       PathMode mode, std::uint64_t seed) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    KXYEstimate out;

    const double ref_x = reference_point(x, cfg.reference_rule);
    const double ref_y = reference_point(y, cfg.reference_rule);
    const int dim = covering_dim(cfg, {ref_x, ref_y});

    const PureState nu_x = qme_state(x, cfg.sigma, cfg.truncation, dim, &out.ledger);
    const PureState nu_y = qme_state(y, cfg.sigma, cfg.truncation, dim, &out.ledger);

    const NormParts nx =
        norm_via_reference(x, ref_x, nu_x, cfg, mode, derive_stream(seed, 0), dim, out.ledger);
    const NormParts ny =
        norm_via_reference(y, ref_y, nu_y, cfg, mode, derive_stream(seed, 1), dim, out.ledger);
    const ShotEstimate oxy = overlap_estimate(nu_x, nu_y, mode, cfg.shots_per_inner,
                                              derive_stream(seed, 2), out.ledger);

    out.value = nx.norm.value * ny.norm.value * oxy.value;
    // Product of three independent estimates: sum the squared partials.
    const double d_nx = ny.norm.value * oxy.value * nx.norm.std_error;
    const double d_ny = nx.norm.value * oxy.value * ny.norm.std_error;
    const double d_o = nx.norm.value * ny.norm.value * oxy.std_error;
    out.std_error = std::sqrt(d_nx * d_nx + d_ny * d_ny + d_o * d_o);

    out.c_x = nx.c;
    out.c_y = ny.c;
    out.overlap_ref_x = nx.overlap;
    out.overlap_ref_y = ny.overlap;
    out.overlap_xy = oxy;
    out.ledger.wall_time_ns = elapsed_ns(t0);
    return out;
}

nlohmann::json MmdSqEstimate::to_json() const {
    return {{"estimate", estimate.to_json()},
            {"norm_x", norm_x.to_json()},
            {"norm_y", norm_y.to_json()},
            {"overlap_xy", overlap_xy.to_json()},
            {"c_x", c_x},
            {"c_y", c_y}};
}

MmdSqEstimate estimate_mmd_sq(const Sample& x, const Sample& y, const QmePipelineConfig& cfg,
                              PathMode mode, std::uint64_t seed) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    MmdSqEstimate out;

    const double ref_x = reference_point(x, cfg.reference_rule);
    const double ref_y = reference_point(y, cfg.reference_rule);
    const int dim = covering_dim(cfg, {ref_x, ref_y});

    const PureState nu_x = qme_state(x, cfg.sigma, cfg.truncation, dim, &out.ledger);
    const PureState nu_y = qme_state(y, cfg.sigma, cfg.truncation, dim, &out.ledger);

    const NormParts nx =
        norm_via_reference(x, ref_x, nu_x, cfg, mode, derive_stream(seed, 0), dim, out.ledger);
    const NormParts ny =
        norm_via_reference(y, ref_y, nu_y, cfg, mode, derive_stream(seed, 1), dim, out.ledger);
    const ShotEstimate oxy = overlap_estimate(nu_x, nu_y, mode, cfg.shots_per_inner,
                                              derive_stream(seed, 2), out.ledger);

    const double a = nx.norm.value;
    const double b = ny.norm.value;
    const double o = oxy.value;
    out.estimate.value = a * a + b * b - 2.0 * a * b * o;
    // Delta method on f(a, b, o) = a^2 + b^2 - 2 a b o.
    const double da = (2.0 * a - 2.0 * b * o) * nx.norm.std_error;
    const double db = (2.0 * b - 2.0 * a * o) * ny.norm.std_error;
    const double doo = 2.0 * a * b * oxy.std_error;
    out.estimate.std_error = std::sqrt(da * da + db * db + doo * doo);
    out.estimate.shots = nx.norm.shots + ny.norm.shots + oxy.shots;
    out.estimate.seed = seed;
    out.estimate.clamped = nx.norm.clamped || ny.norm.clamped || oxy.clamped;

    out.norm_x = nx.norm;
    out.norm_y = ny.norm;
    out.overlap_xy = oxy;
    out.c_x = nx.c;
    out.c_y = ny.c;
    out.ledger.wall_time_ns = elapsed_ns(t0);
    return out;
}

} // namespace qmelab

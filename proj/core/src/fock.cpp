#include "qmelab/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "qmelab/errors.hpp"

namespace qmelab {

namespace {

double norm_sq(std::span<const std::complex<double>> amps) {
    double s = 0.0;
    for (const auto& a : amps) {
        s += std::norm(a);
    }
    return s;
}

} // namespace

void TruncationPolicy::validate() const {
    if (!(tol > 0.0 && tol < 1.0)) {
        throw ValidationError("truncation tolerance must lie in (0, 1)");
    }
    if (!(x_abs_max_over_sigma >= 0.0) || !std::isfinite(x_abs_max_over_sigma)) {
        throw ValidationError("x_abs_max_over_sigma must be finite and nonnegative");
    }
}

int TruncationPolicy::policy_dim() const {
    validate();
    return min_truncation_dim(x_abs_max_over_sigma, tol);
}

PureState::PureState(std::vector<std::complex<double>> amplitudes, double lost_tail_mass)
    : amps_(std::move(amplitudes)), lost_tail_mass_(lost_tail_mass) {
    if (amps_.empty()) {
        throw ValidationError("a pure state needs dimension at least 1");
    }
    for (const auto& a : amps_) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw ValidationError("state amplitudes must be finite");
        }
    }
    const double n2 = norm_sq(amps_);
    if (!(n2 > 1e-300)) {
        throw ValidationError("cannot normalize a numerically zero state vector");
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& a : amps_) {
        a *= inv;
    }
}

nlohmann::json PureState::to_json() const {
    nlohmann::json amps = nlohmann::json::array();
    for (const auto& a : amps_) {
        amps.push_back({a.real(), a.imag()});
    }
    return {{"dim", dim()}, {"amplitudes", std::move(amps)}, {"lost_tail_mass", lost_tail_mass_}};
}

PureState PureState::from_json(const nlohmann::json& j) {
    std::vector<std::complex<double>> amps;
    for (const auto& pair : j.at("amplitudes")) {
        amps.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
    }
    return PureState(std::move(amps), j.value("lost_tail_mass", 0.0));
}

int min_truncation_dim(double u_max, double tol) {
    if (!(tol > 0.0 && tol < 1.0)) {
        throw ValidationError("truncation tolerance must lie in (0, 1)");
    }
    if (!(u_max >= 0.0) || !std::isfinite(u_max)) {
        throw ValidationError("u_max must be finite and nonnegative");
    }
    const double lambda = u_max * u_max;
    if (lambda == 0.0) {
        return 1;
    }
    if (lambda > 1e6) {
        throw ValidationError("|x|/sigma too large; truncated simulation would need over a million Fock levels");
    }

    // Poisson(lambda) weights relative to the mode, spreading the recurrence
    // outward from there: exp(-lambda) underflows past lambda ~ 745, the
    // mode-relative weights never do (their sum is ~sqrt(2 pi lambda)).
    const std::size_t cutoff =
        static_cast<std::size_t>(lambda + 40.0 * std::sqrt(lambda) + 128.0);
    const std::size_t mode = static_cast<std::size_t>(lambda);
    std::vector<double> w(cutoff + 1);
    w[mode] = 1.0;
    for (std::size_t n = mode; n-- > 0;) {
        w[n] = w[n + 1] * static_cast<double>(n + 1) / lambda;
    }
    for (std::size_t n = mode; n < cutoff; ++n) {
        w[n + 1] = w[n] * lambda / static_cast<double>(n + 1);
    }
    double total = 0.0;
    for (double v : w) {
        total += v;
    }

    // Backward tail accumulation; mass beyond the cutoff is below 1e-300.
    double tail = 0.0;
    for (std::size_t d = cutoff + 1; d-- > 1;) {
        tail += w[d];
        if (tail > tol * total) {
            return static_cast<int>(d + 1);
        }
    }
    return 1;
}

PureState coherent_feature(double x, double sigma, int dim, double tol) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw ValidationError("sigma must be positive and finite");
    }
    if (!std::isfinite(x)) {
        throw ValidationError("data point must be finite");
    }
    if (dim < 1) {
        throw TruncationError("truncation dimension must be at least 1");
    }
    const double u = x / sigma;
    // exp(-u^2/2) underflows past |u| ~ 38; the recurrence cannot start there.
    if (std::abs(u) > 37.0) {
        throw ValidationError("coherent amplitudes underflow for |x|/sigma > 37");
    }
    const int needed = min_truncation_dim(std::abs(u), tol);
    if (dim < needed) {
        throw TruncationError("dim " + std::to_string(dim) + " too small: |x|/sigma = " +
                              std::to_string(std::abs(u)) + " needs at least " +
                              std::to_string(needed) + " Fock levels at tol " +
                              std::to_string(tol));
    }

    std::vector<std::complex<double>> amps(static_cast<std::size_t>(dim));
    double a = std::exp(-0.5 * u * u);
    for (int n = 0; n < dim; ++n) {
        amps[static_cast<std::size_t>(n)] = a;
        a *= u / std::sqrt(static_cast<double>(n + 1));
    }
    const double kept = norm_sq(amps);
    const double lost = std::max(0.0, 1.0 - kept);
    return PureState(std::move(amps), lost);
}

PureState superpose(std::span<const PureState> states, std::span<const double> weights) {
    if (states.empty() || states.size() != weights.size()) {
        throw ValidationError("superpose needs matching nonempty states and weights");
    }
    const std::size_t d = states[0].dim();
    double lost = 0.0;
    std::vector<std::complex<double>> acc(d, {0.0, 0.0});
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (states[i].dim() != d) {
            throw DimensionMismatchError("superposed states must share the dimension");
        }
        if (!std::isfinite(weights[i])) {
            throw ValidationError("superposition weights must be finite");
        }
        const auto amps = states[i].amplitudes();
        for (std::size_t n = 0; n < d; ++n) {
            acc[n] += weights[i] * amps[n];
        }
        lost = std::max(lost, states[i].lost_tail_mass());
    }
    if (!(norm_sq(acc) > 1e-300)) {
        throw ValidationError("superposition cancelled to the zero vector");
    }
    return PureState(std::move(acc), lost);
}

PureState qme_state(const Sample& x, double sigma, const TruncationPolicy& policy,
                    CostLedger* ledger) {
    return qme_state(x, sigma, policy, policy.policy_dim(), ledger);
}

PureState qme_state(const Sample& x, double sigma, const TruncationPolicy& policy, int dim,
                    CostLedger* ledger) {
    policy.validate();
    if (x.size() == 0) {
        throw ValidationError("qme_state requires a nonempty sample");
    }
    if (!x.is_scalar()) {
        throw DimensionMismatchError("the coherent feature map is univariate; sample must be scalar");
    }
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw ValidationError("sigma must be positive and finite");
    }
    if (dim < policy.policy_dim()) {
        throw TruncationError("explicit dim is below the policy minimum " +
                              std::to_string(policy.policy_dim()));
    }
    const double u_max = x.abs_max() / sigma;
    if (u_max > policy.x_abs_max_over_sigma) {
        throw ValidationError("sample exceeds the truncation policy range: max |x|/sigma = " +
                              std::to_string(u_max) + " > " +
                              std::to_string(policy.x_abs_max_over_sigma));
    }

    std::vector<PureState> features;
    features.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        features.push_back(coherent_feature(x.scalar(i), sigma, dim, policy.tol));
    }
    const std::vector<double> weights(x.size(), 1.0);
    if (ledger != nullptr) {
        ledger->state_preps += x.size();
    }
    return superpose(features, weights);
}

std::complex<double> inner(const PureState& a, const PureState& b) {
    if (a.dim() != b.dim()) {
        throw DimensionMismatchError("inner product requires equal state dimensions");
    }
    std::complex<double> s{0.0, 0.0};
    const auto av = a.amplitudes();
    const auto bv = b.amplitudes();
    for (std::size_t n = 0; n < av.size(); ++n) {
        s += std::conj(av[n]) * bv[n];
    }
    return s;
}

} // namespace qmelab

#pragma once

#include <complex>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "qmelab/cost.hpp"
#include "qmelab/sample.hpp"

namespace qmelab {

// Simulation-side truncation policy: the largest |x|/sigma a run must cover
// and the maximum probability mass the Fock cutoff may discard.
struct TruncationPolicy {
    double tol = 1e-12;
    double x_abs_max_over_sigma = 3.0;

    void validate() const;

    // min_truncation_dim(x_abs_max_over_sigma, tol)
    int policy_dim() const;
};

// Unit-norm pure state over the truncated Fock basis |0>, ..., |d-1>.
// Immutable after construction; every constructor renormalizes, so the
// L2 norm is 1 within 1e-12 unconditionally. lost_tail_mass records how much
// probability mass the truncation discarded before renormalization.
class PureState {
public:
    explicit PureState(std::vector<std::complex<double>> amplitudes, double lost_tail_mass = 0.0);

    std::size_t dim() const noexcept { return amps_.size(); }
    std::span<const std::complex<double>> amplitudes() const noexcept { return amps_; }
    double lost_tail_mass() const noexcept { return lost_tail_mass_; }

    // {dim, amplitudes: [[re, im], ...], lost_tail_mass}
    nlohmann::json to_json() const;
    static PureState from_json(const nlohmann::json& j);

private:
    std::vector<std::complex<double>> amps_;
    double lost_tail_mass_ = 0.0;
};

// Smallest d such that the Poisson(u_max^2) tail mass sum_{n>=d} e^{-u^2}
// u^{2n} / n! is at most tol, i.e. the coherent state of any |u| <= u_max
// fits in d Fock levels up to tol. Computed by direct tail summation with a
// backward accumulation; monotone nondecreasing in u_max and nonincreasing
// in tol. Returns at least 1.
int min_truncation_dim(double u_max, double tol);

// Coherent feature state |phi(x)>: amplitude on |n> proportional to
// exp(-u^2/2) u^n / sqrt(n!) with u = x/sigma. Amplitudes are built by the
// multiplicative recurrence a_{n+1} = a_n u / sqrt(n+1) (n! overflows doubles
// at n = 171) and renormalized after truncation, with the discarded mass
// recorded. Throws TruncationError when dim < min_truncation_dim(|u|, tol).
PureState coherent_feature(double x, double sigma, int dim, double tol = 1e-12);

// L2 normalization of sum_i weights[i] * states[i]. States must share the
// dimension; the accumulation runs in argument order. Throws if the
// unnormalized vector is numerically zero (possible only with signed
// weights).
PureState superpose(std::span<const PureState> states, std::span<const double> weights);

// Empirical quantum mean embedding of a scalar sample: the equal-weight
// superposition of its coherent feature states (a cat state). Normalization
// is intrinsic; callers never supply it. The truncation dimension comes from
// the policy unless an explicit dim (>= the policy dimension) is given.
// Adds |X| state preparations to the ledger if one is given.
PureState qme_state(const Sample& x, double sigma, const TruncationPolicy& policy,
                    CostLedger* ledger = nullptr);
PureState qme_state(const Sample& x, double sigma, const TruncationPolicy& policy, int dim,
                    CostLedger* ledger = nullptr);

// <a|b>, conjugate-linear in the first argument.
std::complex<double> inner(const PureState& a, const PureState& b);

} // namespace qmelab

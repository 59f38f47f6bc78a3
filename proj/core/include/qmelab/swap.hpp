#pragma once

#include <cstdint>

#include <nlohmann/json.hpp>

#include "qmelab/cost.hpp"
#include "qmelab/fock.hpp"

namespace qmelab {

// A Monte-Carlo estimate together with its provenance. shots == 0 marks an
// exact (noise-free) evaluation; otherwise identical (inputs, shots, seed)
// reproduce the identical estimate.
struct ShotEstimate {
    double value = 0.0;
    std::uint64_t shots = 0;
    double std_error = 0.0;
    std::uint64_t seed = 0;
    bool clamped = false;

    // {value, shots, stderr, seed, clamped}
    nlohmann::json to_json() const;
};

struct SwapProbabilities {
    double p0 = 1.0;
    double p1 = 0.0;
};

// Ancilla outcome distribution of the swap test on states a, b:
//   p1 = (1 - |<a|b>|^2) / 2,  p0 = 1 - p1,
// so p0 + p1 == 1 exactly.
SwapProbabilities swap_probabilities(const PureState& a, const PureState& b);

// Draws `shots` Bernoulli(p0) ancilla outcomes from the exact distribution
// and returns the estimate of |<a|b>|^2 = 2 p0_hat - 1 (negative values from
// noise are preserved, not clamped). std_error is 2 sqrt(p0_hat (1 - p0_hat)
// / shots). Sampling is split into fixed 65536-shot batches, batch i drawn
// from SplitMix64(derive_stream(seed, i)); batches merge by summing counts,
// so concurrent sampling gives the identical estimate. Adds `shots` to the
// ledger if one is given.
ShotEstimate run_swap_shots(const PureState& a, const PureState& b, std::uint64_t shots,
                            std::uint64_t seed, CostLedger* ledger = nullptr);

// Recovers <a|b> = sqrt(|<a|b>|^2) under the positivity guarantee that holds
// for Gaussian-kernel coherent superpositions. Negative inputs clamp to zero
// with the clamped flag set. The standard error is propagated by the delta
// method where the estimate clears its own noise floor (value > stderr) and
// reported as the half-width of the recovered interval otherwise.
ShotEstimate recover_inner_positive(const ShotEstimate& overlap_sq);

} // namespace qmelab

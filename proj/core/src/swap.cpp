#include "qmelab/swap.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "qmelab/errors.hpp"
#include "qmelab/rng.hpp"

namespace qmelab {

namespace {

constexpr std::uint64_t kShotBatch = 65536;

} // namespace

nlohmann::json ShotEstimate::to_json() const {
    return {{"value", value},
            {"shots", shots},
            {"stderr", std_error},
            {"seed", seed},
            {"clamped", clamped}};
}

SwapProbabilities swap_probabilities(const PureState& a, const PureState& b) {
    const double overlap_sq = std::norm(inner(a, b));
    SwapProbabilities p;
    p.p1 = (1.0 - std::min(overlap_sq, 1.0)) / 2.0;
    p.p0 = 1.0 - p.p1;
    return p;
}

ShotEstimate run_swap_shots(const PureState& a, const PureState& b, std::uint64_t shots,
                            std::uint64_t seed, CostLedger* ledger) {
    if (shots < 1) {
        throw ValidationError("run_swap_shots needs at least one shot");
    }
    const double p0 = swap_probabilities(a, b).p0;

    std::uint64_t zeros = 0;
    const std::uint64_t batches = (shots + kShotBatch - 1) / kShotBatch;
    for (std::uint64_t batch = 0; batch < batches; ++batch) {
        SplitMix64 rng(derive_stream(seed, batch));
        const std::uint64_t batch_shots = std::min(kShotBatch, shots - batch * kShotBatch);
        for (std::uint64_t s = 0; s < batch_shots; ++s) {
            if (rng.next_double() < p0) {
                ++zeros;
            }
        }
    }

    const double p0_hat = static_cast<double>(zeros) / static_cast<double>(shots);
    ShotEstimate est;
    est.value = 2.0 * p0_hat - 1.0;
    est.shots = shots;
    est.std_error = 2.0 * std::sqrt(p0_hat * (1.0 - p0_hat) / static_cast<double>(shots));
    est.seed = seed;
    if (ledger != nullptr) {
        ledger->swap_shots += shots;
    }
    return est;
}

ShotEstimate recover_inner_positive(const ShotEstimate& overlap_sq) {
    ShotEstimate out;
    out.shots = overlap_sq.shots;
    out.seed = overlap_sq.seed;
    out.clamped = overlap_sq.value < 0.0;
    out.value = std::sqrt(std::max(0.0, overlap_sq.value));
    if (overlap_sq.value > overlap_sq.std_error) {
        out.std_error = overlap_sq.std_error / (2.0 * out.value);
    } else {
        // Too close to zero for the delta method; report half the width of
        // the recovered interval [sqrt(max(0, v - se)), sqrt(max(0, v + se))].
        const double hi = std::sqrt(std::max(0.0, overlap_sq.value + overlap_sq.std_error));
        const double lo = std::sqrt(std::max(0.0, overlap_sq.value - overlap_sq.std_error));
        out.std_error = (hi - lo) / 2.0;
    }
    return out;
}

} // namespace qmelab

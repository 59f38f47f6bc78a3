#pragma once

#include <cstdint>

namespace qmelab {

// Abstract resource counters backing the scaling claims. Counts are
// deterministic functions of operation and input sizes, never of data
// values. Merging ledgers from concurrent subtasks is componentwise
// addition, so a merged ledger equals the sequential one.
struct CostLedger {
    std::uint64_t kernel_evals = 0;
    std::uint64_t state_preps = 0;
    std::uint64_t swap_shots = 0;
    std::uint64_t wall_time_ns = 0; // measured, informational only

    CostLedger& operator+=(const CostLedger& other) noexcept {
        kernel_evals += other.kernel_evals;
        state_preps += other.state_preps;
        swap_shots += other.swap_shots;
        wall_time_ns += other.wall_time_ns;
        return *this;
    }

    friend CostLedger operator+(CostLedger a, const CostLedger& b) noexcept {
        a += b;
        return a;
    }

    friend bool operator==(const CostLedger&, const CostLedger&) = default;
};

} // namespace qmelab

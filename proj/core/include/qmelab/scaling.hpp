#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "qmelab/cost.hpp"
#include "qmelab/pipeline.hpp"

namespace qmelab {

// Least-squares fit of log(count) against log(n).
struct ScalingFit {
    double exponent = 0.0;
    double r_squared = 0.0;
};

// Needs at least 4 points, n strictly increasing, counts positive. A constant
// series fits exponent 0 with r_squared 1.
ScalingFit scaling_fit(std::span<const std::pair<double, double>> points);

// One (sample size, path) row of a path-comparison run.
struct ComparePathsRow {
    std::size_t n = 0;
    std::string path; // "classical" | "quantum"
    CostLedger ledger;
    double value = 0.0; // the K(X,Y) produced along the way, for eyeballing
};

struct ComparePathsReport {
    std::vector<ComparePathsRow> rows;
    ScalingFit classical_kernel_evals;
    ScalingFit quantum_kernel_evals;
    ScalingFit quantum_state_preps;
    ScalingFit quantum_swap_shots;
    // Exact count law: classical kernel_evals == n^2, quantum kernel_evals
    // == 2n, quantum swap_shots == 3 * shots_per_inner for every n.
    bool count_law_ok = false;
    std::uint64_t seed = 0;

    nlohmann::json to_json(bool include_wall_time = false) const;
    // n,path,kernel_evals,state_preps,swap_shots,wall_time_ns
    std::string to_csv(bool include_wall_time = false) const;
};

// Runs classical mean_inner and the sampled quantum estimate_K on identical
// random inputs per size (uniform draws over 90% of the policy range, stream
// derived from the seed and the size index) and fits the ledger exponents.
ComparePathsReport compare_paths(std::span<const std::size_t> sizes,
                                 const QmePipelineConfig& cfg, std::uint64_t seed);

} // namespace qmelab

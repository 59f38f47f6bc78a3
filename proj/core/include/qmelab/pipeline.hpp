#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "qmelab/cost.hpp"
#include "qmelab/fock.hpp"
#include "qmelab/sample.hpp"
#include "qmelab/swap.hpp"

namespace qmelab {

// Exact evaluates every overlap from the simulated state vectors (no shot
// noise, zero stderr); Sampled estimates each overlap with seeded swap-test
// shots.
enum class PathMode { Exact, Sampled };

PathMode path_mode_from_string(std::string_view name);

// How the reference point x_ref is chosen for normalization estimation.
struct ReferenceRule {
    enum class Kind { SampleMean, Median, ExplicitPoint };
    Kind kind = Kind::SampleMean;
    double point = 0.0; // ExplicitPoint only

    // "mean" | "median" | "point=<x>"
    static ReferenceRule parse(std::string_view text);
    std::string to_string() const;
};

struct QmePipelineConfig {
    double sigma = 1.0;
    TruncationPolicy truncation{};
    std::uint64_t shots_per_inner = 100000;
    ReferenceRule reference_rule{};
    double overlap_floor = 0.05;

    void validate() const;
    nlohmann::json to_json() const;
};

// Normalization estimate via a reference state: the classical O(n) sum
// c = (1/n) sum_i k(x_ref, x_i) divided by the measured overlap
// <psi_ref|nu_X>. Throws OverlapTooSmallError when the recovered overlap
// falls below cfg.overlap_floor.
struct NormEstimate {
    ShotEstimate norm;        // N_X = c / overlap
    ShotEstimate overlap_ref; // recovered <psi_ref|nu_X>
    double c = 0.0;           // classical reference sum
    double x_ref = 0.0;
    CostLedger ledger;

    nlohmann::json to_json() const;
};

NormEstimate estimate_norm_via_reference(const Sample& x, const QmePipelineConfig& cfg,
                                         PathMode mode, std::uint64_t seed,
                                         CostLedger* ledger = nullptr);

// K(X,Y) = N_X N_Y <nu_X|nu_Y> composed from two reference-normalization
// estimates and one swap-estimated overlap. Ledger: exactly |X| + |Y| kernel
// evaluations (the two c sums), |X| + |Y| + 2 state preparations, and
// 3 * shots_per_inner swap shots on the sampled path.
struct KXYEstimate {
    double value = 0.0;
    double std_error = 0.0;
    double c_x = 0.0;
    double c_y = 0.0;
    ShotEstimate overlap_ref_x;
    ShotEstimate overlap_ref_y;
    ShotEstimate overlap_xy;
    CostLedger ledger;

    nlohmann::json to_json() const;
};

KXYEstimate estimate_K(const Sample& x, const Sample& y, const QmePipelineConfig& cfg,
                       PathMode mode, std::uint64_t seed);

// MMD_b^2 = N_X^2 + N_Y^2 - 2 N_X N_Y <nu_X|nu_Y>. The self inner products
// reuse <nu|nu> = 1, so the three swap estimations are the two norms and one
// cross overlap; stderr composes by the delta method.
struct MmdSqEstimate {
    ShotEstimate estimate; // value over the total shot count
    ShotEstimate norm_x;
    ShotEstimate norm_y;
    ShotEstimate overlap_xy;
    double c_x = 0.0;
    double c_y = 0.0;
    CostLedger ledger;

    nlohmann::json to_json() const;
};

MmdSqEstimate estimate_mmd_sq(const Sample& x, const Sample& y, const QmePipelineConfig& cfg,
                              PathMode mode, std::uint64_t seed);

} // namespace qmelab

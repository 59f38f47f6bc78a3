#include "qmelab/scaling.hpp"

#include <chrono>
#include <cmath>

#include "qmelab/errors.hpp"
#include "qmelab/kernel.hpp"
#include "qmelab/rng.hpp"

namespace qmelab {

namespace {

Sample uniform_sample(std::size_t n, double half_range, SplitMix64& rng) {
    std::vector<double> v(n);
    for (auto& x : v) {
        x = half_range * (2.0 * rng.next_double() - 1.0);
    }
    return Sample(std::move(v));
}

nlohmann::json ledger_json(const CostLedger& ledger, bool include_wall_time) {
    return {{"kernel_evals", ledger.kernel_evals},
            {"state_preps", ledger.state_preps},
            {"swap_shots", ledger.swap_shots},
            {"wall_time_ns", include_wall_time ? ledger.wall_time_ns : 0}};
}

nlohmann::json fit_json(const ScalingFit& fit) {
    return {{"exponent", fit.exponent}, {"r_squared", fit.r_squared}};
}

} // namespace

ScalingFit scaling_fit(std::span<const std::pair<double, double>> points) {
    if (points.size() < 4) {
        throw ValidationError("scaling_fit needs at least 4 points");
    }
    double prev_n = 0.0;
    for (const auto& [n, count] : points) {
        if (!(n > prev_n)) {
            throw ValidationError("scaling_fit needs strictly increasing n");
        }
        if (!(count > 0.0)) {
            throw ValidationError("scaling_fit needs positive counts");
        }
        prev_n = n;
    }

    const double m = static_cast<double>(points.size());
    double sx = 0.0, sy = 0.0;
    for (const auto& [n, count] : points) {
        sx += std::log(n);
        sy += std::log(count);
    }
    const double mx = sx / m;
    const double my = sy / m;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [n, count] : points) {
        const double dx = std::log(n) - mx;
        const double dy = std::log(count) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }

    ScalingFit fit;
    fit.exponent = sxy / sxx;
    const double ss_res = syy - fit.exponent * sxy;
    // A constant series is a perfect fit of slope zero, not a degenerate one.
    if (syy <= 1e-24) {
        fit.r_squared = 1.0;
    } else {
        fit.r_squared = 1.0 - ss_res / syy;
    }
    return fit;
}

nlohmann::json ComparePathsReport::to_json(bool include_wall_time) const {
    nlohmann::json rows_json = nlohmann::json::array();
    for (const auto& row : rows) {
        rows_json.push_back({{"n", row.n},
                             {"path", row.path},
                             {"value", row.value},
                             {"ledger", ledger_json(row.ledger, include_wall_time)}});
    }
    return {{"rows", std::move(rows_json)},
            {"fits",
             {{"classical_kernel_evals", fit_json(classical_kernel_evals)},
              {"quantum_kernel_evals", fit_json(quantum_kernel_evals)},
              {"quantum_state_preps", fit_json(quantum_state_preps)},
              {"quantum_swap_shots", fit_json(quantum_swap_shots)}}},
            {"count_law_ok", count_law_ok},
            {"seed", seed}};
}

std::string ComparePathsReport::to_csv(bool include_wall_time) const {
    std::string out = "n,path,kernel_evals,state_preps,swap_shots,wall_time_ns\n";
    for (const auto& row : rows) {
        out += std::to_string(row.n) + "," + row.path + "," +
               std::to_string(row.ledger.kernel_evals) + "," +
               std::to_string(row.ledger.state_preps) + "," +
               std::to_string(row.ledger.swap_shots) + "," +
               std::to_string(include_wall_time ? row.ledger.wall_time_ns : 0) + "\n";
    }
    return out;
}

ComparePathsReport compare_paths(std::span<const std::size_t> sizes,
                                 const QmePipelineConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    if (sizes.size() < 4) {
        throw ValidationError("compare_paths needs at least 4 sizes");
    }
    for (std::size_t i = 1; i < sizes.size(); ++i) {
        if (sizes[i] <= sizes[i - 1]) {
            throw ValidationError("compare_paths sizes must be strictly increasing");
        }
    }
    if (sizes.front() == 0) {
        throw ValidationError("compare_paths sizes must be positive");
    }

    const KernelSpec spec{KernelFamily::Gaussian, cfg.sigma};
    const double half_range = 0.9 * cfg.truncation.x_abs_max_over_sigma * cfg.sigma;

    ComparePathsReport report;
    report.seed = seed;

    std::vector<std::pair<double, double>> pts_classical, pts_q_evals, pts_q_preps, pts_q_shots;
    bool law_ok = true;

    for (std::size_t i = 0; i < sizes.size(); ++i) {
        const std::size_t n = sizes[i];
        SplitMix64 rng(derive_stream(seed, i));
        const Sample x = uniform_sample(n, half_range, rng);
        const Sample y = uniform_sample(n, half_range, rng);

        ComparePathsRow classical;
        classical.n = n;
        classical.path = "classical";
        {
            const auto t0 = std::chrono::steady_clock::now();
            classical.value = mean_inner(spec, x, y, &classical.ledger);
            classical.ledger.wall_time_ns = static_cast<std::uint64_t>(
                std::chrono::duration_cast<std::chrono::nanoseconds>(
                    std::chrono::steady_clock::now() - t0)
                    .count());
        }

        ComparePathsRow quantum;
        quantum.n = n;
        quantum.path = "quantum";
        {
            const KXYEstimate est =
                estimate_K(x, y, cfg, PathMode::Sampled, derive_stream(seed, 1000 + i));
            quantum.value = est.value;
            quantum.ledger = est.ledger;
        }

        law_ok = law_ok &&
                 classical.ledger.kernel_evals == static_cast<std::uint64_t>(n) * n &&
                 quantum.ledger.kernel_evals == 2 * static_cast<std::uint64_t>(n) &&
                 quantum.ledger.swap_shots == 3 * cfg.shots_per_inner;

        const auto nd = static_cast<double>(n);
        pts_classical.emplace_back(nd, static_cast<double>(classical.ledger.kernel_evals));
        pts_q_evals.emplace_back(nd, static_cast<double>(quantum.ledger.kernel_evals));
        pts_q_preps.emplace_back(nd, static_cast<double>(quantum.ledger.state_preps));
        pts_q_shots.emplace_back(nd, static_cast<double>(quantum.ledger.swap_shots));

        report.rows.push_back(std::move(classical));
        report.rows.push_back(std::move(quantum));
    }

    report.classical_kernel_evals = scaling_fit(pts_classical);
    report.quantum_kernel_evals = scaling_fit(pts_q_evals);
    report.quantum_state_preps = scaling_fit(pts_q_preps);
    report.quantum_swap_shots = scaling_fit(pts_q_shots);
    report.count_law_ok = law_ok;
    return report;
}

} // namespace qmelab

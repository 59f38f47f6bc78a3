#pragma once

#include <span>
#include <string_view>

#include "qmelab/cost.hpp"
#include "qmelab/sample.hpp"

namespace qmelab {

enum class KernelFamily { Gaussian, Laplacian, Linear };

KernelFamily kernel_family_from_string(std::string_view name);
std::string_view to_string(KernelFamily family) noexcept;

// Kernel family plus bandwidth. Gaussian and Laplacian satisfy k(x,x) = 1;
// Linear does not and is excluded from everything that needs unit-norm
// feature states.
struct KernelSpec {
    KernelFamily family = KernelFamily::Gaussian;
    double sigma = 1.0;

    void validate() const;
    bool unit_diagonal() const noexcept { return family != KernelFamily::Linear; }
};

// k(x, y).
//   Gaussian:  exp(-|x - y|^2 / (2 sigma^2))
//   Laplacian: exp(-|x - y|_1 / sigma)
//   Linear:    <x, y>
// The squared distance is accumulated with Neumaier compensation; this module
// is the oracle for the quantum path and must stay deterministic.
double eval_kernel(const KernelSpec& spec, std::span<const double> x, std::span<const double> y);
double eval_kernel(const KernelSpec& spec, double x, double y);

// Empirical mean-embedding inner product
//   (1 / (|X| |Y|)) sum_ij k(x_i, y_j).
// Bit-exact symmetric in (X, Y): the double sum always runs with the
// lexicographically smaller sample on the outer loop, accumulated by a
// fixed-order pairwise reduction (blocks of 64 terms, binary merge), so the
// result does not depend on argument order or parallel scheduling.
// Adds |X|*|Y| kernel evaluations to the ledger if one is given.
double mean_inner(const KernelSpec& spec, const Sample& x, const Sample& y,
                  CostLedger* ledger = nullptr);

// Biased squared MMD, K(X,X) - 2 K(X,Y) + K(Y,Y). `value` clamps tiny
// negative rounding residue to zero (downstream code takes square roots);
// `raw` keeps the unclamped number for diagnostics.
struct MmdSquared {
    double value = 0.0;
    double raw = 0.0;
};
MmdSquared mmd_biased_sq(const KernelSpec& spec, const Sample& x, const Sample& y,
                         CostLedger* ledger = nullptr);

// Norm of the empirical mean embedding, sqrt(mean_inner(X, X)). Only defined
// for k(x,x) = 1 families; bounded by [1/sqrt(n), 1].
double embedding_norm(const KernelSpec& spec, const Sample& x, CostLedger* ledger = nullptr);

} // namespace qmelab

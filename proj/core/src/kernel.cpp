#include "qmelab/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "qmelab/errors.hpp"

namespace qmelab {

namespace {

// Neumaier-compensated sum of squared coordinate differences.
double squared_distance(std::span<const double> x, std::span<const double> y) {
    double sum = 0.0;
    double comp = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        const double term = d * d;
        const double t = sum + term;
        if (std::abs(sum) >= std::abs(term)) {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
    }
    return sum + comp;
}

double l1_distance(std::span<const double> x, std::span<const double> y) {
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sum += std::abs(x[i] - y[i]);
    }
    return sum;
}

double dot(std::span<const double> x, std::span<const double> y) {
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sum += x[i] * y[i];
    }
    return sum;
}

void check_finite_point(std::span<const double> p) {
    for (double v : p) {
        if (!std::isfinite(v)) {
            throw ValidationError("kernel arguments must be finite");
        }
    }
}

// Pairwise (tree) reduction over term(0..count-1) with sequential blocks of
// 64 at the leaves. The summation order is a pure function of `count`, which
// is what makes mean_inner results bit-stable.
constexpr std::size_t kPairwiseBlock = 64;

template <typename Term>
double pairwise_sum(std::size_t begin, std::size_t end, const Term& term) {
    const std::size_t count = end - begin;
    if (count <= kPairwiseBlock) {
        double sum = 0.0;
        for (std::size_t i = begin; i < end; ++i) {
            sum += term(i);
        }
        return sum;
    }
    const std::size_t mid = begin + count / 2;
    return pairwise_sum(begin, mid, term) + pairwise_sum(mid, end, term);
}

// Total order on samples used to pick the canonical orientation of the
// double sum: by size, then dimension, then lexicographic data comparison.
bool sample_precedes(const Sample& a, const Sample& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    return std::lexicographical_compare(a.data().begin(), a.data().end(),
                                        b.data().begin(), b.data().end());
}

} // namespace

KernelFamily kernel_family_from_string(std::string_view name) {
    if (name == "gaussian") return KernelFamily::Gaussian;
    if (name == "laplacian") return KernelFamily::Laplacian;
    if (name == "linear") return KernelFamily::Linear;
    throw ValidationError("unknown kernel family: " + std::string(name));
}

std::string_view to_string(KernelFamily family) noexcept {
    switch (family) {
        case KernelFamily::Gaussian: return "gaussian";
        case KernelFamily::Laplacian: return "laplacian";
        case KernelFamily::Linear: return "linear";
    }
    return "unknown";
}

void KernelSpec::validate() const {
    if (family != KernelFamily::Linear && !(sigma > 0.0 && std::isfinite(sigma))) {
        throw ValidationError("kernel bandwidth sigma must be positive and finite");
    }
}

double eval_kernel(const KernelSpec& spec, std::span<const double> x, std::span<const double> y) {
    spec.validate();
    if (x.size() != y.size() || x.empty()) {
        throw DimensionMismatchError("kernel arguments must share a nonzero dimension");
    }
    check_finite_point(x);
    check_finite_point(y);
    switch (spec.family) {
        case KernelFamily::Gaussian:
            return std::exp(-squared_distance(x, y) / (2.0 * spec.sigma * spec.sigma));
        case KernelFamily::Laplacian:
            return std::exp(-l1_distance(x, y) / spec.sigma);
        case KernelFamily::Linear:
            return dot(x, y);
    }
    throw ValidationError("unknown kernel family");
}

double eval_kernel(const KernelSpec& spec, double x, double y) {
    return eval_kernel(spec, std::span<const double>(&x, 1), std::span<const double>(&y, 1));
}

double mean_inner(const KernelSpec& spec, const Sample& x, const Sample& y, CostLedger* ledger) {
    spec.validate();
    if (x.size() == 0 || y.size() == 0) {
        throw ValidationError("mean_inner requires nonempty samples");
    }
    if (x.dim() != y.dim()) {
        throw DimensionMismatchError("samples must share the point dimension");
    }

    const Sample& outer = sample_precedes(y, x) ? y : x;
    const Sample& inner = (&outer == &x) ? y : x;
    const std::size_t cols = inner.size();

    const auto term = [&](std::size_t flat) {
        return eval_kernel(spec, outer.point(flat / cols), inner.point(flat % cols));
    };
    const double total = pairwise_sum(0, outer.size() * cols, term);

    if (ledger != nullptr) {
        ledger->kernel_evals += static_cast<std::uint64_t>(x.size()) * y.size();
    }
    return total / (static_cast<double>(x.size()) * static_cast<double>(y.size()));
}

MmdSquared mmd_biased_sq(const KernelSpec& spec, const Sample& x, const Sample& y,
                         CostLedger* ledger) {
    const double kxx = mean_inner(spec, x, x, ledger);
    const double kxy = mean_inner(spec, x, y, ledger);
    const double kyy = mean_inner(spec, y, y, ledger);
    MmdSquared out;
    out.raw = kxx - 2.0 * kxy + kyy;
    out.value = out.raw < 0.0 ? 0.0 : out.raw;
    return out;
}

double embedding_norm(const KernelSpec& spec, const Sample& x, CostLedger* ledger) {
    if (!spec.unit_diagonal()) {
        throw ValidationError("embedding_norm requires a k(x,x) = 1 kernel family");
    }
    return std::sqrt(mean_inner(spec, x, x, ledger));
}

} // namespace qmelab

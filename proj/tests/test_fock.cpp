#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "qmelab/errors.hpp"
#include "qmelab/fock.hpp"
#include "qmelab/kernel.hpp"
#include "qmelab/rng.hpp"

using namespace qmelab;

namespace {

// Independent Poisson-tail oracle: per-term lgamma evaluation instead of the
// library's mode-relative recurrence.
double poisson_tail_oracle(double lambda, int d) {
    if (lambda == 0.0) return d == 0 ? 1.0 : 0.0;
    double s = 0.0;
    for (int n = d;; ++n) {
        const double t = std::exp(-lambda + n * std::log(lambda) - std::lgamma(n + 1.0));
        s += t;
        if (n > lambda && (t < s * 1e-20 || t < 1e-300)) break;
    }
    return s;
}

int min_dim_oracle(double u_max, double tol) {
    const double lambda = u_max * u_max;
    if (lambda == 0.0) return 1;
    int d = 1;
    while (poisson_tail_oracle(lambda, d) > tol) ++d;
    return d;
}

Sample random_scalar_sample(std::size_t n, SplitMix64& rng, double half_range) {
    std::vector<double> v(n);
    for (auto& e : v) {
        e = half_range * (2.0 * rng.next_double() - 1.0);
    }
    return Sample(std::move(v));
}

} // namespace

TEST_SUITE("fock") {

TEST_CASE("min_truncation_dim against the lgamma oracle") {
    CHECK(min_truncation_dim(0.0, 1e-10) == 1);
    // Frozen from the oracle: Poisson(1) tail <= 1e-10 first at d = 13,
    // Poisson(9) tail <= 1e-10 first at d = 35.
    CHECK(min_truncation_dim(1.0, 1e-10) == 13);
    CHECK(min_truncation_dim(3.0, 1e-10) == 35);
    CHECK(min_truncation_dim(1.0, 1e-12) == 15);
    CHECK(min_truncation_dim(3.0, 1e-12) == 38);

    for (const double u : {0.3, 0.9, 1.7, 2.4, 3.0, 5.0}) {
        for (const double tol : {1e-4, 1e-8, 1e-12}) {
            CHECK(min_truncation_dim(u, tol) == min_dim_oracle(u, tol));
        }
    }
}

TEST_CASE("min_truncation_dim monotonicity") {
    int prev = min_truncation_dim(0.0, 1e-10);
    for (double u = 0.25; u <= 4.0; u += 0.25) {
        const int d = min_truncation_dim(u, 1e-10);
        CHECK(d >= prev);
        prev = d;
    }
    CHECK(min_truncation_dim(2.0, 1e-12) >= min_truncation_dim(2.0, 1e-6));
    CHECK_THROWS_AS(min_truncation_dim(1.0, 0.0), ValidationError);
    CHECK_THROWS_AS(min_truncation_dim(-1.0, 1e-6), ValidationError);
}

TEST_CASE("min_truncation_dim survives large u") {
    // exp(-u^2) underflows long before this; the mode-relative weights do not.
    const int d = min_truncation_dim(30.0, 1e-12);
    CHECK(d > 900);
    CHECK(d == min_dim_oracle(30.0, 1e-12));
}

TEST_CASE("coherent state at the origin is |0>") {
    const PureState s = coherent_feature(0.0, 1.0, 8);
    CHECK(s.dim() == 8);
    CHECK(s.amplitudes()[0].real() == doctest::Approx(1.0));
    for (std::size_t n = 1; n < 8; ++n) {
        CHECK(std::abs(s.amplitudes()[n]) == 0.0);
    }
    CHECK(s.lost_tail_mass() == doctest::Approx(0.0));
}

TEST_CASE("coherent amplitude on |0> is exp(-u^2/2)") {
    const PureState s = coherent_feature(1.0, 1.0, 32);
    // Renormalization shifts this by at most the 1e-12 tail.
    CHECK(s.amplitudes()[0].real() ==
          doctest::Approx(0.6065306597126334).epsilon(1e-10));
    // x and sigma enter only through u = x / sigma.
    const PureState t = coherent_feature(2.0, 2.0, 32);
    for (std::size_t n = 0; n < 32; ++n) {
        CHECK(s.amplitudes()[n] == t.amplitudes()[n]);
    }
}

TEST_CASE("coherent amplitudes for real data are real") {
    const PureState s = coherent_feature(-1.7, 0.8, 64);
    for (const auto& a : s.amplitudes()) {
        CHECK(a.imag() == 0.0);
    }
}

TEST_CASE("coherent inner products reproduce the gaussian kernel") {
    const KernelSpec spec{KernelFamily::Gaussian, 1.0};
    const int dim = min_truncation_dim(3.0, 1e-12);
    SplitMix64 rng(8101);
    for (int rep = 0; rep < 40; ++rep) {
        const double x = 3.0 * (2.0 * rng.next_double() - 1.0);
        const double y = 3.0 * (2.0 * rng.next_double() - 1.0);
        const auto v = inner(coherent_feature(x, 1.0, dim), coherent_feature(y, 1.0, dim));
        CHECK(v.imag() == 0.0);
        CHECK(std::abs(v.real() - eval_kernel(spec, x, y)) <= 1e-8);
    }
    CHECK(std::abs(inner(coherent_feature(0.0, 1.0, 32), coherent_feature(1.0, 1.0, 32)).real() -
                   0.6065306597126334) <= 1e-10);
    CHECK(std::abs(inner(coherent_feature(0.0, 1.0, 40), coherent_feature(2.0, 1.0, 40)).real() -
                   0.1353352832366127) <= 1e-10);
}

TEST_CASE("coherent_feature enforces the truncation precondition") {
    CHECK_THROWS_AS(coherent_feature(3.0, 1.0, 4), TruncationError);
    CHECK_THROWS_AS(coherent_feature(1.0, 0.0, 32), ValidationError);
    CHECK_THROWS_AS(coherent_feature(1.0, -2.0, 32), ValidationError);
    // Relaxed tolerance admits a smaller dimension.
    CHECK_NOTHROW(coherent_feature(1.0, 1.0, 8, 1e-4));
}

TEST_CASE("states are unit-normalized") {
    SplitMix64 rng(8102);
    for (int rep = 0; rep < 30; ++rep) {
        const double x = 3.0 * (2.0 * rng.next_double() - 1.0);
        const PureState s = coherent_feature(x, 1.0, 40);
        double norm_sq = 0.0;
        for (const auto& a : s.amplitudes()) {
            norm_sq += std::norm(a);
        }
        CHECK(std::abs(std::sqrt(norm_sq) - 1.0) <= 1e-12);
    }
}

TEST_CASE("inner basics") {
    const PureState zero(std::vector<std::complex<double>>{{1, 0}, {0, 0}});
    const PureState one(std::vector<std::complex<double>>{{0, 0}, {1, 0}});
    CHECK(inner(zero, zero) == std::complex<double>(1.0, 0.0));
    CHECK(inner(zero, one) == std::complex<double>(0.0, 0.0));
    CHECK_THROWS_AS(inner(zero, coherent_feature(0.0, 1.0, 8)), DimensionMismatchError);

    // Conjugate linearity in the first argument.
    const PureState a(std::vector<std::complex<double>>{{0.6, 0.3}, {0.0, 0.74}});
    const PureState b(std::vector<std::complex<double>>{{0.2, -0.5}, {0.8, 0.1}});
    const auto ab = inner(a, b);
    const auto ba = inner(b, a);
    CHECK(ab.real() == doctest::Approx(ba.real()));
    CHECK(ab.imag() == doctest::Approx(-ba.imag()));
    CHECK(std::abs(ab) <= 1.0 + 1e-12);
}

TEST_CASE("superpose identities") {
    const PureState s = coherent_feature(0.7, 1.0, 32);
    const std::vector<PureState> single{s};
    const std::vector<double> w1{1.0};
    const PureState r1 = superpose(single, w1);
    for (std::size_t n = 0; n < s.dim(); ++n) {
        CHECK(r1.amplitudes()[n] == s.amplitudes()[n]);
    }

    const std::vector<PureState> twice{s, s};
    const std::vector<double> w2{1.0, 1.0};
    const PureState r2 = superpose(twice, w2);
    for (std::size_t n = 0; n < s.dim(); ++n) {
        CHECK(std::abs(r2.amplitudes()[n] - s.amplitudes()[n]) <= 1e-15);
    }
}

TEST_CASE("superpose error paths") {
    const PureState s = coherent_feature(0.0, 1.0, 8);
    const PureState t = coherent_feature(0.0, 1.0, 16);
    const std::vector<PureState> mismatched{s, t};
    const std::vector<double> w{1.0, 1.0};
    CHECK_THROWS_AS(superpose(mismatched, w), DimensionMismatchError);

    // Signed weights can cancel exactly.
    const std::vector<PureState> same{s, s};
    const std::vector<double> signed_w{1.0, -1.0};
    CHECK_THROWS_AS(superpose(same, signed_w), ValidationError);
}

TEST_CASE("cat state inner product against the kernel oracle") {
    // superpose([phi(0), phi(1)], [1, 1]) against phi(0):
    // mean_inner({0},{0,1}) / N_{0,1} = 0.8032653298563167 / 0.8962507070325338.
    const PureState cat =
        superpose(std::vector<PureState>{coherent_feature(0.0, 1.0, 32),
                                         coherent_feature(1.0, 1.0, 32)},
                  std::vector<double>{1.0, 1.0});
    const auto v = inner(cat, coherent_feature(0.0, 1.0, 32));
    CHECK(std::abs(v.real() - 0.8962507070325338) <= 1e-10);
}

TEST_CASE("qme_state basics") {
    const TruncationPolicy policy{1e-12, 3.0};
    CostLedger ledger;
    const PureState single = qme_state(Sample({0.4}), 1.0, policy, &ledger);
    const PureState feature = coherent_feature(0.4, 1.0, policy.policy_dim());
    for (std::size_t n = 0; n < single.dim(); ++n) {
        CHECK(single.amplitudes()[n] == feature.amplitudes()[n]);
    }
    CHECK(ledger.state_preps == 1);

    const PureState pair = qme_state(Sample({0.0, 1.0}), 1.0, policy, &ledger);
    CHECK(ledger.state_preps == 3);
    const auto v = inner(pair, qme_state(Sample({0.0}), 1.0, policy));
    CHECK(std::abs(v.real() - 0.8962507070325338) <= 1e-10);
}

TEST_CASE("qme_state is permutation invariant") {
    const TruncationPolicy policy{1e-12, 3.0};
    const PureState a = qme_state(Sample({0.0, 1.0, -0.5}), 1.0, policy);
    const PureState b = qme_state(Sample({1.0, -0.5, 0.0}), 1.0, policy);
    for (std::size_t n = 0; n < a.dim(); ++n) {
        CHECK(std::abs(a.amplitudes()[n] - b.amplitudes()[n]) <= 1e-15);
    }
}

TEST_CASE("qme_state rejects out-of-policy and multivariate data") {
    const TruncationPolicy policy{1e-12, 3.0};
    CHECK_THROWS_AS(qme_state(Sample({4.5}), 1.0, policy), ValidationError);
    CHECK_THROWS_AS(qme_state(Sample({0.0, 0.0}, 2), 1.0, policy), DimensionMismatchError);
    CHECK_THROWS_AS(qme_state(Sample({0.5}), 1.0, policy, 4), TruncationError);
}

TEST_CASE("relation between embeddings holds on the exact path") {
    const KernelSpec spec{KernelFamily::Gaussian, 1.0};
    const TruncationPolicy policy{1e-12, 3.0};
    SplitMix64 rng(8103);
    for (int rep = 0; rep < 30; ++rep) {
        const auto x = random_scalar_sample(1 + rng.next() % 64, rng, 3.0);
        const auto y = random_scalar_sample(1 + rng.next() % 64, rng, 3.0);
        const double nx = embedding_norm(spec, x);
        const double ny = embedding_norm(spec, y);
        const auto overlap = inner(qme_state(x, 1.0, policy), qme_state(y, 1.0, policy));
        CHECK(overlap.imag() == 0.0);
        CHECK(overlap.real() > 0.0);
        CHECK(std::abs(nx * ny * overlap.real() - mean_inner(spec, x, y)) <= 1e-8);
    }
}

TEST_CASE("distinct empirical distributions give distinct states") {
    const KernelSpec spec{KernelFamily::Gaussian, 1.0};
    const TruncationPolicy policy{1e-12, 3.0};
    SplitMix64 rng(8104);
    for (int rep = 0; rep < 20; ++rep) {
        const auto x = random_scalar_sample(2 + rng.next() % 16, rng, 2.5);
        const auto y = random_scalar_sample(2 + rng.next() % 16, rng, 2.5);
        if (mmd_biased_sq(spec, x, y).value <= 1e-6) continue;
        const auto overlap = inner(qme_state(x, 1.0, policy), qme_state(y, 1.0, policy));
        CHECK(1.0 - overlap.real() > 0.0);
    }

    // Same multiset, permuted and duplicated: identical amplitude vectors.
    const Sample base({0.2, -1.1, 0.7});
    const Sample dup({0.7, 0.2, -1.1, 0.7, 0.2, -1.1});
    const PureState sb = qme_state(base, 1.0, policy);
    const PureState sd = qme_state(dup, 1.0, policy);
    for (std::size_t n = 0; n < sb.dim(); ++n) {
        CHECK(std::abs(sb.amplitudes()[n] - sd.amplitudes()[n]) <= 1e-12);
    }
}

TEST_CASE("state json round trip") {
    const PureState s = coherent_feature(0.9, 1.0, 24);
    const auto j = s.to_json();
    CHECK(j.at("dim").get<std::size_t>() == 24);
    const PureState back = PureState::from_json(j);
    for (std::size_t n = 0; n < s.dim(); ++n) {
        CHECK(back.amplitudes()[n] == s.amplitudes()[n]);
    }
    CHECK(back.lost_tail_mass() == s.lost_tail_mass());
}

} // TEST_SUITE

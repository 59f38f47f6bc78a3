#pragma once

#include <cstdint>

namespace qmelab {

// SplitMix64 (Steele, Lea & Flood 2014). The state advances by the golden
// ratio increment 0x9E3779B97F4A7C15 and each output is finalized with two
// xor-shift-multiply rounds. The algorithm is small enough to reimplement in
// any language from this header alone, which is what makes seeded streams
// reproducible across implementations.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1), 53 random bits.
    double next_double() noexcept {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

// Derives an independent substream seed from (seed, stream) by folding the
// stream index into the state and applying the SplitMix64 finalizer once.
// derive_stream(s, i) != s for practical purposes, and distinct stream
// indices give decorrelated generators.
constexpr std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t stream) noexcept {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace qmelab

#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace gl4st {

/// Random stream keyed by (seed, chunk). Work is split into fixed-size chunks
/// and each chunk draws from its own stream, so results never depend on how
/// chunks are scheduled across threads.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t chunk);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t chunk() const noexcept { return chunk_; }

    double uniform();                              // [0, 1)
    double uniform(double lo, double hi);          // [lo, hi)
    double normal();                               // N(0, 1)
    std::complex<double> complex_normal();         // (N + iN) / sqrt 2
    std::uint64_t below(std::uint64_t n);          // uniform on {0, ..., n-1}

private:
    std::uint64_t seed_;
    std::uint64_t chunk_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_;
};

/// Independent child seed for replicate runs (SplitMix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) noexcept;

} // namespace gl4st

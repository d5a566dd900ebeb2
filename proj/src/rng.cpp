#include "gl4st/rng.hpp"

#include <cmath>

namespace gl4st {

namespace {

std::seed_seq make_seed_seq(std::uint64_t seed, std::uint64_t chunk)
{
    constexpr std::uint32_t kDomain = 0x67346c34; // "gl4g"
    return std::seed_seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32), kDomain};
}

} // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t chunk) : seed_(seed), chunk_(chunk)
{
    auto seq = make_seed_seq(seed, chunk);
    engine_.seed(seq);
}

double RngStream::uniform()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi)
{
    return lo + (hi - lo) * uniform();
}

double RngStream::normal()
{
    return normal_(engine_);
}

std::complex<double> RngStream::complex_normal()
{
    const double re = normal();
    const double im = normal();
    return {re * M_SQRT1_2, im * M_SQRT1_2};
}

std::uint64_t RngStream::below(std::uint64_t n)
{
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) noexcept
{
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace gl4st

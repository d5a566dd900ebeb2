#include "gl4st/measure.hpp"

namespace gl4st::serial {

cplx weyl_integrate(const TorusFunction& f, const TorusGrid& grid)
{
    const int n = grid.N;
    cplx sum = 0.0;
    for (int k1 = 0; k1 < n; ++k1) {
        for (int k2 = 0; k2 < n; ++k2) {
            for (int k3 = 0; k3 < n; ++k3) {
                const TorusPoint x = detail::grid_point(grid, k1, k2, k3);
                sum += f(x) * detail::vandermonde_weight(x);
            }
        }
    }
    return sum / (24.0 * static_cast<double>(n) * n * n);
}

std::vector<MomentEstimate> haar_moments(std::span<const MonomialExponent> monomials,
                                         std::uint64_t samples, std::uint64_t seed)
{
    const std::size_t k = monomials.size();
    std::vector<double> acc(4 * k, 0.0);
    for (std::uint64_t s = 0; s < samples; s += kSamplesPerChunk) {
        RngStream rng(seed, s / kSamplesPerChunk);
        const std::uint64_t end = std::min(samples, s + kSamplesPerChunk);
        for (std::uint64_t i = s; i < end; ++i) {
            const TorusPoint x = haar_sample(rng);
            for (std::size_t j = 0; j < k; ++j) {
                const cplx v = eval_monomial(monomials[j], x);
                acc[4 * j + 0] += v.real();
                acc[4 * j + 1] += v.imag();
                acc[4 * j + 2] += v.real() * v.real();
                acc[4 * j + 3] += v.imag() * v.imag();
            }
        }
    }
    std::vector<MomentEstimate> out;
    for (std::size_t j = 0; j < k; ++j) {
        out.push_back(detail::finish_moment(acc[4 * j], acc[4 * j + 1], acc[4 * j + 2], acc[4 * j + 3], samples));
    }
    return out;
}

} // namespace gl4st::serial

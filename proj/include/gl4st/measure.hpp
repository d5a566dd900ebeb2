#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "gl4st/rep.hpp"
#include "gl4st/rng.hpp"

namespace gl4st {

/// Uniform grid of N^3 angle triples on the SU(4) torus, theta4 = -(theta1 +
/// theta2 + theta3). The normalized grid average is exact for trigonometric
/// polynomials whose frequencies in each angle are below N.
struct TorusGrid {
    int N = 1;

    explicit TorusGrid(int n);

    /// Smallest grid exact for f |Delta|^2 when every monomial of f has
    /// per-eigenvalue exponents bounded by `degree` in absolute value.
    static TorusGrid exact_for(unsigned degree);
};

using TorusFunction = std::function<cplx(const TorusPoint&)>;

/// Samples drawn per RngStream chunk.
inline constexpr std::uint64_t kSamplesPerChunk = 4096;

/// Normalized Haar integral over SU(4) of a class function, via the Weyl
/// integration formula (1/24) (2 pi)^-3 ∫ f |Delta|^2 dtheta on the grid.
/// Parallel over grid slabs; the result is bitwise independent of the number
/// of threads.
cplx weyl_integrate(const TorusFunction& f, const TorusGrid& grid);

/// Diagnostics of one Haar draw, before eigenvalue renormalization.
struct HaarDraw {
    TorusPoint point;
    double max_modulus_defect = 0.0; // max_i | |lambda_i| - 1 |
    double det_defect = 0.0;         // |prod lambda_i - 1|
};

/// Eigenvalues of a Haar-random SU(4) matrix (Ginibre + Gram–Schmidt with
/// positive diagonal, then a uniformly chosen fourth root of det^-1).
HaarDraw haar_draw(RngStream& rng);
TorusPoint haar_sample(RngStream& rng);

/// e1^i1 conj(e1)^i1' e2^i2 conj(e2)^i2' e3^i3 conj(e3)^i3', conjugates taken
/// literally.
cplx eval_monomial(const MonomialExponent& m, const TorusPoint& x);

/// Sato–Tate integral of the monomial: the multiplicity of the trivial
/// representation in monomial_multiplicities(m).
std::uint64_t st_integral(const MonomialExponent& m);

/// Same integral by quadrature on TorusGrid::exact_for(total degree).
cplx st_integral_quadrature(const MonomialExponent& m);

/// <f, chi_mu> by quadrature, with f the monomial.
cplx multiplicity_by_quadrature(const MonomialExponent& m, const DominantWeight& mu);

struct MomentEstimate {
    cplx mean;
    double se_real = 0.0;
    double se_imag = 0.0;
    std::uint64_t samples = 0;

    /// max over real and imaginary parts of |mean - target| / se (a zero se
    /// counts as agreement iff the difference is zero).
    double z_score(cplx target) const;
};

/// Monte Carlo moments E[f(x)] under the Sato–Tate measure for each monomial.
/// Chunked streams: bitwise identical for any thread count.
std::vector<MomentEstimate> haar_moments(std::span<const MonomialExponent> monomials,
                                         std::uint64_t samples, std::uint64_t seed);

/// Serial reference implementations kept for testing and benchmarking.
namespace serial {
cplx weyl_integrate(const TorusFunction& f, const TorusGrid& grid);
std::vector<MomentEstimate> haar_moments(std::span<const MonomialExponent> monomials,
                                         std::uint64_t samples, std::uint64_t seed);
} // namespace serial

namespace detail {
double vandermonde_weight(const TorusPoint& x);
TorusPoint grid_point(const TorusGrid& grid, int k1, int k2, int k3);
MomentEstimate finish_moment(double sum_re, double sum_im, double sq_re, double sq_im,
                             std::uint64_t n);

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x) noexcept;
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};
} // namespace detail

} // namespace gl4st

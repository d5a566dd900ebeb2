#include "gl4st/measure.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace gl4st {

TorusGrid::TorusGrid(int n) : N(n)
{
    if (n < 1) throw std::invalid_argument("TorusGrid: N must be >= 1");
}

TorusGrid TorusGrid::exact_for(unsigned degree)
{
    // theta1 frequency of z1^a z4^b is a - b with |a|, |b| <= degree + 3.
    return TorusGrid(2 * (static_cast<int>(degree) + 3) + 1);
}

namespace detail {

void CompensatedSum::add(double x) noexcept
{
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
        comp_ += (sum_ - t) + x;
    } else {
        comp_ += (x - t) + sum_;
    }
    sum_ = t;
}

double vandermonde_weight(const TorusPoint& x)
{
    const auto& z = x.eigenvalues();
    double w = 1.0;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = i + 1; j < 4; ++j) w *= std::norm(z[i] - z[j]);
    }
    return w;
}

TorusPoint grid_point(const TorusGrid& grid, int k1, int k2, int k3)
{
    const double step = 2.0 * std::numbers::pi / grid.N;
    return TorusPoint::from_angles(step * k1, step * k2, step * k3);
}

MomentEstimate finish_moment(double sum_re, double sum_im, double sq_re, double sq_im, std::uint64_t n)
{
    MomentEstimate out;
    out.samples = n;
    const double dn = static_cast<double>(n);
    out.mean = cplx(sum_re / dn, sum_im / dn);
    if (n > 1) {
        const double var_re = std::max(0.0, (sq_re - dn * out.mean.real() * out.mean.real()) / (dn - 1.0));
        const double var_im = std::max(0.0, (sq_im - dn * out.mean.imag() * out.mean.imag()) / (dn - 1.0));
        out.se_real = std::sqrt(var_re / dn);
        out.se_imag = std::sqrt(var_im / dn);
    }
    return out;
}

} // namespace detail

double MomentEstimate::z_score(cplx target) const
{
    auto one = [](double diff, double se) {
        if (se > 0.0) return std::abs(diff) / se;
        return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    };
    return std::max(one(mean.real() - target.real(), se_real), one(mean.imag() - target.imag(), se_imag));
}

cplx weyl_integrate(const TorusFunction& f, const TorusGrid& grid)
{
    const int n = grid.N;
    std::vector<double> slab_re(static_cast<std::size_t>(n));
    std::vector<double> slab_im(static_cast<std::size_t>(n));

#pragma omp parallel for schedule(static)
    for (int k1 = 0; k1 < n; ++k1) {
        detail::CompensatedSum re;
        detail::CompensatedSum im;
        for (int k2 = 0; k2 < n; ++k2) {
            for (int k3 = 0; k3 < n; ++k3) {
                const TorusPoint x = detail::grid_point(grid, k1, k2, k3);
                const cplx v = f(x) * detail::vandermonde_weight(x);
                re.add(v.real());
                im.add(v.imag());
            }
        }
        slab_re[static_cast<std::size_t>(k1)] = re.value();
        slab_im[static_cast<std::size_t>(k1)] = im.value();
    }

    detail::CompensatedSum re;
    detail::CompensatedSum im;
    for (int k1 = 0; k1 < n; ++k1) {
        re.add(slab_re[static_cast<std::size_t>(k1)]);
        im.add(slab_im[static_cast<std::size_t>(k1)]);
    }
    const double norm = 24.0 * static_cast<double>(n) * n * n;
    return cplx(re.value(), im.value()) / norm;
}

HaarDraw haar_draw(RngStream& rng)
{
    using Matrix = Eigen::Matrix4cd;
    for (;;) {
        Matrix q;
        for (int c = 0; c < 4; ++c) {
            for (int r = 0; r < 4; ++r) q(r, c) = rng.complex_normal();
        }
        // Gram–Schmidt, two passes; the triangular factor's diagonal is the
        // (positive) column norm, which makes q Haar on U(4).
        bool degenerate = false;
        for (int c = 0; c < 4 && !degenerate; ++c) {
            const double original = q.col(c).norm();
            for (int pass = 0; pass < 2; ++pass) {
                for (int p = 0; p < c; ++p) q.col(c) -= q.col(p).dot(q.col(c)) * q.col(p);
            }
            const double norm = q.col(c).norm();
            if (!(norm > 1e-10 * original)) {
                degenerate = true;
                break;
            }
            q.col(c) /= norm;
        }
        if (degenerate) continue;

        const cplx det = q.determinant();
        static constexpr std::array<cplx, 4> kQuarterTurns = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
        const cplx root = std::polar(1.0, -std::arg(det) / 4.0) * kQuarterTurns[rng.below(4)];
        const Matrix u = root * q;

        Eigen::ComplexEigenSolver<Matrix> solver(u, false);
        if (solver.info() != Eigen::Success) continue;
        const auto& ev = solver.eigenvalues();

        HaarDraw out;
        cplx product = 1.0;
        std::array<cplx, 4> unit{};
        for (int i = 0; i < 4; ++i) {
            product *= ev(i);
            out.max_modulus_defect = std::max(out.max_modulus_defect, std::abs(std::abs(ev(i)) - 1.0));
            unit[static_cast<std::size_t>(i)] = ev(i) / std::abs(ev(i));
        }
        out.det_defect = std::abs(product - 1.0);
        out.point = TorusPoint(unit);
        return out;
    }
}

TorusPoint haar_sample(RngStream& rng)
{
    return haar_draw(rng).point;
}

cplx eval_monomial(const MonomialExponent& m, const TorusPoint& x)
{
    cplx acc = 1.0;
    for (int k = 1; k <= 3; ++k) {
        const cplx e = elementary_character(k, x);
        const cplx ebar = std::conj(e);
        for (unsigned i = 0; i < m.power(k); ++i) acc *= e;
        for (unsigned i = 0; i < m.conj_power(k); ++i) acc *= ebar;
    }
    return acc;
}

std::uint64_t st_integral(const MonomialExponent& m)
{
    return monomial_multiplicities(m).multiplicity(DominantWeight());
}

cplx st_integral_quadrature(const MonomialExponent& m)
{
    return weyl_integrate([&](const TorusPoint& x) { return eval_monomial(m, x); },
                          TorusGrid::exact_for(m.total_degree()));
}

cplx multiplicity_by_quadrature(const MonomialExponent& m, const DominantWeight& mu)
{
    const auto degree = m.total_degree() + static_cast<unsigned>(mu[0]);
    return weyl_integrate(
        [&](const TorusPoint& x) { return eval_monomial(m, x) * std::conj(schur_character(mu, x)); },
        TorusGrid::exact_for(degree));
}

std::vector<MomentEstimate> haar_moments(std::span<const MonomialExponent> monomials,
                                         std::uint64_t samples, std::uint64_t seed)
{
    if (samples == 0) throw std::invalid_argument("haar_moments: need at least one sample");
    const std::size_t k = monomials.size();
    const std::uint64_t chunks = (samples + kSamplesPerChunk - 1) / kSamplesPerChunk;
    // Per chunk and monomial: sum re, sum im, sum re^2, sum im^2.
    std::vector<double> partial(static_cast<std::size_t>(chunks) * k * 4, 0.0);

#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
        RngStream rng(seed, static_cast<std::uint64_t>(c));
        const std::uint64_t begin = static_cast<std::uint64_t>(c) * kSamplesPerChunk;
        const std::uint64_t end = std::min(samples, begin + kSamplesPerChunk);
        double* slot = partial.data() + static_cast<std::size_t>(c) * k * 4;
        for (std::uint64_t s = begin; s < end; ++s) {
            const TorusPoint x = haar_sample(rng);
            for (std::size_t j = 0; j < k; ++j) {
                const cplx v = eval_monomial(monomials[j], x);
                slot[4 * j + 0] += v.real();
                slot[4 * j + 1] += v.imag();
                slot[4 * j + 2] += v.real() * v.real();
                slot[4 * j + 3] += v.imag() * v.imag();
            }
        }
    }

    std::vector<MomentEstimate> out;
    out.reserve(k);
    for (std::size_t j = 0; j < k; ++j) {
        std::array<detail::CompensatedSum, 4> acc;
        for (std::uint64_t c = 0; c < chunks; ++c) {
            for (std::size_t q = 0; q < 4; ++q) acc[q].add(partial[(static_cast<std::size_t>(c) * k + j) * 4 + q]);
        }
        out.push_back(detail::finish_moment(acc[0].value(), acc[1].value(), acc[2].value(), acc[3].value(), samples));
    }
    return out;
}

} // namespace gl4st

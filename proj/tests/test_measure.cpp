#include <doctest.h>

#include <omp.h>
#include <vector>

#include "gl4st/measure.hpp"

using namespace gl4st;

namespace {

std::vector<DominantWeight> weights_up_to(int top)
{
    std::vector<DominantWeight> out;
    for (int a = 0; a <= top; ++a)
        for (int b = 0; b <= a; ++b)
            for (int c = 0; c <= b; ++c) out.emplace_back(std::array<int, 4>{a, b, c, 0});
    return out;
}

} // namespace

TEST_CASE("grid construction")
{
    CHECK_THROWS(TorusGrid(0));
    CHECK(TorusGrid::exact_for(0).N == 7);
    CHECK(TorusGrid::exact_for(4).N == 15);
}

TEST_CASE("Weyl integration: normalization and Schur orthogonality")
{
    const TorusGrid grid = TorusGrid::exact_for(2);
    const cplx one = weyl_integrate([](const TorusPoint&) { return cplx(1.0); }, grid);
    CHECK(std::abs(one - 1.0) < 1e-12);
    for (const auto& a : weights_up_to(2)) {
        for (const auto& b : weights_up_to(2)) {
            const TorusGrid g = TorusGrid::exact_for(static_cast<unsigned>(a[0] + b[0]));
            const cplx ip = weyl_integrate(
                [&](const TorusPoint& x) { return schur_character(a, x) * std::conj(schur_character(b, x)); }, g);
            CHECK(std::abs(ip - (a == b ? 1.0 : 0.0)) < 1e-10);
        }
    }
}

TEST_CASE("quadrature is stable under grid refinement")
{
    for (const MonomialExponent m : {MonomialExponent{{1, 1, 0, 0, 0, 0}}, MonomialExponent{{2, 2, 0, 0, 0, 0}},
                                     MonomialExponent{{0, 0, 2, 0, 0, 0}}, MonomialExponent{{1, 0, 0, 0, 1, 1}}}) {
        const TorusFunction f = [&](const TorusPoint& x) { return eval_monomial(m, x); };
        const TorusGrid g = TorusGrid::exact_for(m.total_degree());
        const cplx coarse = weyl_integrate(f, g);
        const cplx fine = weyl_integrate(f, TorusGrid(2 * g.N));
        CHECK(std::abs(coarse - fine) < 1e-10);
    }
}

TEST_CASE("parallel and serial Weyl integration agree; threads do not change bits")
{
    const TorusFunction f = [](const TorusPoint& x) {
        const cplx c = elementary_character(1, x);
        return c * c * std::conj(c) * std::conj(c);
    };
    const TorusGrid g(13);
    omp_set_num_threads(1);
    const cplx a = weyl_integrate(f, g);
    omp_set_num_threads(4);
    const cplx b = weyl_integrate(f, g);
    CHECK(a == b);
    CHECK(std::abs(a - serial::weyl_integrate(f, g)) < 1e-12);
    CHECK(std::abs(a - 2.0) < 1e-10);
}

TEST_CASE("exact Sato-Tate integrals")
{
    CHECK(st_integral(MonomialExponent{}) == 1);
    CHECK(st_integral(MonomialExponent{{1, 0, 0, 0, 0, 0}}) == 0);
    CHECK(st_integral(MonomialExponent{{1, 1, 0, 0, 0, 0}}) == 1);
    CHECK(st_integral(MonomialExponent{{2, 2, 0, 0, 0, 0}}) == 2);
    CHECK(st_integral(MonomialExponent{{4, 0, 0, 0, 0, 0}}) == 1);
    CHECK(st_integral(MonomialExponent{{0, 0, 2, 0, 0, 0}}) == 1);
    CHECK(st_integral(MonomialExponent{{1, 0, 0, 0, 1, 0}}) == 1);
    CHECK(st_integral(MonomialExponent{{0, 0, 1, 1, 0, 0}}) == 1);
    for (const MonomialExponent m : {MonomialExponent{{2, 2, 0, 0, 0, 0}}, MonomialExponent{{1, 0, 1, 0, 0, 1}}}) {
        const cplx q = st_integral_quadrature(m);
        CHECK(std::abs(q - static_cast<double>(st_integral(m))) < 1e-10);
    }
    const MonomialExponent m{{2, 1, 0, 0, 0, 0}};
    CHECK(std::abs(multiplicity_by_quadrature(m, omega(1, 0, 0)) - 2.0) < 1e-10);
}

TEST_CASE("eval_monomial uses literal conjugates")
{
    RngStream rng(1, 0);
    const TorusPoint x = haar_sample(rng);
    const MonomialExponent m{{1, 2, 0, 1, 1, 0}};
    const cplx e1 = elementary_character(1, x), e2 = elementary_character(2, x), e3 = elementary_character(3, x);
    const cplx expected = e1 * std::conj(e1) * std::conj(e1) * std::conj(e2) * e3;
    CHECK(std::abs(eval_monomial(m, x) - expected) < 1e-13);
    CHECK(std::abs(eval_monomial(m, x) - monomial_character(m, x)) < 1e-12);
}

TEST_CASE("Haar draws lie on SU(4)")
{
    RngStream rng(7, 3);
    for (int i = 0; i < 500; ++i) {
        const HaarDraw d = haar_draw(rng);
        CHECK(d.max_modulus_defect < 1e-12);
        CHECK(d.det_defect < 1e-12);
        CHECK(d.point.is_special_unitary(1e-13));
    }
}

TEST_CASE("Haar moments: determinism and a small consistency check")
{
    const std::vector<MonomialExponent> ms = {MonomialExponent{{1, 0, 0, 0, 0, 0}}, MonomialExponent{{1, 1, 0, 0, 0, 0}},
                                              MonomialExponent{{0, 0, 1, 1, 0, 0}}};
    omp_set_num_threads(1);
    const auto a = haar_moments(ms, 20000, 5);
    omp_set_num_threads(3);
    const auto b = haar_moments(ms, 20000, 5);
    const auto s = serial::haar_moments(ms, 20000, 5);
    for (std::size_t k = 0; k < ms.size(); ++k) {
        CHECK(a[k].mean == b[k].mean);
        CHECK(a[k].se_real == b[k].se_real);
        CHECK(std::abs(a[k].mean - s[k].mean) < 1e-12);
        CHECK(a[k].z_score(static_cast<double>(st_integral(ms[k]))) < 5.0);
    }
    CHECK(haar_moments(ms, 20000, 6)[1].mean != a[1].mean);
    CHECK_THROWS(haar_moments(ms, 0, 1));
}

TEST_CASE("compensated summation")
{
    detail::CompensatedSum s;
    s.add(1.0);
    for (int i = 0; i < 1000; ++i) s.add(1e-16);
    s.add(-1.0);
    CHECK(s.value() == doctest::Approx(1e-13).epsilon(1e-10));
}

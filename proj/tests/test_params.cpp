#include <doctest.h>

#include <random>
#include <stdexcept>

#include "gl4st/params.hpp"

using namespace gl4st;

namespace {

cplx random_cplx(std::mt19937_64& g)
{
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    return {u(g), u(g)};
}

} // namespace

TEST_CASE("v chart maps unit vectors to the expected alpha")
{
    const auto a = alpha_from_v(VCoordinate{{1.0, 0.0, 0.0}});
    CHECK(a[0] == cplx(3.0));
    CHECK(a[1] == cplx(-1.0));
    CHECK(a[2] == cplx(-1.0));
    CHECK(a[3] == cplx(-1.0));

    const auto b = alpha_from_v(VCoordinate{{0.0, 1.0, 0.0}});
    CHECK(b[0] == cplx(2.0));
    CHECK(b[1] == cplx(2.0));
    CHECK(b[2] == cplx(-2.0));
    CHECK(b[3] == cplx(-2.0));

    const auto c = alpha_from_v(VCoordinate{{0.0, 0.0, 1.0}});
    CHECK(c[0] == cplx(1.0));
    CHECK(c[3] == cplx(-3.0));
}

TEST_CASE("v chart round trip")
{
    std::mt19937_64 g(11);
    for (int trial = 0; trial < 200; ++trial) {
        const VCoordinate v{{random_cplx(g), random_cplx(g), random_cplx(g)}};
        const VCoordinate back = v_from_alpha(alpha_from_v(v));
        for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(back.v[i] - v.v[i]) < 1e-13);

        const LanglandsParameter a = alpha_from_v(v);
        const LanglandsParameter again = alpha_from_v(v_from_alpha(a));
        for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(again[i] - a[i]) < 1e-12);
    }
}

TEST_CASE("zero-sum validation")
{
    CHECK_THROWS_AS(LanglandsParameter({1.0, 0.0, 0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(v_from_alpha(std::array<cplx, 4>{1.0, 1.0, 0.0, 0.0}), std::invalid_argument);
    CHECK_NOTHROW(LanglandsParameter({1.0, -1.0, cplx(0, 2), cplx(0, -2)}));
    // The tolerance scales with the largest component.
    CHECK_NOTHROW(LanglandsParameter({1e6, -1e6 + 1e-7, 0.0, 0.0}));
    CHECK_THROWS(LanglandsParameter({1e6, -1e6 + 1e-3, 0.0, 0.0}));
    CHECK_THROWS(LanglandsParameter::imaginary({1.0, 2.0, 3.0, 4.0}));
}

TEST_CASE("temperedness and transforms")
{
    const auto a = LanglandsParameter::imaginary({3.0, 1.0, -1.5, -2.5});
    CHECK(a.tempered());
    CHECK(a[0] == cplx(0.0, 3.0));

    const LanglandsParameter b({cplx(0.1, 1.0), cplx(-0.1, 2.0), cplx(0.0, -3.0), 0.0});
    CHECK_FALSE(b.tempered());

    const auto p = a.permuted({3, 2, 1, 0});
    CHECK(p[0] == a[3]);
    CHECK(p[3] == a[0]);
    CHECK_THROWS(a.permuted({0, 0, 1, 2}));

    const auto c = b.conjugate();
    for (std::size_t i = 0; i < 4; ++i) CHECK(c[i] == std::conj(b[i]));

    const auto s = a.scaled(10.0);
    for (std::size_t i = 0; i < 4; ++i) CHECK(s[i] == 10.0 * a[i]);
}

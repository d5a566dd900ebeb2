#include <doctest.h>

#include <functional>
#include <random>
#include <vector>

#include "gl4st/rep.hpp"

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

// Sum over semistandard tableaux of shape lambda with entries 1..4.
cplx ssyt_character(const DominantWeight& w, const std::array<cplx, 4>& x, std::uint64_t* count = nullptr)
{
    std::vector<std::vector<int>> tab;
    for (std::size_t r = 0; r < 4; ++r) tab.emplace_back(static_cast<std::size_t>(w[r]), 0);
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < tab[r].size(); ++c) cells.emplace_back(r, c);
    cplx total = 0.0;
    std::uint64_t n = 0;
    std::function<void(std::size_t)> fill = [&](std::size_t k) {
        if (k == cells.size()) {
            cplx term = 1.0;
            for (const auto& row : tab)
                for (const int e : row) term *= x[static_cast<std::size_t>(e)];
            total += term;
            ++n;
            return;
        }
        const auto [r, c] = cells[k];
        for (int e = 0; e < 4; ++e) {
            if (c > 0 && e < tab[r][c - 1]) continue;
            if (r > 0 && e <= tab[r - 1][c]) continue;
            tab[r][c] = e;
            fill(k + 1);
        }
    };
    fill(0);
    if (count) *count = n;
    return total;
}

TorusPoint random_point(std::mt19937_64& g)
{
    std::uniform_real_distribution<double> u(-3.2, 3.2);
    return TorusPoint::from_angles(u(g), u(g), u(g));
}

std::vector<MonomialExponent> monomials_up_to(unsigned degree)
{
    std::vector<MonomialExponent> out;
    MonomialExponent m;
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
        if (i == 6) {
            out.push_back(m);
            return;
        }
        for (unsigned e = 0; e <= left; ++e) {
            m.e[i] = e;
            rec(i + 1, left - e);
        }
        m.e[i] = 0;
    };
    rec(0, degree);
    return out;
}

} // namespace

TEST_CASE("dominant weights normalize and validate")
{
    const DominantWeight w({3, 2, 2, 1});
    CHECK(w.parts() == std::array<int, 4>{2, 1, 1, 0});
    CHECK(w.to_string() == "(2,1,1,0)");
    CHECK(w.l_coordinates() == std::array<int, 3>{1, 0, 1});
    CHECK_THROWS_AS(DominantWeight({1, 2, 0, 0}), std::invalid_argument);
    CHECK(DominantWeight({5, 5, 5, 5}).is_trivial());
    CHECK(omega(2, 0, 1) == DominantWeight({3, 1, 1, 0}));
    CHECK_THROWS(omega(-1, 0, 0));
    for (const auto& x : weights_up_to(4)) {
        const auto l = x.l_coordinates();
        CHECK(omega(l[0], l[1], l[2]) == x);
        CHECK(x.dual().dual() == x);
    }
    CHECK(omega(1, 0, 0).dual() == omega(0, 0, 1));
    CHECK(omega(0, 1, 0).dual() == omega(0, 1, 0));
}

TEST_CASE("torus points")
{
    CHECK_THROWS(TorusPoint::special_unitary({1.0, 1.0, 1.0, cplx(0.0, 1.0)}));
    CHECK_THROWS(TorusPoint::special_unitary({2.0, 0.5, 1.0, 1.0}));
    const auto x = TorusPoint::from_angles(0.3, -1.1, 2.0);
    CHECK(x.is_special_unitary(1e-14));
    const auto y = TorusPoint::from_angles(2.0, 0.3, -1.1);
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(x.eigenvalues()[i] - y.eigenvalues()[i]) < 1e-15);
}

TEST_CASE("Schur characters match the tableau expansion")
{
    std::mt19937_64 g(1);
    for (int trial = 0; trial < 5; ++trial) {
        const TorusPoint x = random_point(g);
        for (const auto& w : weights_up_to(4)) {
            INFO(w.to_string());
            const cplx ref = ssyt_character(w, x.eigenvalues());
            CHECK(std::abs(schur_character(w, x) - ref) < 1e-11 * std::max(1.0, std::abs(ref)));
        }
    }
    // Off the unit circle the determinant formula still holds.
    const TorusPoint z({cplx(1.3, 0.2), cplx(-0.4, 0.9), cplx(0.7, -1.1), cplx(0.5, 0.5)});
    for (const auto& w : weights_up_to(3)) {
        const cplx ref = ssyt_character(w, z.eigenvalues());
        CHECK(std::abs(schur_character(w, z) - ref) < 1e-11 * std::max(1.0, std::abs(ref)));
    }
}

TEST_CASE("dimensions count tableaux")
{
    for (const auto& w : weights_up_to(5)) {
        std::uint64_t count = 0;
        ssyt_character(w, {1.0, 1.0, 1.0, 1.0}, &count);
        CHECK(dimension(w) == count);
    }
    CHECK(dimension(omega(0, 1, 0)) == 6);
    CHECK(dimension(omega(1, 0, 1)) == 15);
}

TEST_CASE("elementary characters")
{
    std::mt19937_64 g(2);
    const TorusPoint x = random_point(g);
    CHECK(std::abs(elementary_symmetric(0, x) - 1.0) < 1e-15);
    CHECK(std::abs(elementary_symmetric(4, x) - 1.0) < 1e-14);
    for (int k = 1; k <= 3; ++k) {
        CHECK(std::abs(elementary_character(k, x) - schur_character(omega(k == 1, k == 2, k == 3), x)) < 1e-13);
        CHECK(std::abs(std::conj(elementary_character(k, x)) - elementary_character(4 - k, x)) < 1e-13);
    }
    CHECK_THROWS(elementary_character(0, x));
    CHECK_THROWS(elementary_symmetric(5, x));
}

TEST_CASE("Pieri rule conserves dimension and matches characters")
{
    std::mt19937_64 g(4);
    const TorusPoint x = random_point(g);
    for (const auto& m : monomials_up_to(4)) {
        const TensorDecomposition d = monomial_multiplicities(m);
        std::uint64_t expected = 1;
        for (int k = 1; k <= 3; ++k)
            for (unsigned i = 0; i < m.power(k) + m.conj_power(k); ++i) expected *= (k == 2 ? 6 : 4);
        CHECK(d.total_dimension() == expected);
        const cplx chi = monomial_character(m, x);
        CHECK(std::abs(d.character(x) - chi) < 1e-10 * std::max(1.0, std::abs(chi)));
        CHECK(monomial_multiplicities(m.swapped()) == d.dual());
    }
}

TEST_CASE("small tensor products")
{
    // V ⊗ V = Sym^2 V + Λ^2 V
    const auto d = tensor_with_fundamental(tensor_with_fundamental(TensorDecomposition::trivial(), 1), 1);
    CHECK(d.multiplicities().size() == 2);
    CHECK(d.multiplicity(omega(2, 0, 0)) == 1);
    CHECK(d.multiplicity(omega(0, 1, 0)) == 1);
    // V ⊗ V* = adjoint + trivial
    const auto e = monomial_multiplicities(MonomialExponent{{1, 1, 0, 0, 0, 0}});
    CHECK(e.multiplicity(DominantWeight()) == 1);
    CHECK(e.multiplicity(omega(1, 0, 1)) == 1);
    CHECK(e.total_dimension() == 16);
    CHECK_THROWS(TensorDecomposition({{DominantWeight(), 0}}));
    CHECK_THROWS(tensor_with_fundamental(d, 4));
}

TEST_CASE("omega is a bijection onto partitions with lambda4 = 0")
{
    for (int a = 0; a <= 10; ++a)
        for (int b = 0; b <= 10; ++b)
            for (int c = 0; c <= 10; ++c) {
                const DominantWeight w = omega(a, b, c);
                CHECK(w.l_coordinates() == std::array<int, 3>{a, b, c});
                CHECK(w[3] == 0);
            }
    for (const auto& w : weights_up_to(10)) {
        const auto l = w.l_coordinates();
        CHECK(omega(l[0], l[1], l[2]) == w);
    }
}

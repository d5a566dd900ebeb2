#include <doctest.h>

#include "gl4st/bounds.hpp"

using namespace gl4st;

namespace {

Exponent e(std::int64_t c, std::int64_t r, std::int64_t eps)
{
    return Exponent{Rational(c), Rational(r), Rational(eps)};
}

Exponent half_plus_eps()
{
    return Exponent{Rational(1, 2), Rational(0), Rational(1)};
}

ErrorBudget unit_budget(int r)
{
    ErrorBudget b;
    b.R = 14;
    b.epsilon = Rational(1, 100);
    b.r = r;
    b.T = 1e3;
    return b;
}

} // namespace

TEST_CASE("rational parsing")
{
    CHECK(parse_rational("14") == Rational(14));
    CHECK(parse_rational("29/2") == Rational(29, 2));
    CHECK(parse_rational("0.01") == Rational(1, 100));
    CHECK(parse_rational("-0.5") == Rational(-1, 2));
    CHECK(parse_rational("-2.25") == Rational(-9, 4));
    CHECK(parse_rational("+3") == Rational(3));
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    CHECK_THROWS(parse_rational(""));
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("1.2.3"));
    CHECK(format_rational(Rational(15, 2)) == "15/2");
    CHECK(format_rational(Rational(-3)) == "-3");
}

TEST_CASE("exponent rendering and ordering")
{
    CHECK(e(6, 8, 1).to_string() == "6+8R+eps");
    CHECK(e(6, 8, 1).render(Rational(14)) == "118+eps");
    CHECK(e(-6, 8, 0).to_string() == "-6+8R");
    CHECK(half_plus_eps().to_string() == "1/2+eps");
    CHECK(e(0, 0, 0).to_string() == "0");
    CHECK(compare(e(4, 8, 1), e(5, 8, 0), Rational(14)) == std::strong_ordering::less);
    CHECK(compare(e(4, 8, 1), e(4, 8, 0), Rational(14)) == std::strong_ordering::greater);
    CHECK(compare(e(20, 0, 0), e(6, 1, 0), Rational(14)) == std::strong_ordering::equal);
}

TEST_CASE("Kloosterman bound")
{
    for (int r = 1; r <= 8; ++r) {
        const auto k = kloosterman_bound(unit_budget(r));
        CHECK(k.coefficient[0] == Rational(4 * r - 1, 2));
        CHECK(k.coefficient[1] == Rational(2 * r - 1));
        CHECK(k.coefficient[2] == Rational(4 * r - 1, 2));
        CHECK(k.class_exponents[0] == e(20 - 4 * r, 8, 1));
        CHECK(k.class_exponents[1] == e(19 - 5 * r, 8, 1));
        CHECK(k.class_exponents[2] == e(18 - 6 * r, 8, 1));
        // The long-element class dominates for every r >= 1.
        CHECK(k.t_exponent == e(20 - 4 * r, 8, 1));
    }
    const auto k4 = kloosterman_bound(unit_budget(4));
    CHECK(k4.term.coefficient[0] == Exponent{Rational(15, 2), 0, 0});
    CHECK(k4.term.coefficient[1] == Exponent{Rational(7), 0, 0});
    CHECK(k4.term.to_string() == "(l1m1)^{15/2}(l2m2)^{7}(l3m3)^{15/2} T^{4+8R+eps}");
}

TEST_CASE("Eisenstein components")
{
    const auto eb = eisenstein_bounds(unit_budget(4));
    CHECK(eb.components[0].t_exponent == e(3, 8, 1));
    CHECK(eb.components[1].t_exponent == e(2, 8, 1));
    CHECK(eb.components[2].t_exponent == e(5, 8, 1));
    CHECK(eb.components[3].t_exponent == e(6, 8, 1));
    for (const auto& c : eb.components) {
        CHECK(c.is_lm_power());
        CHECK(c.coefficient[0] == half_plus_eps());
    }
    CHECK(eb.dominant.source == "P_3,1");
}

TEST_CASE("assembled budget at r = 4")
{
    const BudgetReport rep = total_budget(unit_budget(4));
    REQUIRE(rep.error_terms.size() == 3);
    CHECK(rep.error_terms[0].t_exponent == e(6, 8, 1));
    CHECK(rep.error_terms[1].t_exponent == e(5, 8, 1));
    CHECK(rep.error_terms[2].t_exponent == e(4, 8, 1));
    CHECK(rep.error_terms[0].coefficient[1] == half_plus_eps());
    CHECK(rep.error_terms[2].source == "kloosterman");
    CHECK(rep.main_exponents == std::vector<Exponent>{e(9, 8, 0), e(8, 8, 0), e(7, 8, 0)});
    CHECK(rep.dominant_error_t_exponent == e(6, 8, 1));

    ErrorBudget other = unit_budget(4);
    other.M = HeckeIndex(2, 1, 1);
    CHECK(total_budget(other).main_exponents.empty());
}

TEST_CASE("at small r the Kloosterman term swallows the Eisenstein terms")
{
    const BudgetReport rep = total_budget(unit_budget(1));
    REQUIRE(rep.error_terms.size() == 1);
    CHECK(rep.error_terms[0].t_exponent == e(16, 8, 1));
}

TEST_CASE("optimal r")
{
    CHECK(optimize_r(unit_budget(1)) == 4);
    ErrorBudget b = unit_budget(1);
    b.T = 1e8;
    CHECK(optimize_r(b) == 4);
    // Large coefficients push r down.
    b.T = 10.0;
    b.L = HeckeIndex(1000, 1000, 1000);
    b.M = HeckeIndex(1000, 1000, 1000);
    CHECK(optimize_r(b) < 4);
    CHECK(total_budget_optimized(unit_budget(9)).r == 4);
    CHECK_THROWS(optimize_r(unit_budget(1), 0));
}

TEST_CASE("dominance")
{
    const Rational R(14);
    const BoundTerm small{"a", {half_plus_eps(), half_plus_eps(), half_plus_eps()}, e(3, 8, 1)};
    const BoundTerm big{"b", {e(7, 0, 0), e(7, 0, 0), e(7, 0, 0)}, e(4, 8, 1)};
    CHECK(dominated_by(small, big, R));
    CHECK_FALSE(dominated_by(big, small, R));
}

TEST_CASE("budget validation and constant shape")
{
    ErrorBudget b = unit_budget(4);
    b.epsilon = 0;
    CHECK_THROWS_AS(b.validate(), std::invalid_argument);
    b = unit_budget(0);
    CHECK_THROWS(b.validate());
    b = unit_budget(4);
    b.T = 0.5;
    CHECK_THROWS(b.validate());
    CHECK(clm_constant_shape(HeckeIndex(), HeckeIndex()) == std::array<int, 3>{3, 4, 3});
}

TEST_CASE("unit coefficients keep every error term below the lowest main term")
{
    for (int r = 1; r <= 8; ++r) {
        const BudgetReport rep = total_budget(unit_budget(r));
        if (r >= 4) {
            for (const auto& t : rep.error_terms) CHECK(compare(t.t_exponent, e(7, 8, 0), Rational(14)) < 0);
        }
    }
}

TEST_CASE("Eisenstein sizes grow with T")
{
    ErrorBudget b = unit_budget(4);
    b.L = HeckeIndex(2, 3, 1);
    b.M = HeckeIndex(1, 2, 3);
    for (std::size_t i = 0; i < 4; ++i) {
        double prev = -1e300;
        for (const double T : {10.0, 100.0, 1e3, 1e6}) {
            b.T = T;
            const double s = log_size(eisenstein_bounds(b).components[i], b);
            CHECK(s > prev);
            prev = s;
        }
    }
}

TEST_CASE("Kloosterman exponent falls as r grows while its coefficient rises")
{
    for (int r = 1; r < 8; ++r) {
        const auto a = kloosterman_bound(unit_budget(r));
        const auto b = kloosterman_bound(unit_budget(r + 1));
        CHECK(compare(b.t_exponent, a.t_exponent, Rational(14)) < 0);
        for (std::size_t i = 0; i < 3; ++i) CHECK(b.coefficient[i] > a.coefficient[i]);
    }
}

#pragma once

#include <array>
#include <boost/rational.hpp>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gl4st/hecke.hpp"

namespace gl4st {

using Rational = boost::rational<std::int64_t>;

/// Parses "14", "-3", "29/2" or a terminating decimal such as "0.01".
Rational parse_rational(const std::string& text);
std::string format_rational(const Rational& q);

/// Symbolic exponent  constant + r_coeff * R + eps_coeff * eps.
struct Exponent {
    Rational constant{0};
    Rational r_coeff{0};
    Rational eps_coeff{0};

    Rational at(const Rational& R, const Rational& eps) const { return constant + r_coeff * R + eps_coeff * eps; }
    /// R substituted, eps kept symbolic: "118+eps".
    std::string render(const Rational& R) const;
    /// Fully symbolic: "4+8R+eps".
    std::string to_string() const;

    bool operator==(const Exponent&) const = default;
};

/// Orders exponents at a fixed R, treating eps as a positive infinitesimal.
std::strong_ordering compare(const Exponent& a, const Exponent& b, const Rational& R);

/// One summand  c * (l1 m1)^a1 (l2 m2)^a2 (l3 m3)^a3 * T^t  with an unknown
/// positive constant c. A coefficient with a1 = a2 = a3 is (LM)^a1.
struct BoundTerm {
    std::string source;
    std::array<Exponent, 3> coefficient{};
    Exponent t_exponent;

    bool is_lm_power() const;
    std::string to_string() const;

    bool operator==(const BoundTerm&) const = default;
};

/// True when every coefficient exponent and the T exponent of `a` are <= those of `b`.
bool dominated_by(const BoundTerm& a, const BoundTerm& b, const Rational& R);

struct ErrorBudget {
    HeckeIndex L;
    HeckeIndex M;
    double T = 1.0;
    Rational R{14};
    Rational epsilon{1, 100};
    int r = 4;

    /// Throws std::invalid_argument unless eps > 0, r >= 1, T >= 1.
    void validate() const;
};

struct KloostermanBound {
    std::array<Rational, 3> coefficient{};
    /// T exponents of the three Weyl-element classes (j = 2,3,4; 6,7; 5,8).
    std::array<Exponent, 3> class_exponents{};
    Exponent t_exponent;
    BoundTerm term;
};

KloostermanBound kloosterman_bound(const ErrorBudget& b);

struct EisensteinBounds {
    /// P_min, P_{2,1,1}, P_{2,2}, P_{3,1}
    std::array<BoundTerm, 4> components;
    BoundTerm dominant;
};

EisensteinBounds eisenstein_bounds(const ErrorBudget& b);

/// Numeric log of the summand at (L, M, T, eps) with the constant set to 1.
double log_size(const BoundTerm& t, const ErrorBudget& b);

/// r in [1, r_max] minimizing max(Kloosterman term, dominant Eisenstein term)
/// at the budget's (L, M, T, eps); ties go to the smallest r.
int optimize_r(const ErrorBudget& b, int r_max = 16);

struct BudgetReport {
    int r = 0;
    /// T exponents of c1 T^{9+8R} + c2 T^{8+8R} + c3 T^{7+8R}; empty when L != M.
    std::vector<Exponent> main_exponents;
    KloostermanBound kloosterman;
    EisensteinBounds eisenstein;
    /// Eisenstein components not dominated by the Kloosterman term, then the
    /// Kloosterman term.
    std::vector<BoundTerm> error_terms;
    Exponent dominant_error_t_exponent;
};

BudgetReport total_budget(const ErrorBudget& b);
BudgetReport total_budget_optimized(const ErrorBudget& b, int r_max = 16);

/// Exponents of C_{L,M} = c4 (l1 m1)^3 (l2 m2)^4 (l3 m3)^3; c4 is unknown.
std::array<int, 3> clm_constant_shape(const HeckeIndex& L, const HeckeIndex& M);

} // namespace gl4st

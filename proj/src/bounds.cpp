#include "gl4st/bounds.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gl4st {

Rational parse_rational(const std::string& text)
{
    if (text.empty()) throw std::invalid_argument("empty rational");
    try {
        if (const auto slash = text.find('/'); slash != std::string::npos) {
            return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
        }
        if (const auto dot = text.find('.'); dot != std::string::npos) {
            const std::string whole = text.substr(0, dot);
            const std::string frac = text.substr(dot + 1);
            if (frac.size() > 15 || frac.find_first_not_of("0123456789") != std::string::npos) {
                throw std::invalid_argument("bad decimal");
            }
            std::int64_t den = 1;
            for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
            const bool negative = !whole.empty() && whole[0] == '-';
            const std::int64_t w = (whole.empty() || whole == "-" || whole == "+") ? 0 : std::stoll(whole);
            const std::int64_t f = frac.empty() ? 0 : std::stoll(frac);
            const Rational magnitude = Rational(negative ? -w : w) + Rational(f, den);
            return negative ? -magnitude : magnitude;
        }
        std::size_t used = 0;
        const std::int64_t v = std::stoll(text, &used);
        if (used != text.size()) throw std::invalid_argument("trailing characters");
        return Rational(v);
    } catch (const std::logic_error&) {
        throw std::invalid_argument("cannot parse rational '" + text + "'");
    }
}

std::string format_rational(const Rational& q)
{
    std::ostringstream os;
    os << q.numerator();
    if (q.denominator() != 1) os << '/' << q.denominator();
    return os.str();
}

namespace {

void append_signed(std::ostringstream& os, const Rational& coef, const std::string& symbol, bool& first)
{
    // Comparisons stay Rational-to-Rational: boost 1.74 recurses on mixed
    // integer types under C++20 rewritten operators.
    const Rational zero(0);
    if (coef == zero) return;
    const bool negative = coef < zero;
    const Rational mag = negative ? -coef : coef;
    if (!first || negative) os << (negative ? "-" : "+");
    if (mag != Rational(1) || symbol.empty()) os << format_rational(mag);
    os << symbol;
    first = false;
}

} // namespace

std::string Exponent::render(const Rational& R) const
{
    std::ostringstream os;
    bool first = true;
    append_signed(os, constant + r_coeff * R, "", first);
    append_signed(os, eps_coeff, "eps", first);
    if (first) os << '0';
    return os.str();
}

std::string Exponent::to_string() const
{
    std::ostringstream os;
    bool first = true;
    append_signed(os, constant, "", first);
    append_signed(os, r_coeff, "R", first);
    append_signed(os, eps_coeff, "eps", first);
    if (first) os << '0';
    return os.str();
}

std::strong_ordering compare(const Exponent& a, const Exponent& b, const Rational& R)
{
    const Rational lhs = a.constant + a.r_coeff * R;
    const Rational rhs = b.constant + b.r_coeff * R;
    if (lhs != rhs) return lhs < rhs ? std::strong_ordering::less : std::strong_ordering::greater;
    if (a.eps_coeff != b.eps_coeff) {
        return a.eps_coeff < b.eps_coeff ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

bool BoundTerm::is_lm_power() const
{
    return coefficient[0] == coefficient[1] && coefficient[1] == coefficient[2];
}

std::string BoundTerm::to_string() const
{
    std::ostringstream os;
    if (is_lm_power()) {
        os << "(LM)^{" << coefficient[0].to_string() << "}";
    } else {
        os << "(l1m1)^{" << coefficient[0].to_string() << "}(l2m2)^{" << coefficient[1].to_string()
           << "}(l3m3)^{" << coefficient[2].to_string() << "}";
    }
    os << " T^{" << t_exponent.to_string() << "}";
    return os.str();
}

bool dominated_by(const BoundTerm& a, const BoundTerm& b, const Rational& R)
{
    for (std::size_t i = 0; i < 3; ++i) {
        if (compare(a.coefficient[i], b.coefficient[i], R) == std::strong_ordering::greater) return false;
    }
    return compare(a.t_exponent, b.t_exponent, R) != std::strong_ordering::greater;
}

void ErrorBudget::validate() const
{
    if (!(epsilon > Rational(0))) throw std::invalid_argument("epsilon must be positive");
    if (r < 1) throw std::invalid_argument("r must be >= 1");
    if (!(T >= 1.0) || !std::isfinite(T)) throw std::invalid_argument("T must be >= 1");
}

namespace {

Exponent t_power(std::int64_t constant, bool with_eps = true)
{
    return Exponent{Rational(constant), Rational(8), Rational(with_eps ? 1 : 0)};
}

Exponent lm_half_plus_eps()
{
    return Exponent{Rational(1, 2), Rational(0), Rational(1)};
}

BoundTerm lm_term(std::string source, std::int64_t t_constant)
{
    const Exponent c = lm_half_plus_eps();
    return BoundTerm{std::move(source), {c, c, c}, t_power(t_constant)};
}

} // namespace

KloostermanBound kloosterman_bound(const ErrorBudget& b)
{
    b.validate();
    const std::int64_t r = b.r;
    KloostermanBound out;
    out.coefficient = {Rational(4 * r - 1, 2), Rational(2 * r - 1), Rational(4 * r - 1, 2)};
    out.class_exponents = {t_power(20 - 4 * r), t_power(19 - 5 * r), t_power(18 - 6 * r)};
    out.t_exponent = out.class_exponents[0];
    for (const auto& e : out.class_exponents) {
        if (compare(e, out.t_exponent, b.R) == std::strong_ordering::greater) out.t_exponent = e;
    }
    out.term.source = "kloosterman";
    for (std::size_t i = 0; i < 3; ++i) out.term.coefficient[i] = Exponent{out.coefficient[i], 0, 0};
    out.term.t_exponent = out.t_exponent;
    return out;
}

EisensteinBounds eisenstein_bounds(const ErrorBudget& b)
{
    b.validate();
    EisensteinBounds out{{lm_term("P_min", 3), lm_term("P_2,1,1", 2), lm_term("P_2,2", 5), lm_term("P_3,1", 6)}, {}};
    out.dominant = out.components[0];
    for (const auto& c : out.components) {
        if (compare(c.t_exponent, out.dominant.t_exponent, b.R) == std::strong_ordering::greater) out.dominant = c;
    }
    return out;
}

double log_size(const BoundTerm& t, const ErrorBudget& b)
{
    const double R = boost::rational_cast<double>(b.R);
    const double eps = boost::rational_cast<double>(b.epsilon);
    auto value = [&](const Exponent& e) {
        return boost::rational_cast<double>(e.constant) + boost::rational_cast<double>(e.r_coeff) * R +
               boost::rational_cast<double>(e.eps_coeff) * eps;
    };
    const std::array<double, 3> bases = {static_cast<double>(b.L.m1) * static_cast<double>(b.M.m1),
                                         static_cast<double>(b.L.m2) * static_cast<double>(b.M.m2),
                                         static_cast<double>(b.L.m3) * static_cast<double>(b.M.m3)};
    double acc = value(t.t_exponent) * std::log(b.T);
    for (std::size_t i = 0; i < 3; ++i) acc += value(t.coefficient[i]) * std::log(bases[i]);
    return acc;
}

int optimize_r(const ErrorBudget& b, int r_max)
{
    b.validate();
    if (r_max < 1) throw std::invalid_argument("r_max must be >= 1");
    const double eisenstein = log_size(eisenstein_bounds(b).dominant, b);
    int best_r = 1;
    double best = INFINITY;
    for (int r = 1; r <= r_max; ++r) {
        ErrorBudget trial = b;
        trial.r = r;
        const double objective = std::max(log_size(kloosterman_bound(trial).term, trial), eisenstein);
        if (objective < best) {
            best = objective;
            best_r = r;
        }
    }
    return best_r;
}

BudgetReport total_budget(const ErrorBudget& b)
{
    b.validate();
    BudgetReport out;
    out.r = b.r;
    if (b.L == b.M) out.main_exponents = {t_power(9, false), t_power(8, false), t_power(7, false)};
    out.kloosterman = kloosterman_bound(b);
    out.eisenstein = eisenstein_bounds(b);

    // Largest T power first, matching the displayed error term.
    std::vector<BoundTerm> kept;
    for (const auto& c : out.eisenstein.components) {
        if (!dominated_by(c, out.kloosterman.term, b.R)) kept.push_back(c);
    }
    std::stable_sort(kept.begin(), kept.end(), [&](const BoundTerm& x, const BoundTerm& y) {
        return compare(x.t_exponent, y.t_exponent, b.R) == std::strong_ordering::greater;
    });
    out.error_terms = std::move(kept);
    out.error_terms.push_back(out.kloosterman.term);

    out.dominant_error_t_exponent = out.error_terms.front().t_exponent;
    for (const auto& t : out.error_terms) {
        if (compare(t.t_exponent, out.dominant_error_t_exponent, b.R) == std::strong_ordering::greater) {
            out.dominant_error_t_exponent = t.t_exponent;
        }
    }
    return out;
}

BudgetReport total_budget_optimized(const ErrorBudget& b, int r_max)
{
    ErrorBudget tuned = b;
    tuned.r = optimize_r(b, r_max);
    return total_budget(tuned);
}

std::array<int, 3> clm_constant_shape(const HeckeIndex&, const HeckeIndex&)
{
    return {3, 4, 3};
}

} // namespace gl4st

#include "gl4st/special.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace gl4st {

namespace {

constexpr double kStirlingFloor = 15.0;

// B_{2k} / (2k (2k-1)), k = 1..10
constexpr std::array<double, 10> kStirlingCoeffs = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
};

cplx stirling_log_gamma(cplx w)
{
    const cplx inv = 1.0 / w;
    const cplx inv2 = inv * inv;
    cplx series = 0.0;
    for (auto it = kStirlingCoeffs.rbegin(); it != kStirlingCoeffs.rend(); ++it) {
        series = series * inv2 + *it;
    }
    series *= inv;
    constexpr double half_log_two_pi = 0.91893853320467274178032973640562;
    return (w - 0.5) * std::log(w) - w + half_log_two_pi + series;
}

void check_pole(cplx z)
{
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw std::domain_error("log_gamma: non-finite argument");
    }
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real())) {
        std::ostringstream os;
        os << "log_gamma: pole at z = " << z.real();
        throw std::domain_error(os.str());
    }
}

int shift_count(double re)
{
    return re < kStirlingFloor ? static_cast<int>(std::ceil(kStirlingFloor - re)) : 0;
}

double wrap_phase(double phi)
{
    return std::remainder(phi, 2.0 * std::numbers::pi);
}

constexpr std::array<std::array<int, 4>, 24> all_permutations()
{
    std::array<std::array<int, 4>, 24> out{};
    std::array<int, 4> p = {0, 1, 2, 3};
    std::size_t i = 0;
    do {
        out[i++] = p;
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

constexpr auto kPermutations = all_permutations();

} // namespace

cplx log_gamma(cplx z)
{
    check_pole(z);
    const int n = shift_count(z.real());
    cplx correction = 0.0;
    for (int k = 0; k < n; ++k) correction += std::log(z + static_cast<double>(k));
    return stirling_log_gamma(z + static_cast<double>(n)) - correction;
}

double log_abs_gamma(cplx z)
{
    check_pole(z);
    const int n = shift_count(z.real());
    double correction = 0.0;
    double block = 1.0;
    for (int k = 0; k < n; ++k) {
        block *= std::norm(z + static_cast<double>(k));
        if (block > 1e250 || block < 1e-250) {
            correction += std::log(block);
            block = 1.0;
        }
    }
    correction += std::log(block);
    return stirling_log_gamma(z + static_cast<double>(n)).real() - 0.5 * correction;
}

TestFunctionContext TestFunctionContext::make(double T, double R, int n, bool exploratory)
{
    TestFunctionContext ctx{T, R, n, exploratory};
    ctx.validate();
    return ctx;
}

void TestFunctionContext::validate() const
{
    if (!(T > 0.0) || !std::isfinite(T)) throw std::invalid_argument("T must be positive");
    if (n < 2 || n > 4) throw std::invalid_argument("rank n must be 2, 3 or 4");
    if (!std::isfinite(R)) throw std::invalid_argument("R must be finite");
    if (exploratory) {
        if (!(R > 0.0)) throw std::invalid_argument("R must be positive");
    } else if (!(R >= 14.0)) {
        throw std::invalid_argument("R must be >= 14 (set exploratory to override)");
    }
}

cplx LogValue::value() const
{
    return std::polar(std::exp(log_modulus), phase);
}

LogValue eval_F_R(const LanglandsParameter& a, double R)
{
    const bool tempered = a.tempered();
    cplx sum = 0.0;
    for (const auto& s : kPermutations) {
        const cplx form = 1.0 + a[s[0]] - a[s[1]] - a[s[2]] + a[s[3]];
        if (tempered) {
            // 1 + it: only the modulus survives the conjugate pairing.
            sum += std::log(std::abs(form));
        } else {
            sum += std::log(form);
        }
    }
    // Principal logarithm of the full product before raising to R/24.
    const cplx log_product(sum.real(), wrap_phase(sum.imag()));
    const cplx result = (R / 24.0) * log_product;
    return LogValue{result.real(), wrap_phase(result.imag()), !tempered};
}

LogValue eval_p_sharp(const LanglandsParameter& a, const TestFunctionContext& ctx)
{
    ctx.validate();
    const auto n = static_cast<std::size_t>(ctx.n);
    cplx total = 0.0;
    cplx squares = 0.0;
    for (std::size_t j = 0; j < n; ++j) squares += a[j] * a[j];
    total += squares / (2.0 * ctx.T * ctx.T);

    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            if (j == k) continue;
            total += log_gamma((2.0 + ctx.R + a[j] - a[k]) / 4.0);
        }
    }
    bool off_tempered = !a.tempered();
    if (ctx.n == 4) {
        const LogValue f = eval_F_R(a, ctx.R);
        total += cplx(f.log_modulus, f.phase);
    }
    return LogValue{total.real(), wrap_phase(total.imag()), off_tempered};
}

namespace {

// log|p#| for tempered input; the phase is never needed for h there.
double log_abs_p_sharp_tempered(const LanglandsParameter& a, const TestFunctionContext& ctx)
{
    const auto n = static_cast<std::size_t>(ctx.n);
    double squares = 0.0;
    for (std::size_t j = 0; j < n; ++j) squares += (a[j] * a[j]).real();
    double total = squares / (2.0 * ctx.T * ctx.T);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            if (j != k) total += log_abs_gamma((2.0 + ctx.R + a[j] - a[k]) / 4.0);
        }
    }
    if (ctx.n == 4) total += eval_F_R(a, ctx.R).log_modulus;
    return total;
}

} // namespace

LogValue log_h(const LanglandsParameter& a, const TestFunctionContext& ctx)
{
    const LogValue p = a.tempered() ? (ctx.validate(), LogValue{log_abs_p_sharp_tempered(a, ctx), 0.0, false})
                                    : eval_p_sharp(a, ctx);
    const auto n = static_cast<std::size_t>(ctx.n);
    cplx denominator = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            if (j == k) continue;
            const cplx z = (1.0 + a[j] - a[k]) / 2.0;
            if (p.off_tempered) {
                denominator += log_gamma(z);
            } else {
                denominator += log_abs_gamma(z);
            }
        }
    }
    return LogValue{2.0 * p.log_modulus - denominator.real(), wrap_phase(-denominator.imag()),
                    p.off_tempered};
}

double eval_h(const LanglandsParameter& a, const TestFunctionContext& ctx)
{
    const LogValue lh = log_h(a, ctx);
    const double value = std::exp(lh.log_modulus) * std::cos(lh.phase);
    const bool representable =
        std::isfinite(value) &&
        (lh.off_tempered || (value > 0.0 && value >= std::numeric_limits<double>::min()));
    if (!representable) {
        std::ostringstream os;
        os.precision(17);
        os << "h_{T,R} not representable as a double; log h = " << lh.log_modulus;
        throw std::range_error(os.str());
    }
    return value;
}

} // namespace gl4st

#include "gl4st/params.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gl4st {

LanglandsParameter::LanglandsParameter(const std::array<cplx, 4>& alpha) : alpha_(alpha)
{
    const cplx sum = alpha[0] + alpha[1] + alpha[2] + alpha[3];
    double scale = 1.0;
    for (const auto& a : alpha) scale = std::max(scale, std::abs(a));
    if (!(std::abs(sum) <= kSumTolerance * scale)) {
        throw std::invalid_argument("Langlands parameter components must sum to zero (|sum| = " +
                                    std::to_string(std::abs(sum)) + ")");
    }
}

LanglandsParameter LanglandsParameter::imaginary(const std::array<double, 4>& x)
{
    return LanglandsParameter({cplx(0, x[0]), cplx(0, x[1]), cplx(0, x[2]), cplx(0, x[3])});
}

bool LanglandsParameter::tempered() const noexcept
{
    for (const auto& a : alpha_) {
        if (std::abs(a.real()) > kTemperedTolerance) return false;
    }
    return true;
}

LanglandsParameter LanglandsParameter::permuted(const std::array<int, 4>& perm) const
{
    std::array<bool, 4> seen{};
    for (const int j : perm) {
        if (j < 0 || j > 3 || seen[static_cast<std::size_t>(j)]) throw std::invalid_argument("not a permutation of 0..3");
        seen[static_cast<std::size_t>(j)] = true;
    }
    LanglandsParameter out;
    for (std::size_t i = 0; i < 4; ++i) out.alpha_[i] = alpha_[static_cast<std::size_t>(perm[i])];
    return out;
}

LanglandsParameter LanglandsParameter::conjugate() const
{
    LanglandsParameter out;
    for (std::size_t i = 0; i < 4; ++i) out.alpha_[i] = std::conj(alpha_[i]);
    return out;
}

LanglandsParameter LanglandsParameter::scaled(double s) const
{
    LanglandsParameter out;
    for (std::size_t i = 0; i < 4; ++i) out.alpha_[i] = s * alpha_[i];
    return out;
}

LanglandsParameter alpha_from_v(const VCoordinate& c)
{
    const auto& [v1, v2, v3] = c.v;
    const cplx a1 = 3.0 * v1 + 2.0 * v2 + v3;
    const cplx a2 = -v1 + 2.0 * v2 + v3;
    const cplx a3 = -v1 - 2.0 * v2 + v3;
    const cplx a4 = -v1 - 2.0 * v2 - 3.0 * v3;
    return LanglandsParameter({a1, a2, a3, a4});
}

VCoordinate v_from_alpha(const LanglandsParameter& a)
{
    return VCoordinate{{(a[0] - a[1]) / 4.0, (a[1] - a[2]) / 4.0, (a[2] - a[3]) / 4.0}};
}

VCoordinate v_from_alpha(const std::array<cplx, 4>& alpha)
{
    return v_from_alpha(LanglandsParameter(alpha));
}

} // namespace gl4st

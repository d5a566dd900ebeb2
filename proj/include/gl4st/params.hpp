#pragma once

#include <array>
#include <complex>

namespace gl4st {

using cplx = std::complex<double>;

/// Chart (v1, v2, v3) on the zero-sum hyperplane of spectral parameters.
struct VCoordinate {
    std::array<cplx, 3> v{};
};

/// Archimedean Langlands parameter of a GL(4) form: four complex numbers
/// summing to zero. Construction rejects tuples whose sum exceeds
/// 1e-12 * max(1, max |alpha_i|).
class LanglandsParameter {
public:
    static constexpr double kSumTolerance = 1e-12;
    static constexpr double kTemperedTolerance = 1e-12;

    LanglandsParameter() = default;
    explicit LanglandsParameter(const std::array<cplx, 4>& alpha);

    /// Purely imaginary parameter i*x; x must sum to zero.
    static LanglandsParameter imaginary(const std::array<double, 4>& x);

    const std::array<cplx, 4>& alpha() const noexcept { return alpha_; }
    const cplx& operator[](std::size_t i) const noexcept { return alpha_[i]; }

    /// Every component has real part 0.
    bool tempered() const noexcept;

    /// (alpha[perm[0]], ..., alpha[perm[3]])
    LanglandsParameter permuted(const std::array<int, 4>& perm) const;
    LanglandsParameter conjugate() const;
    LanglandsParameter scaled(double s) const;

private:
    std::array<cplx, 4> alpha_{};
};

LanglandsParameter alpha_from_v(const VCoordinate& v);
VCoordinate v_from_alpha(const LanglandsParameter& a);

/// Validating overload for raw tuples; throws std::invalid_argument when the
/// components do not sum to zero.
VCoordinate v_from_alpha(const std::array<cplx, 4>& alpha);

} // namespace gl4st

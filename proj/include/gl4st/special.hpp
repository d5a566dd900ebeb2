#pragma once

#include "gl4st/params.hpp"

namespace gl4st {

/// Principal branch of log Gamma(z), i.e. the analytic continuation of the
/// real log Gamma from the positive axis (branch cut along the negative real
/// axis). Relative accuracy ~1e-13 on |Re z| <= 50, |Im z| <= 1e4.
/// Throws std::domain_error at the poles z = 0, -1, -2, ...
cplx log_gamma(cplx z);

/// Re log Gamma(z) = log |Gamma(z)|, cheaper than log_gamma (no phase).
double log_abs_gamma(cplx z);

/// Scale and shift parameters of the spectral test functions.
struct TestFunctionContext {
    double T = 1.0;
    double R = 14.0;
    int n = 4;
    /// Permits R < 14 for exploratory runs.
    bool exploratory = false;

    static TestFunctionContext make(double T, double R, int n = 4, bool exploratory = false);

    /// Throws std::invalid_argument unless T > 0, n in {2,3,4}, and
    /// R >= 14 (or exploratory with R > 0).
    void validate() const;
};

/// A complex number held as log-modulus and phase in (-pi, pi].
struct LogValue {
    double log_modulus = 0.0;
    double phase = 0.0;
    /// Set when the argument was not tempered; no accuracy contract then.
    bool off_tempered = false;

    cplx value() const;
    double real_value() const { return value().real(); }
};

/// The S4-product factor F_R. For tempered alpha the 24 linear forms pair
/// into complex conjugates, so the result is real and positive.
LogValue eval_F_R(const LanglandsParameter& a, double R);

/// p#_{T,R} of rank ctx.n (first n components of a). F_R enters only at n = 4.
LogValue eval_p_sharp(const LanglandsParameter& a, const TestFunctionContext& ctx);

/// log h_{T,R}(a) assembled as a single exponent.
LogValue log_h(const LanglandsParameter& a, const TestFunctionContext& ctx);

/// h_{T,R}(a). Throws std::range_error (carrying the log value) if the result
/// is not representable as a positive double; use log_h in that regime.
double eval_h(const LanglandsParameter& a, const TestFunctionContext& ctx);

} // namespace gl4st

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gl4st/measure.hpp"
#include "gl4st/special.hpp"

namespace gl4st {

// The synthetic family draws its Satake parameters from the Sato–Tate measure
// itself, so the weighted limit holds by construction. The simulator checks
// the weights, characters, integrals and convergence rates, not any statement
// about genuine automorphic spectra.

enum class LModel { constant, lognormal };

struct FamilyConfig {
    double T = 10.0;
    double R = 14.0;
    std::uint64_t size = 100000;
    /// Spectral parameters are drawn from i [-c T, c T]^4 with sum zero.
    double box_scale = 1.0;
    /// Stand-in for L(1, Ad): 1, or exp(0.25 N(0,1)).
    LModel l_model = LModel::constant;
    std::uint64_t seed = 0;

    TestFunctionContext context() const { return TestFunctionContext::make(T, R); }
    /// Throws std::invalid_argument unless size >= 1, box_scale > 0 and the
    /// test-function context is valid.
    void validate() const;
};

/// Draws whose log h falls below this are redrawn.
inline constexpr double kLogHFloor = -700.0;

struct SyntheticForm {
    LanglandsParameter alpha;
    TorusPoint satake;
    double log_h = 0.0;
    double modeled_L = 1.0;

    double log_weight() const { return log_h - std::log(modeled_L); }
    /// h / L; may underflow or overflow, use log_weight for arithmetic.
    double weight() const { return std::exp(log_weight()); }
};

/// The N forms of the family, form j drawn from chunk j / kSamplesPerChunk.
/// Throws std::runtime_error when h underflows on almost every draw (box
/// scale too large for T). `redrawn` receives the number of underflow redraws.
std::vector<SyntheticForm> generate_family(const FamilyConfig& cfg, std::uint64_t* redrawn = nullptr);

struct WeightedMean {
    cplx mean;
    double se_real = 0.0;
    double se_imag = 0.0;
    /// (sum w)^2 / sum w^2
    double effective_size = 0.0;
};

/// Self-normalized weighted mean sum w f / sum w with w = exp(log_w - max
/// log_w). Summation runs in index order, so the result does not depend on
/// how the inputs were produced.
WeightedMean weighted_average(std::span<const double> log_weights, std::span<const cplx> values);

struct FamilyReport {
    MonomialExponent monomial;
    cplx ratio;
    double target = 0.0;
    cplx deviation;
    double se_real = 0.0;
    double se_imag = 0.0;
    double effective_size = 0.0;
    std::uint64_t size = 0;
    std::uint64_t redrawn = 0;
    double max_log_weight = 0.0;

    /// max over real and imaginary parts of |deviation| / se.
    double z_score() const;
};

std::vector<FamilyReport> simulate_family(const FamilyConfig& cfg, std::span<const MonomialExponent> monomials);
FamilyReport simulate_family(const FamilyConfig& cfg, const MonomialExponent& m);

struct ConvergenceRow {
    MonomialExponent monomial;
    std::vector<std::uint64_t> sizes;
    /// sqrt(mean |ratio - target|^2) over the replicate families at each size.
    std::vector<double> rms_deviation;
    double slope = 0.0;
};

/// Replicate families at each size (seeds derived from cfg.seed) and the
/// least-squares slope of log rms deviation against log N.
std::vector<ConvergenceRow> convergence_study(const FamilyConfig& cfg, std::span<const MonomialExponent> monomials,
                                              std::span<const std::uint64_t> sizes, std::size_t replicates);

struct HProfile {
    std::vector<double> T;
    std::vector<double> log_h;
    double slope = 0.0;
    double target = 0.0; // 8R
    /// Some coordinates of the direction coincide.
    bool degenerate = false;
};

/// log h_{T,R}(i T x0) over the given T values and its least-squares slope
/// in log T. x0 must be tempered; it is used as given, not normalized.
HProfile h_profile(std::span<const double> Ts, const LanglandsParameter& x0, double R);

/// Least-squares slope of y against x.
double fit_slope(std::span<const double> x, std::span<const double> y);

namespace serial {
std::vector<SyntheticForm> generate_family(const FamilyConfig& cfg, std::uint64_t* redrawn = nullptr);
std::vector<FamilyReport> simulate_family(const FamilyConfig& cfg, std::span<const MonomialExponent> monomials);
} // namespace serial

namespace detail {
/// Draws the next form from a chunk stream.
SyntheticForm draw_form(const FamilyConfig& cfg, const TestFunctionContext& ctx, RngStream& rng,
                        std::uint64_t& redrawn);
std::vector<FamilyReport> summarize_family(const FamilyConfig& cfg, const std::vector<SyntheticForm>& forms,
                                           std::span<const MonomialExponent> monomials,
                                           const std::vector<std::vector<cplx>>& values, std::uint64_t redrawn);
} // namespace detail

} // namespace gl4st

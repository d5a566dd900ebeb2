#include "gl4st/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace gl4st {

namespace {

constexpr int kMaxAttemptsPerForm = 100000;

double one_sided_z(double diff, double se)
{
    if (se > 0.0) return std::abs(diff) / se;
    return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

} // namespace

void FamilyConfig::validate() const
{
    if (size < 1) throw std::invalid_argument("family size must be >= 1");
    if (!(box_scale > 0.0) || !std::isfinite(box_scale)) throw std::invalid_argument("box scale must be positive");
    context();
}

double FamilyReport::z_score() const
{
    return std::max(one_sided_z(deviation.real(), se_real), one_sided_z(deviation.imag(), se_imag));
}

namespace detail {

SyntheticForm draw_form(const FamilyConfig& cfg, const TestFunctionContext& ctx, RngStream& rng,
                        std::uint64_t& redrawn)
{
    const double half = cfg.box_scale * cfg.T;
    for (int attempt = 0; attempt < kMaxAttemptsPerForm; ++attempt) {
        const double x1 = rng.uniform(-half, half);
        const double x2 = rng.uniform(-half, half);
        const double x3 = rng.uniform(-half, half);
        const double x4 = -(x1 + x2 + x3);
        if (std::abs(x4) > half) continue;

        SyntheticForm form;
        form.alpha = LanglandsParameter::imaginary({x1, x2, x3, x4});
        form.log_h = log_h(form.alpha, ctx).log_modulus;
        if (!(form.log_h >= kLogHFloor)) {
            ++redrawn;
            continue;
        }
        form.satake = haar_sample(rng);
        form.modeled_L = cfg.l_model == LModel::lognormal ? std::exp(0.25 * rng.normal()) : 1.0;
        return form;
    }
    std::ostringstream os;
    os << "degenerate family: h_{T,R} underflows (log h < " << kLogHFloor << ") on nearly every draw with box scale c = "
       << cfg.box_scale << " at T = " << cfg.T << "; reduce the box scale";
    throw std::runtime_error(os.str());
}

std::vector<FamilyReport> summarize_family(const FamilyConfig& cfg, const std::vector<SyntheticForm>& forms,
                                           std::span<const MonomialExponent> monomials,
                                           const std::vector<std::vector<cplx>>& values, std::uint64_t redrawn)
{
    std::vector<double> log_w(forms.size());
    double max_log_w = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < forms.size(); ++j) {
        log_w[j] = forms[j].log_weight();
        max_log_w = std::max(max_log_w, log_w[j]);
    }
    std::vector<FamilyReport> out;
    out.reserve(monomials.size());
    for (std::size_t k = 0; k < monomials.size(); ++k) {
        const WeightedMean wm = weighted_average(log_w, values[k]);
        FamilyReport r;
        r.monomial = monomials[k];
        r.ratio = wm.mean;
        r.target = static_cast<double>(st_integral(monomials[k]));
        r.deviation = wm.mean - r.target;
        r.se_real = wm.se_real;
        r.se_imag = wm.se_imag;
        r.effective_size = wm.effective_size;
        r.size = cfg.size;
        r.redrawn = redrawn;
        r.max_log_weight = max_log_w;
        out.push_back(r);
    }
    return out;
}

} // namespace detail

WeightedMean weighted_average(std::span<const double> log_weights, std::span<const cplx> values)
{
    if (log_weights.size() != values.size()) throw std::invalid_argument("weighted_average: size mismatch");
    if (log_weights.empty()) throw std::invalid_argument("weighted_average: no samples");
    double max_log_w = -std::numeric_limits<double>::infinity();
    for (const double lw : log_weights) {
        if (std::isnan(lw) || lw == std::numeric_limits<double>::infinity()) {
            throw std::invalid_argument("weighted_average: log weight is NaN or +inf");
        }
        max_log_w = std::max(max_log_w, lw);
    }
    if (!std::isfinite(max_log_w)) throw std::runtime_error("weighted_average: all weights are zero");

    const std::size_t n = log_weights.size();
    std::vector<double> w(n);
    detail::CompensatedSum s0, s1_re, s1_im, s2;
    for (std::size_t j = 0; j < n; ++j) {
        w[j] = std::exp(log_weights[j] - max_log_w);
        s0.add(w[j]);
        s1_re.add(w[j] * values[j].real());
        s1_im.add(w[j] * values[j].imag());
        s2.add(w[j] * w[j]);
    }
    WeightedMean out;
    const double total = s0.value();
    out.mean = cplx(s1_re.value() / total, s1_im.value() / total);
    out.effective_size = total * total / s2.value();

    detail::CompensatedSum v_re, v_im;
    for (std::size_t j = 0; j < n; ++j) {
        const double w2 = w[j] * w[j];
        const double d_re = values[j].real() - out.mean.real();
        const double d_im = values[j].imag() - out.mean.imag();
        v_re.add(w2 * d_re * d_re);
        v_im.add(w2 * d_im * d_im);
    }
    out.se_real = std::sqrt(v_re.value()) / total;
    out.se_imag = std::sqrt(v_im.value()) / total;
    return out;
}

std::vector<SyntheticForm> generate_family(const FamilyConfig& cfg, std::uint64_t* redrawn)
{
    cfg.validate();
    const TestFunctionContext ctx = cfg.context();
    const std::uint64_t n = cfg.size;
    const auto chunks = static_cast<std::int64_t>((n + kSamplesPerChunk - 1) / kSamplesPerChunk);
    std::vector<SyntheticForm> forms(n);
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(chunks));
    std::vector<std::uint64_t> chunk_redrawn(static_cast<std::size_t>(chunks), 0);

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t c = 0; c < chunks; ++c) {
        try {
            RngStream rng(cfg.seed, static_cast<std::uint64_t>(c));
            auto& count = chunk_redrawn[static_cast<std::size_t>(c)];
            const std::uint64_t begin = static_cast<std::uint64_t>(c) * kSamplesPerChunk;
            const std::uint64_t end = std::min(n, begin + kSamplesPerChunk);
            for (std::uint64_t j = begin; j < end; ++j) forms[j] = detail::draw_form(cfg, ctx, rng, count);
        } catch (...) {
            errors[static_cast<std::size_t>(c)] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    if (redrawn) {
        *redrawn = 0;
        for (const auto r : chunk_redrawn) *redrawn += r;
    }
    return forms;
}

std::vector<FamilyReport> simulate_family(const FamilyConfig& cfg, std::span<const MonomialExponent> monomials)
{
    std::uint64_t redrawn = 0;
    const std::vector<SyntheticForm> forms = generate_family(cfg, &redrawn);
    const auto n = static_cast<std::int64_t>(forms.size());
    std::vector<std::vector<cplx>> values(monomials.size(), std::vector<cplx>(forms.size()));

#pragma omp parallel for schedule(static)
    for (std::int64_t j = 0; j < n; ++j) {
        const auto u = static_cast<std::size_t>(j);
        for (std::size_t k = 0; k < monomials.size(); ++k) values[k][u] = eval_monomial(monomials[k], forms[u].satake);
    }
    return detail::summarize_family(cfg, forms, monomials, values, redrawn);
}

FamilyReport simulate_family(const FamilyConfig& cfg, const MonomialExponent& m)
{
    return simulate_family(cfg, std::span<const MonomialExponent>(&m, 1)).front();
}

std::vector<ConvergenceRow> convergence_study(const FamilyConfig& cfg, std::span<const MonomialExponent> monomials,
                                              std::span<const std::uint64_t> sizes, std::size_t replicates)
{
    if (sizes.size() < 2) throw std::invalid_argument("convergence_study: need at least two sizes");
    if (replicates < 1) throw std::invalid_argument("convergence_study: need at least one replicate");
    std::vector<ConvergenceRow> rows(monomials.size());
    for (std::size_t k = 0; k < monomials.size(); ++k) {
        rows[k].monomial = monomials[k];
        rows[k].sizes.assign(sizes.begin(), sizes.end());
        rows[k].rms_deviation.assign(sizes.size(), 0.0);
    }
    for (std::size_t s = 0; s < sizes.size(); ++s) {
        for (std::size_t rep = 0; rep < replicates; ++rep) {
            FamilyConfig run = cfg;
            run.size = sizes[s];
            run.seed = derive_seed(derive_seed(cfg.seed, s + 1), rep);
            const auto reports = simulate_family(run, monomials);
            for (std::size_t k = 0; k < monomials.size(); ++k) rows[k].rms_deviation[s] += std::norm(reports[k].deviation);
        }
    }
    std::vector<double> log_n(sizes.size());
    for (std::size_t s = 0; s < sizes.size(); ++s) log_n[s] = std::log(static_cast<double>(sizes[s]));
    for (auto& row : rows) {
        std::vector<double> log_rms(sizes.size());
        bool exact = false;
        for (std::size_t s = 0; s < sizes.size(); ++s) {
            row.rms_deviation[s] = std::sqrt(row.rms_deviation[s] / static_cast<double>(replicates));
            exact = exact || row.rms_deviation[s] == 0.0;
            log_rms[s] = std::log(row.rms_deviation[s]);
        }
        // An exactly reproduced integral (f = 1) has no rate to fit.
        row.slope = exact ? 0.0 : fit_slope(log_n, log_rms);
    }
    return rows;
}

double fit_slope(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_slope: need two or more points");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_slope: x values coincide");
    return sxy / sxx;
}

HProfile h_profile(std::span<const double> Ts, const LanglandsParameter& x0, double R)
{
    if (!x0.tempered()) throw std::invalid_argument("h_profile: direction must be tempered");
    HProfile out;
    out.target = 8.0 * R;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = i + 1; j < 4; ++j) {
            if (std::abs(x0[i].imag() - x0[j].imag()) <= 1e-12) out.degenerate = true;
        }
    }
    std::vector<double> log_t;
    for (const double T : Ts) {
        const TestFunctionContext ctx = TestFunctionContext::make(T, R);
        out.T.push_back(T);
        out.log_h.push_back(log_h(x0.scaled(T), ctx).log_modulus);
        log_t.push_back(std::log(T));
    }
    out.slope = fit_slope(log_t, out.log_h);
    return out;
}

} // namespace gl4st

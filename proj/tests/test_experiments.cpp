#include <doctest.h>

#include <omp.h>
#include <vector>

#include "gl4st/experiments.hpp"

using namespace gl4st;

namespace {

const MonomialExponent kOne{};
const MonomialExponent kChi1{{1, 0, 0, 0, 0, 0}};
const MonomialExponent kAbsChi1{{1, 1, 0, 0, 0, 0}};
const MonomialExponent kAbsChi2{{0, 0, 1, 1, 0, 0}};

} // namespace

TEST_CASE("config validation")
{
    FamilyConfig cfg;
    cfg.size = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = FamilyConfig{};
    cfg.box_scale = 0.0;
    CHECK_THROWS(cfg.validate());
    cfg = FamilyConfig{};
    cfg.R = 12.0;
    CHECK_THROWS(cfg.validate());
}

TEST_CASE("weighted average basics")
{
    const std::vector<double> lw = {0.0, 0.0, 0.0, 0.0};
    const std::vector<cplx> v = {1.0, 2.0, 3.0, cplx(4.0, 4.0)};
    const WeightedMean m = weighted_average(lw, v);
    CHECK(m.mean == cplx(2.5, 1.0));
    CHECK(m.effective_size == doctest::Approx(4.0));
    // sqrt(sum (f - mean)^2) / n
    CHECK(m.se_real == doctest::Approx(std::sqrt(5.0) / 4.0));
    CHECK(m.se_imag == doctest::Approx(std::sqrt(12.0) / 4.0));

    const std::vector<double> lw2 = {std::log(3.0), 0.0};
    const std::vector<cplx> v2 = {1.0, 5.0};
    CHECK(weighted_average(lw2, v2).mean.real() == doctest::Approx(2.0));
    CHECK(weighted_average(lw2, v2).effective_size == doctest::Approx(16.0 / 10.0));

    CHECK_THROWS(weighted_average(lw, v2));
    CHECK_THROWS(weighted_average(std::vector<double>{}, std::vector<cplx>{}));
    CHECK_THROWS(weighted_average(std::vector<double>{-INFINITY}, std::vector<cplx>{1.0}));
}

TEST_CASE("weighted average is invariant under rescaling the weights")
{
    RngStream rng(4, 0);
    std::vector<double> lw(5000);
    std::vector<cplx> v(5000);
    for (std::size_t i = 0; i < lw.size(); ++i) {
        lw[i] = 40.0 * rng.uniform();
        v[i] = rng.complex_normal();
    }
    const WeightedMean base = weighted_average(lw, v);
    for (const double shift : {-500.0, 1e-3, 123.456, 650.0}) {
        std::vector<double> moved(lw);
        for (auto& x : moved) x += shift;
        const WeightedMean m = weighted_average(moved, v);
        CHECK(std::abs(m.mean - base.mean) < 1e-12);
        CHECK(m.effective_size == doctest::Approx(base.effective_size).epsilon(1e-12));
    }
}

TEST_CASE("family forms satisfy the weight invariant and the box constraint")
{
    FamilyConfig cfg;
    cfg.size = 300;
    cfg.seed = 8;
    cfg.l_model = LModel::lognormal;
    const auto forms = generate_family(cfg);
    REQUIRE(forms.size() == 300);
    const auto ctx = cfg.context();
    bool heterogeneous_L = false;
    for (const auto& f : forms) {
        CHECK(f.alpha.tempered());
        cplx sum = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(std::abs(f.alpha[i].imag()) <= cfg.box_scale * cfg.T);
            sum += f.alpha[i];
        }
        CHECK(std::abs(sum) < 1e-12);
        CHECK(f.modeled_L > 0.0);
        heterogeneous_L = heterogeneous_L || f.modeled_L != 1.0;
        CHECK(f.weight() == doctest::Approx(eval_h(f.alpha, ctx) / f.modeled_L).epsilon(1e-11));
        CHECK(f.satake.is_special_unitary(1e-12));
    }
    CHECK(heterogeneous_L);
}

TEST_CASE("f = 1 reproduces exactly")
{
    FamilyConfig cfg;
    cfg.size = 2000;
    cfg.seed = 1;
    const FamilyReport r = simulate_family(cfg, kOne);
    CHECK(r.ratio == cplx(1.0, 0.0));
    CHECK(r.deviation == cplx(0.0, 0.0));
    CHECK(r.z_score() == 0.0);
    CHECK(r.target == 1.0);
}

TEST_CASE("simulation is bitwise reproducible across thread counts and matches the serial path")
{
    FamilyConfig cfg;
    cfg.size = 9000; // three chunks, the last partial
    cfg.seed = 77;
    cfg.l_model = LModel::lognormal;
    const std::vector<MonomialExponent> ms = {kOne, kChi1, kAbsChi1, kAbsChi2};
    omp_set_num_threads(1);
    const auto a = simulate_family(cfg, ms);
    omp_set_num_threads(4);
    const auto b = simulate_family(cfg, ms);
    const auto s = serial::simulate_family(cfg, ms);
    for (std::size_t k = 0; k < ms.size(); ++k) {
        CHECK(a[k].ratio == b[k].ratio);
        CHECK(a[k].se_real == b[k].se_real);
        CHECK(a[k].effective_size == b[k].effective_size);
        CHECK(a[k].ratio == s[k].ratio);
        CHECK(a[k].se_real == s[k].se_real);
    }
}

TEST_CASE("small families agree with the Sato-Tate integrals")
{
    FamilyConfig cfg;
    cfg.size = 20000;
    cfg.seed = 3;
    const std::vector<MonomialExponent> ms = {kChi1, kAbsChi1, kAbsChi2, MonomialExponent{{2, 2, 0, 0, 0, 0}}};
    for (const auto& r : simulate_family(cfg, ms)) {
        CHECK(r.z_score() < 4.5);
        CHECK(r.effective_size > 100.0);
        CHECK(r.redrawn == 0);
    }
}

TEST_CASE("a box far beyond the support of h is reported as degenerate")
{
    FamilyConfig cfg;
    cfg.size = 1;
    cfg.T = 2.0;
    cfg.box_scale = 1e5;
    CHECK_THROWS_AS(generate_family(cfg), std::runtime_error);
}

TEST_CASE("moderately wide boxes redraw underflowing points")
{
    FamilyConfig cfg;
    cfg.size = 200;
    cfg.box_scale = 30.0;
    cfg.T = 2.0;
    const auto r = simulate_family(cfg, kAbsChi1);
    CHECK(r.redrawn > 0);
    for (const auto& f : generate_family(cfg)) CHECK(f.log_h >= kLogHFloor);
}

TEST_CASE("convergence study on small families")
{
    FamilyConfig cfg;
    cfg.seed = 12;
    const std::vector<MonomialExponent> ms = {kOne, kAbsChi1};
    const std::vector<std::uint64_t> sizes = {250, 1000, 4000};
    const auto rows = convergence_study(cfg, ms, sizes, 24);
    CHECK(rows[0].rms_deviation[0] == 0.0);
    CHECK(rows[0].slope == 0.0);
    CHECK(rows[1].slope == doctest::Approx(-0.5).epsilon(0.4));
    CHECK(rows[1].rms_deviation[2] < rows[1].rms_deviation[0]);
}

TEST_CASE("least-squares slope")
{
    const std::vector<double> x = {0.0, 1.0, 2.0, 3.0};
    const std::vector<double> y = {1.0, 3.0, 5.0, 7.0};
    CHECK(fit_slope(x, y) == doctest::Approx(2.0));
    CHECK_THROWS(fit_slope(std::vector<double>{1.0}, std::vector<double>{1.0}));
    CHECK_THROWS(fit_slope(std::vector<double>{1.0, 1.0}, std::vector<double>{1.0, 2.0}));
}

TEST_CASE("h profile slope approaches 8R")
{
    const std::vector<double> Ts = {10, 20, 40, 80, 160};
    const auto generic = h_profile(Ts, LanglandsParameter::imaginary({3.0, 1.0, -1.5, -2.5}), 14.0);
    CHECK(generic.target == 112.0);
    CHECK_FALSE(generic.degenerate);
    CHECK(std::abs(generic.slope / 112.0 - 1.0) < 0.02);
    CHECK(generic.log_h.size() == 5);

    const auto flat = h_profile(Ts, LanglandsParameter::imaginary({1.0, 1.0, -1.0, -1.0}), 14.0);
    CHECK(flat.degenerate);
    CHECK(flat.slope <= 112.0 * 1.02);

    CHECK_THROWS(h_profile(Ts, LanglandsParameter({cplx(0.1, 1.0), cplx(-0.1, 0.0), 0.0, cplx(0.0, -1.0)}), 14.0));
}

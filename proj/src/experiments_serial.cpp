#include "gl4st/experiments.hpp"

#include <algorithm>

namespace gl4st::serial {

std::vector<SyntheticForm> generate_family(const FamilyConfig& cfg, std::uint64_t* redrawn)
{
    cfg.validate();
    const TestFunctionContext ctx = cfg.context();
    std::uint64_t count = 0;
    std::vector<SyntheticForm> forms;
    forms.reserve(cfg.size);
    for (std::uint64_t c = 0; forms.size() < cfg.size; ++c) {
        RngStream rng(cfg.seed, c);
        const std::uint64_t end = std::min<std::uint64_t>(cfg.size, (c + 1) * kSamplesPerChunk);
        while (forms.size() < end) forms.push_back(detail::draw_form(cfg, ctx, rng, count));
    }
    if (redrawn) *redrawn = count;
    return forms;
}

std::vector<FamilyReport> simulate_family(const FamilyConfig& cfg, std::span<const MonomialExponent> monomials)
{
    std::uint64_t redrawn = 0;
    const auto forms = serial::generate_family(cfg, &redrawn);
    std::vector<std::vector<cplx>> values(monomials.size());
    for (std::size_t k = 0; k < monomials.size(); ++k) {
        values[k].reserve(forms.size());
        for (const auto& f : forms) values[k].push_back(eval_monomial(monomials[k], f.satake));
    }
    return detail::summarize_family(cfg, forms, monomials, values, redrawn);
}

} // namespace gl4st::serial

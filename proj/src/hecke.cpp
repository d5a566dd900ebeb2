#include "gl4st/hecke.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "gl4st/rng.hpp"

namespace gl4st {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out) || out > static_cast<std::uint64_t>(INT64_MAX)) {
        throw std::overflow_error("Hecke index exceeds 2^63 - 1");
    }
    return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t out = 0;
    if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("Hecke coefficient overflow");
    return out;
}

unsigned valuation(std::uint64_t n, std::uint64_t p)
{
    unsigned v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

} // namespace

HeckeIndex::HeckeIndex(std::uint64_t a, std::uint64_t b, std::uint64_t c) : m1(a), m2(b), m3(c)
{
    if (a == 0 || b == 0 || c == 0) throw std::invalid_argument("Hecke index components must be >= 1");
    const auto cap = static_cast<std::uint64_t>(INT64_MAX);
    if (a > cap || b > cap || c > cap) throw std::overflow_error("Hecke index exceeds 2^63 - 1");
}

std::string HeckeIndex::to_string() const
{
    std::ostringstream os;
    os << "A(" << m1 << ',' << m2 << ',' << m3 << ')';
    return os.str();
}

HeckeCombination HeckeCombination::single(const HeckeIndex& idx)
{
    HeckeCombination c;
    c.add(idx, 1);
    return c;
}

void HeckeCombination::add(HeckeMonomial term, std::int64_t coefficient)
{
    if (coefficient == 0) return;
    std::erase_if(term, [](const HeckeIndex& i) { return i.is_unit(); });
    std::sort(term.begin(), term.end());
    auto it = terms_.find(term);
    if (it == terms_.end()) {
        terms_.emplace(std::move(term), coefficient);
        return;
    }
    it->second = checked_add(it->second, coefficient);
    if (it->second == 0) terms_.erase(it);
}

std::string HeckeCombination::to_string() const
{
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [term, coef] : terms_) {
        const std::int64_t mag = coef < 0 ? -coef : coef;
        if (first) {
            if (coef < 0) os << "-";
        } else {
            os << (coef < 0 ? " - " : " + ");
        }
        first = false;
        if (mag != 1 || term.empty()) {
            os << mag;
            if (!term.empty()) os << '*';
        }
        for (std::size_t i = 0; i < term.size(); ++i) {
            if (i) os << '*';
            os << term[i].to_string();
        }
    }
    return os.str();
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n)
{
    if (n == 0) throw std::invalid_argument("factorize: zero");
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t p = 2; p <= n / p; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0) continue;
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n)
{
    std::vector<std::uint64_t> out{1};
    for (const auto& [p, e] : factorize(n)) {
        const std::size_t base = out.size();
        std::uint64_t pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int moebius(std::uint64_t n)
{
    int sign = 1;
    for (const auto& [p, e] : factorize(n)) {
        if (e > 1) return 0;
        sign = -sign;
    }
    return sign;
}

HeckeCombination hecke_expand(std::uint64_t m, const HeckeIndex& idx, HeckeForm form)
{
    if (m == 0) throw std::invalid_argument("hecke_expand: m must be >= 1");
    HeckeCombination out;
    for (std::uint64_t c1 : divisors(std::gcd(m, idx.m1))) {
        const std::uint64_t r1 = m / c1;
        for (std::uint64_t c2 : divisors(std::gcd(r1, idx.m2))) {
            const std::uint64_t r2 = r1 / c2;
            for (std::uint64_t c3 : divisors(std::gcd(r2, idx.m3))) {
                const std::uint64_t c0 = r2 / c3;
                if (form == HeckeForm::four_divisor) {
                    out.add(HeckeIndex(checked_mul(idx.m1 / c1, c0), checked_mul(idx.m2 / c2, c1),
                                       checked_mul(idx.m3 / c3, c2)),
                            1);
                } else if (c0 == 1) {
                    out.add(HeckeIndex(checked_mul(idx.m1 / c1, c3), checked_mul(idx.m2 / c2, c1),
                                       checked_mul(idx.m3 / c3, c2)),
                            1);
                }
            }
        }
    }
    return out;
}

HeckeCombination hecke_expand(std::uint64_t m, const HeckeCombination& c)
{
    HeckeCombination out;
    for (const auto& [term, coef] : c.terms()) {
        if (term.size() > 1) throw std::invalid_argument("hecke_expand: combination terms must be single coefficients");
        const HeckeIndex idx = term.empty() ? HeckeIndex() : term.front();
        const HeckeCombination expanded = hecke_expand(m, idx);
        for (const auto& [t, k] : expanded.terms()) {
            std::int64_t prod = 0;
            if (__builtin_mul_overflow(coef, k, &prod)) throw std::overflow_error("Hecke coefficient overflow");
            out.add(t, prod);
        }
    }
    return out;
}

std::vector<LocalFactor> multiplicative_split(const HeckeIndex& idx)
{
    std::vector<std::uint64_t> primes;
    for (std::uint64_t m : {idx.m1, idx.m2, idx.m3}) {
        for (const auto& [p, e] : factorize(m)) primes.push_back(p);
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

    std::vector<LocalFactor> out;
    for (std::uint64_t p : primes) {
        auto local = [&](std::uint64_t m) {
            std::uint64_t pk = 1;
            for (unsigned i = valuation(m, p); i > 0; --i) pk *= p;
            return pk;
        };
        out.push_back(LocalFactor{p, HeckeIndex(local(idx.m1), local(idx.m2), local(idx.m3))});
    }
    return out;
}

HeckeIndex dual(const HeckeIndex& idx)
{
    return HeckeIndex(idx.m3, idx.m2, idx.m1);
}

namespace {

template <typename Visit>
void for_each_cl_term(std::uint64_t k, std::uint64_t l, std::uint64_t n, ClForm form, Visit&& visit)
{
    if (k == 0 || l == 0 || n == 0) throw std::invalid_argument("cl_decompose: arguments must be >= 1");
    for (std::uint64_t d : divisors(std::gcd(k, l))) {
        const int mu_d = moebius(d);
        if (mu_d == 0) continue;
        for (std::uint64_t e : divisors(std::gcd(d, k / d))) {
            const int mu_e = moebius(e);
            if (mu_e == 0) continue;
            for (std::uint64_t f : divisors(std::gcd(k, n))) {
                int coef = mu_d * mu_e;
                if (form == ClForm::corrected) {
                    if (std::gcd(f, d) != 1) continue;
                    coef *= moebius(f);
                    if (coef == 0) continue;
                }
                const std::uint64_t def = checked_mul(checked_mul(d, e), f);
                const std::uint64_t dn = checked_mul(d, n);
                const bool integral = k % def == 0 && dn % (e * f) == 0;
                if (form == ClForm::corrected && !integral) {
                    throw std::logic_error("cl_decompose: non-integral term under the divisor constraints");
                }
                if (!integral) continue;
                visit(coef, HeckeIndex(k / def, 1, 1), HeckeIndex(1, l / d, dn / (e * f)));
            }
        }
    }
}

} // namespace

HeckeCombination cl_decompose(std::uint64_t k, std::uint64_t l, std::uint64_t n, ClForm form)
{
    HeckeCombination out;
    for_each_cl_term(k, l, n, form, [&](int coef, const HeckeIndex& a, const HeckeIndex& b) {
        out.add(HeckeMonomial{a, b}, coef);
    });
    return out;
}

std::size_t cl_term_count(std::uint64_t k, std::uint64_t l, std::uint64_t n, ClForm form)
{
    std::size_t count = 0;
    for_each_cl_term(k, l, n, form, [&](int, const HeckeIndex&, const HeckeIndex&) { ++count; });
    return count;
}

cplx cs_coefficient(const HeckeIndex& local, const TorusPoint& x)
{
    const auto factors = multiplicative_split(local);
    if (factors.empty()) return 1.0;
    if (factors.size() > 1) {
        throw std::invalid_argument("cs_coefficient: " + local.to_string() + " is not a single-prime index");
    }
    const std::uint64_t p = factors.front().prime;
    const int l1 = static_cast<int>(valuation(local.m1, p));
    const int l2 = static_cast<int>(valuation(local.m2, p));
    const int l3 = static_cast<int>(valuation(local.m3, p));
    return schur_character(omega(l1, l2, l3), x);
}

cplx evaluate(const HeckeIndex& idx, const SatakeAssignment& satake)
{
    cplx acc = 1.0;
    for (const auto& f : multiplicative_split(idx)) acc *= cs_coefficient(f.local, satake(f.prime));
    return acc;
}

cplx evaluate(const HeckeCombination& c, const SatakeAssignment& satake)
{
    cplx acc = 0.0;
    for (const auto& [term, coef] : c.terms()) {
        cplx prod = static_cast<double>(coef);
        for (const auto& idx : term) prod *= evaluate(idx, satake);
        acc += prod;
    }
    return acc;
}

RamanujanReport ramanujan_average_check(double bound_exponent, std::span<const HeckeIndex> sample,
                                        std::span<const TorusPoint> points)
{
    RamanujanReport report;
    for (const auto& idx : sample) {
        const double size = static_cast<double>(idx.m1) * static_cast<double>(idx.m2) * static_cast<double>(idx.m3);
        const double scale = std::pow(size, bound_exponent);
        for (const auto& x : points) {
            const double ratio = std::abs(evaluate(idx, [&](std::uint64_t) { return x; })) / scale;
            ++report.evaluations;
            if (ratio > report.max_ratio) {
                report.max_ratio = ratio;
                report.argmax = idx;
            }
        }
    }
    return report;
}

TorusPoint oracle_point(std::uint64_t seed, std::uint64_t sample, std::uint64_t prime)
{
    RngStream rng(derive_seed(seed, sample), prime);
    const double two_pi = 2.0 * std::numbers::pi;
    const double t1 = rng.uniform(0.0, two_pi);
    const double t2 = rng.uniform(0.0, two_pi);
    const double t3 = rng.uniform(0.0, two_pi);
    return TorusPoint::from_angles(t1, t2, t3);
}

double OracleReport::max_residual() const
{
    double worst = 0.0;
    for (const auto& r : relations) worst = std::max(worst, r.max_residual);
    return worst;
}

namespace {

struct Tracker {
    std::size_t checks = 0;
    double worst = 0.0;
    std::string worst_case;

    void record(cplx lhs, cplx rhs, const std::string& label)
    {
        ++checks;
        const double r = std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
        if (r > worst || std::isnan(r)) {
            worst = std::isnan(r) ? std::numeric_limits<double>::infinity() : r;
            worst_case = label;
        }
    }
};

struct OracleCase {
    enum class Kind { expand, cl, dual, split } kind;
    std::uint64_t m = 1;
    HeckeIndex idx;
    HeckeIndex other; // coprime partner of idx in split checks
    HeckeCombination rhs;
    std::string label;
};

std::vector<OracleCase> build_cases(const OracleConfig& cfg)
{
    std::vector<OracleCase> cases;
    auto power = [](std::uint64_t p, unsigned e) {
        std::uint64_t r = 1;
        for (unsigned i = 0; i < e; ++i) r = checked_mul(r, p);
        return r;
    };
    auto add_index_cases = [&](const HeckeIndex& idx, std::span<const std::uint64_t> ms) {
        for (std::uint64_t m : ms) {
            cases.push_back({OracleCase::Kind::expand, m, idx, {}, hecke_expand(m, idx, cfg.hecke_form),
                             "A(" + std::to_string(m) + ",1,1)*" + idx.to_string()});
        }
        cases.push_back({OracleCase::Kind::cl, 1, idx, {}, cl_decompose(idx.m1, idx.m2, idx.m3, cfg.cl_form),
                         "cl " + idx.to_string()});
        cases.push_back({OracleCase::Kind::dual, 1, idx, {}, HeckeCombination::single(dual(idx)),
                         "dual " + idx.to_string()});
    };

    const unsigned top = cfg.max_exponent;
    std::vector<std::vector<HeckeIndex>> local_by_prime;
    for (std::uint64_t p : cfg.primes) {
        std::vector<std::uint64_t> ms;
        for (unsigned j = 1; j <= std::max(1U, top); ++j) ms.push_back(power(p, j));
        std::vector<HeckeIndex> locals;
        for (unsigned a = 0; a <= top; ++a) {
            for (unsigned b = 0; b <= top; ++b) {
                for (unsigned c = 0; c <= top; ++c) {
                    const HeckeIndex idx(power(p, a), power(p, b), power(p, c));
                    locals.push_back(idx);
                    add_index_cases(idx, ms);
                }
            }
        }
        local_by_prime.push_back(std::move(locals));
    }
    // Multiplicativity across distinct primes: pair each local index with
    // the index at the same position for the next prime.
    for (std::size_t i = 0; i + 1 < local_by_prime.size(); ++i) {
        const auto& a = local_by_prime[i];
        const auto& b = local_by_prime[i + 1];
        for (std::size_t j = 0; j < a.size(); ++j) {
            const HeckeIndex& x = a[j];
            const HeckeIndex& y = b[b.size() - 1 - j];
            cases.push_back({OracleCase::Kind::split, 1, x, y, {}, "split " + x.to_string() + "*" + y.to_string()});
        }
    }

    if (cfg.mixed_samples > 0 && cfg.max_index > 0) {
        RngStream rng(derive_seed(cfg.seed, 0xc0ffee), 0);
        for (std::size_t s = 0; s < cfg.mixed_samples; ++s) {
            const HeckeIndex idx(1 + rng.below(cfg.max_index), 1 + rng.below(cfg.max_index),
                                 1 + rng.below(cfg.max_index));
            const std::uint64_t m = 1 + rng.below(cfg.max_index);
            add_index_cases(idx, std::span<const std::uint64_t>(&m, 1));
        }
    }
    return cases;
}

} // namespace

OracleReport run_oracle_suite(const OracleConfig& cfg)
{
    const auto cases = build_cases(cfg);
    const std::size_t points = cfg.points;
    std::vector<std::array<Tracker, 4>> per_point(points);

#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t s = 0; s < static_cast<std::int64_t>(points); ++s) {
        const auto sample = static_cast<std::uint64_t>(s);
        std::map<std::uint64_t, TorusPoint> cache;
        SatakeAssignment satake = [&](std::uint64_t p) {
            auto it = cache.find(p);
            if (it == cache.end()) it = cache.emplace(p, oracle_point(cfg.seed, sample, p)).first;
            return it->second;
        };
        auto& trackers = per_point[static_cast<std::size_t>(s)];
        for (const auto& c : cases) {
            switch (c.kind) {
            case OracleCase::Kind::expand: {
                const cplx lhs = evaluate(HeckeIndex(c.m, 1, 1), satake) * evaluate(c.idx, satake);
                trackers[0].record(lhs, evaluate(c.rhs, satake), c.label);
                break;
            }
            case OracleCase::Kind::cl:
                trackers[1].record(evaluate(c.idx, satake), evaluate(c.rhs, satake), c.label);
                break;
            case OracleCase::Kind::dual:
                trackers[2].record(std::conj(evaluate(c.idx, satake)), evaluate(c.rhs, satake), c.label);
                break;
            case OracleCase::Kind::split: {
                const HeckeIndex& a = c.idx;
                const HeckeIndex& b = c.other;
                const HeckeIndex prod(a.m1 * b.m1, a.m2 * b.m2, a.m3 * b.m3);
                HeckeIndex rebuilt;
                for (const auto& f : multiplicative_split(prod)) {
                    rebuilt = HeckeIndex(rebuilt.m1 * f.local.m1, rebuilt.m2 * f.local.m2, rebuilt.m3 * f.local.m3);
                }
                const cplx lhs = evaluate(a, satake) * evaluate(b, satake);
                const cplx rhs = rebuilt == prod ? evaluate(prod, satake) : cplx(std::nan(""), 0.0);
                trackers[3].record(lhs, rhs, c.label);
                break;
            }
            }
        }
    }

    const std::array<const char*, 4> names = {"hecke_expand", "cl_decompose", "dual", "multiplicative_split"};
    OracleReport report;
    for (std::size_t r = 0; r < 4; ++r) {
        RelationResult out{names[r], 0, 0.0, ""};
        for (std::size_t s = 0; s < points; ++s) {
            const auto& t = per_point[s][r];
            out.checks += t.checks;
            if (t.worst > out.max_residual) {
                out.max_residual = t.worst;
                out.worst_case = t.worst_case + " @point " + std::to_string(s);
            }
        }
        report.relations.push_back(std::move(out));
    }
    return report;
}

} // namespace gl4st

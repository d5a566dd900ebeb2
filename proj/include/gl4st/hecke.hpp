#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gl4st/rep.hpp"

namespace gl4st {

/// Index (m1, m2, m3) of the Fourier coefficient A(m1, m2, m3); all >= 1.
struct HeckeIndex {
    std::uint64_t m1 = 1;
    std::uint64_t m2 = 1;
    std::uint64_t m3 = 1;

    HeckeIndex() = default;
    /// Throws std::invalid_argument on a zero component.
    HeckeIndex(std::uint64_t a, std::uint64_t b, std::uint64_t c);

    bool is_unit() const noexcept { return m1 == 1 && m2 == 1 && m3 == 1; }
    std::string to_string() const;

    auto operator<=>(const HeckeIndex&) const = default;
};

/// Formal product of coefficients; sorted, with A(1,1,1) = 1 factors removed.
using HeckeMonomial = std::vector<HeckeIndex>;

/// Finite integer combination of formal products of Hecke coefficients.
class HeckeCombination {
public:
    using Map = std::map<HeckeMonomial, std::int64_t>;

    HeckeCombination() = default;
    static HeckeCombination single(const HeckeIndex& idx);

    void add(HeckeMonomial term, std::int64_t coefficient);
    void add(const HeckeIndex& idx, std::int64_t coefficient) { add(HeckeMonomial{idx}, coefficient); }

    const Map& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    std::string to_string() const;

    bool operator==(const HeckeCombination&) const = default;

private:
    Map terms_;
};

enum class HeckeForm {
    /// sum over c0 c1 c2 c3 = m, c_i | m_i, of A(m1 c0/c1, m2 c1/c2, m3 c2/c3)
    four_divisor,
    /// sum over c1 c2 c3 = m, c_i | m_i, of A(m1 c3/c1, m2 c1/c2, m3 c2/c3);
    /// kept to demonstrate that it is not an identity.
    three_divisor,
};

/// Right-hand side of A(m,1,1) A(idx) as a combination of single coefficients.
HeckeCombination hecke_expand(std::uint64_t m, const HeckeIndex& idx, HeckeForm form = HeckeForm::four_divisor);

/// A(m,1,1) times a combination of single coefficients, expanded termwise.
HeckeCombination hecke_expand(std::uint64_t m, const HeckeCombination& c);

struct LocalFactor {
    std::uint64_t prime = 0;
    HeckeIndex local;
    bool operator==(const LocalFactor&) const = default;
};

/// Prime-local factors of A(idx), sorted by prime.
std::vector<LocalFactor> multiplicative_split(const HeckeIndex& idx);

/// (m3, m2, m1): A(dual) is the complex conjugate of A(idx).
HeckeIndex dual(const HeckeIndex& idx);

enum class ClForm {
    /// sum_{d|(k,l)} sum_{e|(d,k/d)} sum_{f|(k,n), (f,d)=1} mu(d)mu(e)mu(f)
    ///   A(k/(def),1,1) A(1, l/d, dn/(ef))
    corrected,
    /// No mu(f), no coprimality condition, non-integral terms skipped. Not an
    /// identity; it already fails at (p,1,p).
    uncorrected,
};

/// A(k,l,n) as a combination of products A(a,1,1) A(1,b,c).
HeckeCombination cl_decompose(std::uint64_t k, std::uint64_t l, std::uint64_t n, ClForm form = ClForm::corrected);

/// Number of (d,e,f) in the decomposition's triple sum with nonzero Moebius
/// coefficient (before like terms are merged).
std::size_t cl_term_count(std::uint64_t k, std::uint64_t l, std::uint64_t n, ClForm form = ClForm::corrected);

/// Casselman–Shalika: A(p^l1, p^l2, p^l3) = chi_{omega(l1,l2,l3)}(x).
/// Throws std::invalid_argument unless all components are powers of a single prime.
cplx cs_coefficient(const HeckeIndex& local, const TorusPoint& x);

/// Satake parameter chosen for each prime.
using SatakeAssignment = std::function<TorusPoint(std::uint64_t prime)>;

cplx evaluate(const HeckeIndex& idx, const SatakeAssignment& satake);
cplx evaluate(const HeckeCombination& c, const SatakeAssignment& satake);

struct RamanujanReport {
    double max_ratio = 0.0;
    HeckeIndex argmax;
    std::size_t evaluations = 0;
};

/// max |A(k,l,n)| / (kln)^bound_exponent over the sample, with every prime
/// of an index sharing the same Satake point x, over all given points.
RamanujanReport ramanujan_average_check(double bound_exponent, std::span<const HeckeIndex> sample,
                                        std::span<const TorusPoint> points);

// Number theory helpers.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);
std::vector<std::uint64_t> divisors(std::uint64_t n);
int moebius(std::uint64_t n);

/// Configuration of the character-oracle validation sweep.
struct OracleConfig {
    std::vector<std::uint64_t> primes{2, 3, 5, 7};
    unsigned max_exponent = 5;
    std::size_t points = 100;
    std::uint64_t seed = 0;
    /// Extra randomly drawn mixed-prime indices with components <= max_index.
    std::uint64_t max_index = 0;
    std::size_t mixed_samples = 0;
    HeckeForm hecke_form = HeckeForm::four_divisor;
    ClForm cl_form = ClForm::corrected;
};

struct RelationResult {
    std::string relation;
    std::size_t checks = 0;
    double max_residual = 0.0;
    std::string worst_case;
};

struct OracleReport {
    std::vector<RelationResult> relations;

    double max_residual() const;
    bool passed(double tolerance) const { return max_residual() < tolerance; }
};

/// Checks hecke_expand, cl_decompose, dual and multiplicative_split as
/// identities of characters at seeded random Satake points (independent
/// points per prime). Residual: |lhs - rhs| / max(1, |lhs|). Parallel over
/// points; deterministic.
OracleReport run_oracle_suite(const OracleConfig& config);

/// Satake point for (sample index, prime) used by the oracle suite.
TorusPoint oracle_point(std::uint64_t seed, std::uint64_t sample, std::uint64_t prime);

} // namespace gl4st

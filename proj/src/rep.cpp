#include "gl4st/rep.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace gl4st {

DominantWeight::DominantWeight(const std::array<int, 4>& parts)
{
    for (std::size_t i = 0; i + 1 < 4; ++i) {
        if (parts[i] < parts[i + 1]) {
            throw std::invalid_argument("dominant weight must be weakly decreasing");
        }
    }
    for (std::size_t i = 0; i < 4; ++i) parts_[i] = parts[i] - parts[3];
}

std::array<int, 3> DominantWeight::l_coordinates() const noexcept
{
    return {parts_[0] - parts_[1], parts_[1] - parts_[2], parts_[2]};
}

DominantWeight DominantWeight::dual() const
{
    return DominantWeight({parts_[0] - parts_[3], parts_[0] - parts_[2], parts_[0] - parts_[1], 0});
}

std::string DominantWeight::to_string() const
{
    std::ostringstream os;
    os << '(' << parts_[0] << ',' << parts_[1] << ',' << parts_[2] << ',' << parts_[3] << ')';
    return os.str();
}

DominantWeight omega(int l1, int l2, int l3)
{
    if (l1 < 0 || l2 < 0 || l3 < 0) throw std::invalid_argument("omega: negative coordinate");
    return DominantWeight({l1 + l2 + l3, l2 + l3, l3, 0});
}

namespace {

bool arg_less(const cplx& a, const cplx& b)
{
    const double pa = std::arg(a);
    const double pb = std::arg(b);
    if (pa != pb) return pa < pb;
    return std::abs(a) < std::abs(b);
}

} // namespace

TorusPoint::TorusPoint() : eigenvalues_{cplx(1), cplx(1), cplx(1), cplx(1)} {}

TorusPoint::TorusPoint(const std::array<cplx, 4>& eigenvalues) : eigenvalues_(eigenvalues)
{
    std::sort(eigenvalues_.begin(), eigenvalues_.end(), arg_less);
}

TorusPoint TorusPoint::special_unitary(const std::array<cplx, 4>& eigenvalues, double tol)
{
    TorusPoint x(eigenvalues);
    if (!x.is_special_unitary(tol)) {
        throw std::invalid_argument("torus point is not in SU(4) within tolerance");
    }
    return x;
}

TorusPoint TorusPoint::from_angles(double t1, double t2, double t3)
{
    return TorusPoint({std::polar(1.0, t1), std::polar(1.0, t2), std::polar(1.0, t3),
                       std::polar(1.0, -(t1 + t2 + t3))});
}

bool TorusPoint::is_special_unitary(double tol) const noexcept
{
    cplx det = 1.0;
    for (const auto& z : eigenvalues_) {
        if (std::abs(std::abs(z) - 1.0) > tol) return false;
        det *= z;
    }
    return std::abs(det - 1.0) <= tol;
}

TorusPoint TorusPoint::conjugate() const
{
    return TorusPoint({std::conj(eigenvalues_[0]), std::conj(eigenvalues_[1]),
                       std::conj(eigenvalues_[2]), std::conj(eigenvalues_[3])});
}

namespace {

std::array<cplx, 5> elementary_all(const TorusPoint& x)
{
    // Expand prod (1 + z_i t) one factor at a time.
    std::array<cplx, 5> e{cplx(1), 0.0, 0.0, 0.0, 0.0};
    for (const auto& z : x.eigenvalues()) {
        for (std::size_t k = 4; k >= 1; --k) e[k] += z * e[k - 1];
    }
    return e;
}

using cplx_ext = std::complex<long double>;

// h_0..h_max from the e_k via h_m = sum_{i>=1} (-1)^{i-1} e_i h_{m-i}.
// Extended precision: the Jacobi-Trudi determinant below cancels heavily.
std::vector<cplx_ext> complete_homogeneous(const TorusPoint& x, int max_degree)
{
    std::array<cplx_ext, 5> e{cplx_ext(1), 0.0L, 0.0L, 0.0L, 0.0L};
    for (const auto& z : x.eigenvalues()) {
        const cplx_ext zl(z.real(), z.imag());
        for (std::size_t k = 4; k >= 1; --k) e[k] += zl * e[k - 1];
    }
    std::vector<cplx_ext> h(static_cast<std::size_t>(max_degree) + 1, 0.0L);
    h[0] = 1.0L;
    for (int m = 1; m <= max_degree; ++m) {
        cplx_ext acc = 0.0L;
        for (int i = 1; i <= std::min(m, 4); ++i) {
            const cplx_ext term = e[static_cast<std::size_t>(i)] * h[static_cast<std::size_t>(m - i)];
            acc += (i % 2 == 1) ? term : -term;
        }
        h[static_cast<std::size_t>(m)] = acc;
    }
    return h;
}

} // namespace

cplx elementary_symmetric(int k, const TorusPoint& x)
{
    if (k < 0 || k > 4) throw std::invalid_argument("elementary_symmetric: k must be in 0..4");
    return elementary_all(x)[static_cast<std::size_t>(k)];
}

cplx elementary_character(int k, const TorusPoint& x)
{
    if (k < 1 || k > 3) throw std::invalid_argument("elementary_character: k must be in 1..3");
    return elementary_symmetric(k, x);
}

cplx schur_character(const DominantWeight& w, const TorusPoint& x)
{
    const auto& lam = w.parts();
    int rows = 0;
    while (rows < 3 && lam[static_cast<std::size_t>(rows)] > 0) ++rows;
    if (rows == 0) return 1.0;

    const auto h = complete_homogeneous(x, lam[0] + rows - 1);
    auto entry = [&](int i, int j) -> cplx_ext {
        const int idx = lam[static_cast<std::size_t>(i)] - i + j;
        return idx < 0 ? cplx_ext(0.0L) : h[static_cast<std::size_t>(idx)];
    };
    cplx_ext det;
    switch (rows) {
    case 1:
        det = entry(0, 0);
        break;
    case 2:
        det = entry(0, 0) * entry(1, 1) - entry(0, 1) * entry(1, 0);
        break;
    default:
        det = entry(0, 0) * (entry(1, 1) * entry(2, 2) - entry(1, 2) * entry(2, 1)) -
              entry(0, 1) * (entry(1, 0) * entry(2, 2) - entry(1, 2) * entry(2, 0)) +
              entry(0, 2) * (entry(1, 0) * entry(2, 1) - entry(1, 1) * entry(2, 0));
    }
    return cplx(static_cast<double>(det.real()), static_cast<double>(det.imag()));
}

std::uint64_t dimension(const DominantWeight& w)
{
    const auto& lam = w.parts();
    std::uint64_t numerator = 1;
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            const auto factor = static_cast<std::uint64_t>(lam[static_cast<std::size_t>(i)] -
                                                           lam[static_cast<std::size_t>(j)] + j - i);
            if (__builtin_mul_overflow(numerator, factor, &numerator)) {
                throw std::overflow_error("dimension: weight too large");
            }
        }
    }
    // prod_{i<j} (j - i) = 1*2*3*1*2*1
    return numerator / 12;
}

unsigned MonomialExponent::total_degree() const noexcept
{
    unsigned s = 0;
    for (auto v : e) s += v;
    return s;
}

MonomialExponent MonomialExponent::swapped() const noexcept
{
    return MonomialExponent{{e[1], e[0], e[3], e[2], e[5], e[4]}};
}

TensorDecomposition::TensorDecomposition(Map multiplicities) : multiplicities_(std::move(multiplicities))
{
    for (const auto& [w, m] : multiplicities_) {
        if (m == 0) throw std::invalid_argument("TensorDecomposition: zero multiplicity for " + w.to_string());
    }
}

TensorDecomposition TensorDecomposition::trivial()
{
    return TensorDecomposition(Map{{DominantWeight(), 1}});
}

std::uint64_t TensorDecomposition::multiplicity(const DominantWeight& w) const
{
    const auto it = multiplicities_.find(w);
    return it == multiplicities_.end() ? 0 : it->second;
}

std::uint64_t TensorDecomposition::total_dimension() const
{
    std::uint64_t total = 0;
    for (const auto& [w, m] : multiplicities_) {
        std::uint64_t term = 0;
        if (__builtin_mul_overflow(m, dimension(w), &term) || __builtin_add_overflow(total, term, &total)) {
            throw std::overflow_error("total_dimension overflow");
        }
    }
    return total;
}

cplx TensorDecomposition::character(const TorusPoint& x) const
{
    cplx acc = 0.0;
    for (const auto& [w, m] : multiplicities_) acc += static_cast<double>(m) * schur_character(w, x);
    return acc;
}

TensorDecomposition TensorDecomposition::dual() const
{
    Map out;
    for (const auto& [w, m] : multiplicities_) out[w.dual()] += m;
    return TensorDecomposition(std::move(out));
}

TensorDecomposition tensor_with_fundamental(const TensorDecomposition& d, int k)
{
    if (k < 1 || k > 3) throw std::invalid_argument("tensor_with_fundamental: k must be in 1..3");
    TensorDecomposition::Map out;
    for (const auto& [w, m] : d.multiplicities()) {
        // Rows receiving a box: every 4-bit mask with k bits set.
        for (unsigned mask = 0; mask < 16; ++mask) {
            if (std::popcount(mask) != k) continue;
            std::array<int, 4> next = w.parts();
            for (std::size_t r = 0; r < 4; ++r) next[r] += static_cast<int>((mask >> r) & 1U);
            if (!std::is_sorted(next.begin(), next.end(), std::greater<>())) continue;
            std::uint64_t& slot = out[DominantWeight(next)];
            if (__builtin_add_overflow(slot, m, &slot)) throw std::overflow_error("multiplicity overflow");
        }
    }
    return TensorDecomposition(std::move(out));
}

TensorDecomposition monomial_multiplicities(const MonomialExponent& m)
{
    TensorDecomposition d = TensorDecomposition::trivial();
    for (int k = 1; k <= 3; ++k) {
        for (unsigned i = 0; i < m.power(k); ++i) d = tensor_with_fundamental(d, k);
        for (unsigned i = 0; i < m.conj_power(k); ++i) d = tensor_with_fundamental(d, 4 - k);
    }
    return d;
}

cplx monomial_character(const MonomialExponent& m, const TorusPoint& x)
{
    const auto e = elementary_all(x);
    cplx acc = 1.0;
    for (int k = 1; k <= 3; ++k) {
        for (unsigned i = 0; i < m.power(k); ++i) acc *= e[static_cast<std::size_t>(k)];
        for (unsigned i = 0; i < m.conj_power(k); ++i) acc *= e[static_cast<std::size_t>(4 - k)];
    }
    return acc;
}

} // namespace gl4st

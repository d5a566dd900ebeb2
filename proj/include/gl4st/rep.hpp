#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <string>

#include "gl4st/params.hpp"

namespace gl4st {

/// Highest weight of an SL(4) representation, stored as a partition with
/// lambda[3] = 0. Any weakly decreasing integer 4-tuple is accepted and
/// shifted so that its last part is zero.
class DominantWeight {
public:
    DominantWeight() = default;
    explicit DominantWeight(const std::array<int, 4>& parts);

    const std::array<int, 4>& parts() const noexcept { return parts_; }
    int operator[](std::size_t i) const noexcept { return parts_[i]; }

    /// Inverse of omega: (l1, l2, l3) = (lambda1 - lambda2, lambda2 - lambda3, lambda3).
    std::array<int, 3> l_coordinates() const noexcept;

    /// Highest weight of the contragredient representation.
    DominantWeight dual() const;

    bool is_trivial() const noexcept { return parts_[0] == 0; }
    std::string to_string() const;

    auto operator<=>(const DominantWeight&) const = default;

private:
    std::array<int, 4> parts_{0, 0, 0, 0};
};

/// omega(l1, l2, l3) = (l1+l2+l3, l2+l3, l3, 0). Casselman–Shalika sends
/// A(p^l1, p^l2, p^l3) to the character of this weight.
DominantWeight omega(int l1, int l2, int l3);

/// A point of the maximal torus, given by its four eigenvalues. Eigenvalues
/// are kept sorted by principal argument (then modulus), which picks a
/// canonical representative of the Weyl orbit.
class TorusPoint {
public:
    static constexpr double kDefaultTolerance = 1e-10;

    TorusPoint();
    explicit TorusPoint(const std::array<cplx, 4>& eigenvalues);

    /// Validates unit modulus and unit determinant to `tol`.
    static TorusPoint special_unitary(const std::array<cplx, 4>& eigenvalues,
                                      double tol = kDefaultTolerance);
    /// diag(e^{i t1}, e^{i t2}, e^{i t3}, e^{-i(t1+t2+t3)})
    static TorusPoint from_angles(double t1, double t2, double t3);
    static TorusPoint identity() { return TorusPoint(); }

    const std::array<cplx, 4>& eigenvalues() const noexcept { return eigenvalues_; }
    bool is_special_unitary(double tol = kDefaultTolerance) const noexcept;
    TorusPoint conjugate() const;

private:
    std::array<cplx, 4> eigenvalues_;
};

/// e_k of the eigenvalues, k = 0..4.
cplx elementary_symmetric(int k, const TorusPoint& x);

/// chi_k = character of the k-th exterior power, k = 1..3.
cplx elementary_character(int k, const TorusPoint& x);

/// Schur polynomial s_lambda at the eigenvalues (Jacobi–Trudi in the complete
/// homogeneous polynomials; well defined at coincident eigenvalues).
cplx schur_character(const DominantWeight& w, const TorusPoint& x);

/// Weyl dimension formula.
std::uint64_t dimension(const DominantWeight& w);

/// Exponents (i1, i1', i2, i2', i3, i3') of the monomial
/// e1^i1 conj(e1)^i1' e2^i2 conj(e2)^i2' e3^i3 conj(e3)^i3'.
struct MonomialExponent {
    std::array<unsigned, 6> e{};

    unsigned power(int k) const { return e.at(static_cast<std::size_t>(2 * (k - 1))); }
    unsigned conj_power(int k) const { return e.at(static_cast<std::size_t>(2 * (k - 1) + 1)); }
    unsigned total_degree() const noexcept;
    /// Exchanges each exponent with its conjugate partner.
    MonomialExponent swapped() const noexcept;

    auto operator<=>(const MonomialExponent&) const = default;
};

/// Decomposition of a finite-dimensional representation into irreducibles.
class TensorDecomposition {
public:
    using Map = std::map<DominantWeight, std::uint64_t>;

    TensorDecomposition() = default;
    /// Throws std::invalid_argument on a zero multiplicity.
    explicit TensorDecomposition(Map multiplicities);

    static TensorDecomposition trivial();

    const Map& multiplicities() const noexcept { return multiplicities_; }
    std::uint64_t multiplicity(const DominantWeight& w) const;
    std::uint64_t total_dimension() const;
    cplx character(const TorusPoint& x) const;
    TensorDecomposition dual() const;

    bool operator==(const TensorDecomposition&) const = default;

private:
    Map multiplicities_;
};

/// d ⊗ Λ^k V by the Pieri rule for vertical k-strips, k = 1..3.
TensorDecomposition tensor_with_fundamental(const TensorDecomposition& d, int k);

/// Multiplicities a_mu of ⊗_k V_k^{⊗i_k} ⊗ V_{4-k}^{⊗i'_k}; the conjugate
/// factors are realized through conj(V_k) ≅ V_{4-k}.
TensorDecomposition monomial_multiplicities(const MonomialExponent& m);

/// prod_k chi_k(x)^{i_k} chi_{4-k}(x)^{i'_k}: the character of the
/// representation monomial_multiplicities decomposes.
cplx monomial_character(const MonomialExponent& m, const TorusPoint& x);

} // namespace gl4st

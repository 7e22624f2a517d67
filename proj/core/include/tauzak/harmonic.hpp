#pragma once

// Fourier analysis on finite abelian groups.
//
// Normalization: Haar(K) is counting measure, Haar(K^) is counting / |K|,
// Haar(L) is counting and sigma_{K/L} is counting on the transversal. With
// these weights the Fourier transform is unitary and inversion is exact.

#include <complex>
#include <vector>

#include "tauzak/group_core.hpp"

namespace tauzak {

using Complex = std::complex<double>;

enum class Domain { primal, dual };

/// A complex function on K (or on K^), indexed by the group's element enumeration.
class Signal {
public:
    Signal() = default;
    Signal(FiniteAbelianGroup group, std::vector<Complex> values, Domain domain = Domain::primal);

    static Signal zeros(const FiniteAbelianGroup &group, Domain domain = Domain::primal);
    static Signal delta(const FiniteAbelianGroup &group, const GroupElement &at);
    static Signal constant(const FiniteAbelianGroup &group, Complex value,
                           Domain domain = Domain::primal);

    const FiniteAbelianGroup &group() const { return group_; }
    Domain domain() const { return domain_; }
    const std::vector<Complex> &values() const { return values_; }
    std::vector<Complex> &values() { return values_; }
    std::size_t size() const { return values_.size(); }

    Complex operator[](std::size_t i) const { return values_[i]; }
    Complex &operator[](std::size_t i) { return values_[i]; }
    Complex at(std::span<const std::int64_t> residues) const {
        return values_[group_.index_of(residues)];
    }

    /// 1 on K, 1/|K| on the dual.
    double haar_weight() const;
    double norm_squared() const;
    double norm() const;

private:
    FiniteAbelianGroup group_;
    Domain domain_ = Domain::primal;
    std::vector<Complex> values_;
};

Signal operator+(const Signal &a, const Signal &b);
Signal operator*(Complex c, const Signal &a);
double max_abs_diff(const Signal &a, const Signal &b);

/// L^2 inner product with the declared Haar weight.
Complex inner(const Signal &a, const Signal &b);

/// v^(omega) = sum_k v(k) conj(<k, omega>), by direct summation in a fixed order.
Signal fourier(const Signal &v);
/// Same transform, computed axis by axis with a mixed-radix Cooley-Tukey pass
/// on each cyclic factor. Checked against fourier() in the tests.
Signal fourier_fast(const Signal &v);
/// v(k) = (1/|K|) sum_omega w(omega) <k, omega>.
Signal inverse_fourier(const Signal &w);

/// k -> v(A k).
Signal compose(const Signal &v, const Automorphism &A);

/// T_L v on K/L, indexed by transversal(K, L).
struct QuotientSignal {
    Subgroup subgroup;
    std::vector<Complex> values;

    const std::vector<GroupElement> &representatives() const { return subgroup.transversal(); }
    Complex at_coset_of(const GroupElement &k) const;
};

QuotientSignal periodize(const Signal &v, const Subgroup &L);

/// |sum_K v - sum_{K/L} T_L v|; an exact rearrangement in the finite model.
double verify_weil(const Signal &v, const Subgroup &L);

} // namespace tauzak

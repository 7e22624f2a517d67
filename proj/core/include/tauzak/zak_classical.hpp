#pragma once

// Classical Zak transform Z_L v(k, omega) = sum_{l in L} v(k + l) <l, omega>
// on the fundamental domain K/L x K^/L-perp.

#include <memory>
#include <string>
#include <vector>

#include "tauzak/harmonic.hpp"

namespace tauzak {

/// The (K, L, L-perp) data shared by every Zak array over the same lattice.
class ZakDomain {
public:
    explicit ZakDomain(Subgroup lattice);
    static std::shared_ptr<const ZakDomain> make(const Subgroup &lattice);

    const FiniteAbelianGroup &group() const { return lattice_.parent(); }
    const Subgroup &lattice() const { return lattice_; }
    const CharacterSubgroup &annihilator() const { return annihilator_; }
    /// Lexicographic-minimum coset representatives of K/L (rows).
    const std::vector<GroupElement> &rows() const { return lattice_.transversal(); }
    /// Lexicographic-minimum representatives of K^/L-perp (columns).
    const std::vector<Character> &columns() const { return annihilator_.transversal(); }
    std::size_t row_count() const { return rows().size(); }
    std::size_t column_count() const { return columns().size(); }

    /// k = rows()[row] + lattice_offset.
    struct RowSplit {
        std::size_t row;
        GroupElement lattice_offset;
    };
    RowSplit split_row(const GroupElement &k) const;
    /// Column of the coset omega + L-perp.
    std::size_t column_of(const Character &omega) const;
    std::size_t row_of(const GroupElement &k) const;

private:
    Subgroup lattice_;
    CharacterSubgroup annihilator_;
    std::vector<std::size_t> row_of_element_;
    std::vector<std::size_t> column_of_character_;
};

/// Zak transform values on the fundamental domain, row-major.
///
/// The L^2 norm weights each row by 1 and each column by 1/|L|.
class ZakArray {
public:
    ZakArray() = default;
    ZakArray(std::shared_ptr<const ZakDomain> domain, std::vector<Complex> values);

    const ZakDomain &domain() const { return *domain_; }
    const std::shared_ptr<const ZakDomain> &domain_ptr() const { return domain_; }
    std::size_t rows() const { return domain_->row_count(); }
    std::size_t cols() const { return domain_->column_count(); }
    Complex operator()(std::size_t r, std::size_t c) const { return values_[r * cols() + c]; }
    Complex &operator()(std::size_t r, std::size_t c) { return values_[r * cols() + c]; }
    const std::vector<Complex> &values() const { return values_; }

    double column_weight() const;
    double norm_squared() const;
    double norm() const;

private:
    std::shared_ptr<const ZakDomain> domain_;
    std::vector<Complex> values_;
};

double max_abs_diff(const ZakArray &a, const ZakArray &b);
Complex inner(const ZakArray &a, const ZakArray &b);

ZakArray zak(const Signal &v, const Subgroup &L);
ZakArray zak(const Signal &v, const std::shared_ptr<const ZakDomain> &domain);

/// Direct lattice sum at an arbitrary (k, omega), no table involved.
Complex zak_direct(const Signal &v, const Subgroup &L, const GroupElement &k, const Character &omega);

/// v(k + l) = (1/|L|) sum_omega Z(k, omega) conj(<l, omega>).
Signal inverse_zak(const ZakArray &Z);

/// Z at any (k, omega): with k = k0 + l and omega in omega0 + L-perp,
/// Z(k, omega) = conj(<l, omega0>) Z(k0, omega0).
Complex quasi_periodic_extension(const ZakArray &Z, const GroupElement &k, const Character &omega);

} // namespace tauzak

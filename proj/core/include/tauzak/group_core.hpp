#pragma once

// Finite abelian groups Z_{n_1} x ... x Z_{n_d}, their characters,
// subgroups in Hermite form, annihilators and matrix automorphisms.

#include <compare>
#include <complex>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tauzak {

/// Shape or dimension mismatch between objects that must agree.
class StructuralError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A mathematical precondition (e.g. tau-invariance) does not hold.
class PreconditionError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

using Residues = std::vector<std::int64_t>;

/// Element k of K, residues[i] in [0, n_i).
struct GroupElement {
    Residues residues;
    friend auto operator<=>(const GroupElement &, const GroupElement &) = default;
};

/// Character omega of K. The dual of Z_{n_1} x ... x Z_{n_d} is indexed by the
/// same moduli; the pairing is exp(2 pi i sum_i k_i omega_i / n_i).
struct Character {
    Residues residues;
    friend auto operator<=>(const Character &, const Character &) = default;
};

template <class T>
concept ResidueVector = std::same_as<T, GroupElement> || std::same_as<T, Character>;

std::string to_string(std::span<const std::int64_t> residues);
inline std::string to_string(const GroupElement &k) { return to_string(k.residues); }
inline std::string to_string(const Character &w) { return to_string(w.residues); }

/// Dense row-major integer matrix.
struct IntMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::int64_t> data;

    IntMatrix() = default;
    IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}
    IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> init);

    static IntMatrix identity(std::size_t d);

    std::int64_t &operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    std::int64_t operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    friend bool operator==(const IntMatrix &, const IntMatrix &) = default;
};

std::int64_t floor_mod(std::int64_t a, std::int64_t m);

class FiniteAbelianGroup {
public:
    FiniteAbelianGroup() = default;
    explicit FiniteAbelianGroup(std::vector<std::int64_t> moduli);

    std::span<const std::int64_t> moduli() const { return moduli_; }
    std::size_t rank() const { return moduli_.size(); }
    std::size_t order() const { return order_; }
    /// lcm of the moduli; every pairing value is an exponent-th root of unity.
    std::int64_t exponent() const { return exponent_; }

    /// Reduce arbitrary integers component-wise into [0, n_i).
    Residues reduce(std::span<const std::int64_t> r) const;
    void check_rank(std::span<const std::int64_t> r) const;
    bool is_reduced(std::span<const std::int64_t> r) const;

    /// Mixed-radix enumeration with the first coordinate most significant, so
    /// index order coincides with lexicographic order.
    Residues residues_at(std::size_t index) const;
    std::size_t index_of(std::span<const std::int64_t> r) const;

    GroupElement element(std::size_t index) const { return {residues_at(index)}; }
    Character character(std::size_t index) const { return {residues_at(index)}; }
    std::vector<GroupElement> elements() const;
    std::vector<Character> characters() const;

    template <ResidueVector E>
    E make(std::span<const std::int64_t> r) const {
        return E{reduce(r)};
    }
    template <ResidueVector E>
    E zero() const {
        return E{Residues(rank(), 0)};
    }
    template <ResidueVector E>
    E add(const E &a, const E &b) const {
        return E{add_residues(a.residues, b.residues)};
    }
    template <ResidueVector E>
    E subtract(const E &a, const E &b) const {
        return E{subtract_residues(a.residues, b.residues)};
    }
    template <ResidueVector E>
    E negate(const E &a) const {
        return E{negate_residues(a.residues)};
    }
    template <ResidueVector E>
    E scale(std::int64_t c, const E &a) const {
        Residues r(a.residues);
        for (auto &x : r) x *= c;
        return E{reduce(r)};
    }

    Residues add_residues(std::span<const std::int64_t> a, std::span<const std::int64_t> b) const;
    Residues subtract_residues(std::span<const std::int64_t> a,
                               std::span<const std::int64_t> b) const;
    Residues negate_residues(std::span<const std::int64_t> a) const;

    friend bool operator==(const FiniteAbelianGroup &a, const FiniteAbelianGroup &b) {
        return a.moduli_ == b.moduli_;
    }

private:
    std::vector<std::int64_t> moduli_;
    std::size_t order_ = 1;
    std::int64_t exponent_ = 1;
};

/// Integer numerator p with <k, omega> = exp(2 pi i p / K.exponent()), p in [0, exponent).
std::int64_t phase_numerator(const FiniteAbelianGroup &K, const GroupElement &k,
                             const Character &omega);

/// exp(2 pi i p / n) evaluated from the reduced fraction so equal phases give
/// bit-identical values.
std::complex<double> root_of_unity(std::int64_t p, std::int64_t n);

/// <k, omega> = exp(2 pi i sum_i k_i omega_i / n_i).
std::complex<double> pair(const FiniteAbelianGroup &K, const GroupElement &k,
                          const Character &omega);

namespace detail {

/// Row-style Hermite basis of the lattice spanned by gens and n_i e_i in Z^d:
/// upper triangular, positive pivots, entries above a pivot reduced into [0, pivot).
IntMatrix hermite_basis(std::span<const std::int64_t> moduli,
                        std::span<const Residues> gens);
/// Lexicographically smallest residue vector congruent to r modulo the lattice.
Residues coset_minimum(const IntMatrix &basis, std::span<const std::int64_t> r);
/// Coefficient matrix M with M * basis = diag(moduli); its columns span the
/// preimage in Z^d of the annihilator.
IntMatrix annihilator_generators(std::span<const std::int64_t> moduli, const IntMatrix &basis);

} // namespace detail

/// A subgroup of a FiniteAbelianGroup (of elements or of characters), stored in
/// canonical Hermite form. Every subgroup of a finite group is a uniform lattice.
template <ResidueVector E>
class BasicSubgroup {
public:
    BasicSubgroup() = default;

    static BasicSubgroup generated_by(const FiniteAbelianGroup &parent, std::span<const E> gens) {
        BasicSubgroup s;
        s.parent_ = parent;
        std::vector<Residues> raw;
        raw.reserve(gens.size());
        for (const auto &g : gens) {
            parent.check_rank(g.residues);
            raw.push_back(parent.reduce(g.residues));
            s.generators_.push_back(E{raw.back()});
        }
        s.basis_ = detail::hermite_basis(parent.moduli(), raw);
        s.finish();
        return s;
    }

    const FiniteAbelianGroup &parent() const { return parent_; }
    const std::vector<E> &generators() const { return generators_; }
    /// Nonzero rows of the Hermite basis reduced into the parent.
    const std::vector<E> &canonical_generators() const { return canonical_generators_; }
    const IntMatrix &canonical_basis() const { return basis_; }
    std::size_t order() const { return elements_.size(); }
    std::size_t index() const { return transversal_.size(); }

    bool contains(const E &x) const {
        parent_.check_rank(x.residues);
        const auto r = detail::coset_minimum(basis_, x.residues);
        for (auto v : r)
            if (v != 0) return false;
        return true;
    }
    /// Lexicographic minimum of the coset x + S.
    E representative(const E &x) const {
        parent_.check_rank(x.residues);
        return E{detail::coset_minimum(basis_, x.residues)};
    }
    /// All elements in lexicographic order (the canonical summation order).
    const std::vector<E> &elements() const { return elements_; }
    /// One lexicographic-minimum representative per coset, sorted.
    const std::vector<E> &transversal() const { return transversal_; }

    friend bool operator==(const BasicSubgroup &a, const BasicSubgroup &b) {
        return a.parent_ == b.parent_ && a.basis_ == b.basis_;
    }

private:
    void finish() {
        const auto d = parent_.rank();
        for (std::size_t i = 0; i < d; ++i) {
            Residues row(d);
            for (std::size_t j = 0; j < d; ++j) row[j] = basis_(i, j);
            row = parent_.reduce(row);
            bool zero = true;
            for (auto v : row) zero = zero && v == 0;
            if (!zero) canonical_generators_.push_back(E{row});
        }
        // Coset minima are exactly the vectors with 0 <= r_i < pivot_i; in
        // mixed-radix order they come out sorted.
        std::vector<std::int64_t> pivots(d);
        std::size_t count = 1;
        for (std::size_t i = 0; i < d; ++i) {
            pivots[i] = basis_(i, i);
            count *= static_cast<std::size_t>(pivots[i]);
        }
        FiniteAbelianGroup box(pivots);
        transversal_.reserve(count);
        for (std::size_t i = 0; i < count; ++i) transversal_.push_back(E{box.residues_at(i)});
        const auto n = parent_.order();
        elements_.reserve(n / count);
        for (std::size_t i = 0; i < n; ++i) {
            auto r = parent_.residues_at(i);
            const auto m = detail::coset_minimum(basis_, r);
            bool zero = true;
            for (auto v : m) zero = zero && v == 0;
            if (zero) elements_.push_back(E{std::move(r)});
        }
    }

    FiniteAbelianGroup parent_;
    std::vector<E> generators_;
    std::vector<E> canonical_generators_;
    IntMatrix basis_;
    std::vector<E> elements_;
    std::vector<E> transversal_;
};

using Subgroup = BasicSubgroup<GroupElement>;
using CharacterSubgroup = BasicSubgroup<Character>;

Subgroup subgroup_from_generators(const FiniteAbelianGroup &K, std::span<const GroupElement> gens);
CharacterSubgroup character_subgroup_from_generators(const FiniteAbelianGroup &K,
                                                     std::span<const Character> gens);

/// L-perp = { omega : <l, omega> = 1 for all l in L }, by exact integer arithmetic.
CharacterSubgroup annihilator(const Subgroup &L);
/// The annihilator of a subgroup of the dual, as a subgroup of K.
Subgroup annihilator(const CharacterSubgroup &X);

std::vector<GroupElement> transversal(const Subgroup &L);

/// k -> A k mod moduli, a bijective homomorphism of K.
class Automorphism {
public:
    Automorphism() = default;
    /// Validates shape, well-definedness over mixed moduli (n_i | A_ij n_j) and
    /// bijectivity (trivial kernel, checked exhaustively).
    Automorphism(FiniteAbelianGroup parent, IntMatrix matrix);

    static Automorphism identity(const FiniteAbelianGroup &K);

    const FiniteAbelianGroup &parent() const { return parent_; }
    const IntMatrix &matrix() const { return matrix_; }
    const IntMatrix &inverse_matrix() const { return inverse_; }
    /// Matrix of omega -> omega o A^{-1} acting on character residues.
    const IntMatrix &dual_matrix() const { return dual_; }

    GroupElement apply(const GroupElement &k) const;
    Character apply_dual(const Character &omega) const;
    /// (*this) o inner.
    Automorphism compose(const Automorphism &inner) const;
    Automorphism inverse() const;
    bool is_identity() const;

    friend bool operator==(const Automorphism &a, const Automorphism &b) {
        return a.parent_ == b.parent_ && a.matrix_ == b.matrix_;
    }

private:
    struct Unchecked {};
    Automorphism(Unchecked, FiniteAbelianGroup parent, IntMatrix matrix, IntMatrix inverse);
    void derive_dual();

    FiniteAbelianGroup parent_;
    IntMatrix matrix_;
    IntMatrix inverse_;
    IntMatrix dual_;
};

GroupElement apply_auto(const Automorphism &A, const GroupElement &k);

struct InvarianceViolation {
    std::size_t automorphism_index;
    GroupElement generator;
    GroupElement image;
};

/// First (automorphism, generator) pair with A l outside L, if any.
std::optional<InvarianceViolation> find_invariance_violation(const Subgroup &L,
                                                             std::span<const Automorphism> H);
bool is_tau_invariant(const Subgroup &L, std::span<const Automorphism> H);

} // namespace tauzak

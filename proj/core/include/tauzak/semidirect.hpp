#pragma once

// Semidirect products H x_tau K with H acting on K by matrix automorphisms,
// and the derived actions on K^, K/L, K^/L-perp and K/L x K^/L-perp.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tauzak/zak_classical.hpp"

namespace tauzak {

/// Positive rational used for the Haar moduli delta_K, delta_L.
struct Rational {
    std::int64_t num = 1;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d = 1);

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    /// Exact when num and den are perfect squares, floating otherwise.
    double sqrt_value() const;
    Rational inverse() const { return {den, num}; }

    friend Rational operator*(const Rational &a, const Rational &b);
    friend bool operator==(const Rational &, const Rational &) = default;
};

std::string to_string(const Rational &r);

struct ActingElement {
    std::string label;
    Automorphism tau;
    Rational delta_K{1};
    Rational delta_L{1};
};

/// A finite set of H-elements with their automorphisms and a (possibly partial)
/// multiplication table. Finite groups are closed; windows of infinite discrete
/// groups keep only the products that land inside the window.
class ActingGroup {
public:
    static constexpr std::size_t default_cap = 10000;

    /// Closure of the generators under composition; one element per distinct
    /// automorphism. Throws StructuralError past `cap` elements.
    static ActingGroup generate(const FiniteAbelianGroup &K, std::span<const Automorphism> gens,
                                std::size_t cap = default_cap);
    /// table[i * n + j] = index of element i * j, when realized.
    static ActingGroup from_table(std::vector<ActingElement> elements,
                                  std::vector<std::optional<std::size_t>> table);
    /// Elements l in [lo, hi] of Z acting by gen^l; product l + l' when inside the window.
    static ActingGroup integer_window(const Automorphism &gen, std::int64_t lo, std::int64_t hi);
    static ActingGroup trivial(const FiniteAbelianGroup &K);

    std::size_t size() const { return elements_.size(); }
    const ActingElement &operator[](std::size_t i) const { return elements_.at(i); }
    const std::vector<ActingElement> &elements() const { return elements_; }
    std::size_t identity() const { return identity_; }
    std::optional<std::size_t> product(std::size_t i, std::size_t j) const;
    std::optional<std::size_t> inverse(std::size_t i) const;
    std::optional<std::size_t> find(const std::string &label) const;
    bool is_closed() const;
    std::vector<Automorphism> automorphisms() const;

    /// Copy with replaced Haar moduli for element h.
    ActingGroup with_deltas(std::size_t h, Rational delta_K, Rational delta_L) const;

private:
    void validate();

    std::vector<ActingElement> elements_;
    std::vector<std::optional<std::size_t>> table_;
    std::vector<std::optional<std::size_t>> inverse_;
    std::size_t identity_ = 0;
};

/// The bundle (H, K, tau, L) with L-perp, the transversals and the Haar moduli.
class SemidirectSystem {
public:
    /// Throws PreconditionError when L is not tau-invariant.
    SemidirectSystem(ActingGroup H, Subgroup L);

    const ActingGroup &acting_group() const { return H_; }
    const FiniteAbelianGroup &group() const { return domain_->group(); }
    const Subgroup &lattice() const { return domain_->lattice(); }
    const CharacterSubgroup &annihilator() const { return domain_->annihilator(); }
    const std::shared_ptr<const ZakDomain> &zak_domain() const { return domain_; }
    const std::vector<GroupElement> &coset_representatives() const { return domain_->rows(); }
    const std::vector<Character> &dual_representatives() const { return domain_->columns(); }

    const Automorphism &tau(std::size_t h) const { return H_[h].tau; }
    Rational delta_K(std::size_t h) const { return H_[h].delta_K; }
    Rational delta_L(std::size_t h) const { return H_[h].delta_L; }
    /// Distortion of counting measure under tau_h, measured from the action
    /// itself: |tau_h(S)| / |S| for S = K (resp. S = L).
    Rational measured_delta_K(std::size_t h) const;
    Rational measured_delta_L(std::size_t h) const;

    void check_h(std::size_t h) const;

private:
    ActingGroup H_;
    std::shared_ptr<const ZakDomain> domain_;
};

using SystemPtr = std::shared_ptr<const SemidirectSystem>;

struct SdElement {
    std::size_t h = 0;
    GroupElement k;
    friend bool operator==(const SdElement &, const SdElement &) = default;
};

SdElement sd_identity(const SemidirectSystem &sys);
/// (h, k)(h', k') = (hh', k + tau_h(k')).
SdElement sd_multiply(const SemidirectSystem &sys, const SdElement &a, const SdElement &b);
/// (h, k)^{-1} = (h^{-1}, tau_{h^{-1}}(-k)).
SdElement sd_inverse(const SemidirectSystem &sys, const SdElement &a);

/// omega_h = omega o tau_{h^{-1}}.
Character dual_action(const SemidirectSystem &sys, std::size_t h, const Character &omega);
/// Representative of tau_h(k) + L.
GroupElement quotient_action(const SemidirectSystem &sys, std::size_t h, const GroupElement &rep);
/// Representative of omega_h + L-perp.
Character dual_quotient_action(const SemidirectSystem &sys, std::size_t h, const Character &rep);

using ProductPoint = std::pair<GroupElement, Character>;
ProductPoint product_action(const SemidirectSystem &sys, std::size_t h, const ProductPoint &x);

struct IsoReport {
    double max_deviation = 0.0;
    std::size_t mismatches = 0;
    std::size_t checks = 0;
    std::vector<std::string> witnesses;

    bool ok(double tol = 1e-12) const { return mismatches == 0 && max_deviation <= tol; }
    void record(double deviation, double tol, const std::string &witness);
    void merge(const IsoReport &other);
};

/// Exhaustive algebraic checks of K/L^ = L-perp (with its H-equivariance) and of
/// the restriction map K^/L-perp -> L^.
IsoReport verify_quotient_dual_isos(const SemidirectSystem &sys);

/// delta_K(h) delta_K(h') = delta_K(hh') (and likewise delta_L) over the table,
/// plus agreement of the stored moduli with the measured ones.
IsoReport verify_delta_homomorphisms(const SemidirectSystem &sys);

} // namespace tauzak

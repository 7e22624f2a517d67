#pragma once

// The tau-Zak transform on L^2(H x_tau K):
//
//   Zf(h, k, omega) = delta_K(h)^{1/2} Z_L f_h(k^h, omega_h)
//                   = delta_K(h)^{1/2} sum_{l in L} f(h, k^h + l) <l, omega_h>,
//
// evaluated on coset representatives (k, omega) of K/L x K^/L-perp.

#include <map>

#include "tauzak/semidirect.hpp"

namespace tauzak {

/// A finitely supported f: h -> f_h on K. ||f||^2 = sum_h delta_K(h) ||f_h||^2.
class SemidirectSignal {
public:
    SemidirectSignal() = default;
    explicit SemidirectSignal(SystemPtr system);

    const SemidirectSystem &system() const { return *system_; }
    const SystemPtr &system_ptr() const { return system_; }
    const std::map<std::size_t, Signal> &slices() const { return slices_; }

    void set_slice(std::size_t h, Signal f_h);
    /// The slice at h, or zero when h is outside the support.
    Signal slice(std::size_t h) const;
    Complex value(std::size_t h, const GroupElement &k) const;

    double norm_squared() const;
    double norm() const;

private:
    SystemPtr system_;
    std::map<std::size_t, Signal> slices_;
};

/// Zf on each supported slice; weights 1 per h, 1 per coset, 1/|L| per dual coset.
class TauZakField {
public:
    TauZakField() = default;
    explicit TauZakField(SystemPtr system);

    const SemidirectSystem &system() const { return *system_; }
    const std::map<std::size_t, ZakArray> &slices() const { return slices_; }
    void set_slice(std::size_t h, ZakArray Z);

    /// Value at arbitrary (k, omega) through quasi-periodic extension; zero off support.
    Complex value(std::size_t h, const GroupElement &k, const Character &omega) const;

    double norm_squared() const;
    double norm() const;

private:
    SystemPtr system_;
    std::map<std::size_t, ZakArray> slices_;
};

TauZakField tau_zak(const SemidirectSignal &f);

/// Straight from the defining lattice sum, at any (h, k, omega).
Complex tau_zak_direct(const SemidirectSignal &f, std::size_t h, const GroupElement &k,
                       const Character &omega);

/// (u (x) v)(h, k) = delta_K(h)^{-1/2} u(h) v(k).
SemidirectSignal tensor(const SystemPtr &system, const std::map<std::size_t, Complex> &u, const Signal &v);

/// <f, g> with weight delta_K(h) per slice.
Complex inner(const SemidirectSignal &f, const SemidirectSignal &g);
/// <F, G> with the invariant product measure on H x (K/L x K^/L-perp).
Complex inner_zak(const TauZakField &F, const TauZakField &G);

SemidirectSignal operator+(const SemidirectSignal &a, const SemidirectSignal &b);
SemidirectSignal operator*(Complex c, const SemidirectSignal &a);
double max_abs_diff(const TauZakField &a, const TauZakField &b);

struct QuasiPeriodicityReport {
    /// max |Zf(h, k + l, w) - conj(<l, w_h>) Zf(h, k, w)|, the lattice-shift law
    /// with the phase taken at the acted character. It fails whenever tau_h
    /// moves some l in L against w.
    double shift_phase_at_acted_character = 0.0;
    /// max |Zf(h, k + l, w) - conj(<l, w>) Zf(h, k, w)|.
    double shift_phase_at_character = 0.0;
    /// max |Zf(h, k + tau_h^{-1}(l), w) - conj(<l, w_h>) Zf(h, k, w)|, the
    /// shift taken in the acted coordinate k^h.
    double shift_in_acted_coordinate = 0.0;
    /// max |Zf(h, k, w + xi) - Zf(h, k, w)| over xi in L-perp.
    double annihilator_shift = 0.0;
    std::size_t cases = 0;
};

/// Exhaustive over supported h, l in L, xi in L-perp and representatives
/// (k, omega); left-hand sides by direct summation, right-hand sides from F.
QuasiPeriodicityReport verify_quasi_periodicity(const TauZakField &F, const SemidirectSignal &f);

namespace detail {
/// Slice-wise inverse of tau_zak, kept for tests.
SemidirectSignal inverse_tau_zak(const TauZakField &F, const SystemPtr &system);
} // namespace detail

} // namespace tauzak

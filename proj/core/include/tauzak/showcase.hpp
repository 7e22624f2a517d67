#pragma once

// Concrete semidirect systems: the finite Weyl-Heisenberg group, the
// discretized Z x T^2 torus system, and SL(2, Z) acting on sampled R^2.

#include <array>
#include <functional>

#include "tauzak/tau_zak.hpp"

namespace tauzak {

// ---------------------------------------------------------------- Heisenberg

/// K = Z_N x Z_N read as (b, c) = (character, level-N circle point), with
/// H = Z_N acting by tau_s(b, c) = (b, c + s b). Element index i carries s = i.
SystemPtr heisenberg_system(std::int64_t N, std::span<const GroupElement> L_generators);

/// Closed form of the dual action: (k, n) -> (k - n s, n) mod N.
Character heisenberg_dual_closed_form(std::int64_t N, std::int64_t s, const Character &kn);

// --------------------------------------------------------------------- torus

/// K = Z_M x Z_M sampling T^2, L = (M/n) Z_M x (M/m) Z_M, and a window
/// ell in [ell_min, ell_max] of Z acting by tau_ell(a, b) = (a, b + ell a).
struct TorusModel {
    std::int64_t M = 0;
    std::int64_t n = 0;
    std::int64_t m = 0;
    std::int64_t ell_min = 0;
    std::int64_t ell_max = 0;
    SystemPtr system;

    std::size_t index_of_ell(std::int64_t ell) const;
    std::int64_t ell_at(std::size_t h) const { return ell_min + static_cast<std::int64_t>(h); }
};

/// Requires n | M, m | M and n | m; the last failure raises PreconditionError.
TorusModel torus_system(std::int64_t M, std::int64_t n, std::int64_t m, std::int64_t ell_min = -2,
                        std::int64_t ell_max = 2);

/// The explicit double sum over k < n, j < m at grid point (a, b) and frequencies (p, q).
Complex torus_explicit_zak(const TorusModel &model, const SemidirectSignal &f, std::int64_t ell, std::int64_t a,
                     std::int64_t b, std::int64_t p, std::int64_t q);

struct PlancherelChain {
    double explicit_side = 0.0;  ///< sum over ell, cosets, p < n, q < m of |explicit|^2 / (n m)
    double transform_side = 0.0; ///< ||tau_zak(f)||^2
    double signal_side = 0.0;    ///< sum over ell and all of K of |f|^2
};

PlancherelChain torus_plancherel(const TorusModel &model, const SemidirectSignal &f);

// ------------------------------------------------------------- sampled plane

using Vec2 = std::array<double, 2>;

struct Matrix2 {
    std::int64_t a = 1, b = 0, c = 0, d = 1;

    std::int64_t det() const { return a * d - b * c; }
    Vec2 apply(const Vec2 &x) const;
    /// Row vector times the inverse: w sigma^{-1}, valid for det = 1.
    Vec2 apply_dual(const Vec2 &w) const;
    Matrix2 inverse() const; ///< det = 1 only
    friend Matrix2 operator*(const Matrix2 &x, const Matrix2 &y);
    friend bool operator==(const Matrix2 &, const Matrix2 &) = default;
};

std::string to_string(const Matrix2 &s);

/// A function on R^2 vanishing outside the closed disk of `radius` about the
/// origin, with its exact (or independently computed) squared L^2 norm.
struct PlaneFunction {
    std::function<Complex(const Vec2 &)> value;
    double radius = 0.0;
    double norm_squared = 0.0;
};

/// A exp(1 - 1/(1 - |x - c|^2 / r^2)) e^{2 pi i xi . x} inside |x - c| < r.
/// Its norm comes from a radial Gauss-Legendre rule, independent of any lattice sum.
PlaneFunction smooth_bump(Vec2 center, double r, Complex amplitude = 1.0, Vec2 xi = {0.0, 0.0});

class SampledPlaneSystem {
public:
    /// Validates det = 1, alpha, beta > 0, samples >= 1 and sigma L = L.
    SampledPlaneSystem(std::vector<Matrix2> sigma_set, double alpha, double beta, std::size_t samples_per_axis,
                       double support_radius);

    const std::vector<Matrix2> &sigma_set() const { return sigma_; }
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    std::size_t samples() const { return samples_; }
    double support_radius() const { return support_radius_; }
    double delta_K(std::size_t) const { return 1.0; }

    /// Midpoints of the uniform grid on [0, alpha) x [0, beta).
    Vec2 x_point(std::size_t i, std::size_t j) const;
    /// Midpoints of the uniform grid on [0, 1/alpha) x [0, 1/beta).
    Vec2 w_point(std::size_t i, std::size_t j) const;
    Vec2 lattice_point(std::int64_t n, std::int64_t m) const { return {alpha_ * n, beta_ * m}; }
    Vec2 dual_lattice_point(std::int64_t n, std::int64_t m) const { return {n / alpha_, m / beta_}; }

    SampledPlaneSystem with_samples(std::size_t samples_per_axis) const;

private:
    std::vector<Matrix2> sigma_;
    double alpha_ = 1.0;
    double beta_ = 1.0;
    std::size_t samples_ = 16;
    double support_radius_ = 0.0;
};

SampledPlaneSystem sl2_system(std::vector<Matrix2> sigma_set, double alpha, double beta,
                              std::size_t samples_per_axis, double support_radius);

/// <x, w> = e^{-2 pi i x . w}.
Complex sl2_pairing(const Vec2 &x, const Vec2 &w);
Vec2 sl2_dual_action(const Matrix2 &sigma, const Vec2 &w);

/// One function per sigma; an empty `value` means zero on that slice.
using PlaneSignal = std::vector<PlaneFunction>;

/// sum over (n, m) of f(sigma, sigma x + (alpha n, beta m)) <(alpha n, beta m), w sigma^{-1}>,
/// over exactly the translates that meet the support disk.
Complex sl2_zak(const SampledPlaneSystem &sys, const PlaneSignal &f, std::size_t sigma, const Vec2 &x,
                const Vec2 &w);

struct PlaneIsometry {
    double zak_side = 0.0;
    double signal_side = 0.0;
    double relative_error = 0.0;
};

/// alpha beta times the midpoint-rule integral of |Zf|^2 over both cells, summed over sigma,
/// against sum over sigma of ||f_sigma||^2.
PlaneIsometry sl2_isometry(const SampledPlaneSystem &sys, const PlaneSignal &f);

} // namespace tauzak

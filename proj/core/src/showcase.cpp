#include "tauzak/showcase.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace tauzak {

namespace {

Automorphism lower_shear(const FiniteAbelianGroup &K, std::int64_t s) {
    return Automorphism(K, IntMatrix{{1, 0}, {s, 1}});
}

} // namespace

SystemPtr heisenberg_system(std::int64_t N, std::span<const GroupElement> L_generators) {
    if (N < 2) throw StructuralError("heisenberg_system: N must be at least 2");
    const FiniteAbelianGroup K({N, N});
    const auto n = static_cast<std::size_t>(N);
    std::vector<ActingElement> elems;
    elems.reserve(n);
    for (std::int64_t s = 0; s < N; ++s) elems.push_back({std::to_string(s), lower_shear(K, s)});
    std::vector<std::optional<std::size_t>> table(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) table[i * n + j] = (i + j) % n;
    auto H = ActingGroup::from_table(std::move(elems), std::move(table));
    return std::make_shared<const SemidirectSystem>(std::move(H), subgroup_from_generators(K, L_generators));
}

Character heisenberg_dual_closed_form(std::int64_t N, std::int64_t s, const Character &kn) {
    if (kn.residues.size() != 2) throw StructuralError("heisenberg_dual_closed_form: expected (k, n)");
    const auto k = kn.residues[0], n = kn.residues[1];
    return Character{{floor_mod(k - n * s, N), floor_mod(n, N)}};
}

std::size_t TorusModel::index_of_ell(std::int64_t ell) const {
    if (ell < ell_min || ell > ell_max)
        throw StructuralError("torus model: ell = " + std::to_string(ell) + " outside the window [" +
                              std::to_string(ell_min) + ", " + std::to_string(ell_max) + "]");
    return static_cast<std::size_t>(ell - ell_min);
}

TorusModel torus_system(std::int64_t M, std::int64_t n, std::int64_t m, std::int64_t ell_min,
                        std::int64_t ell_max) {
    if (M < 1 || n < 1 || m < 1) throw StructuralError("torus_system: M, n, m must be positive");
    if (M % n != 0 || M % m != 0) throw StructuralError("torus_system: n and m must divide M");
    if (m % n != 0)
        throw PreconditionError("torus_system: L_(n,m) is tau-invariant only when n | m; got n = " +
                                std::to_string(n) + ", m = " + std::to_string(m));
    const FiniteAbelianGroup K({M, M});
    const std::vector<GroupElement> gens{GroupElement{{M / n, 0}}, GroupElement{{0, M / m}}};
    auto H = ActingGroup::integer_window(lower_shear(K, 1), ell_min, ell_max);
    TorusModel model{M, n, m, ell_min, ell_max, nullptr};
    model.system = std::make_shared<const SemidirectSystem>(std::move(H), subgroup_from_generators(K, gens));
    return model;
}

Complex torus_explicit_zak(const TorusModel &model, const SemidirectSignal &f, std::int64_t ell, std::int64_t a,
                     std::int64_t b, std::int64_t p, std::int64_t q) {
    if (&f.system() != model.system.get())
        throw StructuralError("torus_explicit_zak: signal does not belong to this torus model");
    const auto h = model.index_of_ell(ell);
    const auto n = model.n, m = model.m, M = model.M;
    Complex acc = 0.0;
    for (std::int64_t k = 0; k < n; ++k) {
        const auto wk = root_of_unity(floor_mod(k * (p - q * ell), n), n);
        for (std::int64_t j = 0; j < m; ++j) {
            const GroupElement point{{floor_mod(a + k * (M / n), M), floor_mod(b + ell * a + j * (M / m), M)}};
            acc += f.value(h, point) * wk * root_of_unity(floor_mod(j * q, m), m);
        }
    }
    return acc;
}

PlancherelChain torus_plancherel(const TorusModel &model, const SemidirectSignal &f) {
    PlancherelChain out;
    const auto &sys = *model.system;
    const double weight = 1.0 / static_cast<double>(model.n * model.m);
    for (const auto &[h, f_h] : f.slices()) {
        const auto ell = model.ell_at(h);
        for (const auto &rep : sys.coset_representatives())
            for (std::int64_t p = 0; p < model.n; ++p)
                for (std::int64_t q = 0; q < model.m; ++q)
                    out.explicit_side +=
                        std::norm(torus_explicit_zak(model, f, ell, rep.residues[0], rep.residues[1], p, q)) * weight;
        out.signal_side += f_h.norm_squared();
    }
    out.transform_side = tau_zak(f).norm_squared();
    return out;
}

// ------------------------------------------------------------- sampled plane

Vec2 Matrix2::apply(const Vec2 &x) const {
    return {static_cast<double>(a) * x[0] + static_cast<double>(b) * x[1],
            static_cast<double>(c) * x[0] + static_cast<double>(d) * x[1]};
}

Matrix2 Matrix2::inverse() const {
    if (det() != 1) throw StructuralError("Matrix2::inverse: determinant must be 1");
    return {d, -b, -c, a};
}

Vec2 Matrix2::apply_dual(const Vec2 &w) const {
    const auto inv = inverse();
    // (w1, w2) [[p, q], [r, s]] = (w1 p + w2 r, w1 q + w2 s)
    return {w[0] * static_cast<double>(inv.a) + w[1] * static_cast<double>(inv.c),
            w[0] * static_cast<double>(inv.b) + w[1] * static_cast<double>(inv.d)};
}

Matrix2 operator*(const Matrix2 &x, const Matrix2 &y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

std::string to_string(const Matrix2 &s) {
    std::ostringstream os;
    os << "[[" << s.a << "," << s.b << "],[" << s.c << "," << s.d << "]]";
    return os.str();
}

namespace {

// Composite Gauss-Legendre on [lo, hi]; nodes by Newton iteration on P_n.
template <class F>
double gauss_legendre(F &&fn, double lo, double hi, std::size_t panels = 64, unsigned order = 16) {
    std::vector<double> nodes(order), weights(order);
    for (unsigned i = 0; i < order; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            const double p = std::legendre(order, x);
            const double pm = std::legendre(order - 1, x);
            dp = order * (x * p - pm) / (x * x - 1.0);
            const double step = p / dp;
            x -= step;
            if (std::abs(step) < 1e-16) break;
        }
        const double pm = std::legendre(order - 1, x);
        dp = order * (x * std::legendre(order, x) - pm) / (x * x - 1.0);
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    double total = 0.0;
    const double width = (hi - lo) / static_cast<double>(panels);
    for (std::size_t k = 0; k < panels; ++k) {
        const double a = lo + width * static_cast<double>(k);
        const double mid = a + 0.5 * width, half = 0.5 * width;
        double panel = 0.0;
        for (unsigned i = 0; i < order; ++i) panel += weights[i] * fn(mid + half * nodes[i]);
        total += panel * half;
    }
    return total;
}

double bump_profile(double rho2) { return rho2 < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - rho2)) : 0.0; }

} // namespace

PlaneFunction smooth_bump(Vec2 center, double r, Complex amplitude, Vec2 xi) {
    if (!(r > 0.0)) throw StructuralError("smooth_bump: radius must be positive");
    PlaneFunction f;
    f.radius = std::hypot(center[0], center[1]) + r;
    f.value = [=](const Vec2 &x) -> Complex {
        const double dx = x[0] - center[0], dy = x[1] - center[1];
        const double rho2 = (dx * dx + dy * dy) / (r * r);
        if (rho2 >= 1.0) return 0.0;
        const double phase = 2.0 * std::numbers::pi * (xi[0] * x[0] + xi[1] * x[1]);
        return amplitude * bump_profile(rho2) * std::polar(1.0, phase);
    };
    // |f|^2 is radial about the center: 2 pi r^2 |A|^2 int_0^1 profile(s^2)^2 s ds.
    const double radial = gauss_legendre([](double s) { return std::pow(bump_profile(s * s), 2) * s; }, 0.0, 1.0);
    f.norm_squared = 2.0 * std::numbers::pi * r * r * std::norm(amplitude) * radial;
    return f;
}

namespace {

bool near_integer(double x) { return std::abs(x - std::round(x)) <= 1e-9 * std::max(1.0, std::abs(x)); }

} // namespace

SampledPlaneSystem::SampledPlaneSystem(std::vector<Matrix2> sigma_set, double alpha, double beta,
                                       std::size_t samples_per_axis, double support_radius)
    : sigma_(std::move(sigma_set)), alpha_(alpha), beta_(beta), samples_(samples_per_axis),
      support_radius_(support_radius) {
    if (sigma_.empty()) throw StructuralError("sl2_system: empty sigma set");
    if (!(alpha_ > 0.0) || !(beta_ > 0.0)) throw StructuralError("sl2_system: alpha and beta must be positive");
    if (samples_ == 0) throw StructuralError("sl2_system: need at least one sample per axis");
    if (!(support_radius_ >= 0.0)) throw StructuralError("sl2_system: support radius must be nonnegative");
    for (const auto &s : sigma_) {
        if (s.det() != 1)
            throw StructuralError("sl2_system: " + to_string(s) + " has determinant " + std::to_string(s.det()) +
                                  ", expected 1");
        // sigma (alpha, 0) = (a alpha, c alpha) and sigma (0, beta) = (b beta, d beta) must stay in L.
        if (!near_integer(static_cast<double>(s.c) * alpha_ / beta_) ||
            !near_integer(static_cast<double>(s.b) * beta_ / alpha_))
            throw PreconditionError("sl2_system: " + to_string(s) + " does not preserve alpha Z x beta Z");
    }
}

Vec2 SampledPlaneSystem::x_point(std::size_t i, std::size_t j) const {
    const double n = static_cast<double>(samples_);
    return {alpha_ * (static_cast<double>(i) + 0.5) / n, beta_ * (static_cast<double>(j) + 0.5) / n};
}

Vec2 SampledPlaneSystem::w_point(std::size_t i, std::size_t j) const {
    const double n = static_cast<double>(samples_);
    return {(static_cast<double>(i) + 0.5) / (alpha_ * n), (static_cast<double>(j) + 0.5) / (beta_ * n)};
}

SampledPlaneSystem SampledPlaneSystem::with_samples(std::size_t samples_per_axis) const {
    return SampledPlaneSystem(sigma_, alpha_, beta_, samples_per_axis, support_radius_);
}

SampledPlaneSystem sl2_system(std::vector<Matrix2> sigma_set, double alpha, double beta,
                              std::size_t samples_per_axis, double support_radius) {
    return SampledPlaneSystem(std::move(sigma_set), alpha, beta, samples_per_axis, support_radius);
}

Complex sl2_pairing(const Vec2 &x, const Vec2 &w) {
    return std::polar(1.0, -2.0 * std::numbers::pi * (x[0] * w[0] + x[1] * w[1]));
}

Vec2 sl2_dual_action(const Matrix2 &sigma, const Vec2 &w) { return sigma.apply_dual(w); }

namespace {

struct Translate {
    Vec2 l;
    Complex value;
};

void check_signal(const SampledPlaneSystem &sys, const PlaneSignal &f) {
    if (f.size() != sys.sigma_set().size())
        throw StructuralError("sl2: signal has " + std::to_string(f.size()) + " slices, system has " +
                              std::to_string(sys.sigma_set().size()));
    for (std::size_t s = 0; s < f.size(); ++s)
        if (f[s].value && f[s].radius > sys.support_radius())
            throw PreconditionError("sl2: slice " + std::to_string(s) + " has support radius " +
                                    std::to_string(f[s].radius) + " beyond the system's " +
                                    std::to_string(sys.support_radius()));
}

// Nonzero terms f(y + l), l in alpha Z x beta Z, with y + l in the support disk.
std::vector<Translate> translates(const SampledPlaneSystem &sys, const PlaneFunction &f, const Vec2 &y) {
    std::vector<Translate> out;
    const double R = f.radius;
    const auto n_lo = static_cast<std::int64_t>(std::ceil((-R - y[0]) / sys.alpha()));
    const auto n_hi = static_cast<std::int64_t>(std::floor((R - y[0]) / sys.alpha()));
    const auto m_lo = static_cast<std::int64_t>(std::ceil((-R - y[1]) / sys.beta()));
    const auto m_hi = static_cast<std::int64_t>(std::floor((R - y[1]) / sys.beta()));
    for (auto n = n_lo; n <= n_hi; ++n)
        for (auto m = m_lo; m <= m_hi; ++m) {
            const auto l = sys.lattice_point(n, m);
            const Vec2 p{y[0] + l[0], y[1] + l[1]};
            if (p[0] * p[0] + p[1] * p[1] > R * R) continue;
            const auto v = f.value(p);
            if (v != Complex(0.0)) out.push_back({l, v});
        }
    return out;
}

Complex sum_translates(const std::vector<Translate> &terms, const Vec2 &v) {
    Complex acc = 0.0;
    for (const auto &t : terms) acc += t.value * sl2_pairing(t.l, v);
    return acc;
}

} // namespace

Complex sl2_zak(const SampledPlaneSystem &sys, const PlaneSignal &f, std::size_t sigma, const Vec2 &x,
                const Vec2 &w) {
    check_signal(sys, f);
    if (sigma >= f.size()) throw StructuralError("sl2_zak: sigma index out of range");
    if (!f[sigma].value) return 0.0;
    const auto &s = sys.sigma_set()[sigma];
    return sum_translates(translates(sys, f[sigma], s.apply(x)), s.apply_dual(w));
}

PlaneIsometry sl2_isometry(const SampledPlaneSystem &sys, const PlaneSignal &f) {
    check_signal(sys, f);
    PlaneIsometry out;
    const auto N = sys.samples();
    std::vector<Vec2> acted_w(N * N);
    for (std::size_t sigma = 0; sigma < f.size(); ++sigma) {
        if (!f[sigma].value) continue;
        const auto &s = sys.sigma_set()[sigma];
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) acted_w[i * N + j] = s.apply_dual(sys.w_point(i, j));
        double acc = 0.0;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) {
                const auto terms = translates(sys, f[sigma], s.apply(sys.x_point(i, j)));
                if (terms.empty()) continue;
                double row = 0.0;
                for (const auto &v : acted_w) row += std::norm(sum_translates(terms, v));
                acc += row;
            }
        const double n4 = std::pow(static_cast<double>(N), 4);
        out.zak_side += acc * sys.alpha() * sys.beta() / n4;
        out.signal_side += sys.delta_K(sigma) * f[sigma].norm_squared;
    }
    out.relative_error =
        out.signal_side > 0.0 ? std::abs(out.zak_side - out.signal_side) / out.signal_side : std::abs(out.zak_side);
    return out;
}

} // namespace tauzak

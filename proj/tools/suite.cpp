#include "suite.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace tauzak::cli {
namespace {

IdentityCheck make_check(std::string name, std::string statement, double tol, bool gating = true) {
    IdentityCheck c;
    c.name = std::move(name);
    c.statement = std::move(statement);
    c.tolerance = tol;
    c.gating = gating;
    return c;
}

void observe(IdentityCheck &c, double deviation, const std::string &where) {
    ++c.cases;
    if (!(deviation <= c.max_deviation)) {
        c.max_deviation = std::isnan(deviation) ? INFINITY : deviation;
        if (c.max_deviation > c.tolerance) c.witness = where;
    }
}

double relative_gap(double a, double b) {
    const double scale = std::max(std::abs(b), 1e-300);
    return std::abs(a - b) / scale;
}

std::string label(const ActingGroup &H, std::size_t h) { return H[h].label; }

/// sum_h mu(h) ||f_h||^2 with mu the distortion measured from the action itself.
double measured_norm_squared(const SemidirectSignal &f) {
    double s = 0.0;
    for (const auto &[h, v] : f.slices()) s += f.system().measured_delta_K(h).value() * v.norm_squared();
    return s;
}

Complex measured_inner(const SemidirectSignal &f, const SemidirectSignal &g) {
    Complex s = 0.0;
    for (const auto &[h, v] : f.slices()) {
        const auto it = g.slices().find(h);
        if (it != g.slices().end()) s += f.system().measured_delta_K(h).value() * inner(v, it->second);
    }
    return s;
}

void classical_checks(const SemidirectSystem &sys, PortableRng &rng, const SuiteOptions &opt,
                      std::vector<IdentityCheck> &out) {
    const auto &K = sys.group();
    const auto &L = sys.lattice();
    const auto &H = sys.acting_group();
    auto weil = make_check("weil", "sum_K v = sum_{k+L in K/L} sum_L v(k+l)", opt.tolerance);
    auto planch = make_check("plancherel", "||F v||^2 (dual weight 1/|K|) = ||v||^2, relative", opt.tolerance);
    auto zak_iso = make_check("zak_isometry", "||Z_L v|| = ||v||, relative", opt.tolerance);
    auto four_eq = make_check("fourier_equivariance", "F(v o tau_h)(w) = delta_K(h) F v(w_h)", opt.tolerance);
    auto per_eq =
        make_check("periodization_equivariance", "T_L(v o tau_h)(k+L) = delta_L(h) T_L v(tau_h k + L)", opt.tolerance);
    for (std::size_t t = 0; t < opt.trials; ++t) {
        const auto v = random_signal(K, rng);
        const std::string trial = "trial " + std::to_string(t);
        observe(weil, verify_weil(v, L), trial);
        const auto Fv = fourier(v);
        observe(planch, relative_gap(Fv.norm_squared(), v.norm_squared()), trial);
        observe(zak_iso, relative_gap(zak(v, sys.zak_domain()).norm(), v.norm()), trial);

        const auto h = t % H.size();
        const auto where = trial + ", h = " + label(H, h);
        const auto lhs = fourier(compose(v, sys.tau(h)));
        const double dK = sys.delta_K(h).value();
        double dev = 0.0;
        for (const auto &w : K.characters())
            dev = std::max(dev, std::abs(lhs.at(w.residues) - dK * Fv.at(dual_action(sys, h, w).residues)));
        observe(four_eq, dev, where);

        const auto Tl = periodize(compose(v, sys.tau(h)), L);
        const auto Tr = periodize(v, L);
        const double dL = sys.delta_L(h).value();
        dev = 0.0;
        for (std::size_t r = 0; r < Tl.values.size(); ++r)
            dev = std::max(dev, std::abs(Tl.values[r] - dL * Tr.at_coset_of(sys.tau(h).apply(Tl.representatives()[r]))));
        observe(per_eq, dev, where);
    }
    for (auto *c : {&weil, &planch, &zak_iso, &four_eq, &per_eq}) out.push_back(std::move(*c));
}

void permutation_checks(const SemidirectSystem &sys, std::vector<IdentityCheck> &out) {
    const auto &H = sys.acting_group();
    auto perm = make_check("action_permutations",
                           "w -> w_h, k+L -> tau_h k+L and w+Lperp -> w_h+Lperp are bijections (mismatch count)", 0.0);
    for (std::size_t h = 0; h < H.size(); ++h) {
        const auto where = "h = " + label(H, h);
        std::set<std::vector<std::int64_t>> chars, reps, dreps;
        for (const auto &w : sys.group().characters()) chars.insert(dual_action(sys, h, w).residues);
        for (const auto &k : sys.coset_representatives()) reps.insert(quotient_action(sys, h, k).residues);
        for (const auto &w : sys.dual_representatives()) dreps.insert(dual_quotient_action(sys, h, w).residues);
        std::set<std::vector<std::int64_t>> want_reps, want_dreps;
        for (const auto &k : sys.coset_representatives()) want_reps.insert(k.residues);
        for (const auto &w : sys.dual_representatives()) want_dreps.insert(w.residues);
        const double missing = static_cast<double>(sys.group().order() - chars.size()) +
                               static_cast<double>(reps != want_reps) + static_cast<double>(dreps != want_dreps);
        observe(perm, missing, where);
    }
    out.push_back(std::move(perm));
}

void transform_checks(const SystemPtr &sys, PortableRng &rng, const SuiteOptions &opt,
                      std::vector<IdentityCheck> &out) {
    auto iso = make_check("tau_zak_isometry",
                          "||Zf||^2 = sum_h delta_K(h) ||f_h||^2 with delta_K measured from the action, relative",
                          opt.tolerance);
    auto orth = make_check("orthogonality",
                           "<Zf, Zg> = sum_h delta_K(h) <f_h, g_h> with delta_K measured from the action",
                           opt.tolerance);
    for (std::size_t t = 0; t < opt.trials; ++t) {
        const auto f = random_semidirect_signal(sys, rng);
        const auto g = random_semidirect_signal(sys, rng);
        const auto F = tau_zak(f);
        const std::string where = "trial " + std::to_string(t);
        observe(iso, relative_gap(F.norm_squared(), measured_norm_squared(f)), where);
        observe(orth, std::abs(inner_zak(F, tau_zak(g)) - measured_inner(f, g)), where);
    }

    auto qp_char = make_check("quasi_periodicity.lattice",
                              "Zf(h, k+l, w) = conj<l, w> Zf(h, k, w) for l in L", opt.tolerance);
    auto qp_twist = make_check("quasi_periodicity.acted_shift",
                               "Zf(h, k+tau_h^{-1} l, w) = conj<l, w_h> Zf(h, k, w) for l in L", opt.tolerance);
    auto qp_dual = make_check("quasi_periodicity.annihilator",
                              "Zf(h, k, w+xi) = Zf(h, k, w) for xi in Lperp", opt.tolerance);
    auto qp_lit = make_check("quasi_periodicity.acted_phase",
                             "Zf(h, k+l, w) = conj<l, w_h> Zf(h, k, w); holds when tau_h fixes L pointwise",
                             opt.tolerance, false);
    const std::size_t qp_trials = std::min<std::size_t>(opt.trials, 2);
    for (std::size_t t = 0; t < qp_trials; ++t) {
        const auto f = random_semidirect_signal(sys, rng);
        const auto rep = verify_quasi_periodicity(tau_zak(f), f);
        const std::string where = "quasi-periodicity trial " + std::to_string(t);
        observe(qp_char, rep.shift_phase_at_character, where);
        observe(qp_twist, rep.shift_in_acted_coordinate, where);
        observe(qp_dual, rep.annihilator_shift, where);
        observe(qp_lit, rep.shift_phase_at_acted_character, where);
    }
    for (auto *c : {&iso, &orth, &qp_char, &qp_twist, &qp_dual, &qp_lit}) out.push_back(std::move(*c));
}

IdentityCheck from_iso_report(std::string name, std::string statement, const IsoReport &rep, double tol) {
    auto c = make_check(std::move(name), std::move(statement), tol);
    c.cases = rep.checks;
    c.max_deviation = rep.mismatches > 0 ? static_cast<double>(rep.mismatches) : rep.max_deviation;
    if (!rep.witnesses.empty() && !c.passed()) c.witness = rep.witnesses.front();
    return c;
}

void model_checks(const BuiltSystem &built, const SystemDescriptor &d, PortableRng &rng, const SuiteOptions &opt,
                  std::vector<IdentityCheck> &out) {
    const auto &sys = *built.system;
    if (d.kind == SystemDescriptor::Kind::heisenberg) {
        auto c = make_check("heisenberg_dual_closed_form", "(k, n)_s = (k - n s, n) (mismatch count)", 0.0);
        for (std::size_t h = 0; h < sys.acting_group().size(); ++h)
            for (const auto &w : sys.group().characters()) {
                const bool same =
                    dual_action(sys, h, w) == heisenberg_dual_closed_form(d.N, static_cast<std::int64_t>(h), w);
                observe(c, same ? 0.0 : 1.0, "s = " + std::to_string(h));
            }
        out.push_back(std::move(c));
    }
    if (built.torus) {
        const auto &model = *built.torus;
        auto ex = make_check("torus_explicit_formula",
                             "Zf(l, a, b, p, q) = sum_{k<n, j<m} f(l, a + kM/n, b + l a + jM/m) e^{2 pi i k (p - q l)/n} "
                             "e^{2 pi i j q / m}",
                             opt.tolerance);
        auto pl = make_check("torus_plancherel_chain",
                             "sum |explicit|^2 / (n m) = ||Zf||^2 = ||f||^2, relative", opt.tolerance);
        const std::size_t n_trials = std::max<std::size_t>(1, opt.trials / 10);
        for (std::size_t t = 0; t < n_trials; ++t) {
            const auto f = random_semidirect_signal(built.system, rng);
            const auto F = tau_zak(f);
            double dev = 0.0;
            for (std::size_t h = 0; h < sys.acting_group().size(); ++h)
                for (const auto &k : sys.coset_representatives())
                    for (std::int64_t p = 0; p < model.n; ++p)
                        for (std::int64_t q = 0; q < model.m; ++q) {
                            const auto e =
                                torus_explicit_zak(model, f, model.ell_at(h), k.residues[0], k.residues[1], p, q);
                            dev = std::max(dev, std::abs(e - F.value(h, k, Character{{p, q}})));
                        }
            const std::string where = "trial " + std::to_string(t);
            observe(ex, dev, where);
            const auto chain = torus_plancherel(model, f);
            observe(pl,
                    std::max(relative_gap(chain.explicit_side, chain.signal_side),
                             relative_gap(chain.transform_side, chain.signal_side)),
                    where);
        }
        out.push_back(std::move(ex));
        out.push_back(std::move(pl));
    }
}

} // namespace

SemidirectSignal random_semidirect_signal(const SystemPtr &system, PortableRng &rng) {
    SemidirectSignal f(system);
    const auto n = system->acting_group().size();
    for (std::size_t h = 0; h < n; ++h)
        if (rng.below(2) == 1) f.set_slice(h, random_signal(system->group(), rng));
    if (f.slices().empty()) f.set_slice(rng.below(n), random_signal(system->group(), rng));
    return f;
}

std::vector<IdentityCheck> run_finite_suite(const BuiltSystem &built, const SystemDescriptor &d,
                                            const SuiteOptions &opt) {
    PortableRng rng(opt.seed);
    std::vector<IdentityCheck> out;
    const auto &sys = *built.system;
    classical_checks(sys, rng, opt, out);
    permutation_checks(sys, out);
    transform_checks(built.system, rng, opt, out);
    out.push_back(from_iso_report("quotient_dual_isomorphisms",
                                  "(K/L)^ = Lperp and K^/Lperp = L^, H-equivariant (exhaustive)",
                                  verify_quotient_dual_isos(sys), 1e-12));
    out.push_back(from_iso_report("delta_homomorphisms",
                                  "delta(h h') = delta(h) delta(h'), stored delta = |tau_h S| / |S|",
                                  verify_delta_homomorphisms(sys), 0.0));
    model_checks(built, d, rng, opt, out);
    return out;
}

PlaneSignal random_plane_signal(const SampledPlaneSystem &sys, PortableRng &rng) {
    const double R = sys.support_radius();
    PlaneSignal f;
    for (std::size_t s = 0; s < sys.sigma_set().size(); ++s) {
        const double r = (0.25 + 0.2 * rng.uniform()) * R;
        const double rho = 0.2 * R * rng.uniform();
        const double theta = 2.0 * std::acos(-1.0) * rng.uniform();
        const Vec2 center{rho * std::cos(theta), rho * std::sin(theta)};
        const Vec2 xi{0.5 * rng.symmetric(), 0.5 * rng.symmetric()};
        f.push_back(smooth_bump(center, r, rng.complex(), xi));
    }
    return f;
}

std::vector<IdentityCheck> run_plane_suite(const SampledPlaneSystem &sys, const SuiteOptions &opt) {
    PortableRng rng(opt.seed);
    std::vector<IdentityCheck> out;
    auto iso = make_check("sampled_isometry",
                          "alpha beta sum_sigma int |Zf|^2 (midpoint rule) = sum_sigma ||f_sigma||^2, relative",
                          opt.plane_tolerance);
    auto shift = make_check("sampled_quasi_periodicity",
                            "Zf(sigma, x+lambda, w) = conj<lambda, w> Zf(sigma, x, w), Zf(sigma, x, w+xi) = Zf(sigma, x, w)",
                            opt.tolerance);
    const std::size_t n_trials = std::max<std::size_t>(1, std::min<std::size_t>(opt.trials, 3));
    const auto N = sys.samples();
    for (std::size_t t = 0; t < n_trials; ++t) {
        const auto f = random_plane_signal(sys, rng);
        const std::string where = "trial " + std::to_string(t);
        observe(iso, sl2_isometry(sys, f).relative_error, where);
        double dev = 0.0;
        const auto l = sys.lattice_point(1, -1);
        const auto xi = sys.dual_lattice_point(-1, 2);
        for (std::size_t s = 0; s < sys.sigma_set().size(); ++s)
            for (std::size_t i = 0; i < N; i += std::max<std::size_t>(1, N / 4))
                for (std::size_t j = 0; j < N; j += std::max<std::size_t>(1, N / 4)) {
                    const auto x = sys.x_point(i, j);
                    const auto w = sys.w_point(j, i);
                    const auto base = sl2_zak(sys, f, s, x, w);
                    dev = std::max(dev, std::abs(sl2_zak(sys, f, s, {x[0] + l[0], x[1] + l[1]}, w) -
                                                 std::conj(sl2_pairing(l, w)) * base));
                    dev = std::max(dev, std::abs(sl2_zak(sys, f, s, x, {w[0] + xi[0], w[1] + xi[1]}) - base));
                }
        observe(shift, dev, where);
    }
    out.push_back(std::move(iso));
    out.push_back(std::move(shift));
    return out;
}

bool all_gating_passed(const std::vector<IdentityCheck> &checks) {
    return std::all_of(checks.begin(), checks.end(), [](const auto &c) { return !c.gating || c.passed(); });
}

} // namespace tauzak::cli

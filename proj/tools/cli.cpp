#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "suite.hpp"

namespace tauzak::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr double kNormTolerance = 1e-9;

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

std::string moduli_text(std::span<const std::int64_t> moduli) {
    std::string s = "[";
    for (std::size_t i = 0; i < moduli.size(); ++i) s += (i ? ", " : "") + std::to_string(moduli[i]);
    return s + "]";
}

std::vector<std::int64_t> moduli_vector(const FiniteAbelianGroup &K) {
    const auto m = K.moduli();
    return {m.begin(), m.end()};
}

/// Labels like "-2" or "h3" become file-name safe.
std::string file_safe(const std::string &label) {
    std::string s = label;
    for (auto &c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_')) c = '_';
    return s;
}

double norm_gap(double output, double input) {
    const double gap = std::abs(output - input);
    return input > 0.0 ? gap / input : gap;
}

struct Options {
    std::string system_path;
    std::string signal_path;
    std::string out_dir;
    std::uint64_t seed = 1;
    std::size_t trials = 100;
    double tol = 1e-9;

    // showcase parameters
    std::int64_t N = 8;
    std::int64_t M = 12, n = 2, m = 4;
    double alpha = 1.0, beta = 2.0;
    std::size_t samples = 16;
};

void prepare_out_dir(const std::string &dir) {
    if (dir.empty()) return;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw InputError("cannot create output directory " + dir);
}

void write_manifest(const std::string &dir, const json &manifest) {
    write_text_file(fs::path(dir) / "manifest.json", manifest.dump(2) + "\n");
}

// ---------------------------------------------------------------- group-info

struct InvarianceInput {
    ActingGroup H;
    Subgroup L;
};

InvarianceInput invariance_input(const SystemDescriptor &d) {
    switch (d.kind) {
    case SystemDescriptor::Kind::heisenberg: {
        auto gens = d.L_generators;
        if (gens.empty()) gens = {GroupElement{{2 % d.N, 0}}, GroupElement{{0, 2 % d.N}}};
        const auto H = heisenberg_system(d.N, std::vector<GroupElement>{})->acting_group();
        return {H, subgroup_from_generators(FiniteAbelianGroup({d.N, d.N}), gens)};
    }
    case SystemDescriptor::Kind::torus: {
        if (d.n <= 0 || d.m <= 0 || d.M % d.n != 0 || d.M % d.m != 0)
            throw InputError("torus: n and m must divide M");
        const auto H = torus_system(d.M, 1, 1, d.ell_min, d.ell_max).system->acting_group();
        const std::vector<GroupElement> gens{GroupElement{{d.M / d.n, 0}}, GroupElement{{0, d.M / d.m}}};
        return {H, subgroup_from_generators(FiniteAbelianGroup({d.M, d.M}), gens)};
    }
    default:
        return {build_acting_group(d), subgroup_from_generators(d.group, d.L_generators)};
    }
}

int cmd_group_info(const Options &o, std::ostream &out) {
    const auto d = load_system_descriptor(o.system_path);
    out << "model: " << d.model_name() << "\n";
    if (d.kind == SystemDescriptor::Kind::sl2) {
        out << "K: R^2 sampled at " << d.samples << " x " << d.samples << " midpoints per cell\n";
        out << "L: " << d.alpha << "Z x " << d.beta << "Z\n";
        out << "L_perp: " << 1.0 / d.alpha << "Z x " << 1.0 / d.beta << "Z\n";
        out << "|H| = " << d.sigma_set.size() << "\n";
        for (const auto &s : d.sigma_set) out << "  sigma = " << to_string(s) << "\n";
        try {
            sl2_system(d.sigma_set, d.alpha, d.beta, d.samples, d.support_radius);
            out << "verdict: τ-invariant\n";
        } catch (const PreconditionError &e) {
            out << "verdict: not τ-invariant\nwitness: " << e.what() << "\n";
        }
        return exit_success;
    }
    const auto [H, L] = invariance_input(d);
    const auto &K = L.parent();
    const auto Lperp = annihilator(L);
    out << "moduli: " << moduli_text(K.moduli()) << "\n";
    out << "|K| = " << K.order() << "\n";
    out << "|L| = " << L.order() << "\n";
    out << "L generators:";
    for (const auto &g : L.canonical_generators()) out << " " << to_string(g);
    out << "\n";
    out << "|L_perp| = " << Lperp.order() << "\n";
    out << "K/L transversal size = " << L.transversal().size() << "\n";
    out << "K^/L_perp transversal size = " << Lperp.transversal().size() << "\n";
    out << "|H| = " << H.size() << (H.is_closed() ? " (closed)" : " (window, not closed)") << "\n";
    const auto autos = H.automorphisms();
    if (const auto v = find_invariance_violation(L, autos)) {
        out << "verdict: not τ-invariant\n";
        out << "witness: tau_" << H[v->automorphism_index].label << to_string(v->generator) << " = "
            << to_string(v->image) << " is not in L\n";
    } else {
        out << "verdict: τ-invariant\n";
    }
    return exit_success;
}

// ----------------------------------------------------------------- zak, tau-zak

BuiltSystem load_finite(const SystemDescriptor &d, const char *command) {
    if (d.kind == SystemDescriptor::Kind::sl2)
        throw InputError(std::string(command) + " needs a finite system; the sl2 model is handled by showcase sl2");
    return build_system(d);
}

json base_manifest(const char *command, const SystemDescriptor &d, const SemidirectSystem &sys, const Options &o) {
    json j;
    j["command"] = command;
    j["model"] = d.model_name();
    j["moduli"] = moduli_vector(sys.group());
    j["lattice_order"] = sys.lattice().order();
    j["signal"] = o.signal_path.empty() ? json("random") : json(fs::path(o.signal_path).filename().string());
    j["seed"] = o.seed;
    return j;
}

int cmd_zak(const Options &o, std::ostream &out, std::ostream &err) {
    const auto d = load_system_descriptor(o.system_path);
    const auto built = load_finite(d, "zak");
    const auto &sys = *built.system;
    Signal v;
    if (o.signal_path.empty()) {
        PortableRng rng(o.seed);
        v = random_signal(sys.group(), rng);
    } else {
        v = parse_signal(read_text_file(o.signal_path));
        if (!(v.group() == sys.group()))
            throw InputError("dimension mismatch: signal moduli " + moduli_text(v.group().moduli()) +
                             " but the system has " + moduli_text(sys.group().moduli()));
    }
    const auto Z = zak(v, sys.zak_domain());
    write_text_file(fs::path(o.out_dir) / "zak.csv", zak_to_csv(Z));

    const double in = v.norm(), outn = Z.norm(), gap = norm_gap(outn, in);
    auto manifest = base_manifest("zak", d, sys, o);
    manifest["files"] = json::array({"zak.csv"});
    manifest["norm_input"] = in;
    manifest["norm_output"] = outn;
    manifest["norm_deviation"] = gap;
    manifest["norms_agree"] = gap <= kNormTolerance;
    write_manifest(o.out_dir, manifest);

    out << "zak: |K| = " << sys.group().order() << ", |L| = " << sys.lattice().order() << "\n";
    out << "norm in = " << sci(in) << ", norm out = " << sci(outn) << ", deviation = " << sci(gap) << "\n";
    if (gap > kNormTolerance) {
        err << "zak: norms disagree beyond " << sci(kNormTolerance) << "\n";
        return exit_verification_failure;
    }
    return exit_success;
}

int cmd_tau_zak(const Options &o, std::ostream &out, std::ostream &err) {
    const auto d = load_system_descriptor(o.system_path);
    const auto built = load_finite(d, "tau-zak");
    const auto &sys = *built.system;
    const auto &H = sys.acting_group();
    SemidirectSignal f;
    if (o.signal_path.empty()) {
        PortableRng rng(o.seed);
        f = random_semidirect_signal(built.system, rng);
    } else {
        f = parse_semidirect_signal(read_text_file(o.signal_path), built.system);
    }
    const auto F = tau_zak(f);

    json slices = json::array();
    for (const auto &[h, Z] : F.slices()) {
        const auto file = "slice_" + file_safe(H[h].label) + ".csv";
        write_text_file(fs::path(o.out_dir) / file, zak_to_csv(Z));
        json s;
        s["h"] = H[h].label;
        s["file"] = file;
        s["delta_K"] = to_string(sys.delta_K(h));
        s["delta_L"] = to_string(sys.delta_L(h));
        s["norm"] = Z.norm();
        slices.push_back(std::move(s));
    }
    const double in = f.norm(), outn = F.norm(), gap = norm_gap(outn, in);
    auto manifest = base_manifest("tau-zak", d, sys, o);
    manifest["acting_group_order"] = H.size();
    manifest["slices"] = std::move(slices);
    manifest["norm_input"] = in;
    manifest["norm_output"] = outn;
    manifest["norm_deviation"] = gap;
    manifest["norms_agree"] = gap <= kNormTolerance;
    write_manifest(o.out_dir, manifest);

    out << "tau-zak: |H| = " << H.size() << ", " << F.slices().size() << " supported slices\n";
    out << "norm in = " << sci(in) << ", norm out = " << sci(outn) << ", deviation = " << sci(gap) << "\n";
    if (gap > kNormTolerance) {
        err << "tau-zak: norms disagree beyond " << sci(kNormTolerance) << "\n";
        return exit_verification_failure;
    }
    return exit_success;
}

// ----------------------------------------------------------------------- verify

json checks_json(const std::vector<IdentityCheck> &checks) {
    json a = json::array();
    for (const auto &c : checks) {
        json j;
        j["name"] = c.name;
        j["statement"] = c.statement;
        j["max_deviation"] = c.max_deviation;
        j["tolerance"] = c.tolerance;
        j["cases"] = c.cases;
        j["gating"] = c.gating;
        j["passed"] = c.passed();
        if (!c.witness.empty()) j["witness"] = c.witness;
        a.push_back(std::move(j));
    }
    return a;
}

int report(const std::vector<IdentityCheck> &checks, const Options &o, json manifest, std::ostream &out) {
    std::size_t width = 0;
    for (const auto &c : checks) width = std::max(width, c.name.size());
    std::size_t passed = 0, gating = 0;
    for (const auto &c : checks) {
        const char *tag = !c.gating ? "INFO" : (c.passed() ? "PASS" : "FAIL");
        if (c.gating) {
            ++gating;
            passed += c.passed() ? 1 : 0;
        }
        out << tag << "  " << c.name << std::string(width - c.name.size() + 2, ' ') << "max_dev=" << sci(c.max_deviation)
            << "  tol=" << sci(c.tolerance) << "  cases=" << c.cases << "  " << c.statement << "\n";
        if (!c.witness.empty() && (!c.passed() || !c.gating)) out << "      at " << c.witness << "\n";
    }
    const bool ok = all_gating_passed(checks);
    out << "result: " << (ok ? "PASS" : "FAIL") << " (" << passed << "/" << gating << " gating identities)\n";
    if (!o.out_dir.empty()) {
        manifest["seed"] = o.seed;
        manifest["trials"] = o.trials;
        manifest["tolerance"] = o.tol;
        manifest["checks"] = checks_json(checks);
        manifest["passed"] = ok;
        write_manifest(o.out_dir, manifest);
    }
    return ok ? exit_success : exit_verification_failure;
}

SuiteOptions suite_options(const Options &o) {
    SuiteOptions s;
    s.seed = o.seed;
    s.trials = o.trials;
    s.tolerance = o.tol;
    return s;
}

int verify_descriptor(const SystemDescriptor &d, const Options &o, const char *command, std::ostream &out,
                      json manifest = json::object()) {
    const auto built = build_system(d);
    manifest["command"] = command;
    manifest["model"] = d.model_name();
    if (built.plane) {
        const auto &p = *built.plane;
        out << "system: sl2, |H| = " << p.sigma_set().size() << ", alpha = " << p.alpha() << ", beta = " << p.beta()
            << ", samples = " << p.samples() << ", seed = " << o.seed << "\n";
        return report(run_plane_suite(p, suite_options(o)), o, std::move(manifest), out);
    }
    const auto &sys = *built.system;
    out << "system: " << d.model_name() << ", moduli = " << moduli_text(sys.group().moduli())
        << ", |H| = " << sys.acting_group().size() << ", |L| = " << sys.lattice().order() << ", seed = " << o.seed
        << ", trials = " << o.trials << "\n";
    manifest["moduli"] = moduli_vector(sys.group());
    return report(run_finite_suite(built, d, suite_options(o)), o, std::move(manifest), out);
}

int cmd_verify(const Options &o, std::ostream &out) {
    return verify_descriptor(load_system_descriptor(o.system_path), o, "verify", out);
}

// --------------------------------------------------------------------- showcase

int showcase_heisenberg(const Options &o, std::ostream &out) {
    SystemDescriptor d;
    d.kind = SystemDescriptor::Kind::heisenberg;
    d.N = o.N;
    if (!o.out_dir.empty()) {
        const auto built = build_system(d);
        const auto &sys = *built.system;
        std::string csv = "s,k,n,k_s,n_s,closed_k,closed_n\n";
        for (std::size_t h = 0; h < sys.acting_group().size(); ++h)
            for (const auto &w : sys.group().characters()) {
                const auto a = dual_action(sys, h, w);
                const auto b = heisenberg_dual_closed_form(d.N, static_cast<std::int64_t>(h), w);
                csv += std::to_string(h) + "," + std::to_string(w.residues[0]) + "," + std::to_string(w.residues[1]) +
                       "," + std::to_string(a.residues[0]) + "," + std::to_string(a.residues[1]) + "," +
                       std::to_string(b.residues[0]) + "," + std::to_string(b.residues[1]) + "\n";
            }
        write_text_file(fs::path(o.out_dir) / "dual_action.csv", csv);
    }
    json manifest;
    manifest["N"] = d.N;
    manifest["files"] = o.out_dir.empty() ? json::array() : json::array({"dual_action.csv"});
    return verify_descriptor(d, o, "showcase heisenberg", out, std::move(manifest));
}

int showcase_torus(const Options &o, std::ostream &out) {
    SystemDescriptor d;
    d.kind = SystemDescriptor::Kind::torus;
    d.M = o.M;
    d.n = o.n;
    d.m = o.m;
    json manifest;
    manifest["M"] = d.M;
    manifest["n"] = d.n;
    manifest["m"] = d.m;
    if (!o.out_dir.empty()) {
        const auto built = build_system(d);
        const auto &model = *built.torus;
        const auto &sys = *model.system;
        PortableRng rng(o.seed);
        const auto f = random_semidirect_signal(model.system, rng);
        const auto F = tau_zak(f);
        std::string csv = "ell,a,b,p,q,explicit,generic\n";
        for (const auto &[h, Z] : F.slices())
            for (const auto &k : sys.coset_representatives())
                for (std::int64_t p = 0; p < model.n; ++p)
                    for (std::int64_t q = 0; q < model.m; ++q) {
                        const auto ell = model.ell_at(h);
                        csv += std::to_string(ell) + "," + std::to_string(k.residues[0]) + "," +
                               std::to_string(k.residues[1]) + "," + std::to_string(p) + "," + std::to_string(q) + "," +
                               format_complex(torus_explicit_zak(model, f, ell, k.residues[0], k.residues[1], p, q)) + "," +
                               format_complex(F.value(h, k, Character{{p, q}})) + "\n";
                    }
        write_text_file(fs::path(o.out_dir) / "torus_explicit.csv", csv);
        const auto chain = torus_plancherel(model, f);
        manifest["plancherel"] = {{"explicit_side", chain.explicit_side},
                                  {"transform_side", chain.transform_side},
                                  {"signal_side", chain.signal_side}};
        manifest["files"] = json::array({"torus_explicit.csv"});
    }
    return verify_descriptor(d, o, "showcase torus", out, std::move(manifest));
}

int showcase_sl2(const Options &o, std::ostream &out) {
    SystemDescriptor d;
    d.kind = SystemDescriptor::Kind::sl2;
    d.alpha = o.alpha;
    d.beta = o.beta;
    d.samples = o.samples;
    d.sigma_set = {Matrix2{}, Matrix2{1, 1, 0, 1}};
    json manifest;
    manifest["alpha"] = d.alpha;
    manifest["beta"] = d.beta;
    manifest["samples"] = d.samples;
    if (!o.out_dir.empty()) {
        const auto sys = sl2_system(d.sigma_set, d.alpha, d.beta, d.samples, d.support_radius);
        PortableRng rng(o.seed);
        const auto f = random_plane_signal(sys, rng);
        std::string csv = "samples,zak_side,signal_side,relative_error\n";
        for (const auto s : {d.samples / 2, d.samples, 2 * d.samples}) {
            if (s == 0) continue;
            const auto iso = sl2_isometry(sys.with_samples(s), f);
            char line[160];
            std::snprintf(line, sizeof line, "%zu,%.17g,%.17g,%.17g\n", s, iso.zak_side, iso.signal_side,
                          iso.relative_error);
            csv += line;
        }
        write_text_file(fs::path(o.out_dir) / "sl2_convergence.csv", csv);
        manifest["files"] = json::array({"sl2_convergence.csv"});
    }
    return verify_descriptor(d, o, "showcase sl2", out, std::move(manifest));
}

// ------------------------------------------------------------------------ setup

void add_system(CLI::App *app, Options &o) {
    app->add_option("--system", o.system_path, "system descriptor JSON")->required()->check(CLI::ExistingFile);
}

void add_trials(CLI::App *app, Options &o) {
    app->add_option("--seed", o.seed, "seed for random trials");
    app->add_option("--trials", o.trials, "random trials per identity")->check(CLI::PositiveNumber);
    app->add_option("--tol", o.tol, "tolerance for exact identities")->check(CLI::PositiveNumber);
    app->add_option("--out", o.out_dir, "directory for the JSON manifest and CSV tables");
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    Options o;
    CLI::App app{"tau-Zak transforms on finite and sampled semidirect products", "tauzak"};
    app.require_subcommand(1);

    auto *info = app.add_subcommand("group-info", "describe K, L, L-perp, transversals and tau-invariance");
    add_system(info, o);

    auto *zak_cmd = app.add_subcommand("zak", "classical Zak transform of a signal on K");
    auto *tau_cmd = app.add_subcommand("tau-zak", "tau-Zak transform of a signal on H x K");
    for (auto *c : {zak_cmd, tau_cmd}) {
        add_system(c, o);
        c->add_option("--signal", o.signal_path, "signal JSON; a seeded random signal when absent")
            ->check(CLI::ExistingFile);
        c->add_option("--seed", o.seed, "seed for the random signal");
        c->add_option("--out", o.out_dir, "output directory")->required();
    }

    auto *verify = app.add_subcommand("verify", "run the identity suite on a system");
    add_system(verify, o);
    add_trials(verify, o);

    auto *showcase = app.add_subcommand("showcase", "explicit-formula checks on the three model systems");
    showcase->require_subcommand(1);
    auto *heis = showcase->add_subcommand("heisenberg", "finite Weyl-Heisenberg group at level N");
    heis->add_option("--N", o.N, "level")->check(CLI::Range(std::int64_t{1}, std::int64_t{64}));
    auto *torus = showcase->add_subcommand("torus", "Z acting on the sampled torus Z_M x Z_M");
    torus->add_option("--M", o.M, "samples per circle");
    torus->add_option("--n", o.n, "first lattice divisor");
    torus->add_option("--m", o.m, "second lattice divisor");
    auto *sl2 = showcase->add_subcommand("sl2", "SL(2, Z) acting on sampled R^2");
    sl2->add_option("--alpha", o.alpha, "first lattice spacing")->check(CLI::PositiveNumber);
    sl2->add_option("--beta", o.beta, "second lattice spacing")->check(CLI::PositiveNumber);
    sl2->add_option("--samples", o.samples, "samples per axis")->check(CLI::PositiveNumber);
    for (auto *c : {heis, torus, sl2}) add_trials(c, o);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_success : exit_input_error;
    }

    try {
        prepare_out_dir(o.out_dir);
        if (*info) return cmd_group_info(o, out);
        if (*zak_cmd) return cmd_zak(o, out, err);
        if (*tau_cmd) return cmd_tau_zak(o, out, err);
        if (*verify) return cmd_verify(o, out);
        if (*heis) return showcase_heisenberg(o, out);
        if (*torus) return showcase_torus(o, out);
        if (*sl2) return showcase_sl2(o, out);
    } catch (const InputError &e) {
        err << "input error: " << e.what() << "\n";
    } catch (const PreconditionError &e) {
        err << "precondition failed: " << e.what() << "\n";
    } catch (const StructuralError &e) {
        err << "invalid system: " << e.what() << "\n";
    } catch (const fs::filesystem_error &e) {
        err << "file error: " << e.what() << "\n";
    }
    return exit_input_error;
}

} // namespace tauzak::cli

#include "tauzak/tau_zak.hpp"

#include <algorithm>
#include <cmath>

namespace tauzak {

SemidirectSignal::SemidirectSignal(SystemPtr system) : system_(std::move(system)) {
    if (!system_) throw StructuralError("SemidirectSignal: missing system");
}

void SemidirectSignal::set_slice(std::size_t h, Signal f_h) {
    system_->check_h(h);
    if (!(f_h.group() == system_->group()) || f_h.domain() != Domain::primal)
        throw StructuralError("SemidirectSignal: slice does not live on the system's K");
    slices_.insert_or_assign(h, std::move(f_h));
}

Signal SemidirectSignal::slice(std::size_t h) const {
    system_->check_h(h);
    const auto it = slices_.find(h);
    return it == slices_.end() ? Signal::zeros(system_->group()) : it->second;
}

Complex SemidirectSignal::value(std::size_t h, const GroupElement &k) const {
    system_->check_h(h);
    const auto it = slices_.find(h);
    if (it == slices_.end()) return 0.0;
    return it->second.at(k.residues);
}

double SemidirectSignal::norm_squared() const {
    double acc = 0.0;
    for (const auto &[h, s] : slices_) acc += system_->delta_K(h).value() * s.norm_squared();
    return acc;
}

double SemidirectSignal::norm() const { return std::sqrt(norm_squared()); }

TauZakField::TauZakField(SystemPtr system) : system_(std::move(system)) {
    if (!system_) throw StructuralError("TauZakField: missing system");
}

void TauZakField::set_slice(std::size_t h, ZakArray Z) {
    system_->check_h(h);
    if (!(Z.domain().lattice() == system_->lattice()))
        throw StructuralError("TauZakField: slice has the wrong (K, L) shape");
    slices_.insert_or_assign(h, std::move(Z));
}

Complex TauZakField::value(std::size_t h, const GroupElement &k, const Character &omega) const {
    system_->check_h(h);
    const auto it = slices_.find(h);
    if (it == slices_.end()) return 0.0;
    return quasi_periodic_extension(it->second, k, omega);
}

double TauZakField::norm_squared() const {
    double acc = 0.0;
    for (const auto &[h, Z] : slices_) acc += Z.norm_squared();
    return acc;
}

double TauZakField::norm() const { return std::sqrt(norm_squared()); }

TauZakField tau_zak(const SemidirectSignal &f) {
    const auto &sys = f.system();
    const auto &domain = sys.zak_domain();
    TauZakField F(f.system_ptr());
    const auto rows = domain->row_count();
    const auto cols = domain->column_count();
    for (const auto &[h, f_h] : f.slices()) {
        const auto Z = zak(f_h, domain);
        const double scale = sys.delta_K(h).sqrt_value();
        const auto &tau = sys.tau(h);
        std::vector<Character> acted_columns;
        acted_columns.reserve(cols);
        for (const auto &omega : domain->columns()) acted_columns.push_back(tau.apply_dual(omega));
        std::vector<Complex> values(rows * cols);
        for (std::size_t r = 0; r < rows; ++r) {
            const auto k_h = tau.apply(domain->rows()[r]);
            for (std::size_t c = 0; c < cols; ++c)
                values[r * cols + c] = scale * quasi_periodic_extension(Z, k_h, acted_columns[c]);
        }
        F.set_slice(h, ZakArray(domain, std::move(values)));
    }
    return F;
}

Complex tau_zak_direct(const SemidirectSignal &f, std::size_t h, const GroupElement &k,
                       const Character &omega) {
    const auto &sys = f.system();
    const auto &K = sys.group();
    const auto k_h = sys.tau(h).apply(K.make<GroupElement>(k.residues));
    const auto omega_h = sys.tau(h).apply_dual(K.make<Character>(omega.residues));
    Complex acc = 0.0;
    for (const auto &l : sys.lattice().elements()) acc += f.value(h, K.add(k_h, l)) * pair(K, l, omega_h);
    return sys.delta_K(h).sqrt_value() * acc;
}

SemidirectSignal tensor(const SystemPtr &system, const std::map<std::size_t, Complex> &u, const Signal &v) {
    SemidirectSignal out(system);
    for (const auto &[h, uh] : u) {
        const double scale = 1.0 / system->delta_K(h).sqrt_value();
        out.set_slice(h, (scale * uh) * v);
    }
    return out;
}

namespace {

void check_same_system(const SemidirectSystem &a, const SemidirectSystem &b) {
    if (&a != &b) throw StructuralError("objects belong to different semidirect systems");
}

} // namespace

Complex inner(const SemidirectSignal &f, const SemidirectSignal &g) {
    check_same_system(f.system(), g.system());
    Complex acc = 0.0;
    for (const auto &[h, fh] : f.slices()) {
        const auto it = g.slices().find(h);
        if (it == g.slices().end()) continue;
        acc += f.system().delta_K(h).value() * inner(fh, it->second);
    }
    return acc;
}

Complex inner_zak(const TauZakField &F, const TauZakField &G) {
    check_same_system(F.system(), G.system());
    Complex acc = 0.0;
    for (const auto &[h, Fh] : F.slices()) {
        const auto it = G.slices().find(h);
        if (it == G.slices().end()) continue;
        acc += inner(Fh, it->second);
    }
    return acc;
}

SemidirectSignal operator+(const SemidirectSignal &a, const SemidirectSignal &b) {
    check_same_system(a.system(), b.system());
    auto out = a;
    for (const auto &[h, s] : b.slices()) {
        const auto it = a.slices().find(h);
        out.set_slice(h, it == a.slices().end() ? s : it->second + s);
    }
    return out;
}

SemidirectSignal operator*(Complex c, const SemidirectSignal &a) {
    SemidirectSignal out(a.system_ptr());
    for (const auto &[h, s] : a.slices()) out.set_slice(h, c * s);
    return out;
}

double max_abs_diff(const TauZakField &a, const TauZakField &b) {
    check_same_system(a.system(), b.system());
    const auto &sys = a.system();
    double m = 0.0;
    for (std::size_t h = 0; h < sys.acting_group().size(); ++h) {
        const bool in_a = a.slices().contains(h), in_b = b.slices().contains(h);
        if (!in_a && !in_b) continue;
        for (const auto &k : sys.coset_representatives())
            for (const auto &w : sys.dual_representatives())
                m = std::max(m, std::abs(a.value(h, k, w) - b.value(h, k, w)));
    }
    return m;
}

QuasiPeriodicityReport verify_quasi_periodicity(const TauZakField &F, const SemidirectSignal &f) {
    check_same_system(F.system(), f.system());
    const auto &sys = f.system();
    const auto &K = sys.group();
    QuasiPeriodicityReport rep;
    for (const auto &[h, Z] : F.slices()) {
        const auto &tau = sys.tau(h);
        const auto tau_inv = tau.inverse();
        for (const auto &k : sys.coset_representatives()) {
            for (const auto &omega : sys.dual_representatives()) {
                const auto base = F.value(h, k, omega);
                const auto omega_h = tau.apply_dual(omega);
                for (const auto &l : sys.lattice().elements()) {
                    const auto shifted = tau_zak_direct(f, h, K.add(k, l), omega);
                    rep.shift_phase_at_acted_character =
                        std::max(rep.shift_phase_at_acted_character,
                                 std::abs(shifted - std::conj(pair(K, l, omega_h)) * base));
                    rep.shift_phase_at_character =
                        std::max(rep.shift_phase_at_character,
                                 std::abs(shifted - std::conj(pair(K, l, omega)) * base));
                    const auto twisted = tau_zak_direct(f, h, K.add(k, tau_inv.apply(l)), omega);
                    rep.shift_in_acted_coordinate =
                        std::max(rep.shift_in_acted_coordinate,
                                 std::abs(twisted - std::conj(pair(K, l, omega_h)) * base));
                    ++rep.cases;
                }
                for (const auto &xi : sys.annihilator().elements()) {
                    const auto moved = tau_zak_direct(f, h, k, K.add(omega, xi));
                    rep.annihilator_shift = std::max(rep.annihilator_shift, std::abs(moved - base));
                    ++rep.cases;
                }
            }
        }
    }
    return rep;
}

namespace detail {

SemidirectSignal inverse_tau_zak(const TauZakField &F, const SystemPtr &system) {
    // Undo the (k, omega) -> (k^h, omega_h) twist through the inverse action,
    // then invert the classical transform slice by slice.
    SemidirectSignal f(system);
    const auto &domain = system->zak_domain();
    const auto rows = domain->row_count();
    const auto cols = domain->column_count();
    for (const auto &[h, Zh] : F.slices()) {
        const auto inv = system->tau(h).inverse();
        const double scale = 1.0 / system->delta_K(h).sqrt_value();
        std::vector<Complex> values(rows * cols);
        for (std::size_t r = 0; r < rows; ++r) {
            const auto k = inv.apply(domain->rows()[r]);
            for (std::size_t c = 0; c < cols; ++c) {
                const auto omega = inv.apply_dual(domain->columns()[c]);
                values[r * cols + c] = scale * quasi_periodic_extension(Zh, k, omega);
            }
        }
        f.set_slice(h, inverse_zak(ZakArray(domain, std::move(values))));
    }
    return f;
}

} // namespace detail

} // namespace tauzak

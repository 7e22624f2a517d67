#include "tauzak/semidirect.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

namespace tauzak {

// ---------------------------------------------------------------------------
// Rational

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw StructuralError("Rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    if (num <= 0) throw StructuralError("Rational: Haar moduli must be positive");
    const auto g = std::gcd(num, den);
    num /= g;
    den /= g;
}

namespace {

std::optional<std::int64_t> exact_isqrt(std::int64_t v) {
    auto r = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(v))));
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    if (r * r == v) return r;
    return std::nullopt;
}

} // namespace

double Rational::sqrt_value() const {
    const auto a = exact_isqrt(num);
    const auto b = exact_isqrt(den);
    if (a && b) return static_cast<double>(*a) / static_cast<double>(*b);
    return std::sqrt(value());
}

Rational operator*(const Rational &a, const Rational &b) { return {a.num * b.num, a.den * b.den}; }

std::string to_string(const Rational &r) {
    if (r.den == 1) return std::to_string(r.num);
    return std::to_string(r.num) + "/" + std::to_string(r.den);
}

// ---------------------------------------------------------------------------
// ActingGroup

ActingGroup ActingGroup::generate(const FiniteAbelianGroup &K, std::span<const Automorphism> gens,
                                  std::size_t cap) {
    for (const auto &g : gens)
        if (!(g.parent() == K)) throw StructuralError("ActingGroup: generator acts on another group");
    std::vector<Automorphism> elems{Automorphism::identity(K)};
    std::map<std::vector<std::int64_t>, std::size_t> index{{elems[0].matrix().data, 0}};
    for (std::size_t i = 0; i < elems.size(); ++i) {
        for (const auto &g : gens) {
            auto next = elems[i].compose(g);
            if (index.contains(next.matrix().data)) continue;
            if (elems.size() >= cap)
                throw StructuralError("ActingGroup: closure exceeds the cap of " + std::to_string(cap) +
                                      " elements");
            index.emplace(next.matrix().data, elems.size());
            elems.push_back(std::move(next));
        }
    }
    const auto n = elems.size();
    std::vector<std::optional<std::size_t>> table(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) table[i * n + j] = index.at(elems[i].compose(elems[j]).matrix().data);
    std::vector<ActingElement> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back({"h" + std::to_string(i), std::move(elems[i])});
    return from_table(std::move(out), std::move(table));
}

ActingGroup ActingGroup::from_table(std::vector<ActingElement> elements,
                                    std::vector<std::optional<std::size_t>> table) {
    ActingGroup g;
    g.elements_ = std::move(elements);
    g.table_ = std::move(table);
    g.validate();
    return g;
}

ActingGroup ActingGroup::integer_window(const Automorphism &gen, std::int64_t lo, std::int64_t hi) {
    if (lo > 0 || hi < 0) throw StructuralError("integer_window: window must contain 0");
    const auto n = static_cast<std::size_t>(hi - lo + 1);
    std::vector<ActingElement> elems;
    elems.reserve(n);
    const auto K = gen.parent();
    const auto inv = gen.inverse();
    for (std::int64_t l = lo; l <= hi; ++l) {
        auto A = Automorphism::identity(K);
        const auto &step = l >= 0 ? gen : inv;
        for (std::int64_t t = 0; t < std::llabs(l); ++t) A = step.compose(A);
        elems.push_back({std::to_string(l), std::move(A)});
    }
    std::vector<std::optional<std::size_t>> table(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto s = static_cast<std::int64_t>(i + j) + 2 * lo;
            if (s >= lo && s <= hi) table[i * n + j] = static_cast<std::size_t>(s - lo);
        }
    return from_table(std::move(elems), std::move(table));
}

ActingGroup ActingGroup::trivial(const FiniteAbelianGroup &K) {
    std::vector<ActingElement> e{{"e", Automorphism::identity(K)}};
    return from_table(std::move(e), {std::size_t{0}});
}

void ActingGroup::validate() {
    const auto n = elements_.size();
    if (n == 0) throw StructuralError("ActingGroup: no elements");
    if (table_.size() != n * n) throw StructuralError("ActingGroup: table must be n x n");
    const auto &K = elements_[0].tau.parent();
    for (const auto &e : elements_)
        if (!(e.tau.parent() == K)) throw StructuralError("ActingGroup: elements act on different groups");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto &p = table_[i * n + j];
            if (!p) continue;
            if (*p >= n) throw StructuralError("ActingGroup: table entry out of range");
            if (!(elements_[*p].tau == elements_[i].tau.compose(elements_[j].tau)))
                throw StructuralError("ActingGroup: table entry " + elements_[i].label + "*" +
                                      elements_[j].label + " disagrees with composition");
        }
    std::optional<std::size_t> id;
    for (std::size_t e = 0; e < n && !id; ++e) {
        if (!elements_[e].tau.is_identity()) continue;
        bool ok = true;
        for (std::size_t j = 0; j < n && ok; ++j)
            ok = table_[e * n + j] == j && table_[j * n + e] == j;
        if (ok) id = e;
    }
    if (!id) throw StructuralError("ActingGroup: no identity element");
    identity_ = *id;
    inverse_.assign(n, std::nullopt);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (table_[i * n + j] == identity_ && table_[j * n + i] == identity_) {
                inverse_[i] = j;
                break;
            }
}

std::optional<std::size_t> ActingGroup::product(std::size_t i, std::size_t j) const {
    if (i >= size() || j >= size()) throw StructuralError("ActingGroup: index out of range");
    return table_[i * size() + j];
}

std::optional<std::size_t> ActingGroup::inverse(std::size_t i) const {
    if (i >= size()) throw StructuralError("ActingGroup: index out of range");
    return inverse_[i];
}

std::optional<std::size_t> ActingGroup::find(const std::string &label) const {
    for (std::size_t i = 0; i < size(); ++i)
        if (elements_[i].label == label) return i;
    return std::nullopt;
}

bool ActingGroup::is_closed() const {
    return std::all_of(table_.begin(), table_.end(), [](const auto &p) { return p.has_value(); });
}

std::vector<Automorphism> ActingGroup::automorphisms() const {
    std::vector<Automorphism> out;
    out.reserve(size());
    for (const auto &e : elements_) out.push_back(e.tau);
    return out;
}

ActingGroup ActingGroup::with_deltas(std::size_t h, Rational delta_K, Rational delta_L) const {
    auto copy = *this;
    copy.elements_.at(h).delta_K = delta_K;
    copy.elements_.at(h).delta_L = delta_L;
    return copy;
}

// ---------------------------------------------------------------------------
// SemidirectSystem

SemidirectSystem::SemidirectSystem(ActingGroup H, Subgroup L) : H_(std::move(H)) {
    for (const auto &e : H_.elements())
        if (!(e.tau.parent() == L.parent()))
            throw StructuralError("SemidirectSystem: H acts on a different group than L's parent");
    const auto autos = H_.automorphisms();
    if (const auto v = find_invariance_violation(L, autos)) {
        throw PreconditionError("SemidirectSystem: L is not tau-invariant: tau_" +
                                H_[v->automorphism_index].label + to_string(v->generator) + " = " +
                                to_string(v->image) + " is not in L");
    }
    domain_ = ZakDomain::make(L);
}

void SemidirectSystem::check_h(std::size_t h) const {
    if (h >= H_.size())
        throw StructuralError("H index " + std::to_string(h) + " out of range (|H| = " +
                              std::to_string(H_.size()) + ")");
}

Rational SemidirectSystem::measured_delta_K(std::size_t h) const {
    check_h(h);
    const auto &K = group();
    std::vector<bool> hit(K.order(), false);
    std::size_t distinct = 0;
    for (std::size_t i = 0; i < K.order(); ++i) {
        const auto j = K.index_of(tau(h).apply(K.element(i)).residues);
        if (!hit[j]) {
            hit[j] = true;
            ++distinct;
        }
    }
    return {static_cast<std::int64_t>(distinct), static_cast<std::int64_t>(K.order())};
}

Rational SemidirectSystem::measured_delta_L(std::size_t h) const {
    check_h(h);
    const auto &K = group();
    std::set<std::size_t> image;
    for (const auto &l : lattice().elements()) image.insert(K.index_of(tau(h).apply(l).residues));
    return {static_cast<std::int64_t>(image.size()), static_cast<std::int64_t>(lattice().order())};
}

// ---------------------------------------------------------------------------
// group law and actions

SdElement sd_identity(const SemidirectSystem &sys) {
    return {sys.acting_group().identity(), sys.group().zero<GroupElement>()};
}

SdElement sd_multiply(const SemidirectSystem &sys, const SdElement &a, const SdElement &b) {
    sys.check_h(a.h);
    sys.check_h(b.h);
    const auto hh = sys.acting_group().product(a.h, b.h);
    if (!hh)
        throw StructuralError("sd_multiply: product " + sys.acting_group()[a.h].label + "*" +
                              sys.acting_group()[b.h].label + " is not realized in H");
    const auto &K = sys.group();
    return {*hh, K.add(K.make<GroupElement>(a.k.residues), sys.tau(a.h).apply(b.k))};
}

SdElement sd_inverse(const SemidirectSystem &sys, const SdElement &a) {
    sys.check_h(a.h);
    const auto hinv = sys.acting_group().inverse(a.h);
    if (!hinv)
        throw StructuralError("sd_inverse: inverse of " + sys.acting_group()[a.h].label +
                              " is not realized in H");
    const auto &K = sys.group();
    return {*hinv, sys.tau(*hinv).apply(K.negate(K.make<GroupElement>(a.k.residues)))};
}

Character dual_action(const SemidirectSystem &sys, std::size_t h, const Character &omega) {
    sys.check_h(h);
    return sys.tau(h).apply_dual(omega);
}

GroupElement quotient_action(const SemidirectSystem &sys, std::size_t h, const GroupElement &rep) {
    sys.check_h(h);
    return sys.lattice().representative(sys.tau(h).apply(rep));
}

Character dual_quotient_action(const SemidirectSystem &sys, std::size_t h, const Character &rep) {
    return sys.annihilator().representative(dual_action(sys, h, rep));
}

ProductPoint product_action(const SemidirectSystem &sys, std::size_t h, const ProductPoint &x) {
    return {quotient_action(sys, h, x.first), dual_quotient_action(sys, h, x.second)};
}

// ---------------------------------------------------------------------------
// isomorphism checks

void IsoReport::record(double deviation, double tol, const std::string &witness) {
    ++checks;
    max_deviation = std::max(max_deviation, deviation);
    if (deviation > tol) {
        ++mismatches;
        if (witnesses.size() < 8) witnesses.push_back(witness);
    }
}

void IsoReport::merge(const IsoReport &other) {
    checks += other.checks;
    mismatches += other.mismatches;
    max_deviation = std::max(max_deviation, other.max_deviation);
    for (const auto &w : other.witnesses)
        if (witnesses.size() < 8) witnesses.push_back(w);
}

IsoReport verify_quotient_dual_isos(const SemidirectSystem &sys) {
    // Every comparison is between exact phase numerators modulo the exponent,
    // so a correct system reports deviation 0 and a failure reports 1.
    constexpr double tol = 0.5;
    IsoReport rep;
    const auto &K = sys.group();
    const auto &L = sys.lattice();
    const auto &Lp = sys.annihilator();
    const auto &H = sys.acting_group();
    const auto E = K.exponent();
    const auto ph = [&](const GroupElement &k, const Character &w) { return phase_numerator(K, k, w); };
    const auto sum = [E](std::int64_t a, std::int64_t b) { return floor_mod(a + b, E); };
    const auto miss = [](bool same) { return same ? 0.0 : 1.0; };
    const auto elems = K.elements();
    const auto &cosets = L.transversal();

    // Characters of K/L pulled back to K: all omega constant on cosets, found by
    // direct pairing. They must be exactly the algebraic annihilator, one per coset.
    std::vector<Character> descended;
    for (const auto &omega : K.characters()) {
        bool constant = true;
        for (const auto &k : cosets)
            for (const auto &l : L.elements()) constant = constant && ph(K.add(k, l), omega) == ph(k, omega);
        if (constant) descended.push_back(omega);
    }
    rep.record(miss(descended == Lp.elements()), tol,
               "[.]: characters of K/L pulled back to K differ from the annihilator");
    rep.record(miss(descended.size() == cosets.size()), tol, "[.]: |(K/L)^| != |K/L|");

    // [.] is multiplicative: [zeta zeta'] = [zeta][zeta'].
    for (const auto &xi : Lp.elements())
        for (const auto &eta : Lp.elements()) {
            const auto both = K.add(xi, eta);
            bool same = true;
            for (const auto &k : cosets) same = same && ph(k, both) == sum(ph(k, xi), ph(k, eta));
            rep.record(miss(same), tol, "[.] not multiplicative at " + to_string(xi) + "," + to_string(eta));
        }

    // [zeta_h] = [zeta]_h, where zeta_h(k + L) = zeta((k + L)^{h^{-1}}).
    for (std::size_t h = 0; h < H.size(); ++h) {
        const auto inv = sys.tau(h).inverse();
        for (const auto &xi : Lp.elements()) {
            const auto xi_h = dual_action(sys, h, xi);
            rep.record(miss(Lp.contains(xi_h)), tol,
                       "dual action leaves L-perp: h=" + H[h].label + " xi=" + to_string(xi));
            bool same = true;
            for (const auto &k : elems) {
                const auto moved = L.representative(inv.apply(L.representative(k)));
                same = same && ph(k, xi_h) == ph(moved, xi);
            }
            rep.record(miss(same), tol, "[zeta_h] != [zeta]_h at h=" + H[h].label + " xi=" + to_string(xi));
        }
    }

    // Restriction K^/L-perp -> L^: well defined, injective, onto by counting,
    // multiplicative and H-equivariant.
    const auto &dual_cosets = Lp.transversal();
    std::set<std::vector<std::int64_t>> restrictions;
    for (const auto &omega : dual_cosets) {
        std::vector<std::int64_t> phases;
        for (const auto &l : L.elements()) phases.push_back(ph(l, omega));
        restrictions.insert(phases);
        bool same = true;
        for (const auto &xi : Lp.elements())
            for (const auto &l : L.elements()) same = same && ph(l, K.add(omega, xi)) == ph(l, omega);
        rep.record(miss(same), tol, "restriction not constant on " + to_string(omega) + " + L-perp");
    }
    rep.record(miss(restrictions.size() == dual_cosets.size()), tol, "restriction map is not injective");
    rep.record(miss(dual_cosets.size() == L.order()), tol, "|K^/L-perp| != |L^|");
    for (const auto &a : dual_cosets)
        for (const auto &b : dual_cosets) {
            bool same = true;
            const auto ab = K.add(a, b);
            for (const auto &l : L.elements()) same = same && ph(l, ab) == sum(ph(l, a), ph(l, b));
            rep.record(miss(same), tol, "restriction not multiplicative at " + to_string(a) + "," + to_string(b));
        }
    for (std::size_t h = 0; h < H.size(); ++h) {
        const auto inv = sys.tau(h).inverse();
        for (const auto &omega : dual_cosets) {
            bool same = true;
            const auto omega_h = dual_action(sys, h, omega);
            for (const auto &l : L.elements()) {
                const auto pulled = inv.apply(l);
                same = same && L.contains(pulled) && ph(l, omega_h) == ph(pulled, omega);
            }
            rep.record(miss(same), tol,
                       "restriction not equivariant at h=" + H[h].label + " omega=" + to_string(omega));
        }
    }
    return rep;
}

IsoReport verify_delta_homomorphisms(const SemidirectSystem &sys) {
    IsoReport rep;
    const auto &H = sys.acting_group();
    for (std::size_t i = 0; i < H.size(); ++i) {
        rep.record(std::abs(sys.delta_K(i).value() - sys.measured_delta_K(i).value()), 0.0,
                   "stored delta_K(" + H[i].label + ") = " + to_string(sys.delta_K(i)) +
                       " but the action distorts counting measure by " +
                       to_string(sys.measured_delta_K(i)));
        rep.record(std::abs(sys.delta_L(i).value() - sys.measured_delta_L(i).value()), 0.0,
                   "stored delta_L(" + H[i].label + ") = " + to_string(sys.delta_L(i)) +
                       " but the action distorts counting measure on L by " +
                       to_string(sys.measured_delta_L(i)));
        for (std::size_t j = 0; j < H.size(); ++j) {
            const auto p = H.product(i, j);
            if (!p) continue;
            const auto dk = sys.delta_K(i) * sys.delta_K(j);
            const auto dl = sys.delta_L(i) * sys.delta_L(j);
            rep.record(dk == sys.delta_K(*p) ? 0.0 : std::abs(dk.value() - sys.delta_K(*p).value()), 0.0,
                       "delta_K not multiplicative at " + H[i].label + "*" + H[j].label);
            rep.record(dl == sys.delta_L(*p) ? 0.0 : std::abs(dl.value() - sys.delta_L(*p).value()), 0.0,
                       "delta_L not multiplicative at " + H[i].label + "*" + H[j].label);
        }
    }
    return rep;
}

} // namespace tauzak

#include "tauzak/zak_classical.hpp"

#include <algorithm>
#include <cmath>

namespace tauzak {

ZakDomain::ZakDomain(Subgroup lattice)
    : lattice_(std::move(lattice)), annihilator_(tauzak::annihilator(lattice_)) {
    const auto &K = lattice_.parent();
    row_of_element_.resize(K.order());
    column_of_character_.resize(K.order());
    const auto &reps = rows();
    const auto &dual_reps = columns();
    for (std::size_t i = 0; i < K.order(); ++i) {
        const auto r = lattice_.representative(K.element(i));
        row_of_element_[i] =
            static_cast<std::size_t>(std::lower_bound(reps.begin(), reps.end(), r) - reps.begin());
        const auto c = annihilator_.representative(K.character(i));
        column_of_character_[i] = static_cast<std::size_t>(
            std::lower_bound(dual_reps.begin(), dual_reps.end(), c) - dual_reps.begin());
    }
}

std::shared_ptr<const ZakDomain> ZakDomain::make(const Subgroup &lattice) {
    return std::make_shared<const ZakDomain>(lattice);
}

std::size_t ZakDomain::row_of(const GroupElement &k) const {
    return row_of_element_[group().index_of(k.residues)];
}

ZakDomain::RowSplit ZakDomain::split_row(const GroupElement &k) const {
    const auto row = row_of(k);
    return {row, group().subtract(group().make<GroupElement>(k.residues), rows()[row])};
}

std::size_t ZakDomain::column_of(const Character &omega) const {
    return column_of_character_[group().index_of(omega.residues)];
}

ZakArray::ZakArray(std::shared_ptr<const ZakDomain> domain, std::vector<Complex> values)
    : domain_(std::move(domain)), values_(std::move(values)) {
    if (!domain_) throw StructuralError("ZakArray: missing domain");
    if (values_.size() != domain_->row_count() * domain_->column_count())
        throw StructuralError("ZakArray: expected " + std::to_string(domain_->row_count()) + "x" +
                              std::to_string(domain_->column_count()) + " values, got " +
                              std::to_string(values_.size()));
}

double ZakArray::column_weight() const {
    return 1.0 / static_cast<double>(domain_->lattice().order());
}

double ZakArray::norm_squared() const {
    double acc = 0.0;
    for (const auto &v : values_) acc += std::norm(v);
    return acc * column_weight();
}

double ZakArray::norm() const { return std::sqrt(norm_squared()); }

double max_abs_diff(const ZakArray &a, const ZakArray &b) {
    if (a.values().size() != b.values().size() || !(a.domain().lattice() == b.domain().lattice()))
        throw StructuralError("max_abs_diff: Zak arrays over different lattices");
    double m = 0.0;
    for (std::size_t i = 0; i < a.values().size(); ++i)
        m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
    return m;
}

Complex inner(const ZakArray &a, const ZakArray &b) {
    if (a.values().size() != b.values().size() || !(a.domain().lattice() == b.domain().lattice()))
        throw StructuralError("inner: Zak arrays over different lattices");
    Complex acc = 0.0;
    for (std::size_t i = 0; i < a.values().size(); ++i) acc += a.values()[i] * std::conj(b.values()[i]);
    return acc * a.column_weight();
}

ZakArray zak(const Signal &v, const std::shared_ptr<const ZakDomain> &domain) {
    const auto &K = domain->group();
    if (!(v.group() == K) || v.domain() != Domain::primal)
        throw StructuralError("zak: signal does not live on the lattice's group");
    const auto &L = domain->lattice();
    const auto &lattice = L.elements();
    // Pairing numerators of lattice elements against each column representative.
    const auto E = K.exponent();
    std::vector<Complex> roots(static_cast<std::size_t>(E));
    for (std::int64_t p = 0; p < E; ++p) roots[static_cast<std::size_t>(p)] = root_of_unity(p, E);

    const auto rows = domain->row_count();
    const auto cols = domain->column_count();
    std::vector<Complex> phases(lattice.size() * cols);
    for (std::size_t li = 0; li < lattice.size(); ++li)
        for (std::size_t c = 0; c < cols; ++c)
            phases[li * cols + c] =
                roots[static_cast<std::size_t>(phase_numerator(K, lattice[li], domain->columns()[c]))];

    std::vector<Complex> values(rows * cols);
    std::vector<Complex> shifted(lattice.size());
    for (std::size_t r = 0; r < rows; ++r) {
        const auto &k = domain->rows()[r];
        for (std::size_t li = 0; li < lattice.size(); ++li)
            shifted[li] = v[K.index_of(K.add(k, lattice[li]).residues)];
        for (std::size_t c = 0; c < cols; ++c) {
            Complex acc = 0.0;
            for (std::size_t li = 0; li < lattice.size(); ++li) acc += shifted[li] * phases[li * cols + c];
            values[r * cols + c] = acc;
        }
    }
    return ZakArray(domain, std::move(values));
}

ZakArray zak(const Signal &v, const Subgroup &L) { return zak(v, ZakDomain::make(L)); }

Complex zak_direct(const Signal &v, const Subgroup &L, const GroupElement &k, const Character &omega) {
    const auto &K = v.group();
    if (!(L.parent() == K)) throw StructuralError("zak_direct: lattice is not a subgroup of the signal's group");
    Complex acc = 0.0;
    for (const auto &l : L.elements()) acc += v[K.index_of(K.add(K.make<GroupElement>(k.residues), l).residues)] * pair(K, l, omega);
    return acc;
}

Signal inverse_zak(const ZakArray &Z) {
    const auto &D = Z.domain();
    const auto &K = D.group();
    const auto &lattice = D.lattice().elements();
    std::vector<Complex> out(K.order());
    const double w = Z.column_weight();
    for (std::size_t r = 0; r < D.row_count(); ++r) {
        const auto &k = D.rows()[r];
        for (const auto &l : lattice) {
            Complex acc = 0.0;
            for (std::size_t c = 0; c < D.column_count(); ++c)
                acc += Z(r, c) * std::conj(pair(K, l, D.columns()[c]));
            out[K.index_of(K.add(k, l).residues)] = acc * w;
        }
    }
    return Signal(K, std::move(out));
}

Complex quasi_periodic_extension(const ZakArray &Z, const GroupElement &k, const Character &omega) {
    const auto &D = Z.domain();
    const auto &K = D.group();
    const auto split = D.split_row(k);
    const auto c = D.column_of(omega);
    const auto value = Z(split.row, c);
    if (std::all_of(split.lattice_offset.residues.begin(), split.lattice_offset.residues.end(),
                    [](auto x) { return x == 0; }))
        return value;
    return std::conj(pair(K, split.lattice_offset, D.columns()[c])) * value;
}

} // namespace tauzak

#include "tauzak/group_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

namespace tauzak {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

void axpy_row(Residues &target, std::int64_t q, const Residues &source) {
    for (std::size_t j = 0; j < target.size(); ++j) target[j] -= q * source[j];
}

} // namespace

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

std::string to_string(std::span<const std::int64_t> residues) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < residues.size(); ++i) {
        if (i) os << ',';
        os << residues[i];
    }
    os << ')';
    return os.str();
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> init) {
    rows = init.size();
    cols = rows ? init.begin()->size() : 0;
    data.reserve(rows * cols);
    for (const auto &row : init) {
        if (row.size() != cols) throw StructuralError("IntMatrix: ragged initializer");
        data.insert(data.end(), row.begin(), row.end());
    }
}

IntMatrix IntMatrix::identity(std::size_t d) {
    IntMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) m(i, i) = 1;
    return m;
}

// ---------------------------------------------------------------------------
// FiniteAbelianGroup

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<std::int64_t> moduli)
    : moduli_(std::move(moduli)) {
    if (moduli_.empty()) throw StructuralError("FiniteAbelianGroup: moduli must be non-empty");
    order_ = 1;
    exponent_ = 1;
    for (auto n : moduli_) {
        if (n < 1) throw StructuralError("FiniteAbelianGroup: every modulus must be >= 1");
        if (order_ > std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>(n))
            throw StructuralError("FiniteAbelianGroup: order overflows");
        order_ *= static_cast<std::size_t>(n);
        exponent_ = std::lcm(exponent_, n);
    }
}

void FiniteAbelianGroup::check_rank(std::span<const std::int64_t> r) const {
    if (r.size() != moduli_.size()) {
        throw StructuralError("dimension mismatch: expected " + std::to_string(moduli_.size()) +
                              " residues, got " + std::to_string(r.size()));
    }
}

bool FiniteAbelianGroup::is_reduced(std::span<const std::int64_t> r) const {
    if (r.size() != moduli_.size()) return false;
    for (std::size_t i = 0; i < r.size(); ++i)
        if (r[i] < 0 || r[i] >= moduli_[i]) return false;
    return true;
}

Residues FiniteAbelianGroup::reduce(std::span<const std::int64_t> r) const {
    check_rank(r);
    Residues out(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) out[i] = floor_mod(r[i], moduli_[i]);
    return out;
}

Residues FiniteAbelianGroup::residues_at(std::size_t index) const {
    if (index >= order_) throw std::out_of_range("FiniteAbelianGroup: index out of range");
    Residues r(moduli_.size());
    for (std::size_t i = moduli_.size(); i-- > 0;) {
        const auto n = static_cast<std::size_t>(moduli_[i]);
        r[i] = static_cast<std::int64_t>(index % n);
        index /= n;
    }
    return r;
}

std::size_t FiniteAbelianGroup::index_of(std::span<const std::int64_t> r) const {
    check_rank(r);
    std::size_t index = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        index = index * static_cast<std::size_t>(moduli_[i]) +
                static_cast<std::size_t>(floor_mod(r[i], moduli_[i]));
    }
    return index;
}

std::vector<GroupElement> FiniteAbelianGroup::elements() const {
    std::vector<GroupElement> out;
    out.reserve(order_);
    for (std::size_t i = 0; i < order_; ++i) out.push_back(element(i));
    return out;
}

std::vector<Character> FiniteAbelianGroup::characters() const {
    std::vector<Character> out;
    out.reserve(order_);
    for (std::size_t i = 0; i < order_; ++i) out.push_back(character(i));
    return out;
}

Residues FiniteAbelianGroup::add_residues(std::span<const std::int64_t> a,
                                          std::span<const std::int64_t> b) const {
    check_rank(a);
    check_rank(b);
    Residues out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = floor_mod(a[i] + b[i], moduli_[i]);
    return out;
}

Residues FiniteAbelianGroup::subtract_residues(std::span<const std::int64_t> a,
                                               std::span<const std::int64_t> b) const {
    check_rank(a);
    check_rank(b);
    Residues out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = floor_mod(a[i] - b[i], moduli_[i]);
    return out;
}

Residues FiniteAbelianGroup::negate_residues(std::span<const std::int64_t> a) const {
    check_rank(a);
    Residues out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = floor_mod(-a[i], moduli_[i]);
    return out;
}

// ---------------------------------------------------------------------------
// pairing

std::int64_t phase_numerator(const FiniteAbelianGroup &K, const GroupElement &k,
                             const Character &omega) {
    K.check_rank(k.residues);
    K.check_rank(omega.residues);
    const auto E = K.exponent();
    const auto n = K.moduli();
    std::int64_t p = 0;
    for (std::size_t i = 0; i < n.size(); ++i) {
        const auto ki = floor_mod(k.residues[i], n[i]);
        const auto wi = floor_mod(omega.residues[i], n[i]);
        p = floor_mod(p + floor_mod(ki * wi, n[i]) * (E / n[i]), E);
    }
    return p;
}

std::complex<double> root_of_unity(std::int64_t p, std::int64_t n) {
    p = floor_mod(p, n);
    const auto g = std::gcd(p, n);
    p /= g;
    n /= g;
    if (p == 0) return {1.0, 0.0};
    if (n == 2) return {-1.0, 0.0};
    if (n == 4) return p == 1 ? std::complex<double>{0.0, 1.0} : std::complex<double>{0.0, -1.0};
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(p) / static_cast<double>(n);
    return {std::cos(angle), std::sin(angle)};
}

std::complex<double> pair(const FiniteAbelianGroup &K, const GroupElement &k,
                          const Character &omega) {
    return root_of_unity(phase_numerator(K, k, omega), K.exponent());
}

// ---------------------------------------------------------------------------
// Hermite basis

namespace detail {

IntMatrix hermite_basis(std::span<const std::int64_t> moduli, std::span<const Residues> gens) {
    const std::size_t d = moduli.size();
    std::vector<Residues> rows;
    rows.reserve(gens.size() + d);
    for (const auto &g : gens) {
        if (g.size() != d) throw StructuralError("generator dimension mismatch");
        if (std::any_of(g.begin(), g.end(), [](auto v) { return v != 0; })) rows.push_back(g);
    }
    for (std::size_t i = 0; i < d; ++i) {
        Residues e(d, 0);
        e[i] = moduli[i];
        rows.push_back(std::move(e));
    }

    std::size_t top = 0;
    for (std::size_t c = 0; c < d; ++c) {
        for (;;) {
            std::size_t best = rows.size();
            for (std::size_t r = top; r < rows.size(); ++r) {
                if (rows[r][c] != 0 &&
                    (best == rows.size() || std::llabs(rows[r][c]) < std::llabs(rows[best][c])))
                    best = r;
            }
            if (best == rows.size())
                throw std::logic_error("hermite_basis: lattice is not full rank");
            std::swap(rows[top], rows[best]);
            bool cleared = true;
            for (std::size_t r = top + 1; r < rows.size(); ++r) {
                if (rows[r][c] == 0) continue;
                axpy_row(rows[r], floor_div(rows[r][c], rows[top][c]), rows[top]);
                cleared = cleared && rows[r][c] == 0;
            }
            if (cleared) break;
        }
        if (rows[top][c] < 0)
            for (auto &v : rows[top]) v = -v;
        ++top;
        // Rows that became zero carry no information.
        std::vector<Residues> kept(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(top));
        for (std::size_t r = top; r < rows.size(); ++r)
            if (std::any_of(rows[r].begin(), rows[r].end(), [](auto v) { return v != 0; }))
                kept.push_back(std::move(rows[r]));
        rows = std::move(kept);
    }
    for (std::size_t c = 0; c < d; ++c)
        for (std::size_t r = 0; r < c; ++r) axpy_row(rows[r], floor_div(rows[r][c], rows[c][c]), rows[c]);

    IntMatrix B(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) B(i, j) = rows[i][j];
    return B;
}

Residues coset_minimum(const IntMatrix &basis, std::span<const std::int64_t> r) {
    const std::size_t d = basis.rows;
    if (r.size() != d) throw StructuralError("coset_minimum: dimension mismatch");
    Residues x(r.begin(), r.end());
    for (std::size_t i = 0; i < d; ++i) {
        const auto q = floor_div(x[i], basis(i, i));
        if (q == 0) continue;
        for (std::size_t j = i; j < d; ++j) x[j] -= q * basis(i, j);
    }
    return x;
}

IntMatrix annihilator_generators(std::span<const std::int64_t> moduli, const IntMatrix &basis) {
    const std::size_t d = moduli.size();
    IntMatrix M(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        // Solve m * basis = n_i e_i for the integer row vector m.
        for (std::size_t j = 0; j < d; ++j) {
            std::int64_t rhs = (i == j) ? moduli[i] : 0;
            for (std::size_t k = 0; k < j; ++k) rhs -= M(i, k) * basis(k, j);
            if (rhs % basis(j, j) != 0)
                throw std::logic_error("annihilator_generators: basis does not contain diag(moduli)");
            M(i, j) = rhs / basis(j, j);
        }
    }
    return M;
}

} // namespace detail

// ---------------------------------------------------------------------------
// subgroups

Subgroup subgroup_from_generators(const FiniteAbelianGroup &K, std::span<const GroupElement> gens) {
    return Subgroup::generated_by(K, gens);
}

CharacterSubgroup character_subgroup_from_generators(const FiniteAbelianGroup &K,
                                                     std::span<const Character> gens) {
    return CharacterSubgroup::generated_by(K, gens);
}

namespace {

template <ResidueVector Out, ResidueVector In>
BasicSubgroup<Out> annihilator_impl(const BasicSubgroup<In> &S) {
    const auto &K = S.parent();
    const auto M = detail::annihilator_generators(K.moduli(), S.canonical_basis());
    const std::size_t d = K.rank();
    std::vector<Out> gens;
    gens.reserve(d);
    for (std::size_t j = 0; j < d; ++j) {
        Residues col(d);
        for (std::size_t i = 0; i < d; ++i) col[i] = M(i, j);
        gens.push_back(Out{K.reduce(col)});
    }
    return BasicSubgroup<Out>::generated_by(K, gens);
}

} // namespace

CharacterSubgroup annihilator(const Subgroup &L) { return annihilator_impl<Character>(L); }

Subgroup annihilator(const CharacterSubgroup &X) { return annihilator_impl<GroupElement>(X); }

std::vector<GroupElement> transversal(const Subgroup &L) { return L.transversal(); }

// ---------------------------------------------------------------------------
// automorphisms

namespace {

Residues mat_vec(const FiniteAbelianGroup &K, const IntMatrix &A, std::span<const std::int64_t> k) {
    const std::size_t d = K.rank();
    Residues out(d, 0);
    for (std::size_t i = 0; i < d; ++i) {
        std::int64_t acc = 0;
        for (std::size_t j = 0; j < d; ++j) acc = floor_mod(acc + A(i, j) * k[j], K.moduli()[i]);
        out[i] = acc;
    }
    return out;
}

IntMatrix reduce_rows(const FiniteAbelianGroup &K, IntMatrix A) {
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t j = 0; j < A.cols; ++j) A(i, j) = floor_mod(A(i, j), K.moduli()[i]);
    return A;
}

} // namespace

Automorphism::Automorphism(FiniteAbelianGroup parent, IntMatrix matrix)
    : parent_(std::move(parent)) {
    const std::size_t d = parent_.rank();
    if (matrix.rows != d || matrix.cols != d)
        throw StructuralError("Automorphism: matrix must be " + std::to_string(d) + "x" +
                              std::to_string(d));
    const auto n = parent_.moduli();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            if (floor_mod(matrix(i, j) * n[j], n[i]) != 0)
                throw StructuralError("Automorphism: entry (" + std::to_string(i) + "," +
                                      std::to_string(j) +
                                      ") is not compatible with the moduli (n_i must divide A_ij n_j)");
    matrix_ = reduce_rows(parent_, std::move(matrix));

    // Exhaustive scan: the kernel must be trivial, and the preimages of the
    // unit vectors give the inverse matrix column by column.
    std::vector<Residues> units(d);
    for (std::size_t j = 0; j < d; ++j) {
        Residues e(d, 0);
        e[j] = 1;
        units[j] = parent_.reduce(e);
    }
    inverse_ = IntMatrix(d, d);
    std::vector<bool> found(d, false);
    const Residues zero(d, 0);
    for (std::size_t idx = 0; idx < parent_.order(); ++idx) {
        const auto k = parent_.residues_at(idx);
        const auto img = mat_vec(parent_, matrix_, k);
        if (idx != 0 && img == zero)
            throw StructuralError("Automorphism: matrix is not injective; " + to_string(k) +
                                  " maps to 0");
        for (std::size_t j = 0; j < d; ++j) {
            if (!found[j] && img == units[j]) {
                found[j] = true;
                for (std::size_t i = 0; i < d; ++i) inverse_(i, j) = k[i];
            }
        }
    }
    derive_dual();
}

Automorphism::Automorphism(Unchecked, FiniteAbelianGroup parent, IntMatrix matrix, IntMatrix inverse)
    : parent_(std::move(parent)), matrix_(std::move(matrix)), inverse_(std::move(inverse)) {
    matrix_ = reduce_rows(parent_, std::move(matrix_));
    inverse_ = reduce_rows(parent_, std::move(inverse_));
    derive_dual();
}

void Automorphism::derive_dual() {
    // <k, omega o A^{-1}> = exp(2 pi i sum_{i,j} B_ij k_j omega_i / n_i) with
    // B = A^{-1}, so (omega_h)_j = sum_i B_ij (n_j / n_i) omega_i; the division
    // is exact because n_i | B_ij n_j.
    const std::size_t d = parent_.rank();
    const auto n = parent_.moduli();
    dual_ = IntMatrix(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) dual_(j, i) = floor_mod(inverse_(i, j) * n[j] / n[i], n[j]);
}

Automorphism Automorphism::identity(const FiniteAbelianGroup &K) {
    const auto I = IntMatrix::identity(K.rank());
    return Automorphism(Unchecked{}, K, I, I);
}

GroupElement Automorphism::apply(const GroupElement &k) const {
    parent_.check_rank(k.residues);
    return {mat_vec(parent_, matrix_, k.residues)};
}

Character Automorphism::apply_dual(const Character &omega) const {
    parent_.check_rank(omega.residues);
    return {mat_vec(parent_, dual_, omega.residues)};
}

Automorphism Automorphism::compose(const Automorphism &inner) const {
    if (!(parent_ == inner.parent_)) throw StructuralError("Automorphism::compose: different groups");
    const std::size_t d = parent_.rank();
    IntMatrix prod(d, d), inv(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            std::int64_t a = 0, b = 0;
            for (std::size_t k = 0; k < d; ++k) {
                a = floor_mod(a + matrix_(i, k) * inner.matrix_(k, j), parent_.moduli()[i]);
                b = floor_mod(b + inner.inverse_(i, k) * inverse_(k, j), parent_.moduli()[i]);
            }
            prod(i, j) = a;
            inv(i, j) = b;
        }
    return Automorphism(Unchecked{}, parent_, std::move(prod), std::move(inv));
}

Automorphism Automorphism::inverse() const {
    return Automorphism(Unchecked{}, parent_, inverse_, matrix_);
}

bool Automorphism::is_identity() const { return matrix_ == identity(parent_).matrix_; }

GroupElement apply_auto(const Automorphism &A, const GroupElement &k) { return A.apply(k); }

std::optional<InvarianceViolation> find_invariance_violation(const Subgroup &L,
                                                             std::span<const Automorphism> H) {
    for (std::size_t a = 0; a < H.size(); ++a) {
        if (!(H[a].parent() == L.parent()))
            throw StructuralError("is_tau_invariant: automorphism acts on a different group");
        for (const auto &g : L.canonical_generators()) {
            auto img = H[a].apply(g);
            if (!L.contains(img)) return InvarianceViolation{a, g, std::move(img)};
        }
    }
    return std::nullopt;
}

bool is_tau_invariant(const Subgroup &L, std::span<const Automorphism> H) {
    return !find_invariance_violation(L, H).has_value();
}

} // namespace tauzak

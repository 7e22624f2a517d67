#include "tauzak/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tauzak {

Signal::Signal(FiniteAbelianGroup group, std::vector<Complex> values, Domain domain)
    : group_(std::move(group)), domain_(domain), values_(std::move(values)) {
    if (values_.size() != group_.order())
        throw StructuralError("Signal: expected " + std::to_string(group_.order()) +
                              " values, got " + std::to_string(values_.size()));
}

Signal Signal::zeros(const FiniteAbelianGroup &group, Domain domain) {
    return Signal(group, std::vector<Complex>(group.order()), domain);
}

Signal Signal::delta(const FiniteAbelianGroup &group, const GroupElement &at) {
    auto s = zeros(group);
    s.values_[group.index_of(at.residues)] = 1.0;
    return s;
}

Signal Signal::constant(const FiniteAbelianGroup &group, Complex value, Domain domain) {
    return Signal(group, std::vector<Complex>(group.order(), value), domain);
}

double Signal::haar_weight() const {
    return domain_ == Domain::primal ? 1.0 : 1.0 / static_cast<double>(group_.order());
}

double Signal::norm_squared() const {
    double acc = 0.0;
    for (const auto &v : values_) acc += std::norm(v);
    return acc * haar_weight();
}

double Signal::norm() const { return std::sqrt(norm_squared()); }

namespace {

void check_compatible(const Signal &a, const Signal &b) {
    if (!(a.group() == b.group()) || a.domain() != b.domain())
        throw StructuralError("signals live on different groups");
}

} // namespace

Signal operator+(const Signal &a, const Signal &b) {
    check_compatible(a, b);
    auto out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
    return out;
}

Signal operator*(Complex c, const Signal &a) {
    auto out = a;
    for (auto &v : out.values()) v *= c;
    return out;
}

double max_abs_diff(const Signal &a, const Signal &b) {
    check_compatible(a, b);
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

Complex inner(const Signal &a, const Signal &b) {
    check_compatible(a, b);
    Complex acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * std::conj(b[i]);
    return acc * a.haar_weight();
}

namespace {

std::vector<Complex> root_table(std::int64_t n) {
    std::vector<Complex> t(static_cast<std::size_t>(n));
    for (std::int64_t p = 0; p < n; ++p) t[static_cast<std::size_t>(p)] = root_of_unity(p, n);
    return t;
}

// Sum over the group with the pairing sign chosen by `conjugate`.
std::vector<Complex> character_sum(const FiniteAbelianGroup &K, const std::vector<Complex> &in,
                                   bool conjugate) {
    const auto n = K.order();
    const auto roots = root_table(K.exponent());
    const auto E = K.exponent();
    std::vector<GroupElement> elems = K.elements();
    std::vector<Complex> out(n);
    for (std::size_t w = 0; w < n; ++w) {
        const auto omega = K.character(w);
        Complex acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const auto p = phase_numerator(K, elems[k], omega);
            const auto r = roots[static_cast<std::size_t>(conjugate ? floor_mod(-p, E) : p)];
            acc += in[k] * r;
        }
        out[w] = acc;
    }
    return out;
}

// Mixed-radix decimation in time; sign = -1 for the forward transform.
std::vector<Complex> dft_1d(const std::vector<Complex> &x, int sign) {
    const std::size_t n = x.size();
    if (n <= 1) return x;
    std::size_t p = 2;
    while (p * p <= n && n % p != 0) ++p;
    if (n % p != 0) p = n;
    auto twiddle = [&](std::size_t e) {
        const auto r = root_of_unity(static_cast<std::int64_t>(e % n), static_cast<std::int64_t>(n));
        return sign < 0 ? std::conj(r) : r;
    };
    std::vector<Complex> out(n);
    if (p == n) {
        for (std::size_t k = 0; k < n; ++k) {
            Complex acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) acc += x[j] * twiddle(j * k);
            out[k] = acc;
        }
        return out;
    }
    const std::size_t m = n / p;
    std::vector<std::vector<Complex>> parts(p);
    for (std::size_t r = 0; r < p; ++r) {
        std::vector<Complex> sub(m);
        for (std::size_t j = 0; j < m; ++j) sub[j] = x[j * p + r];
        parts[r] = dft_1d(sub, sign);
    }
    for (std::size_t k = 0; k < n; ++k) {
        Complex acc = 0.0;
        for (std::size_t r = 0; r < p; ++r) acc += twiddle(r * k) * parts[r][k % m];
        out[k] = acc;
    }
    return out;
}

} // namespace

Signal fourier(const Signal &v) {
    if (v.domain() != Domain::primal) throw StructuralError("fourier: input must live on K");
    return Signal(v.group(), character_sum(v.group(), v.values(), true), Domain::dual);
}

Signal fourier_fast(const Signal &v) {
    if (v.domain() != Domain::primal) throw StructuralError("fourier_fast: input must live on K");
    const auto &K = v.group();
    auto data = v.values();
    const auto moduli = K.moduli();
    std::size_t stride = K.order();
    for (std::size_t axis = 0; axis < moduli.size(); ++axis) {
        const auto len = static_cast<std::size_t>(moduli[axis]);
        stride /= len;
        const std::size_t block = len * stride;
        std::vector<Complex> line(len);
        for (std::size_t base = 0; base < data.size(); base += block) {
            for (std::size_t off = 0; off < stride; ++off) {
                for (std::size_t j = 0; j < len; ++j) line[j] = data[base + off + j * stride];
                const auto t = dft_1d(line, -1);
                for (std::size_t j = 0; j < len; ++j) data[base + off + j * stride] = t[j];
            }
        }
    }
    return Signal(K, std::move(data), Domain::dual);
}

Signal inverse_fourier(const Signal &w) {
    if (w.domain() != Domain::dual) throw StructuralError("inverse_fourier: input must live on K^");
    auto vals = character_sum(w.group(), w.values(), false);
    const double scale = 1.0 / static_cast<double>(w.group().order());
    for (auto &x : vals) x *= scale;
    return Signal(w.group(), std::move(vals), Domain::primal);
}

Signal compose(const Signal &v, const Automorphism &A) {
    if (!(A.parent() == v.group())) throw StructuralError("compose: automorphism acts on another group");
    const auto &K = v.group();
    std::vector<Complex> out(K.order());
    for (std::size_t i = 0; i < K.order(); ++i) {
        const auto img = A.apply(K.element(i));
        out[i] = v[K.index_of(img.residues)];
    }
    return Signal(K, std::move(out), v.domain());
}

Complex QuotientSignal::at_coset_of(const GroupElement &k) const {
    const auto rep = subgroup.representative(k);
    const auto &reps = subgroup.transversal();
    const auto it = std::lower_bound(reps.begin(), reps.end(), rep);
    return values[static_cast<std::size_t>(it - reps.begin())];
}

QuotientSignal periodize(const Signal &v, const Subgroup &L) {
    if (!(L.parent() == v.group())) throw StructuralError("periodize: lattice is not a subgroup of the signal's group");
    const auto &K = v.group();
    QuotientSignal out{L, {}};
    out.values.reserve(L.index());
    for (const auto &k : L.transversal()) {
        Complex acc = 0.0;
        for (const auto &l : L.elements()) acc += v[K.index_of(K.add(k, l).residues)];
        out.values.push_back(acc);
    }
    return out;
}

double verify_weil(const Signal &v, const Subgroup &L) {
    Complex total = 0.0;
    for (const auto &x : v.values()) total += x;
    Complex quotient = 0.0;
    for (const auto &x : periodize(v, L).values) quotient += x;
    return std::abs(total - quotient);
}

} // namespace tauzak

#pragma once

#include "tauzak/random.hpp"
#include "tauzak/tau_zak.hpp"

namespace tauzak::fixtures {

/// Each h joins the support with probability 1/2 (at least one slice); slices are random.
inline SemidirectSignal random_semidirect_signal(const SystemPtr &sys, PortableRng &rng) {
    SemidirectSignal f(sys);
    const auto n = sys->acting_group().size();
    for (std::size_t h = 0; h < n; ++h)
        if (rng.below(2) == 1) f.set_slice(h, random_signal(sys->group(), rng));
    if (f.slices().empty()) f.set_slice(rng.below(n), random_signal(sys->group(), rng));
    return f;
}

inline double relative(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

} // namespace tauzak::fixtures

#pragma once

// The identity suite behind `tauzak verify`. Each check reports the worst
// deviation seen and the statement it measures.

#include <cstdint>
#include <string>
#include <vector>

#include "tauzak/io.hpp"
#include "tauzak/random.hpp"

namespace tauzak::cli {

struct IdentityCheck {
    std::string name;
    std::string statement;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    std::size_t cases = 0;
    /// Informational checks are printed but do not decide the exit code.
    bool gating = true;
    std::string witness;

    bool passed() const { return max_deviation <= tolerance; }
};

struct SuiteOptions {
    std::uint64_t seed = 1;
    std::size_t trials = 100;
    double tolerance = 1e-9;
    /// Relative isometry tolerance for the sampled plane model.
    double plane_tolerance = 0.01;
};

/// Each h joins the support with probability 1/2 (at least one slice).
SemidirectSignal random_semidirect_signal(const SystemPtr &system, PortableRng &rng);

std::vector<IdentityCheck> run_finite_suite(const BuiltSystem &built, const SystemDescriptor &d,
                                            const SuiteOptions &opt);
std::vector<IdentityCheck> run_plane_suite(const SampledPlaneSystem &sys, const SuiteOptions &opt);

/// A fixed pair of bumps inside the support disk, drawn from `rng`.
PlaneSignal random_plane_signal(const SampledPlaneSystem &sys, PortableRng &rng);

bool all_gating_passed(const std::vector<IdentityCheck> &checks);

} // namespace tauzak::cli

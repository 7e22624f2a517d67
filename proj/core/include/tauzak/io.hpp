#pragma once

// JSON descriptors for groups, systems and signals; CSV for Zak tables.
//
//   group / subgroup   {"moduli": [...], "generators": [[...], ...]}
//   generic system     {"moduli": [...], "H_generators": [[[...]]], "L_generators": [[...]]}
//   showcase system    {"model": "heisenberg", "N": 8, "L_generators": [[2,0],[0,2]]}
//                      {"model": "torus", "M": 12, "n": 2, "m": 4, "ell_min": -2, "ell_max": 2}
//                      {"model": "sl2", "alpha": 1, "beta": 2, "sigma_set": [[[1,0],[0,1]], ...],
//                       "samples": 16, "support_radius": 4}
//   optional on finite systems: "H_cap": n, "delta_overrides": [{"h": "<label>", "delta_K": [p, q],
//                                                               "delta_L": [p, q]}]
//   signal             {"moduli": [...], "re": [...], "im": [...]}
//   semidirect signal  {"moduli": [...], "slices": [{"h": "<label>", "re": [...], "im": [...]}]}

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "tauzak/showcase.hpp"

namespace tauzak {

/// Malformed input: bad JSON (with line and column), missing fields, wrong shapes.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct DeltaOverride {
    std::string label;
    Rational delta_K{1};
    Rational delta_L{1};
};

struct SystemDescriptor {
    enum class Kind { generic, heisenberg, torus, sl2 };
    Kind kind = Kind::generic;

    FiniteAbelianGroup group;
    std::vector<Automorphism> H_generators;
    std::vector<GroupElement> L_generators;
    std::size_t H_cap = ActingGroup::default_cap;
    std::vector<DeltaOverride> delta_overrides;

    std::int64_t N = 0;                   // heisenberg
    std::int64_t M = 0, n = 0, m = 0;     // torus
    std::int64_t ell_min = -2, ell_max = 2;
    std::vector<Matrix2> sigma_set;       // sl2
    double alpha = 1.0, beta = 1.0, support_radius = 4.0;
    std::size_t samples = 16;

    std::string model_name() const;
};

/// Everything a descriptor can turn into. Finite kinds fill `system`;
/// the torus kind also fills `torus`; sl2 fills only `plane`.
struct BuiltSystem {
    SystemPtr system;
    std::optional<TorusModel> torus;
    std::optional<SampledPlaneSystem> plane;
};

std::string read_text_file(const std::filesystem::path &path);
void write_text_file(const std::filesystem::path &path, const std::string &text);

SystemDescriptor parse_system_descriptor(const std::string &json_text);
SystemDescriptor load_system_descriptor(const std::filesystem::path &path);
/// May throw PreconditionError (non-invariant L) or StructuralError.
BuiltSystem build_system(const SystemDescriptor &d);
/// The acting-group generators' automorphisms closed under composition, without checking L.
ActingGroup build_acting_group(const SystemDescriptor &d);

Signal parse_signal(const std::string &json_text);
std::string signal_to_json(const Signal &v);

/// A plain signal becomes a single slice at the identity of H.
SemidirectSignal parse_semidirect_signal(const std::string &json_text, const SystemPtr &system);
std::string semidirect_signal_to_json(const SemidirectSignal &f);

/// "<re><sign><im>i" with 17 significant digits, e.g. "1+0i", "-0.5-2.25i".
std::string format_complex(Complex z);
Complex parse_complex(const std::string &cell);

/// Header: "k\\omega" then one column per dual representative as "a:b";
/// each row starts with the coset representative.
std::string zak_to_csv(const ZakArray &Z);
ZakArray zak_from_csv(const std::string &csv, const std::shared_ptr<const ZakDomain> &domain);

std::string residues_label(std::span<const std::int64_t> r);

} // namespace tauzak

#include "tauzak/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace tauzak {

using nlohmann::json;

namespace {

json parse_json(const std::string &text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        std::size_t line = 1, column = 1;
        const auto end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < end; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw InputError("invalid JSON at line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + e.what());
    }
}

const json &require(const json &j, const char *key, const char *context) {
    if (!j.is_object() || !j.contains(key))
        throw InputError(std::string(context) + ": missing field \"" + key + "\"");
    return j.at(key);
}

template <class T>
T get_as(const json &j, const std::string &what) {
    try {
        return j.get<T>();
    } catch (const json::exception &e) {
        throw InputError(what + ": " + e.what());
    }
}

std::vector<std::int64_t> int_vector(const json &j, const std::string &what) {
    return get_as<std::vector<std::int64_t>>(j, what);
}

std::vector<GroupElement> element_list(const json &j, const FiniteAbelianGroup &K, const std::string &what) {
    std::vector<GroupElement> out;
    if (!j.is_array()) throw InputError(what + ": expected an array of residue vectors");
    for (const auto &e : j) {
        auto r = int_vector(e, what);
        if (r.size() != K.rank())
            throw InputError(what + ": element of length " + std::to_string(r.size()) + " in a rank-" +
                             std::to_string(K.rank()) + " group");
        out.push_back(K.make<GroupElement>(r));
    }
    return out;
}

IntMatrix int_matrix(const json &j, const std::string &what) {
    const auto rows = get_as<std::vector<std::vector<std::int64_t>>>(j, what);
    if (rows.empty()) throw InputError(what + ": empty matrix");
    IntMatrix A(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size()) throw InputError(what + ": ragged matrix");
        for (std::size_t k = 0; k < rows[i].size(); ++k) A(i, k) = rows[i][k];
    }
    return A;
}

Rational rational(const json &j, const std::string &what) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    const auto v = int_vector(j, what);
    if (v.size() != 2) throw InputError(what + ": expected [numerator, denominator]");
    try {
        return Rational(v[0], v[1]);
    } catch (const std::exception &e) {
        throw InputError(what + ": " + e.what());
    }
}

std::vector<Complex> complex_values(const json &j, std::size_t expected, const std::string &what) {
    const auto re = get_as<std::vector<double>>(require(j, "re", what.c_str()), what + ".re");
    std::vector<double> im(re.size(), 0.0);
    if (j.contains("im")) im = get_as<std::vector<double>>(j.at("im"), what + ".im");
    if (re.size() != expected || im.size() != expected)
        throw InputError(what + ": expected " + std::to_string(expected) + " values, got re " +
                         std::to_string(re.size()) + " / im " + std::to_string(im.size()));
    std::vector<Complex> out(expected);
    for (std::size_t i = 0; i < expected; ++i) out[i] = {re[i], im[i]};
    return out;
}

json values_json(const std::vector<Complex> &v) {
    json re = json::array(), im = json::array();
    for (const auto &z : v) {
        re.push_back(z.real());
        im.push_back(z.imag());
    }
    return {{"re", re}, {"im", im}};
}

FiniteAbelianGroup group_of(const json &j, const char *context) {
    try {
        return FiniteAbelianGroup(int_vector(require(j, "moduli", context), "moduli"));
    } catch (const StructuralError &e) {
        throw InputError(std::string(context) + ": " + e.what());
    }
}

} // namespace

std::string SystemDescriptor::model_name() const {
    switch (kind) {
    case Kind::heisenberg: return "heisenberg";
    case Kind::torus: return "torus";
    case Kind::sl2: return "sl2";
    case Kind::generic: break;
    }
    return "generic";
}

std::string read_text_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path &path, const std::string &text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    out << text;
}

SystemDescriptor parse_system_descriptor(const std::string &json_text) {
    const auto j = parse_json(json_text);
    if (!j.is_object()) throw InputError("system descriptor: expected a JSON object");
    SystemDescriptor d;
    const auto model = j.contains("model") ? get_as<std::string>(j.at("model"), "model") : std::string("generic");
    if (model == "heisenberg") {
        d.kind = SystemDescriptor::Kind::heisenberg;
        d.N = get_as<std::int64_t>(require(j, "N", "heisenberg"), "N");
        if (d.N < 2) throw InputError("heisenberg: N must be at least 2");
        d.group = FiniteAbelianGroup({d.N, d.N});
        if (j.contains("L_generators")) d.L_generators = element_list(j.at("L_generators"), d.group, "L_generators");
    } else if (model == "torus") {
        d.kind = SystemDescriptor::Kind::torus;
        d.M = get_as<std::int64_t>(require(j, "M", "torus"), "M");
        d.n = get_as<std::int64_t>(require(j, "n", "torus"), "n");
        d.m = get_as<std::int64_t>(require(j, "m", "torus"), "m");
        if (j.contains("ell_min")) d.ell_min = get_as<std::int64_t>(j.at("ell_min"), "ell_min");
        if (j.contains("ell_max")) d.ell_max = get_as<std::int64_t>(j.at("ell_max"), "ell_max");
        if (d.M < 1) throw InputError("torus: M must be positive");
        d.group = FiniteAbelianGroup({d.M, d.M});
    } else if (model == "sl2") {
        d.kind = SystemDescriptor::Kind::sl2;
        if (j.contains("alpha")) d.alpha = get_as<double>(j.at("alpha"), "alpha");
        if (j.contains("beta")) d.beta = get_as<double>(j.at("beta"), "beta");
        if (j.contains("samples")) d.samples = get_as<std::size_t>(j.at("samples"), "samples");
        if (j.contains("support_radius")) d.support_radius = get_as<double>(j.at("support_radius"), "support_radius");
        if (j.contains("sigma_set")) {
            for (const auto &s : j.at("sigma_set")) {
                const auto A = int_matrix(s, "sigma_set");
                if (A.rows != 2 || A.cols != 2) throw InputError("sigma_set: expected 2x2 matrices");
                d.sigma_set.push_back({A(0, 0), A(0, 1), A(1, 0), A(1, 1)});
            }
        } else {
            d.sigma_set = {Matrix2{}, Matrix2{1, 1, 0, 1}};
        }
    } else if (model == "generic") {
        d.group = group_of(j, "system descriptor");
        const json *L = j.contains("L_generators") ? &j.at("L_generators")
                        : j.contains("generators") ? &j.at("generators")
                                                   : nullptr;
        if (L) d.L_generators = element_list(*L, d.group, "L_generators");
        if (j.contains("H_generators")) {
            for (const auto &g : j.at("H_generators")) {
                try {
                    d.H_generators.emplace_back(d.group, int_matrix(g, "H_generators"));
                } catch (const StructuralError &e) {
                    throw InputError(std::string("H_generators: ") + e.what());
                }
            }
        }
        if (j.contains("H_cap")) d.H_cap = get_as<std::size_t>(j.at("H_cap"), "H_cap");
    } else {
        throw InputError("unknown model \"" + model + "\" (expected heisenberg, torus, sl2 or a generic system)");
    }
    if (j.contains("delta_overrides")) {
        for (const auto &o : j.at("delta_overrides")) {
            DeltaOverride ov;
            ov.label = get_as<std::string>(require(o, "h", "delta_overrides"), "delta_overrides.h");
            if (o.contains("delta_K")) ov.delta_K = rational(o.at("delta_K"), "delta_K");
            if (o.contains("delta_L")) ov.delta_L = rational(o.at("delta_L"), "delta_L");
            d.delta_overrides.push_back(ov);
        }
    }
    return d;
}

SystemDescriptor load_system_descriptor(const std::filesystem::path &path) {
    try {
        return parse_system_descriptor(read_text_file(path));
    } catch (const InputError &e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

ActingGroup build_acting_group(const SystemDescriptor &d) {
    return d.H_generators.empty() ? ActingGroup::trivial(d.group)
                                  : ActingGroup::generate(d.group, d.H_generators, d.H_cap);
}

namespace {

SystemPtr apply_overrides(SystemPtr sys, const std::vector<DeltaOverride> &overrides) {
    if (overrides.empty()) return sys;
    auto H = sys->acting_group();
    for (const auto &o : overrides) {
        const auto h = H.find(o.label);
        if (!h) throw InputError("delta_overrides: no H element labelled \"" + o.label + "\"");
        H = H.with_deltas(*h, o.delta_K, o.delta_L);
    }
    return std::make_shared<const SemidirectSystem>(std::move(H), sys->lattice());
}

} // namespace

BuiltSystem build_system(const SystemDescriptor &d) {
    BuiltSystem out;
    switch (d.kind) {
    case SystemDescriptor::Kind::heisenberg: {
        auto gens = d.L_generators;
        if (gens.empty()) gens = {GroupElement{{2 % d.N, 0}}, GroupElement{{0, 2 % d.N}}};
        out.system = apply_overrides(heisenberg_system(d.N, gens), d.delta_overrides);
        break;
    }
    case SystemDescriptor::Kind::torus: {
        auto model = torus_system(d.M, d.n, d.m, d.ell_min, d.ell_max);
        model.system = apply_overrides(model.system, d.delta_overrides);
        out.system = model.system;
        out.torus = std::move(model);
        break;
    }
    case SystemDescriptor::Kind::sl2:
        out.plane = sl2_system(d.sigma_set, d.alpha, d.beta, d.samples, d.support_radius);
        break;
    case SystemDescriptor::Kind::generic:
        out.system = apply_overrides(
            std::make_shared<const SemidirectSystem>(build_acting_group(d), subgroup_from_generators(d.group, d.L_generators)),
            d.delta_overrides);
        break;
    }
    return out;
}

Signal parse_signal(const std::string &json_text) {
    const auto j = parse_json(json_text);
    const auto K = group_of(j, "signal");
    return Signal(K, complex_values(j, K.order(), "signal"));
}

std::string signal_to_json(const Signal &v) {
    json j = values_json(v.values());
    const auto mod = v.group().moduli();
    j["moduli"] = std::vector<std::int64_t>(mod.begin(), mod.end());
    return j.dump(2) + "\n";
}

SemidirectSignal parse_semidirect_signal(const std::string &json_text, const SystemPtr &system) {
    const auto j = parse_json(json_text);
    const auto K = group_of(j, "signal");
    if (!(K == system->group()))
        throw InputError("signal: moduli do not match the system's group " + residues_label(system->group().moduli()));
    SemidirectSignal f(system);
    if (!j.contains("slices")) {
        f.set_slice(system->acting_group().identity(), Signal(K, complex_values(j, K.order(), "signal")));
        return f;
    }
    for (const auto &s : j.at("slices")) {
        const auto label = get_as<std::string>(require(s, "h", "slice"), "slice.h");
        const auto h = system->acting_group().find(label);
        if (!h) throw InputError("signal: no H element labelled \"" + label + "\"");
        f.set_slice(*h, Signal(K, complex_values(s, K.order(), "slice " + label)));
    }
    return f;
}

std::string semidirect_signal_to_json(const SemidirectSignal &f) {
    json slices = json::array();
    for (const auto &[h, s] : f.slices()) {
        json e = values_json(s.values());
        e["h"] = f.system().acting_group()[h].label;
        slices.push_back(std::move(e));
    }
    const auto mod = f.system().group().moduli();
    json j{{"moduli", std::vector<std::int64_t>(mod.begin(), mod.end())}, {"slices", slices}};
    return j.dump(2) + "\n";
}

std::string format_complex(Complex z) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
    return buf;
}

Complex parse_complex(const std::string &cell) {
    if (cell.size() < 2 || cell.back() != 'i') throw InputError("complex cell \"" + cell + "\": missing trailing i");
    std::size_t split = std::string::npos;
    for (std::size_t i = cell.size() - 1; i-- > 1;) {
        if ((cell[i] == '+' || cell[i] == '-') && cell[i - 1] != 'e' && cell[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos) throw InputError("complex cell \"" + cell + "\": no imaginary part");
    const auto re_text = cell.substr(0, split);
    const auto im_text = cell.substr(split, cell.size() - split - 1);
    char *end = nullptr;
    const double re = std::strtod(re_text.c_str(), &end);
    if (end != re_text.c_str() + re_text.size()) throw InputError("complex cell \"" + cell + "\": bad real part");
    const double im = std::strtod(im_text.c_str(), &end);
    if (end != im_text.c_str() + im_text.size()) throw InputError("complex cell \"" + cell + "\": bad imaginary part");
    return {re, im};
}

std::string residues_label(std::span<const std::int64_t> r) {
    std::string s;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i) s += ':';
        s += std::to_string(r[i]);
    }
    return s;
}

std::string zak_to_csv(const ZakArray &Z) {
    const auto &D = Z.domain();
    std::string out = "k\\omega";
    for (const auto &c : D.columns()) out += "," + residues_label(c.residues);
    out += "\n";
    for (std::size_t r = 0; r < D.row_count(); ++r) {
        out += residues_label(D.rows()[r].residues);
        for (std::size_t c = 0; c < D.column_count(); ++c) out += "," + format_complex(Z(r, c));
        out += "\n";
    }
    return out;
}

ZakArray zak_from_csv(const std::string &csv, const std::shared_ptr<const ZakDomain> &domain) {
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line)) throw InputError("zak csv: empty input");
    std::vector<Complex> values;
    values.reserve(domain->row_count() * domain->column_count());
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream cells(line);
        std::string cell;
        std::getline(cells, cell, ',');
        if (rows >= domain->row_count() || cell != residues_label(domain->rows()[rows].residues))
            throw InputError("zak csv: unexpected row label \"" + cell + "\"");
        std::size_t cols = 0;
        while (std::getline(cells, cell, ',')) {
            values.push_back(parse_complex(cell));
            ++cols;
        }
        if (cols != domain->column_count()) throw InputError("zak csv: row " + std::to_string(rows) + " has wrong width");
        ++rows;
    }
    if (rows != domain->row_count()) throw InputError("zak csv: wrong number of rows");
    return ZakArray(domain, std::move(values));
}

} // namespace tauzak

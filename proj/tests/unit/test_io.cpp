#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "tauzak/io.hpp"

namespace tauzak {
namespace {

TEST(ComplexCell, FormatsWithSeventeenDigits) {
    EXPECT_EQ(format_complex({1.0, 0.0}), "1+0i");
    EXPECT_EQ(format_complex({-0.5, -2.25}), "-0.5-2.25i");
    EXPECT_EQ(format_complex({0.1, 1e-20}), "0.10000000000000001+9.9999999999999995e-21i");
}

TEST(ComplexCell, RoundTripsBitExactly) {
    PortableRng rng(1);
    for (int t = 0; t < 1000; ++t) {
        const Complex z(rng.symmetric() * std::pow(10.0, rng.below(40) - 20.0), rng.symmetric() * 1e-300);
        const auto back = parse_complex(format_complex(z));
        EXPECT_EQ(back, z);
    }
    EXPECT_EQ(parse_complex("-1e-05+2.5E+10i"), Complex(-1e-5, 2.5e10));
}

TEST(ComplexCell, RejectsMalformed) {
    EXPECT_THROW(parse_complex("1+2"), InputError);
    EXPECT_THROW(parse_complex("abc+1i"), InputError);
    EXPECT_THROW(parse_complex("3i"), InputError);
}

TEST(SignalJson, RoundTrip) {
    const FiniteAbelianGroup K({2, 6});
    PortableRng rng(2);
    const auto v = random_signal(K, rng);
    const auto back = parse_signal(signal_to_json(v));
    EXPECT_TRUE(back.group() == K);
    EXPECT_EQ(back.values(), v.values());
}

TEST(SignalJson, LengthMismatchIsInputError) {
    EXPECT_THROW(parse_signal(R"({"moduli":[4],"re":[1,2,3]})"), InputError);
    EXPECT_THROW(parse_signal(R"({"re":[1,2,3]})"), InputError);
}

TEST(Json, ParseErrorsCarryLineInformation) {
    try {
        parse_system_descriptor("{\n  \"moduli\": [4,\n  ]\n}");
        FAIL() << "expected an InputError";
    } catch (const InputError &e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
}

TEST(SystemDescriptor, GenericSystem) {
    const auto d = parse_system_descriptor(
        R"({"moduli":[8,8],"H_generators":[[[1,1],[0,1]]],"L_generators":[[2,0],[0,2]]})");
    EXPECT_EQ(d.kind, SystemDescriptor::Kind::generic);
    const auto built = build_system(d);
    ASSERT_TRUE(built.system);
    EXPECT_EQ(built.system->acting_group().size(), 8u);
    EXPECT_EQ(built.system->lattice().order(), 16u);
}

TEST(SystemDescriptor, GroupOnlyDescriptorUsesGenerators) {
    const auto d = parse_system_descriptor(R"({"moduli":[4],"generators":[[2]]})");
    const auto built = build_system(d);
    EXPECT_EQ(built.system->lattice().order(), 2u);
    EXPECT_EQ(built.system->acting_group().size(), 1u);
}

TEST(SystemDescriptor, ShowcaseModels) {
    const auto h = build_system(parse_system_descriptor(R"({"model":"heisenberg","N":8})"));
    EXPECT_EQ(h.system->acting_group().size(), 8u);
    EXPECT_EQ(h.system->lattice().order(), 16u);
    const auto t = build_system(parse_system_descriptor(R"({"model":"torus","M":12,"n":2,"m":4})"));
    ASSERT_TRUE(t.torus.has_value());
    EXPECT_EQ(t.system->acting_group().size(), 5u);
    const auto s = build_system(parse_system_descriptor(R"({"model":"sl2","alpha":1,"beta":2,"samples":16})"));
    ASSERT_TRUE(s.plane.has_value());
    EXPECT_EQ(s.plane->sigma_set().size(), 2u);
}

TEST(SystemDescriptor, Errors) {
    EXPECT_THROW(parse_system_descriptor(R"({"model":"klein"})"), InputError);
    EXPECT_THROW(parse_system_descriptor(R"({"moduli":[4],"L_generators":[[1,2]]})"), InputError);
    EXPECT_THROW(parse_system_descriptor(R"({"moduli":[4,4],"H_generators":[[[2,0],[0,1]]]})"), InputError);
    EXPECT_THROW(build_system(parse_system_descriptor(R"({"model":"torus","M":12,"n":4,"m":2})")),
                 PreconditionError);
}

TEST(SystemDescriptor, DeltaOverridesReachTheSystem) {
    const auto d = parse_system_descriptor(R"({"model":"heisenberg","N":4,"delta_overrides":[{"h":"1","delta_K":[4,1]}]})");
    const auto built = build_system(d);
    EXPECT_EQ(built.system->delta_K(1), Rational(4));
    EXPECT_EQ(built.system->delta_K(2), Rational(1));
    EXPECT_THROW(build_system(parse_system_descriptor(
                     R"({"model":"heisenberg","N":4,"delta_overrides":[{"h":"nope","delta_K":2}]})")),
                 InputError);
}

TEST(SemidirectSignalJson, RoundTripAndPlainFallback) {
    const auto sys = build_system(parse_system_descriptor(R"({"model":"heisenberg","N":4})")).system;
    PortableRng rng(3);
    const auto f = fixtures::random_semidirect_signal(sys, rng);
    const auto g = parse_semidirect_signal(semidirect_signal_to_json(f), sys);
    ASSERT_EQ(g.slices().size(), f.slices().size());
    for (const auto &[h, s] : f.slices()) EXPECT_EQ(g.slices().at(h).values(), s.values());

    const auto plain = parse_semidirect_signal(signal_to_json(random_signal(sys->group(), rng)), sys);
    ASSERT_EQ(plain.slices().size(), 1u);
    EXPECT_EQ(plain.slices().begin()->first, sys->acting_group().identity());
    EXPECT_THROW(parse_semidirect_signal(R"({"moduli":[3,3],"re":[0,0,0,0,0,0,0,0,0]})", sys), InputError);
}

TEST(ZakCsv, RoundTripIsExact) {
    const FiniteAbelianGroup K({2, 8});
    const auto D = ZakDomain::make(subgroup_from_generators(K, std::vector<GroupElement>{GroupElement{{0, 2}}}));
    PortableRng rng(4);
    const auto Z = zak(random_signal(K, rng), D);
    const auto csv = zak_to_csv(Z);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "k\\omega,0:0,0:1,0:2,0:3");
    const auto back = zak_from_csv(csv, D);
    EXPECT_EQ(back.values(), Z.values());
}

TEST(ZakCsv, DeltaExampleLayout) {
    const FiniteAbelianGroup K({4});
    const auto D = ZakDomain::make(subgroup_from_generators(K, std::vector<GroupElement>{GroupElement{{2}}}));
    EXPECT_EQ(zak_to_csv(zak(Signal::delta(K, GroupElement{{0}}), D)), "k\\omega,0,1\n0,1+0i,1+0i\n1,0+0i,0+0i\n");
}

TEST(ZakCsv, ShapeErrors) {
    const FiniteAbelianGroup K({4});
    const auto D = ZakDomain::make(subgroup_from_generators(K, std::vector<GroupElement>{GroupElement{{2}}}));
    EXPECT_THROW(zak_from_csv("k\\omega,0,1\n0,1+0i\n1,0+0i,0+0i\n", D), InputError);
    EXPECT_THROW(zak_from_csv("k\\omega,0,1\n0,1+0i,1+0i\n", D), InputError);
}

} // namespace
} // namespace tauzak

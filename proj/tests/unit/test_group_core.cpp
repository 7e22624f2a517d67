#include <gtest/gtest.h>

#include <numbers>

#include "oracles.hpp"
#include "tauzak/group_core.hpp"
#include "tauzak/random.hpp"

namespace tauzak {
namespace {

using oracle::Vec;

GroupElement el(Vec r) { return GroupElement{std::move(r)}; }
Character ch(Vec r) { return Character{std::move(r)}; }

std::set<Vec> as_set(const Subgroup &S) {
    std::set<Vec> out;
    for (const auto &e : S.elements()) out.insert(e.residues);
    return out;
}

std::set<Vec> as_set(const CharacterSubgroup &S) {
    std::set<Vec> out;
    for (const auto &e : S.elements()) out.insert(e.residues);
    return out;
}

// ------------------------------------------------------------------- groups

TEST(FiniteAbelianGroup, OrderAndEnumerationAreStable) {
    const FiniteAbelianGroup K({2, 3, 4});
    EXPECT_EQ(K.order(), 24u);
    EXPECT_EQ(K.exponent(), 12);
    for (std::size_t i = 0; i < K.order(); ++i) EXPECT_EQ(K.index_of(K.residues_at(i)), i);
    EXPECT_EQ(K.residues_at(0), (Vec{0, 0, 0}));
    EXPECT_EQ(K.residues_at(23), (Vec{1, 2, 3}));
    const auto elems = K.elements();
    EXPECT_TRUE(std::is_sorted(elems.begin(), elems.end()));
}

TEST(FiniteAbelianGroup, RejectsNonPositiveModuli) {
    EXPECT_THROW(FiniteAbelianGroup({4, 0}), StructuralError);
    EXPECT_THROW(FiniteAbelianGroup({-3}), StructuralError);
}

TEST(FiniteAbelianGroup, ArithmeticReducesComponentwise) {
    const FiniteAbelianGroup K({4, 6});
    EXPECT_EQ(K.add(el({3, 5}), el({2, 4})).residues, (Vec{1, 3}));
    EXPECT_EQ(K.negate(el({1, 0})).residues, (Vec{3, 0}));
    EXPECT_EQ(K.make<GroupElement>(Vec{-1, 13}).residues, (Vec{3, 1}));
    EXPECT_EQ(K.zero<GroupElement>().residues, (Vec{0, 0}));
}

// ------------------------------------------------------------------ pairing

TEST(Pair, IdentityElementPairsToOne) {
    const FiniteAbelianGroup K({4});
    for (const auto &w : K.characters()) EXPECT_EQ(pair(K, el({0}), w), std::complex<double>(1.0, 0.0));
}

TEST(Pair, HalfTurnOnZ4) {
    const FiniteAbelianGroup K({4});
    const auto want = oracle::pairing({4}, {2}, {1});
    EXPECT_NEAR(std::abs(want - std::complex<double>(-1.0, 0.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(pair(K, el({2}), ch({1})) - std::complex<double>(-1.0, 0.0)), 0.0, 1e-12);
}

TEST(Pair, MixedModuliFiveSixthsTurn) {
    const FiniteAbelianGroup K({2, 3});
    const auto want = oracle::pairing({2, 3}, {1, 1}, {1, 1});
    const auto frozen = std::polar(1.0, 5.0 * std::numbers::pi / 3.0);
    EXPECT_NEAR(std::abs(want - frozen), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(pair(K, el({1, 1}), ch({1, 1})) - frozen), 0.0, 1e-12);
}

TEST(Pair, DimensionMismatchIsStructural) {
    const FiniteAbelianGroup K({2, 3});
    EXPECT_THROW(pair(K, el({1}), ch({1, 1})), StructuralError);
}

TEST(Pair, BiadditiveAndUnimodularExhaustively) {
    for (const auto &moduli : {std::vector<std::int64_t>{8, 8}, {2, 4, 8}, {3, 5}, {64}}) {
        const FiniteAbelianGroup K(moduli);
        ASSERT_LE(K.order(), 64u);
        const auto E = K.elements();
        const auto W = K.characters();
        for (const auto &a : E)
            for (const auto &w : W) {
                EXPECT_NEAR(std::abs(pair(K, a, w)), 1.0, 1e-12);
                EXPECT_NEAR(std::abs(pair(K, a, w) - oracle::pairing(moduli, a.residues, w.residues)), 0.0, 1e-12);
            }
        PortableRng rng(7);
        for (int t = 0; t < 400; ++t) {
            const auto &a = E[rng.below(E.size())];
            const auto &b = E[rng.below(E.size())];
            const auto &w = W[rng.below(W.size())];
            const auto &v = W[rng.below(W.size())];
            EXPECT_NEAR(std::abs(pair(K, K.add(a, b), w) - pair(K, a, w) * pair(K, b, w)), 0.0, 1e-12);
            EXPECT_NEAR(std::abs(pair(K, a, K.add(w, v)) - pair(K, a, w) * pair(K, a, v)), 0.0, 1e-12);
        }
    }
}

// ---------------------------------------------------------------- subgroups

TEST(Subgroup, GeneratedByTwoInZ4) {
    const FiniteAbelianGroup K({4});
    const std::vector<GroupElement> gens{el({2})};
    const auto L = subgroup_from_generators(K, gens);
    const auto want = oracle::closure({4}, {{2}});
    EXPECT_EQ(want, (std::set<Vec>{{0}, {2}}));
    EXPECT_EQ(as_set(L), want);
    EXPECT_EQ(L.order(), 2u);
}

TEST(Subgroup, EmptyGeneratorsGiveTrivialSubgroup) {
    const FiniteAbelianGroup K({4});
    const auto L = subgroup_from_generators(K, std::vector<GroupElement>{});
    EXPECT_EQ(L.order(), 1u);
    EXPECT_EQ(as_set(L), (std::set<Vec>{{0}}));
}

TEST(Subgroup, SpanningGeneratorsGiveWholeGroup) {
    const FiniteAbelianGroup K({2, 2});
    const std::vector<GroupElement> gens{el({1, 0}), el({0, 1})};
    EXPECT_EQ(subgroup_from_generators(K, gens).order(), 4u);
}

TEST(Subgroup, GeneratorRankMismatchIsStructural) {
    const FiniteAbelianGroup K({2, 2});
    const std::vector<GroupElement> gens{el({1})};
    EXPECT_THROW(subgroup_from_generators(K, gens), StructuralError);
}

TEST(Subgroup, MatchesClosureAndIsIdempotent) {
    PortableRng rng(11);
    for (const auto &moduli : {std::vector<std::int64_t>{12}, {2, 4}, {4, 6}, {3, 9}, {2, 2, 4}}) {
        const FiniteAbelianGroup K(moduli);
        for (int t = 0; t < 30; ++t) {
            std::vector<GroupElement> gens;
            std::vector<Vec> raw;
            const auto count = rng.below(4);
            for (std::uint64_t g = 0; g < count; ++g) {
                gens.push_back(K.element(rng.below(K.order())));
                raw.push_back(gens.back().residues);
            }
            const auto L = subgroup_from_generators(K, gens);
            const auto want = oracle::closure(moduli, raw);
            ASSERT_EQ(as_set(L), want);
            EXPECT_EQ(L.order() * L.index(), K.order());
            const auto again = subgroup_from_generators(K, L.canonical_generators());
            EXPECT_TRUE(again == L);
            EXPECT_EQ(again.canonical_basis(), L.canonical_basis());
            for (const auto &k : K.elements()) EXPECT_EQ(L.contains(k), want.contains(k.residues));
        }
    }
}

TEST(Subgroup, ClosedUnderAdditionAndNegation) {
    const FiniteAbelianGroup K({4, 8});
    const std::vector<GroupElement> gens{el({1, 2}), el({2, 4})};
    const auto L = subgroup_from_generators(K, gens);
    for (const auto &a : L.elements()) {
        EXPECT_TRUE(L.contains(K.negate(a)));
        for (const auto &b : L.elements()) EXPECT_TRUE(L.contains(K.add(a, b)));
    }
}

// ------------------------------------------------------------- annihilators

TEST(Annihilator, OfTwoZ4IsTwoZ4) {
    const FiniteAbelianGroup K({4});
    const auto L = subgroup_from_generators(K, std::vector<GroupElement>{el({2})});
    const auto want = oracle::annihilator({4}, oracle::closure({4}, {{2}}));
    EXPECT_EQ(want, (std::set<Vec>{{0}, {2}}));
    EXPECT_EQ(as_set(annihilator(L)), want);
}

TEST(Annihilator, TrivialAndFullExtremes) {
    const FiniteAbelianGroup K({4});
    const auto trivial = subgroup_from_generators(K, std::vector<GroupElement>{});
    EXPECT_EQ(annihilator(trivial).order(), 4u);
    const auto full = subgroup_from_generators(K, std::vector<GroupElement>{el({1})});
    EXPECT_EQ(as_set(annihilator(full)), (std::set<Vec>{{0}}));
}

TEST(Annihilator, ExhaustiveDoubleAnnihilatorAndOrders) {
    for (const auto &moduli : {std::vector<std::int64_t>{12}, {2, 4}, {4, 4}, {2, 6}}) {
        const FiniteAbelianGroup K(moduli);
        for (const auto &S : oracle::all_subgroups(moduli)) {
            const std::vector<Vec> raw(S.begin(), S.end());
            std::vector<GroupElement> gens;
            for (const auto &r : raw) gens.push_back(el(r));
            const auto L = subgroup_from_generators(K, gens);
            const auto perp = annihilator(L);
            EXPECT_EQ(as_set(perp), oracle::annihilator(moduli, S));
            EXPECT_EQ(L.order() * perp.order(), K.order());
            EXPECT_EQ(as_set(annihilator(perp)), S);
            EXPECT_TRUE(annihilator(perp) == L);
        }
    }
}

// -------------------------------------------------------------- transversal

TEST(Transversal, Z4ModTwo) {
    const FiniteAbelianGroup K({4});
    const auto L = subgroup_from_generators(K, std::vector<GroupElement>{el({2})});
    const auto want = oracle::transversal({4}, as_set(L));
    EXPECT_EQ(want, (std::vector<Vec>{{0}, {1}}));
    const auto t = transversal(L);
    ASSERT_EQ(t.size(), 2u);
    EXPECT_EQ(t[0].residues, Vec{0});
    EXPECT_EQ(t[1].residues, Vec{1});
}

TEST(Transversal, WholeGroupHasOneCoset) {
    const FiniteAbelianGroup K({4});
    const auto L = subgroup_from_generators(K, std::vector<GroupElement>{el({1})});
    ASSERT_EQ(transversal(L).size(), 1u);
    EXPECT_EQ(transversal(L)[0].residues, Vec{0});
}

TEST(Transversal, Z6ModThree) {
    const FiniteAbelianGroup K({6});
    const auto L = subgroup_from_generators(K, std::vector<GroupElement>{el({3})});
    const auto want = oracle::transversal({6}, as_set(L));
    EXPECT_EQ(want, (std::vector<Vec>{{0}, {1}, {2}}));
    std::vector<Vec> got;
    for (const auto &r : transversal(L)) got.push_back(r.residues);
    EXPECT_EQ(got, want);
}

TEST(Transversal, LexicographicMinimaPartitionTheGroup) {
    for (const auto &moduli : {std::vector<std::int64_t>{12}, {2, 4}, {4, 6}, {2, 8}}) {
        const FiniteAbelianGroup K(moduli);
        for (const auto &S : oracle::all_subgroups(moduli)) {
            std::vector<GroupElement> gens;
            for (const auto &r : S) gens.push_back(el(r));
            const auto L = subgroup_from_generators(K, gens);
            std::vector<Vec> got;
            for (const auto &r : L.transversal()) got.push_back(r.residues);
            EXPECT_EQ(got, oracle::transversal(moduli, S));
            std::set<Vec> covered;
            for (const auto &r : L.transversal())
                for (const auto &l : S) EXPECT_TRUE(covered.insert(oracle::add(moduli, r.residues, l)).second);
            EXPECT_EQ(covered.size(), K.order());
        }
    }
}

// ------------------------------------------------------------ automorphisms

TEST(Automorphism, IdentityFixesEverything) {
    const FiniteAbelianGroup K({3, 5});
    const auto I = Automorphism::identity(K);
    for (const auto &k : K.elements()) EXPECT_EQ(apply_auto(I, k), k);
}

TEST(Automorphism, ShearOnZ8Squared) {
    const FiniteAbelianGroup K({8, 8});
    const Automorphism A(K, IntMatrix{{1, 1}, {0, 1}});
    const auto want = oracle::mat_vec({{1, 1}, {0, 1}}, {8, 8}, {3, 5});
    EXPECT_EQ(want, (Vec{0, 5}));
    EXPECT_EQ(apply_auto(A, el({3, 5})).residues, want);
}

TEST(Automorphism, RotationOnZ5Squared) {
    const FiniteAbelianGroup K({5, 5});
    const Automorphism A(K, IntMatrix{{0, -1}, {1, 0}});
    const auto want = oracle::mat_vec({{0, -1}, {1, 0}}, {5, 5}, {1, 0});
    EXPECT_EQ(want, (Vec{0, 1}));
    EXPECT_EQ(apply_auto(A, el({1, 0})).residues, want);
}

TEST(Automorphism, RejectsSingularAndIllDefinedMatrices) {
    const FiniteAbelianGroup K({4, 4});
    EXPECT_THROW(Automorphism(K, IntMatrix{{2, 0}, {0, 1}}), StructuralError);
    EXPECT_THROW(Automorphism(K, IntMatrix{{1, 0}}), StructuralError);
    const FiniteAbelianGroup mixed({2, 4});
    // (0, 1) -> (1 * 1) in Z_2 is fine, but (1, 0) -> (.., 1) in Z_4 sends 2 * e_1 = 0 to 2.
    EXPECT_THROW(Automorphism(mixed, IntMatrix{{1, 0}, {1, 1}}), StructuralError);
    EXPECT_NO_THROW(Automorphism(mixed, IntMatrix{{1, 0}, {2, 1}}));
}

TEST(Automorphism, CompositionAndInverseExhaustive) {
    const FiniteAbelianGroup K({6, 6});
    const Automorphism A(K, IntMatrix{{1, 1}, {0, 1}});
    const Automorphism B(K, IntMatrix{{1, 0}, {5, 1}});
    const auto AB = A.compose(B);
    const auto Ainv = A.inverse();
    for (const auto &k : K.elements()) {
        EXPECT_EQ(apply_auto(AB, k), apply_auto(A, apply_auto(B, k)));
        EXPECT_EQ(apply_auto(Ainv, apply_auto(A, k)), k);
        EXPECT_EQ(apply_auto(A, apply_auto(Ainv, k)), k);
    }
    EXPECT_TRUE(A.compose(Ainv).is_identity());
}

TEST(Automorphism, MixedModuliInverse) {
    const FiniteAbelianGroup K({2, 4});
    const Automorphism A(K, IntMatrix{{1, 0}, {2, 3}});
    const auto inv = A.inverse();
    for (const auto &k : K.elements()) EXPECT_EQ(inv.apply(A.apply(k)), k);
}

TEST(Automorphism, DualMatrixMatchesPairingSearch) {
    const FiniteAbelianGroup K({4, 4});
    const Automorphism A(K, IntMatrix{{1, 1}, {0, 1}});
    for (const auto &w : K.characters()) EXPECT_EQ(A.apply_dual(w).residues, oracle::dual_by_search(A, w.residues));
    const FiniteAbelianGroup mixed({2, 4});
    const Automorphism B(mixed, IntMatrix{{1, 0}, {2, 3}});
    for (const auto &w : mixed.characters())
        EXPECT_EQ(B.apply_dual(w).residues, oracle::dual_by_search(B, w.residues));
}

// -------------------------------------------------------------- invariance

TEST(Invariance, WholeGroupAlwaysInvariant) {
    const FiniteAbelianGroup K({8, 8});
    const std::vector<GroupElement> gens{el({1, 0}), el({0, 1})};
    const auto L = subgroup_from_generators(K, gens);
    const std::vector<Automorphism> H{Automorphism(K, IntMatrix{{1, 3}, {0, 1}}),
                                      Automorphism(K, IntMatrix{{0, -1}, {1, 0}})};
    EXPECT_TRUE(is_tau_invariant(L, H));
}

TEST(Invariance, EvenLatticeUnderShears) {
    const FiniteAbelianGroup K({8, 8});
    const std::vector<GroupElement> gens{el({2, 0}), el({0, 2})};
    const auto L = subgroup_from_generators(K, gens);
    std::vector<Automorphism> H;
    for (int s = 0; s < 8; ++s) H.emplace_back(K, IntMatrix{{1, s}, {0, 1}});
    // Direct oracle: every element of L maps into the even vectors.
    for (const auto &A : H)
        for (const auto &l : L.elements()) {
            const auto img = oracle::mat_vec({{1, A.matrix()(0, 1)}, {0, 1}}, {8, 8}, l.residues);
            EXPECT_TRUE(img[0] % 2 == 0 && img[1] % 2 == 0);
        }
    EXPECT_TRUE(is_tau_invariant(L, H));
}

TEST(Invariance, TorusLatticeFailsWhenNDoesNotDivideM) {
    // L_(4,2) in Z_12^2 is generated by (3, 0) and (0, 6); tau_1 sends (3, 0) to (3, 3).
    const FiniteAbelianGroup K({12, 12});
    const std::vector<GroupElement> gens{el({3, 0}), el({0, 6})};
    const auto L = subgroup_from_generators(K, gens);
    const std::vector<Automorphism> H{Automorphism(K, IntMatrix{{1, 0}, {1, 1}})};
    EXPECT_FALSE(is_tau_invariant(L, H));
    const auto v = find_invariance_violation(L, H);
    ASSERT_TRUE(v.has_value());
    EXPECT_FALSE(L.contains(v->image));
}

TEST(Invariance, GeneratorCheckAgreesWithFullCheck) {
    const FiniteAbelianGroup K({6, 6});
    PortableRng rng(5);
    const std::vector<Automorphism> H{Automorphism(K, IntMatrix{{1, 0}, {1, 1}}),
                                      Automorphism(K, IntMatrix{{1, 2}, {0, 1}})};
    for (int t = 0; t < 60; ++t) {
        std::vector<GroupElement> gens{K.element(rng.below(K.order())), K.element(rng.below(K.order()))};
        const auto L = subgroup_from_generators(K, gens);
        bool full = true;
        for (const auto &A : H)
            for (const auto &l : L.elements()) full = full && L.contains(A.apply(l));
        EXPECT_EQ(is_tau_invariant(L, H), full);
    }
}

} // namespace
} // namespace tauzak

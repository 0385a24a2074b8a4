#include "gerbecat/pivotal.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace gerbecat;

namespace {

const double kPhi = (1 + std::sqrt(5.0)) / 2;

PivotalSymbols yang_lee_eps(int sign) {
    FusionRing R = yang_lee_ring();
    PivotalSymbols e = trivial_symbols(R);
    e.at(1, 1, 1) = sign;
    return e;
}

}  // namespace

TEST(FusionRing, BuiltinsValidate) {
    for (const auto& R : {yang_lee_ring(), b_ring(2), b_ring(3), tambara_yamagami_ring(*cyclic_group(2)),
                          group_ring(*cyclic_group(3)), group_ring(*symmetric_group(3)),
                          ring_product(yang_lee_ring(), b_ring(2))}) {
        RingCheck c = validate_fusion_ring(R);
        EXPECT_TRUE(c.pass) << R.name << " " << c.axiom;
    }
    EXPECT_EQ(yang_lee_ring().rank, 2);
    EXPECT_EQ(yang_lee_ring().star[1], 1);
    FusionRing B2 = b_ring(2);
    EXPECT_EQ(B2.rank, 3);
    EXPECT_EQ(B2.n(2, 2, 2), 1);
    EXPECT_EQ(B2.n(0, 2, 2), 1);
    EXPECT_EQ(B2.n(1, 2, 2), 1);
    EXPECT_EQ(tambara_yamagami_ring(*cyclic_group(2)).rank, 3);
}

TEST(FusionRing, PrintedYangLeeFailsDuality) {
    RingCheck c = validate_fusion_ring(yang_lee_printed_ring());
    EXPECT_FALSE(c.pass);
    EXPECT_EQ(c.axiom, "duality");
    EXPECT_EQ(c.witness, (std::vector<int>{0, 1, 1}));
}

TEST(FusionRing, BrokenRingsHaveWitnesses) {
    // X^2 = 1 + Y, XY = X, Y^2 = 1 is the Ising ring and passes
    FusionRing ising = make_fusion_ring(3, {0, 1, 2},
                                        {{0, 0, 0, 1}, {1, 0, 1, 1}, {1, 1, 0, 1}, {2, 0, 2, 1}, {2, 2, 0, 1},
                                         {0, 1, 1, 1}, {0, 2, 2, 1}, {2, 1, 1, 1}, {1, 1, 2, 1}, {1, 2, 1, 1}});
    EXPECT_TRUE(validate_fusion_ring(ising).pass);
    FusionRing B2 = b_ring(2);
    B2.n(1, 2, 2) = 2;
    RingCheck c = validate_fusion_ring(B2);
    EXPECT_FALSE(c.pass);
    EXPECT_EQ(c.axiom, "reciprocity");
    EXPECT_EQ(c.witness.size(), 3u);
    // commutative but not associative: X^2 = 1 + Y, Y^2 = 1 + Y, XY = X
    FusionRing bad = make_fusion_ring(3, {0, 1, 2},
                                      {{0, 0, 0, 1}, {1, 0, 1, 1}, {1, 1, 0, 1}, {2, 0, 2, 1}, {2, 2, 0, 1},
                                       {0, 1, 1, 1}, {0, 2, 2, 1}, {2, 1, 1, 1}, {1, 1, 2, 1}, {1, 2, 1, 1},
                                       {2, 2, 2, 1}});
    c = validate_fusion_ring(bad);
    EXPECT_FALSE(c.pass);
    EXPECT_EQ(c.axiom, "associativity");
    EXPECT_EQ(c.witness.size(), 4u);
}

TEST(Pivotal, CohomologyOfBuiltins) {
    EXPECT_EQ(pivotal_cohomology(yang_lee_ring()).order, 1);
    EXPECT_EQ(pivotal_cohomology(b_ring(2)).order, 1);
    HPivClass h3 = pivotal_cohomology(b_ring(3));
    EXPECT_EQ(h3.order, 2);
    EXPECT_EQ(h3.rank, 1);
    EXPECT_EQ(h3.free_orbits, 3);
    EXPECT_EQ(h3.generators.size(), 1u);
}

TEST(Pivotal, CohomologyMatchesEnumeration) {
    std::vector<FusionRing> rings{yang_lee_ring(), b_ring(2), b_ring(3), b_ring(4), b_ring(5),
                                  tambara_yamagami_ring(*cyclic_group(2)), tambara_yamagami_ring(*cyclic_group(3)),
                                  group_ring(*cyclic_group(4)), group_ring(*symmetric_group(3)),
                                  ring_product(yang_lee_ring(), yang_lee_ring())};
    for (const auto& R : rings) EXPECT_EQ(pivotal_cohomology(R).order, oracle::hpiv_order(R)) << R.name;
}

TEST(Pivotal, CohomologyInvariantUnderRelabeling) {
    std::mt19937_64 rng(2);
    for (const auto& R : {b_ring(3), b_ring(4), tambara_yamagami_ring(*cyclic_group(3))}) {
        long long ref = pivotal_cohomology(R).order;
        for (int t = 0; t < 10; ++t) {
            std::vector<int> perm(R.rank);
            for (int i = 0; i < R.rank; ++i) perm[i] = i;
            std::shuffle(perm.begin() + 1, perm.end(), rng);
            EXPECT_EQ(pivotal_cohomology(relabel(R, perm)).order, ref);
        }
    }
}

TEST(Pivotal, SymbolClassBasics) {
    FusionRing B3 = b_ring(3);
    EXPECT_TRUE(symbol_class(B3, trivial_symbols(B3)).trivial);
    // twisting by f keeps the class
    PivotalSymbols tw = twist_symbols(B3, trivial_symbols(B3), {1, -1, -1, -1});
    EXPECT_TRUE(symbol_class(B3, tw).trivial);
    tw = twist_symbols(B3, trivial_symbols(B3), {1, 1, 1, -1});
    EXPECT_TRUE(symbol_class(B3, tw).trivial);
    // flip the orbit of eps^{X_2}_{X_1 X_1}
    PivotalSymbols e = trivial_symbols(B3);
    e.at(2, 1, 1) = -1;
    e.at(1, 2, 2) = -1;
    SymbolClass c = symbol_class(B3, e);
    EXPECT_FALSE(c.trivial);
    EXPECT_FALSE(solve_twisted(B3, e, true).exists);
    EXPECT_FALSE(oracle::spherical_solvable(B3, e));
}

TEST(Pivotal, SymbolClassRejectsAsymmetricInput) {
    FusionRing B3 = b_ring(3);
    PivotalSymbols e = trivial_symbols(B3);
    e.at(2, 1, 1) = -1;  // partner (1,2,2) left at +1
    EXPECT_THROW(symbol_class(B3, e), Error);
    PivotalSymbols f = trivial_symbols(B3);
    f.at(0, 3, 3) = -1;
    EXPECT_THROW(symbol_class(B3, f), Error);
}

TEST(Pivotal, TwistedSolverOnGroupRings) {
    for (const auto& G : {cyclic_group(3), symmetric_group(3), quaternion_group(), cyclic_group(4)}) {
        FusionRing R = group_ring(*G);
        TwistedSolution s = solve_twisted(R, trivial_symbols(R), false);
        ASSERT_TRUE(s.exists);
        EXPECT_TRUE(s.unit_and_duals);
        EXPECT_EQ(s.torsor_size, oracle::abelianization_order(*G));
        TwistedSolution sp = solve_twisted(R, trivial_symbols(R), true);
        ASSERT_TRUE(sp.exists);
        EXPECT_EQ(sp.torsor_size, oracle::sign_characters(*G));
    }
}

TEST(Pivotal, TwistedSolverWithSigns) {
    FusionRing YL = yang_lee_ring();
    TwistedSolution s = solve_twisted(YL, yang_lee_eps(-1), false);
    ASSERT_TRUE(s.exists);
    EXPECT_EQ(s.phases[1], Rational(1, 2));
    EXPECT_TRUE(s.unit_and_duals);
    EXPECT_EQ(s.torsor_size, 1);
    // B3 with a nontrivial class: phases exist over U(1) but not over signs
    FusionRing B3 = b_ring(3);
    PivotalSymbols e = trivial_symbols(B3);
    e.at(2, 1, 1) = e.at(1, 2, 2) = -1;
    TwistedSolution u = solve_twisted(B3, e, false);
    TwistedSolution sp = solve_twisted(B3, e, true);
    EXPECT_FALSE(sp.exists);
    if (u.exists) EXPECT_TRUE(u.unit_and_duals);
}

TEST(Pivotal, SphericalIffTrivialClassOnSeededInstances) {
    std::mt19937_64 rng(42);
    int nontrivial = 0;
    for (int t = 0; t < 100; ++t) {
        FusionRing R = oracle::random_ring(rng, 8);
        PivotalSymbols e = oracle::random_symbols(R, rng);
        bool trivial = symbol_class(R, e).trivial;
        bool solvable = solve_twisted(R, e, true).exists;
        EXPECT_EQ(trivial, solvable) << R.name;
        EXPECT_EQ(solvable, oracle::spherical_solvable(R, e)) << R.name;
        nontrivial += !trivial;
        // a sign solution is a U(1) solution
        if (solvable) EXPECT_TRUE(solve_twisted(R, e, false).exists) << R.name;
    }
    EXPECT_GT(nontrivial, 10);
}

TEST(Pivotal, DimensionChecks) {
    FusionRing Z3 = group_ring(*cyclic_group(3));
    EXPECT_EQ(dimension_checks(Z3, trivial_symbols(Z3), {1, 1, 1}).residual, 0.0);
    FusionRing YL = yang_lee_ring();
    EXPECT_LT(dimension_checks(YL, yang_lee_eps(1), {1, kPhi}).residual, 1e-10);
    EXPECT_LT(dimension_checks(YL, yang_lee_eps(1), {1, -1 / kPhi}).residual, 1e-10);
    EXPECT_LT(dimension_checks(YL, yang_lee_eps(-1), {1, 1 / kPhi}).residual, 1e-10);
    EXPECT_LT(dimension_checks(YL, yang_lee_eps(-1), {1, -kPhi}).residual, 1e-10);
    // the pairing d = (1, -1/phi) with eps^X_{XX} = -1 does not satisfy the identity
    EXPECT_GT(dimension_checks(YL, yang_lee_eps(-1), {1, -1 / kPhi}).residual, 1.0);
    EXPECT_TRUE(dimension_checks(YL, yang_lee_eps(1), {1, -1 / kPhi}).paired_positive);
}

TEST(Pivotal, FrobeniusPerron) {
    FPDimensions z = frobenius_perron(group_ring(*symmetric_group(3)));
    for (double d : z.d) EXPECT_NEAR(d, 1.0, 1e-12);
    FPDimensions y = frobenius_perron(yang_lee_ring());
    EXPECT_LT(std::abs(y.d[1] * y.d[1] - y.d[1] - 1), 1e-10);
    EXPECT_LT(y.homomorphism_residual, 1e-9);
    FPDimensions t = frobenius_perron(tambara_yamagami_ring(*cyclic_group(2)));
    EXPECT_LT(std::abs(t.d[2] - std::sqrt(2.0)), 1e-10);
    FPDimensions b = frobenius_perron(b_ring(3));
    // Y^2 = 2Y + 3 gives d(Y) = 3
    EXPECT_NEAR(b.d[3], 3.0, 1e-10);
    for (double d : b.d) EXPECT_GT(d, 0);
}

TEST(Pivotal, GrouplikeCounts) {
    EXPECT_EQ(grouplike_counts(*cyclic_group(3)).evenhanded, 3);
    EXPECT_EQ(grouplike_counts(*cyclic_group(3)).spherical, 1);
    EXPECT_EQ(grouplike_counts(*symmetric_group(3)).evenhanded, 2);
    EXPECT_EQ(grouplike_counts(*symmetric_group(3)).spherical, 2);
    EXPECT_EQ(grouplike_counts(*quaternion_group()).evenhanded, 4);
    EXPECT_EQ(grouplike_counts(*quaternion_group()).spherical, 4);
    for (const auto& G : {cyclic_group(6), dihedral_group(8), dihedral_group(12), symmetric_group(4),
                          direct_product(cyclic_group(2), cyclic_group(4))}) {
        GrouplikeCounts c = grouplike_counts(*G);
        EXPECT_EQ(c.evenhanded, oracle::abelianization_order(*G));
        EXPECT_EQ(c.spherical, oracle::sign_characters(*G));
    }
}

TEST(Pivotal, SemisimpleDagger) {
    EXPECT_EQ(semisimple_dagger_check({1.0}, {1.0}, 0), 0.0);
    EXPECT_LT(semisimple_dagger_check({1, 2, 3}, {1, 1}, 5), 1e-9);
    EXPECT_GT(semisimple_dagger_check({1, 2, 3}, {1, 1}, 5, 1.1), 1e-3);
    for (std::uint64_t s = 0; s < 10; ++s) EXPECT_LT(semisimple_dagger_check({0.5, 2}, {3, 1, 7}, s), 1e-9);
}

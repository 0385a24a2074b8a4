#include "gerbecat/cochain.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace gerbecat;

namespace {

GroupPtr klein() { return direct_product(cyclic_group(2), cyclic_group(2)); }

// c((a1,b1),(a2,b2)) = a1*b2/2 with (a,b) at index 2a+b; g2 is the left argument.
Cochain schur_point() {
    auto V = klein();
    Cochain c(2, point_gset(V));
    for (int g2 = 0; g2 < 4; ++g2)
        for (int g1 = 0; g1 < 4; ++g1) c.at(0, g2, g1) = Phase((g2 >> 1) * (g1 & 1), 2);
    return c;
}

}  // namespace

TEST(Cocycle, ZeroAndSchurPass) {
    auto S3 = symmetric_group(3);
    EXPECT_FALSE(check_cocycle(Cochain(2, regular_gset(S3))));
    EXPECT_FALSE(check_cocycle(schur_point()));
}

TEST(Cocycle, RandomTableViolates) {
    std::mt19937_64 rng(7);
    int violations = 0;
    for (int t = 0; t < 20; ++t) {
        Cochain c = random_cochain(2, point_gset(symmetric_group(3)), 6, rng);
        auto w = check_cocycle(c);
        if (w) {
            ++violations;
            EXPECT_EQ(w->size(), 4u);
        }
    }
    EXPECT_EQ(violations, 20);
}

TEST(Cocycle, UnnormalizedRejected) {
    // a constant 2-cochain satisfies the cocycle identity but is not normalized
    Cochain c(2, point_gset(cyclic_group(2)));
    for (std::size_t i = 0; i < c.size(); ++i) c.entry(i) = Phase(1, 3);
    EXPECT_THROW(check_cocycle(c), Error);
    Cochain gamma;
    Cochain n = normalize(c, &gamma);
    EXPECT_TRUE(n.normalized());
    EXPECT_FALSE(check_cocycle(n));
    EXPECT_EQ(n + coboundary(gamma), c);
}

TEST(Coboundary, QuarterOnZ2Point) {
    Cochain gamma(1, point_gset(cyclic_group(2)));
    gamma.at(1, 0) = Phase(1, 4);
    Cochain d = coboundary(gamma);
    EXPECT_EQ(d.at(0, 1, 1), Phase(1, 2));
    EXPECT_TRUE(coboundary(Cochain(1, point_gset(cyclic_group(2)))).is_zero());
}

TEST(Coboundary, RandomCoboundariesAreCocycles) {
    std::mt19937_64 rng(0);
    auto S3 = symmetric_group(3);
    GSet X = disjoint_union(coset_gset(S3, {0, 1}), point_gset(S3));
    for (int t = 0; t < 50; ++t) {
        Cochain d = coboundary(random_cochain(1, X, 12, rng));
        EXPECT_TRUE(d.normalized());
        EXPECT_FALSE(check_cocycle(d));
    }
}

TEST(Transgression, SchurPairing) {
    LoopGroupoid L;
    Cochain t = transgress(schur_point(), &L);
    // h = (0,1) at index 1 acting on the loop g = (1,0) at index 2.
    EXPECT_EQ(t.at(1, L.index_of(0, 2)), Phase(1, 2));
    EXPECT_FALSE(check_cocycle(t));
    for (int g = 0; g < 4; ++g)
        for (int h = 0; h < 4; ++h)
            EXPECT_EQ(t.at(h, L.index_of(0, g)), double_transgression(schur_point(), 0, g, h));
    EXPECT_TRUE(transgress(Cochain(2, point_gset(klein()))).is_zero());
}

TEST(Transgression, AdditiveAndCoboundariesStayTrivial) {
    std::mt19937_64 rng(3);
    auto D4 = dihedral_group(8);
    GSet X = coset_gset(D4, {0, 4});
    for (int t = 0; t < 5; ++t) {
        Cochain a = coboundary(random_cochain(1, X, 8, rng));
        Cochain b = coboundary(random_cochain(1, X, 8, rng));
        EXPECT_EQ(transgress(a + b), transgress(a) + transgress(b));
        Cochain ta = transgress(a);
        auto r = cohomologous(ta, Cochain(1, ta.carrier()));
        ASSERT_TRUE(r.cohomologous);
        EXPECT_EQ(coboundary(*r.gamma), -ta);
    }
}

TEST(Cohomologous, ReflexiveAndCoboundaryWitness) {
    std::mt19937_64 rng(11);
    auto S3 = symmetric_group(3);
    GSet X = regular_gset(S3);
    Cochain c = coboundary(random_cochain(1, X, 6, rng));
    auto self = cohomologous(c, c);
    ASSERT_TRUE(self.cohomologous);
    EXPECT_TRUE(self.gamma->is_zero());
    auto r = cohomologous(c, Cochain(2, X));
    ASSERT_TRUE(r.cohomologous);
    EXPECT_EQ(coboundary(*r.gamma), -c);
}

TEST(Cohomologous, SchurClassIsNontrivial) {
    Cochain s = schur_point();
    Cochain zero(2, s.carrier());
    auto r = cohomologous(s, zero);
    EXPECT_FALSE(r.cohomologous);
    EXPECT_FALSE(evaluate_functional(r.certificate, s).is_zero());
    EXPECT_FALSE(cohomologous_bruteforce(s, zero, 4));
    // twisting by a coboundary keeps the class
    Cochain gamma(1, s.carrier());
    gamma.at(3, 0) = Phase(1, 4);
    gamma.at(1, 0) = Phase(1, 3);
    Cochain s2 = s + coboundary(gamma);
    EXPECT_TRUE(cohomologous(s, s2).cohomologous);
    EXPECT_TRUE(cohomologous_bruteforce(s, s2, 12).has_value());
}

TEST(Cohomologous, ModulusNeedsGroupOrder) {
    // d gamma with gamma = 1/4 has order 2, but no gamma of order 2 solves it.
    Cochain gamma(1, point_gset(cyclic_group(2)));
    gamma.at(1, 0) = Phase(1, 4);
    Cochain d = coboundary(gamma);
    EXPECT_FALSE(cohomologous_bruteforce(Cochain(2, d.carrier()), d, 2));
    auto r = cohomologous(Cochain(2, d.carrier()), d);
    ASSERT_TRUE(r.cohomologous);
    EXPECT_EQ(coboundary(*r.gamma), d);
}

TEST(Cohomologous, AgreesWithBruteForceOnRandomCocycles) {
    std::mt19937_64 rng(5);
    auto Z4 = cyclic_group(4);
    GSet X = point_gset(Z4);
    for (int t = 0; t < 10; ++t) {
        Cochain c = coboundary(random_cochain(1, X, 4, rng));
        bool snf = cohomologous(c, Cochain(2, X)).cohomologous;
        bool brute = cohomologous_bruteforce(c, Cochain(2, X), 4).has_value();
        EXPECT_EQ(snf, brute);
    }
}

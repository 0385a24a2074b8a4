#include "gerbecat/gerbe.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace gerbecat;

namespace {

GroupPtr klein() { return direct_product(cyclic_group(2), cyclic_group(2)); }

Gerbe schur_gerbe() {
    GSet pt = point_gset(klein());
    Cochain c(2, pt);
    for (int g2 = 0; g2 < 4; ++g2)
        for (int g1 = 0; g1 < 4; ++g1) c.at(0, g2, g1) = Phase((g2 >> 1) * (g1 & 1), 2);
    return make_gerbe(pt, c, {Rational(1)});
}

}  // namespace

TEST(Gerbe, RegularGerbe) {
    Gerbe R = regular_gerbe(symmetric_group(3));
    EXPECT_EQ(R.size(), 6);
    EXPECT_TRUE(R.cocycle.is_zero());
    for (const auto& k : R.metric) EXPECT_EQ(k, Rational(1));
}

TEST(Gerbe, SchurPointIsValid) { EXPECT_NO_THROW(schur_gerbe()); }

TEST(Gerbe, RejectsBadMetrics) {
    auto S3 = symmetric_group(3);
    GSet X = coset_gset(S3, {0, 3, 4});
    EXPECT_THROW(make_gerbe(X, Cochain(2, X), {Rational(1), Rational(2)}), Error);
    EXPECT_THROW(make_gerbe(X, Cochain(2, X), {Rational(0), Rational(0)}), Error);
    EXPECT_NO_THROW(make_gerbe(X, Cochain(2, X), {Rational(3, 2), Rational(3, 2)}));
}

TEST(Gerbe, TensorMetricsMultiplyAndConjugateCancels) {
    auto V = klein();
    Gerbe S = schur_gerbe();
    Gerbe Y = make_gerbe(regular_gset(V), Cochain(2, regular_gset(V)), std::vector<Rational>(4, Rational(2, 3)));
    Gerbe T = tensor(Y, S, false);
    for (int p = 0; p < T.size(); ++p) EXPECT_EQ(T.metric[p], Rational(2, 3));
    Gerbe SS = tensor(S, S, true);
    EXPECT_TRUE(SS.cocycle.is_zero());
}

TEST(Gerbe, TensorWithRegularIsTrivialClass) {
    Gerbe S = schur_gerbe();
    Gerbe T = tensor(S, regular_gerbe(klein()), false);
    EXPECT_FALSE(T.cocycle.is_zero());
    EXPECT_TRUE(cohomologous(T.cocycle, Cochain(2, T.space)).cohomologous);
}

TEST(Gerbe, IsometricEquivalence) {
    Gerbe S = schur_gerbe();
    Gerbe triv = trivial_gerbe(point_gset(klein()));
    auto self = isometric_equivalent(S, S);
    ASSERT_TRUE(self);
    EXPECT_EQ(self->map, std::vector<int>{0});
    EXPECT_TRUE(verify_equivalence(S, S, *self));
    EXPECT_FALSE(isometric_equivalent(S, triv));
    EXPECT_FALSE(isometric_equivalent(triv, S));

    std::mt19937_64 rng(2);
    auto S3 = symmetric_group(3);
    GSet X = disjoint_union(coset_gset(S3, {0, 1}), regular_gset(S3));
    Gerbe A = trivial_gerbe(X);
    Cochain gamma = random_cochain(1, X, 6, rng);
    Gerbe B = make_gerbe(X, coboundary(gamma), A.metric);
    auto w = isometric_equivalent(A, B);
    ASSERT_TRUE(w);
    EXPECT_TRUE(verify_equivalence(A, B, *w));
    auto back = isometric_equivalent(B, A);
    ASSERT_TRUE(back);
    EXPECT_TRUE(verify_equivalence(B, A, *back));
}

TEST(Gerbe, EquivalenceRespectsMetricAndOrbitType) {
    auto S3 = symmetric_group(3);
    GSet X = coset_gset(S3, {0, 1});
    Gerbe A = trivial_gerbe(X);
    Gerbe B = make_gerbe(X, Cochain(2, X), std::vector<Rational>(3, Rational(2)));
    EXPECT_FALSE(isometric_equivalent(A, B));
    // conjugate subgroup gives an isomorphic G-set
    Gerbe C = trivial_gerbe(coset_gset(S3, {0, 2}));
    auto w = isometric_equivalent(A, C);
    ASSERT_TRUE(w);
    EXPECT_TRUE(verify_equivalence(A, C, *w));
    EXPECT_FALSE(isometric_equivalent(A, trivial_gerbe(coset_gset(S3, {0, 3, 4}))));
}

TEST(Gerbe, TensorWithTrivialPointIsIdentity) {
    auto S3 = symmetric_group(3);
    GSet X = coset_gset(S3, {0, 1});
    std::mt19937_64 rng(4);
    Gerbe A = make_gerbe(X, coboundary(random_cochain(1, X, 4, rng)), std::vector<Rational>(3, Rational(1, 2)));
    Gerbe T = tensor(A, trivial_gerbe(point_gset(S3)), false);
    auto w = isometric_equivalent(A, T);
    ASSERT_TRUE(w);
    EXPECT_EQ(w->map, (std::vector<int>{0, 1, 2}));
    EXPECT_TRUE(w->gamma.is_zero());
}

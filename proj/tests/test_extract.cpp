#include "gerbecat/extract.hpp"

#include <gtest/gtest.h>

using namespace gerbecat;

TEST(Extension, QuotientAndSections) {
    auto Q8 = quaternion_group();
    ExtensionData ext = make_extension(Q8, {0, 1});
    EXPECT_EQ(ext.G->order(), 4);
    EXPECT_EQ(ext.section, (std::vector<int>{0, 2, 4, 6}));
    EXPECT_EQ(alternate_section(ext), (std::vector<int>{0, 3, 5, 7}));
    // i*j = k descends to the Klein four-group table of the builtin product
    EXPECT_TRUE(ext.G->same_table(*direct_product(cyclic_group(2), cyclic_group(2))));
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            int phi = extension_cocycle(ext, a, b);
            EXPECT_TRUE(phi == 0 || phi == 1);
        }
    EXPECT_THROW(make_extension(symmetric_group(3), {0, 1}), Error);
    EXPECT_THROW(make_extension(Q8, {0, 1}, std::vector<int>{1, 2, 4, 6}), Error);
}

TEST(Extension, IrreduciblesOfK) {
    for (auto K : {cyclic_group(3), quaternion_group(), symmetric_group(3)}) {
        IrrSystem irr = irreducible_representations(K);
        int s = 0;
        for (int d : irr.dims) s += d * d;
        EXPECT_EQ(s, K->order());
        for (std::size_t i = 0; i < irr.chars.size(); ++i)
            for (std::size_t j = 0; j < irr.chars.size(); ++j) {
                cplx ip(0, 0);
                for (int k = 0; k < K->order(); ++k) ip += std::conj(irr.chars[i][k]) * irr.chars[j][k];
                ip /= static_cast<double>(K->order());
                EXPECT_NEAR(std::abs(ip - cplx(i == j ? 1.0 : 0.0, 0)), 0, 1e-8);
            }
    }
}

TEST(Extraction, S3OverA3) {
    auto S3 = symmetric_group(3);
    ExtensionData ext = make_extension(S3, {0, 3, 4});
    IrrSystem irr = irreducible_representations(subgroup_as_group(S3, ext.K));
    ASSERT_EQ(irr.dims.size(), 3u);
    GSet X = action_on_irr(ext, irr);
    // trivial character (index 0) fixed, the two faithful ones swapped
    EXPECT_EQ(X.act(1, 0), 0);
    EXPECT_EQ(X.act(1, 1), 2);
    EXPECT_EQ(X.act(1, 2), 1);
    Extraction ex = extract_gerbe(ext, irr);
    EXPECT_TRUE(cohomologous(ex.gerbe.cocycle, Cochain(2, X)).cohomologous);
    EXPECT_EQ(ex.gerbe.metric, std::vector<Rational>(3, Rational(1, 3)));
}

TEST(Extraction, InnerCaseActsTrivially) {
    auto S3 = symmetric_group(3);
    ExtensionData ext = make_extension(S3, {0, 1, 2, 3, 4, 5});
    IrrSystem irr = irreducible_representations(S3);
    GSet X = action_on_irr(ext, irr);
    EXPECT_EQ(X.group().order(), 1);
    EXPECT_EQ(X.orbits().size(), 3u);
}

TEST(Extraction, Z4OverZ2HasSignPhaseButTrivialClass) {
    auto Z4 = cyclic_group(4);
    ExtensionData ext = make_extension(Z4, {0, 2});
    IrrSystem irr = irreducible_representations(subgroup_as_group(Z4, ext.K));
    Extraction ex = extract_gerbe(ext, irr);
    // index 1 is the sign character of K
    EXPECT_EQ(ex.gerbe.cocycle.at(1, 1, 1), Phase(1, 2));
    EXPECT_TRUE(ex.gerbe.cocycle.at(0, 1, 1).is_zero());
    auto r = cohomologous(ex.gerbe.cocycle, Cochain(2, ex.gerbe.space));
    EXPECT_TRUE(r.cohomologous);
}

TEST(Extraction, Q8OverCenterIsSchurOnSignCharacter) {
    auto Q8 = quaternion_group();
    ExtensionData ext = make_extension(Q8, {0, 1});
    IrrSystem irr = irreducible_representations(subgroup_as_group(Q8, ext.K));
    GSet X = action_on_irr(ext, irr);
    for (int g = 0; g < 4; ++g)
        for (int i = 0; i < 2; ++i) EXPECT_EQ(X.act(g, i), i);
    Extraction ex = extract_gerbe(ext, irr);
    EXPECT_EQ(ex.gerbe.metric, (std::vector<Rational>{Rational(1, 2), Rational(1, 2)}));
    // restrict to each point
    for (int i = 0; i < 2; ++i) {
        GSet pt = point_gset(ext.G);
        Cochain ci = pullback(ex.gerbe.cocycle, pt, {i});
        auto r = cohomologous(ci, Cochain(2, pt));
        auto brute = cohomologous_bruteforce(ci, Cochain(2, pt), 4);
        EXPECT_EQ(r.cohomologous, i == 0);
        EXPECT_EQ(brute.has_value(), i == 0);
    }
}

TEST(Extraction, SectionIndependence) {
    struct Case {
        GroupPtr E;
        std::vector<int> K;
    };
    for (const auto& cs : {Case{quaternion_group(), {0, 1}}, Case{symmetric_group(3), {0, 3, 4}},
                           Case{cyclic_group(4), {0, 2}}, Case{dihedral_group(8), {0, 2, 4, 6}}}) {
        ExtensionData a = make_extension(cs.E, cs.K);
        ExtensionData b = make_extension(cs.E, cs.K, alternate_section(a));
        IrrSystem irr = irreducible_representations(subgroup_as_group(cs.E, a.K));
        Gerbe ga = extract_gerbe(a, irr).gerbe;
        Gerbe gb = extract_gerbe(b, irr).gerbe;
        auto w = isometric_equivalent(ga, gb);
        ASSERT_TRUE(w);
        EXPECT_TRUE(verify_equivalence(ga, gb, *w));
        Rational s(0);
        for (const auto& k : ga.metric) s += k * k * Rational(static_cast<long long>(cs.K.size()));
        EXPECT_EQ(s, Rational(1));
    }
}

TEST(Extraction, SeedDoesNotChangeCocycle) {
    auto Q8 = quaternion_group();
    ExtensionData ext = make_extension(Q8, {0, 1});
    IrrSystem irr = irreducible_representations(subgroup_as_group(Q8, ext.K));
    EXPECT_EQ(extract_gerbe(ext, irr, 0).gerbe.cocycle, extract_gerbe(ext, irr, 99).gerbe.cocycle);
}

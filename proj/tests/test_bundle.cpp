#include "gerbecat/bundle.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
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

// Sign and fixed-point count of the S3 elements, from the lexicographic
// permutation list.
std::vector<std::vector<int>> s3_perms() {
    std::vector<int> p{0, 1, 2};
    std::vector<std::vector<int>> out;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}
int sign(const std::vector<int>& p) {
    int inv = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (p[i] > p[j]) ++inv;
    return inv % 2 ? -1 : 1;
}
int fixed(const std::vector<int>& p) {
    int f = 0;
    for (int i = 0; i < 3; ++i) f += p[i] == i;
    return f;
}

}  // namespace

TEST(Bundle, TrivialLineBundleValidates) {
    Gerbe X = trivial_gerbe(coset_gset(symmetric_group(3), {0, 1}));
    TwistedBundle L = trivial_line_bundle(X);
    BundleReport r = validate_bundle(L);
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.unitarity, 0.0);
    EXPECT_EQ(r.functoriality, 0.0);
    for (const cplx& v : twisted_character(L).values) EXPECT_EQ(v, cplx(1, 0));
}

TEST(Bundle, RegularBundleValidatesAndPerturbationFails) {
    Gerbe S = schur_gerbe();
    TwistedBundle R = regular_bundle(S);
    EXPECT_TRUE(validate_bundle(R, 1e-8).pass);
    TwistedBundle bad = R;
    bad.map(1, 0)(0, 0) += 1e-3;
    BundleReport r = validate_bundle(bad, 1e-8);
    EXPECT_FALSE(r.pass);
    ASSERT_GE(r.witness.size(), 3u);
    EXPECT_EQ(r.witness[1], 0);
}

TEST(Bundle, RegularCharacterIsDelta) {
    auto S3 = symmetric_group(3);
    LoopSection chi = twisted_character(regular_bundle(trivial_gerbe(point_gset(S3))));
    for (std::size_t o = 0; o < chi.values.size(); ++o) {
        double expect = chi.loop.objects[o][1] == 0 ? 6.0 : 0.0;
        EXPECT_NEAR(std::abs(chi.values[o] - cplx(expect, 0)), 0.0, 1e-12);
    }
}

TEST(Bundle, S3IrreduciblesMatchClassicalCharacters) {
    auto S3 = symmetric_group(3);
    auto irr = irreducible_bundles(trivial_gerbe(point_gset(S3)));
    ASSERT_EQ(irr.size(), 3u);
    EXPECT_EQ(irr[0].total_dim(), 1);
    EXPECT_EQ(irr[1].total_dim(), 1);
    EXPECT_EQ(irr[2].total_dim(), 2);
    auto perms = s3_perms();
    for (int g = 0; g < 6; ++g) {
        EXPECT_NEAR(std::abs(twisted_character(irr[0]).values[g] - cplx(1, 0)), 0, 1e-9);
        EXPECT_NEAR(std::abs(twisted_character(irr[1]).values[g] - cplx(sign(perms[g]), 0)), 0, 1e-9);
        EXPECT_NEAR(std::abs(twisted_character(irr[2]).values[g] - cplx(fixed(perms[g]) - 1, 0)), 0, 1e-9);
    }
}

TEST(Bundle, ProjectiveKleinHasOneTwoDimensionalIrreducible) {
    Gerbe S = schur_gerbe();
    auto irr = irreducible_bundles(S);
    ASSERT_EQ(irr.size(), 1u);
    EXPECT_EQ(irr[0].dim(0), 2);
    LoopSection chi = twisted_character(irr[0]);
    EXPECT_LT(flatness_residual(chi, transgress(S.cocycle)), 1e-9);
    EXPECT_LT(flatness_residual(twisted_character(irr[0], true), -transgress(S.cocycle)), 1e-9);
}

TEST(Bundle, TrivialGroupPoint) {
    auto irr = irreducible_bundles(trivial_gerbe(point_gset(cyclic_group(1))));
    ASSERT_EQ(irr.size(), 1u);
    EXPECT_EQ(irr[0].total_dim(), 1);
}

TEST(FlatSections, ThreeMethodsOnStandardExamples) {
    auto S3 = symmetric_group(3);
    LoopGroupoid L = loop_groupoid(point_gset(S3), 1);
    FlatSectionSpace f = flat_section_space(Cochain(1, L.space));
    EXPECT_EQ(f.dim, 3);
    EXPECT_EQ(f.integral, Rational(3));
    EXPECT_EQ(f.nullspace_dim, 3);
    EXPECT_EQ(flat_section_dim(transgress(schur_gerbe().cocycle)), 1);
    LoopGroupoid R = loop_groupoid(regular_gset(S3), 1);
    EXPECT_EQ(flat_section_dim(Cochain(1, R.space)), 1);
}

TEST(FlatSections, BasisIsFlat) {
    Cochain a = transgress(schur_gerbe().cocycle);
    FlatSectionSpace f = flat_section_space(a);
    LoopSection s{loop_of(schur_gerbe().space), f.basis.at(0)};
    EXPECT_LT(flatness_residual(s, a), 1e-12);
}

TEST(Bundle, CountAndGramOnSmallGerbes) {
    std::mt19937_64 rng(9);
    std::vector<Gerbe> cases{schur_gerbe(), trivial_gerbe(point_gset(quaternion_group())),
                             trivial_gerbe(coset_gset(dihedral_group(8), {0, 4})),
                             trivial_gerbe(disjoint_union(point_gset(symmetric_group(3)),
                                                          coset_gset(symmetric_group(3), {0, 3, 4})))};
    GSet X = coset_gset(dihedral_group(8), {0, 2});
    cases.push_back(make_gerbe(X, coboundary(random_cochain(1, X, 8, rng)), std::vector<Rational>(X.size(), Rational(1))));
    for (const Gerbe& g : cases) {
        auto irr = irreducible_bundles(g);
        EXPECT_EQ(static_cast<int>(irr.size()), flat_section_dim(transgress(g.cocycle)));
        CMatrix Gm = character_gram(irr);
        EXPECT_LT((Gm - CMatrix::Identity(Gm.rows(), Gm.cols())).cwiseAbs().maxCoeff(), 1e-6);
        for (const auto& b : irr) EXPECT_LT(flatness_residual(twisted_character(b), transgress(g.cocycle)), 1e-8);
    }
}

TEST(Bundle, SquaredFiberDimsGiveStabilizerOrder) {
    auto D4 = dihedral_group(8);
    for (const auto& H : subgroup_class_reps(*D4)) {
        auto irr = irreducible_bundles(trivial_gerbe(coset_gset(D4, H)));
        int s = 0;
        for (const auto& b : irr) s += b.dim(0) * b.dim(0);
        EXPECT_EQ(s, static_cast<int>(H.size()));
    }
}

TEST(Bundle, CharacterIsAdditive) {
    auto irr = irreducible_bundles(trivial_gerbe(point_gset(symmetric_group(3))));
    TwistedBundle sum = direct_sum(irr[1], irr[2]);
    EXPECT_TRUE(validate_bundle(sum).pass);
    auto a = twisted_character(irr[1]).values, b = twisted_character(irr[2]).values,
         s = twisted_character(sum).values;
    for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(std::abs(s[i] - a[i] - b[i]), 0, 1e-12);
}

TEST(Bundle, SizeBoundEnforced) {
    IrreducibleOptions opt;
    opt.max_algebra_dim = 10;
    EXPECT_THROW(irreducible_bundles(regular_gerbe(symmetric_group(3)), opt), Error);
}

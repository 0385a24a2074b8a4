#include "gerbecat/double.hpp"

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

// c((a,b),(a',b')) = b a' / 3 on Z3 x Z3; its commutator pairing has order 3
Gerbe z3_gerbe() {
    auto G = direct_product(cyclic_group(3), cyclic_group(3));
    GSet pt = point_gset(G);
    Cochain c(2, pt);
    for (int g2 = 0; g2 < 9; ++g2)
        for (int g1 = 0; g1 < 9; ++g1) c.at(0, g2, g1) = Phase((g2 % 3) * (g1 / 3), 3);
    return make_gerbe(pt, c, {Rational(1)});
}

std::vector<GroupPtr> small_groups() {
    return {cyclic_group(3), symmetric_group(3), dihedral_group(8), quaternion_group(), klein()};
}

}  // namespace

TEST(Double, SimpleCountsMatchCommutingTriples) {
    for (const auto& G : small_groups()) {
        auto S = simples(G);
        GroupAnalysis an = analyze(*G);
        EXPECT_EQ(static_cast<long long>(S.size()) * G->order(), an.commuting_triples) << G->name();
        long long dim2 = 0;
        for (const auto& s : S) {
            EXPECT_TRUE(validate_gbundle(s.object).pass);
            dim2 += static_cast<long long>(s.object.total_dim()) * s.object.total_dim();
        }
        EXPECT_EQ(dim2, static_cast<long long>(G->order()) * G->order());
    }
    EXPECT_EQ(simples(symmetric_group(3)).size(), 8u);
    EXPECT_EQ(simples(dihedral_group(8)).size(), 22u);
    EXPECT_EQ(simples(quaternion_group()).size(), 22u);
}

TEST(Double, SimplesAreOrthonormal) {
    for (const auto& G : small_groups()) {
        auto S = simples(G);
        for (std::size_t i = 0; i < S.size(); ++i) {
            auto m = decompose(S[i].object, S);
            for (std::size_t j = 0; j < S.size(); ++j) EXPECT_EQ(m[j], i == j ? 1 : 0);
        }
    }
}

TEST(Double, BraidAxiomsOnSeededTriples) {
    for (const auto& G : {symmetric_group(3), quaternion_group(), dihedral_group(8), klein()}) {
        auto S = simples(G);
        std::mt19937_64 rng(7);
        for (int trial = 0; trial < 20; ++trial) {
            auto U = random_object(S, rng), V = random_object(S, rng), W = random_object(S, rng);
            BraidReport r = braid_checks(U, V, W);
            EXPECT_LT(r.yang_baxter, 1e-9);
            EXPECT_LT(r.hexagon_left, 1e-9);
            EXPECT_LT(r.hexagon_right, 1e-9);
            EXPECT_LT(r.equivariance, 1e-9);
            EXPECT_LT(r.unitarity, 1e-9);
        }
    }
}

TEST(Double, UnitIsNeutral) {
    auto G = symmetric_group(3);
    auto S = simples(G);
    GBundleOverG one = unit_object(G);
    for (const auto& s : S) {
        GBundleOverG L = fuse(one, s.object), R = fuse(s.object, one);
        EXPECT_EQ(L.dims, s.object.dims);
        EXPECT_EQ(R.dims, s.object.dims);
        EXPECT_LT(equivariance_residual(identity_morphism(s.object), L, s.object), 1e-12);
        EXPECT_LT(equivariance_residual(identity_morphism(s.object), R, s.object), 1e-12);
    }
}

TEST(Double, EquivarianceDetectsBadMorphism) {
    auto G = symmetric_group(3);
    auto S = simples(G);
    const GBundleOverG& V = S.back().object;
    GMorphism f = identity_morphism(V);
    for (auto& m : f)
        if (m.size()) {
            m(0, 0) = 2.0;
            break;
        }
    EXPECT_GT(equivariance_residual(f, V, V), 0.5);
    EXPECT_GT(unitarity_residual(f), 0.5);
}

TEST(Double, FusionTablesAreIntegralCommutativeAssociative) {
    for (const auto& G : {symmetric_group(3), klein(), quaternion_group()}) {
        auto S = simples(G);
        auto N = fusion_table(S);
        const std::size_t m = S.size();
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                EXPECT_EQ(N[i][j], N[j][i]);
                long long d = 0;
                for (std::size_t k = 0; k < m; ++k) d += N[i][j][k] * S[k].object.total_dim();
                EXPECT_EQ(d, static_cast<long long>(S[i].object.total_dim()) * S[j].object.total_dim());
            }
        // simple 0 is the unit (trivial class, trivial representation)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = 0; k < m; ++k) EXPECT_EQ(N[0][j][k], j == k ? 1 : 0);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                for (std::size_t k = 0; k < m; ++k)
                    for (std::size_t l = 0; l < m; ++l) {
                        long long a = 0, b = 0;
                        for (std::size_t p = 0; p < m; ++p) {
                            a += N[i][j][p] * N[p][k][l];
                            b += N[j][k][p] * N[i][p][l];
                        }
                        ASSERT_EQ(a, b);
                    }
    }
}

TEST(Double, S3FusionOfConjugationClassObjects) {
    // The 2-cycle sign simple squared: C(g0) = Z2, fiber over the three transpositions.
    auto G = symmetric_group(3);
    auto S = simples(G);
    // geometric character of the regular gerbe is C at the identity with the regular action
    auto m = decompose(geometric_character(regular_gerbe(G)), S);
    long long total = 0;
    for (std::size_t i = 0; i < S.size(); ++i) {
        total += m[i];
        if (S[i].class_rep != 0) EXPECT_EQ(m[i], 0);
    }
    // regular representation of S3 = 1 + sign + 2 * standard
    EXPECT_EQ(total, 4);
}

TEST(Double, CenterCheckOnSmallBuiltins) {
    std::vector<GroupPtr> groups;
    for (int n = 1; n <= 16; ++n) groups.push_back(cyclic_group(n));
    for (int n = 4; n <= 16; n += 2) groups.push_back(dihedral_group(n));
    groups.push_back(symmetric_group(1));
    groups.push_back(symmetric_group(2));
    groups.push_back(symmetric_group(3));
    groups.push_back(quaternion_group());
    groups.push_back(klein());
    groups.push_back(direct_product(cyclic_group(2), symmetric_group(3)));
    groups.push_back(direct_product(cyclic_group(2), dihedral_group(8)));
    groups.push_back(direct_product(cyclic_group(2), quaternion_group()));
    groups.push_back(direct_product(klein(), klein()));
    for (const auto& G : groups) {
        CenterReport r = center_check(G);
        EXPECT_TRUE(r.pass) << G->name();
        EXPECT_EQ(r.center_dim, static_cast<int>(analyze(*G).classes.size())) << G->name();
        EXPECT_LT(r.convolution_numeric, 1e-10);
        EXPECT_LT(r.irreducible_roundtrip, 1e-10);
    }
}

TEST(Double, ExtensionValidatesAndUnitGivesIdentity) {
    auto S3 = symmetric_group(3);
    std::vector<Gerbe> gerbes{trivial_gerbe(point_gset(S3)), regular_gerbe(S3),
                              trivial_gerbe(coset_gset(S3, {0, 1})), trivial_gerbe(coset_gset(S3, {0, 3, 4}))};
    auto S = simples(S3);
    std::mt19937_64 rng(3);
    for (const auto& X : gerbes) {
        TwistedBundle I = extend_transformation(unit_object(S3), X);
        TwistedBundle ref = identity_morphism(X);
        ASSERT_EQ(I.dims(), ref.dims());
        for (int p = 0; p < I.gerbe().size(); ++p)
            for (int g = 0; g < 6; ++g) {
                ASSERT_EQ(I.map(g, p).rows(), ref.map(g, p).rows());
                if (I.map(g, p).size()) EXPECT_LT((I.map(g, p) - ref.map(g, p)).cwiseAbs().maxCoeff(), 1e-14);
            }
        for (int t = 0; t < 5; ++t) EXPECT_TRUE(validate_bundle(extend_transformation(random_object(S, rng), X)).pass);
    }
    // twisted carrier
    Gerbe sch = schur_gerbe();
    auto SK = simples(klein());
    for (int t = 0; t < 5; ++t) EXPECT_TRUE(validate_bundle(extend_transformation(random_object(SK, rng), sch)).pass);
    Gerbe z3 = z3_gerbe();
    auto SZ = simples(z3.group_ptr());
    for (int t = 0; t < 5; ++t) EXPECT_TRUE(validate_bundle(extend_transformation(random_object(SZ, rng), z3)).pass);
}

TEST(Double, ExtensionOverRegularGerbeRestrictsToT) {
    auto G = quaternion_group();
    auto S = simples(G);
    std::mt19937_64 rng(11);
    GBundleOverG T = random_object(S, rng);
    TwistedBundle E = extend_transformation(T, regular_gerbe(G));
    for (int g = 0; g < 8; ++g) {
        int p = g * 8;  // the point (g, e)
        ASSERT_EQ(E.dim(p), T.dims[g]);
        // h : (g, e) -> (hg, h), whose fiber is the single block T_{hgh^-1}
        for (int h = 0; h < 8; ++h)
            if (T.dims[g]) EXPECT_LT((E.map(h, p) - T.act(h, g)).cwiseAbs().maxCoeff(), 1e-14);
    }
}

TEST(Double, NaturalityOnSeededInputs) {
    struct Case {
        GroupPtr G;
        std::vector<Gerbe> gerbes;
    };
    auto S3 = symmetric_group(3);
    auto K = klein();
    std::vector<Case> cases{
        {S3, {trivial_gerbe(point_gset(S3)), trivial_gerbe(coset_gset(S3, {0, 3, 4})), regular_gerbe(S3)}},
        {K, {schur_gerbe(), trivial_gerbe(point_gset(K)), regular_gerbe(K)}},
        {z3_gerbe().group_ptr(), {z3_gerbe(), trivial_gerbe(point_gset(z3_gerbe().group_ptr()))}},
    };
    for (const auto& c : cases) {
        auto S = simples(c.G);
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            std::mt19937_64 rng(seed);
            GBundleOverG T = random_object(S, rng);
            for (const auto& X : c.gerbes)
                for (const auto& Y : c.gerbes) {
                    auto irr = irreducible_bundles(tensor(Y, X, true));
                    for (const auto& V : irr) EXPECT_LT(naturality_residual(T, X, Y, V), 1e-8);
                }
        }
    }
}

TEST(Double, FynCoherenceOnSeededPairs) {
    for (const auto& G : {symmetric_group(3), quaternion_group(), klein(), dihedral_group(8)}) {
        auto S = simples(G);
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            std::mt19937_64 rng(100 + seed);
            GBundleOverG T = random_object(S, rng), U = random_object(S, rng);
            FynReport r = fyn_check(T, U);
            EXPECT_TRUE(r.dims_equal);
            EXPECT_LT(r.composition_residual, 1e-8);
            EXPECT_LT(r.coherence_residual, 1e-8);
            EXPECT_LT(r.braid_residual, 1e-8);
            EXPECT_TRUE(r.pass);
        }
    }
}

TEST(Double, ComposeTransformationsMatchesFusionUnderInversion) {
    auto G = dihedral_group(8);
    auto S = simples(G);
    std::mt19937_64 rng(5);
    GBundleOverG A = random_object(S, rng), B = random_object(S, rng);
    EXPECT_TRUE(validate_gbundle(compose_transformations(A, B)).pass);
    EXPECT_EQ(invert_grading(compose_transformations(A, B)).dims, fuse(invert_grading(A), invert_grading(B)).dims);
}

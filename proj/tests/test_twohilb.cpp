#include "gerbecat/twohilb.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace gerbecat;

namespace {

WeightedMatrix random_matrix(const WeightedSpace& s, const WeightedSpace& t, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> d(0, 3);
    IntMatrix m(t.size(), std::vector<long long>(s.size()));
    for (auto& row : m)
        for (auto& v : row) v = d(rng);
    return make_weighted_matrix(s, t, m);
}

WeightedSpace random_space(int n, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> p(1, 9);
    std::vector<Rational> k;
    for (int i = 0; i < n; ++i) k.push_back(Rational(p(rng), p(rng)));
    return make_weighted_space(k);
}

}  // namespace

TEST(Weighted, CompositionMultipliesDims) {
    WeightedSpace one = make_weighted_space({Rational(1)});
    auto F = make_weighted_matrix(one, one, {{2}});
    auto E = make_weighted_matrix(one, one, {{3}});
    EXPECT_EQ(compose_weighted(F, E).dims, (IntMatrix{{6}}));
    std::mt19937_64 rng(0);
    WeightedSpace H = random_space(3, rng), K = random_space(2, rng);
    auto M = random_matrix(H, K, rng);
    EXPECT_EQ(compose_weighted(M, identity_weighted(H)).dims, M.dims);
    EXPECT_EQ(compose_weighted(identity_weighted(K), M).dims, M.dims);
    EXPECT_THROW(compose_weighted(M, M), Error);
    EXPECT_THROW(make_weighted_space({Rational(0)}), Error);
}

TEST(Weighted, CompositionIsAssociative) {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 20; ++t) {
        WeightedSpace A = random_space(2, rng), B = random_space(3, rng), C = random_space(2, rng), D = random_space(3, rng);
        auto f = random_matrix(A, B, rng), g = random_matrix(B, C, rng), h = random_matrix(C, D, rng);
        EXPECT_EQ(compose_weighted(h, compose_weighted(g, f)).dims, compose_weighted(compose_weighted(h, g), f).dims);
    }
}

TEST(Weighted, WeightedBookkeeping) {
    WeightedSpace X = make_weighted_space({Rational(1)});
    WeightedSpace Y = make_weighted_space({Rational(2), Rational(1, 3)});
    auto E = make_weighted_matrix(X, Y, {{1}, {2}});
    auto F = make_weighted_matrix(Y, X, {{3, 1}});
    auto FE = compose_weighted(F, E);
    EXPECT_EQ(FE.dims, (IntMatrix{{5}}));
    EXPECT_EQ(FE.weighted[0][0], Rational(3, 2) + Rational(6));
}

TEST(NatInnerProduct, BasicProperties) {
    WeightedSpace H = make_weighted_space({Rational(2)});
    std::vector<Eigen::MatrixXcd> id{Eigen::MatrixXcd::Identity(1, 1)};
    EXPECT_NEAR(std::abs(nat_inner_product(id, id, H) - cplx(2, 0)), 0, 1e-15);
    std::mt19937_64 rng(2);
    WeightedSpace W = random_space(3, rng);
    auto rnd = [&]() {
        std::vector<Eigen::MatrixXcd> t;
        for (int i = 0; i < 3; ++i) t.push_back(Eigen::MatrixXcd::Random(2, i + 1));
        return t;
    };
    for (int t = 0; t < 10; ++t) {
        auto a = rnd(), b = rnd(), c = rnd();
        cplx s(0.3, -1.2);
        std::vector<Eigen::MatrixXcd> bc;
        for (int i = 0; i < 3; ++i) bc.push_back(s * b[i] + c[i]);
        EXPECT_NEAR(std::abs(nat_inner_product(a, bc, W) - (s * nat_inner_product(a, b, W) + nat_inner_product(a, c, W))), 0,
                    1e-10);
        EXPECT_NEAR(std::abs(nat_inner_product(a, b, W) - std::conj(nat_inner_product(b, a, W))), 0, 1e-10);
        EXPECT_GT(nat_inner_product(a, a, W).real(), 0);
    }
}

TEST(Frobenius, RepS3Weights) {
    FrobeniusAlgebra A = frobenius_algebra(make_weighted_space({Rational(1, 6), Rational(1, 6), Rational(2, 6)}));
    EXPECT_EQ(A.epsilon, (std::vector<Rational>{Rational(1, 36), Rational(1, 36), Rational(4, 36)}));
    FrobeniusAlgebra one = frobenius_algebra(make_weighted_space({Rational(1)}));
    EXPECT_EQ(one.epsilon, std::vector<Rational>{Rational(1)});
}

TEST(Frobenius, EpsilonAndHandleFromWeights) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 10; ++t) {
        WeightedSpace H = random_space(4, rng);
        FrobeniusAlgebra A = frobenius_algebra(H);
        std::vector<double> inv;
        for (int i = 0; i < 4; ++i) {
            EXPECT_EQ(A.epsilon[i], H.k[i] * H.k[i]);
            inv.push_back(1.0 / boost::rational_cast<double>(H.k[i] * H.k[i]));
        }
        std::sort(inv.begin(), inv.end());
        // the handle operator multiplies id_i by 1/eps(id_i)
        for (int i = 0; i < 4; ++i) EXPECT_NEAR(A.handle_spectrum[i], inv[i], 1e-9 * inv[i]);
    }
}

#pragma once

#include "gerbecat/arith.hpp"

#include <Eigen/Dense>

#include <vector>

namespace gerbecat {

/// Skeleton of a 2-Hilbert space: one positive scale factor per simple object.
struct WeightedSpace {
    std::vector<Rational> k;
    int size() const { return static_cast<int>(k.size()); }
};

WeightedSpace make_weighted_space(std::vector<Rational> k);

/**
 * A linear functor between weighted spaces, up to isomorphism: dims(mu, i)
 * is dim Hom(e_mu, F e_i). `weighted(mu, i)` carries the inner-product
 * bookkeeping of composites, sum over intermediate y of dims / k_y; it is
 * empty for functors that are not composites.
 */
struct WeightedMatrix {
    WeightedSpace source, target;
    IntMatrix dims;
    std::vector<std::vector<Rational>> weighted;
};

WeightedMatrix make_weighted_matrix(WeightedSpace source, WeightedSpace target, IntMatrix dims);
WeightedMatrix identity_weighted(const WeightedSpace& H);
/// F o E; requires E.target == F.source.
WeightedMatrix compose_weighted(const WeightedMatrix& F, const WeightedMatrix& E);

/// <theta, theta'> = sum_i k_i Tr(theta_i^* theta'_i)
cplx nat_inner_product(const std::vector<Eigen::MatrixXcd>& theta, const std::vector<Eigen::MatrixXcd>& theta2,
                       const WeightedSpace& source);

/// Commutative Frobenius algebra on orthogonal idempotents id_i.
struct FrobeniusAlgebra {
    std::vector<Rational> epsilon;        ///< eps(id_i) = k_i^2
    std::vector<double> handle_spectrum;  ///< eigenvalues of multiplication by m(Delta(1)), ascending
};

FrobeniusAlgebra frobenius_algebra(const WeightedSpace& H);

}  // namespace gerbecat

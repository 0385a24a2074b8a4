#include "gerbecat/twohilb.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>

namespace gerbecat {

WeightedSpace make_weighted_space(std::vector<Rational> k) {
    for (std::size_t i = 0; i < k.size(); ++i)
        if (k[i] <= Rational(0)) throw Error("weights must be positive", {static_cast<int>(i)});
    return WeightedSpace{std::move(k)};
}

WeightedMatrix make_weighted_matrix(WeightedSpace source, WeightedSpace target, IntMatrix dims) {
    if (static_cast<int>(dims.size()) != target.size()) throw Error("dimension matrix needs one row per target index");
    for (std::size_t r = 0; r < dims.size(); ++r) {
        if (static_cast<int>(dims[r].size()) != source.size()) throw Error("ragged dimension matrix", {static_cast<int>(r)});
        for (long long d : dims[r])
            if (d < 0) throw Error("negative multiplicity", {static_cast<int>(r)});
    }
    return WeightedMatrix{std::move(source), std::move(target), std::move(dims), {}};
}

WeightedMatrix identity_weighted(const WeightedSpace& H) {
    IntMatrix d(H.size(), std::vector<long long>(H.size(), 0));
    for (int i = 0; i < H.size(); ++i) d[i][i] = 1;
    return make_weighted_matrix(H, H, d);
}

WeightedMatrix compose_weighted(const WeightedMatrix& F, const WeightedMatrix& E) {
    if (E.target.k != F.source.k) throw Error("composable functors need matching middle spaces");
    const int nz = F.target.size(), ny = F.source.size(), nx = E.source.size();
    WeightedMatrix out{E.source, F.target, IntMatrix(nz, std::vector<long long>(nx, 0)),
                       std::vector<std::vector<Rational>>(nz, std::vector<Rational>(nx, Rational(0)))};
    for (int z = 0; z < nz; ++z)
        for (int x = 0; x < nx; ++x)
            for (int y = 0; y < ny; ++y) {
                long long d = F.dims[z][y] * E.dims[y][x];
                out.dims[z][x] += d;
                out.weighted[z][x] += Rational(d) / F.source.k[y];
            }
    return out;
}

cplx nat_inner_product(const std::vector<Eigen::MatrixXcd>& theta, const std::vector<Eigen::MatrixXcd>& theta2,
                       const WeightedSpace& source) {
    if (static_cast<int>(theta.size()) != source.size() || theta2.size() != theta.size())
        throw Error("transformations need one component per source index");
    cplx s(0, 0);
    for (int i = 0; i < source.size(); ++i) {
        if (theta[i].rows() != theta2[i].rows() || theta[i].cols() != theta2[i].cols())
            throw Error("component shapes differ", {i});
        double k = boost::rational_cast<double>(source.k[i]);
        s += k * (theta[i].adjoint() * theta2[i]).trace();
    }
    return s;
}

FrobeniusAlgebra frobenius_algebra(const WeightedSpace& H) {
    const int n = H.size();
    FrobeniusAlgebra A;
    for (const auto& k : H.k) A.epsilon.push_back(k * k);
    // structure constants of the idempotent basis: id_i id_j = delta_ij id_i
    auto mult = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) { return Eigen::VectorXd(a.cwiseProduct(b)); };
    Eigen::MatrixXd B(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Eigen::VectorXd p = mult(Eigen::VectorXd::Unit(n, i), Eigen::VectorXd::Unit(n, j));
            double e = 0;
            for (int l = 0; l < n; ++l) e += p(l) * boost::rational_cast<double>(A.epsilon[l]);
            B(i, j) = e;
        }
    // copairing is the inverse of the Frobenius pairing; the handle element is its product
    Eigen::MatrixXd C = B.inverse();
    Eigen::VectorXd handle = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) handle += C(i, j) * mult(Eigen::VectorXd::Unit(n, i), Eigen::VectorXd::Unit(n, j));
    Eigen::MatrixXd L(n, n);
    for (int j = 0; j < n; ++j) L.col(j) = mult(handle, Eigen::VectorXd::Unit(n, j));
    Eigen::EigenSolver<Eigen::MatrixXd> es(L);
    for (int i = 0; i < n; ++i) A.handle_spectrum.push_back(es.eigenvalues()(i).real());
    std::sort(A.handle_spectrum.begin(), A.handle_spectrum.end());
    return A;
}

}  // namespace gerbecat

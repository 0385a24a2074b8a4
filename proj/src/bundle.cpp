#include "gerbecat/bundle.hpp"

#include "gerbecat/arith.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <random>

namespace gerbecat {

TwistedBundle::TwistedBundle(Gerbe gerbe, std::vector<int> dims, std::vector<CMatrix> maps)
    : gerbe_(std::move(gerbe)), n_(gerbe_.group().order()), dims_(std::move(dims)), maps_(std::move(maps)) {
    const GSet& X = gerbe_.space;
    if (static_cast<int>(dims_.size()) != X.size()) throw Error("bundle needs one fiber dimension per point");
    if (maps_.size() != static_cast<std::size_t>(X.size()) * n_) throw Error("bundle needs one matrix per arrow");
    for (int x = 0; x < X.size(); ++x) {
        if (dims_[x] < 0) throw Error("negative fiber dimension", {x});
        for (int g = 0; g < n_; ++g) {
            const CMatrix& M = map(g, x);
            if (M.rows() != dims_[X.act(g, x)] || M.cols() != dims_[x]) throw Error("arrow matrix has the wrong shape", {x, g});
        }
    }
}

int TwistedBundle::total_dim() const {
    int s = 0;
    for (int d : dims_) s += d;
    return s;
}

BundleReport validate_bundle(const TwistedBundle& E, double tol) {
    const GSet& X = E.gerbe().space;
    const FiniteGroup& G = X.group();
    const int n = G.order();
    const Cochain& c = E.gerbe().cocycle;
    BundleReport rep;
    double worst = -1;
    auto note = [&](double r, std::vector<int> w) {
        if (r > worst) {
            worst = r;
            rep.witness = std::move(w);
        }
    };
    for (int x = 0; x < X.size(); ++x) {
        for (const auto& o : X.orbits()[X.orbit_of(x)])
            if (E.dim(o) != E.dim(x)) throw Error("fiber dimensions are not constant on orbits", {x, o});
        const int d = E.dim(x);
        for (int g = 0; g < n; ++g) {
            const CMatrix& M = E.map(g, x);
            double u = d == 0 ? 0.0 : (M.adjoint() * M - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
            rep.unitarity = std::max(rep.unitarity, u);
            note(u, {0, x, g});
        }
        if (d > 0) {
            double id = (E.map(0, x) - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
            rep.functoriality = std::max(rep.functoriality, id);
            note(id, {1, x, 0});
        }
        if (d == 0) continue;
        for (int g1 = 0; g1 < n; ++g1)
            for (int g2 = 0; g2 < n; ++g2) {
                CMatrix lhs = E.map(g2, X.act(g1, x)) * E.map(g1, x);
                CMatrix rhs = c.at(x, g2, g1).to_complex() * E.map(G.mul(g2, g1), x);
                double r = (lhs - rhs).cwiseAbs().maxCoeff();
                rep.functoriality = std::max(rep.functoriality, r);
                note(r, {2, x, g1, g2});
            }
    }
    rep.pass = rep.unitarity <= tol && rep.functoriality <= tol;
    return rep;
}

TwistedBundle trivial_line_bundle(const Gerbe& X) {
    if (!X.cocycle.is_zero()) throw Error("the trivial line bundle needs a zero cocycle");
    const int n = X.group().order();
    std::vector<CMatrix> maps(static_cast<std::size_t>(X.size()) * n, CMatrix::Identity(1, 1));
    return TwistedBundle(X, std::vector<int>(X.size(), 1), std::move(maps));
}

TwistedBundle direct_sum(const TwistedBundle& E, const TwistedBundle& F) {
    if (!E.gerbe().space.same_action(F.gerbe().space) || !(E.gerbe().cocycle == F.gerbe().cocycle))
        throw Error("direct sum of bundles over different gerbes");
    const GSet& X = E.gerbe().space;
    const int n = X.group().order();
    std::vector<int> dims(X.size());
    std::vector<CMatrix> maps(static_cast<std::size_t>(X.size()) * n);
    for (int x = 0; x < X.size(); ++x) {
        dims[x] = E.dim(x) + F.dim(x);
        for (int g = 0; g < n; ++g) {
            int y = X.act(g, x);
            CMatrix M = CMatrix::Zero(E.dim(y) + F.dim(y), dims[x]);
            M.topLeftCorner(E.dim(y), E.dim(x)) = E.map(g, x);
            M.bottomRightCorner(F.dim(y), F.dim(x)) = F.map(g, x);
            maps[static_cast<std::size_t>(x) * n + g] = std::move(M);
        }
    }
    return TwistedBundle(E.gerbe(), std::move(dims), std::move(maps));
}

namespace {

// The twisted groupoid algebra: basis (g, x) at index x*n + g is the arrow
// g <- x, and (g2, g1.x)(g1, x) = e(c_x(g2, g1)) (g2 g1, x).
struct ArrowAlgebra {
    const Gerbe& X;
    int n;
    int m;
    explicit ArrowAlgebra(const Gerbe& gerbe)
        : X(gerbe), n(gerbe.group().order()), m(gerbe.size() * gerbe.group().order()) {}

    int index(int g, int x) const { return x * n + g; }
    int target(int i) const { return X.space.act(i % n, i / n); }

    // L_(g, x) applied to the columns of V
    CMatrix left(int g, int x, const CMatrix& V) const {
        CMatrix out = CMatrix::Zero(m, V.cols());
        const FiniteGroup& G = X.group();
        for (int i = 0; i < m; ++i) {
            if (target(i) != x) continue;
            int g1 = i % n, x1 = i / n;
            cplx ph = X.cocycle.at(x1, g, g1).to_complex();
            out.row(index(G.mul(g, g1), x1)) += ph * V.row(i);
        }
        return out;
    }

    // Matrix of right multiplication by b = sum beta_j (basis j).
    CMatrix right(const CVector& beta) const {
        CMatrix R = CMatrix::Zero(m, m);
        const FiniteGroup& G = X.group();
        for (int col = 0; col < m; ++col) {
            int g2 = col % n, y = col / n;
            for (int j = 0; j < m; ++j) {
                if (target(j) != y) continue;
                int g1 = j % n, x = j / n;
                R(index(G.mul(g2, g1), x), col) += beta(j) * X.cocycle.at(x, g2, g1).to_complex();
            }
        }
        return R;
    }
};

// Bundle carried by an L-invariant subspace with orthonormal basis Q.
TwistedBundle bundle_from_module(const ArrowAlgebra& A, const CMatrix& Q) {
    const GSet& X = A.X.space;
    const int n = A.n;
    std::vector<CMatrix> B(X.size());
    std::vector<int> dims(X.size());
    for (int x = 0; x < X.size(); ++x) {
        CMatrix P = CMatrix::Zero(A.m, Q.cols());
        for (int i = 0; i < A.m; ++i)
            if (A.target(i) == x) P.row(i) = Q.row(i);
        Eigen::JacobiSVD<CMatrix> svd(P, Eigen::ComputeThinU);
        int r = 0;
        for (int k = 0; k < svd.singularValues().size(); ++k)
            if (svd.singularValues()(k) > 0.5) ++r;
        B[x] = svd.matrixU().leftCols(r);
        dims[x] = r;
    }
    std::vector<CMatrix> maps(static_cast<std::size_t>(X.size()) * n);
    for (int x = 0; x < X.size(); ++x)
        for (int g = 0; g < n; ++g)
            maps[static_cast<std::size_t>(x) * n + g] = B[X.act(g, x)].adjoint() * A.left(g, x, B[x]);
    return TwistedBundle(A.X, std::move(dims), std::move(maps));
}

}  // namespace

TwistedBundle regular_bundle(const Gerbe& X) {
    ArrowAlgebra A(X);
    return bundle_from_module(A, CMatrix::Identity(A.m, A.m));
}

LoopSection twisted_character(const TwistedBundle& E, bool conjugate) {
    LoopSection s;
    s.loop = loop_of(E.gerbe().space);
    s.values.resize(s.loop.objects.size());
    for (std::size_t o = 0; o < s.loop.objects.size(); ++o) {
        auto [x, g, unused] = s.loop.objects[o];
        (void)unused;
        cplx t = E.dim(x) == 0 ? cplx(0, 0) : E.map(g, x).trace();
        s.values[o] = conjugate ? std::conj(t) : t;
    }
    return s;
}

double flatness_residual(const LoopSection& s, const Cochain& alpha) {
    const GSet& Y = s.loop.space;
    if (alpha.degree() != 1 || !alpha.carrier().same_action(Y)) throw Error("twist must be a 1-cochain on the loop groupoid");
    double r = 0;
    for (int o = 0; o < Y.size(); ++o)
        for (int h = 0; h < Y.group().order(); ++h)
            r = std::max(r, std::abs(s.values[Y.act(h, o)] - alpha.at(h, o).to_complex() * s.values[o]));
    return r;
}

cplx section_inner(const LoopSection& s, const LoopSection& t) {
    if (s.values.size() != t.values.size()) throw Error("sections live on different loop groupoids");
    return integrate_complex(s.loop.space, [&](int o) { return std::conj(s.values[o]) * t.values[o]; });
}

FlatSectionSpace flat_section_space(const Cochain& alpha) {
    if (alpha.degree() != 1) throw Error("flat sections need a degree-1 twist");
    if (auto w = check_cocycle(alpha)) throw Error("twist fails the cocycle identity", *w);
    const GSet& Y = alpha.carrier();
    const FiniteGroup& G = Y.group();
    const int n = G.order();
    FlatSectionSpace out;

    for (const auto& orb : Y.orbits()) {
        int o = orb.front();
        bool trivial = true;
        for (int h : Y.stabilizer(o))
            if (!alpha.at(h, o).is_zero()) trivial = false;
        if (!trivial) continue;
        ++out.component_count;
        std::vector<cplx> s(Y.size(), cplx(0, 0));
        for (int g = 0; g < n; ++g) s[Y.act(g, o)] = alpha.at(g, o).to_complex();
        out.basis.push_back(std::move(s));
    }

    std::vector<std::pair<Rational, long long>> terms;
    for (int o = 0; o < Y.size(); ++o)
        for (int h : Y.stabilizer(o)) terms.push_back({alpha.at(h, o).value(), 1});
    CyclotomicValue v = cyclotomic_sum(terms);
    if (!v.is_rational) throw InternalError("integral of a transgressed twist is not rational");
    out.integral = v.value / Rational(n);

    std::vector<int> gens = generating_set(G);
    const int ny = Y.size();
    if (ny > 0) {
        CMatrix M = CMatrix::Zero(static_cast<Eigen::Index>(gens.size()) * ny, ny);
        for (std::size_t k = 0; k < gens.size(); ++k)
            for (int o = 0; o < ny; ++o) {
                Eigen::Index row = static_cast<Eigen::Index>(k) * ny + o;
                M(row, Y.act(gens[k], o)) += 1.0;
                M(row, o) -= alpha.at(gens[k], o).to_complex();
            }
        Eigen::BDCSVD<CMatrix> svd(M);
        int rank = 0;
        for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k)
            if (svd.singularValues()(k) > 1e-8) ++rank;
        out.nullspace_dim = ny - rank;
    }

    if (out.integral.denominator() != 1 || out.integral.numerator() != out.component_count ||
        out.nullspace_dim != out.component_count)
        throw InternalError("flat-section counts disagree: components " + std::to_string(out.component_count) +
                            ", integral " + to_string(out.integral) + ", nullspace " +
                            std::to_string(out.nullspace_dim));
    out.dim = out.component_count;
    return out;
}

CMatrix character_gram(const std::vector<TwistedBundle>& bundles) {
    std::vector<LoopSection> chars;
    for (const auto& b : bundles) chars.push_back(twisted_character(b));
    CMatrix Gm(chars.size(), chars.size());
    for (std::size_t i = 0; i < chars.size(); ++i)
        for (std::size_t j = 0; j < chars.size(); ++j) Gm(i, j) = section_inner(chars[i], chars[j]);
    return Gm;
}

std::vector<TwistedBundle> irreducible_bundles(const Gerbe& X, const IrreducibleOptions& opt) {
    ArrowAlgebra A(X);
    if (A.m > opt.max_algebra_dim) throw Error("gerbe too large for the numeric block split: |X||G| = " + std::to_string(A.m));
    if (A.m == 0) return {};
    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    CVector beta(A.m);
    for (int j = 0; j < A.m; ++j) beta(j) = cplx(nd(rng), nd(rng));
    CMatrix R = A.right(beta);
    CMatrix H = R + R.adjoint();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(H);
    const auto& ev = es.eigenvalues();
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    const double gap = 1e-7 * scale;

    struct Found {
        TwistedBundle bundle;
        LoopSection chi;
    };
    std::vector<Found> found;
    long long dim_sq = 0;
    for (Eigen::Index start = 0; start < ev.size();) {
        Eigen::Index end = start + 1;
        while (end < ev.size() && ev(end) - ev(end - 1) < gap) ++end;
        CMatrix Q = es.eigenvectors().middleCols(start, end - start);
        start = end;
        TwistedBundle B = bundle_from_module(A, Q);
        LoopSection chi = twisted_character(B);
        double norm = section_inner(chi, chi).real();
        if (std::abs(norm - 1.0) > 1e-6)
            throw Error("numeric block split is unstable (character norm " + std::to_string(norm) +
                        "); try another seed");
        bool seen = false;
        for (const auto& f : found) {
            double d = 0;
            for (std::size_t o = 0; o < chi.values.size(); ++o) d = std::max(d, std::abs(chi.values[o] - f.chi.values[o]));
            if (d < 1e-6) {
                seen = true;
                break;
            }
        }
        if (seen) continue;
        BundleReport rep = validate_bundle(B, std::max(opt.tol, 1e-8));
        if (!rep.pass) throw InternalError("block split produced an invalid bundle");
        dim_sq += static_cast<long long>(B.total_dim()) * B.total_dim();
        found.push_back({std::move(B), std::move(chi)});
    }
    if (dim_sq != A.m) throw Error("irreducible blocks do not exhaust the arrow algebra; try another seed");

    auto key = [](const Found& f) {
        std::vector<long long> k{f.bundle.total_dim()};
        for (const cplx& z : f.chi.values) {
            k.push_back(-std::llround(z.real() * 1e6));
            k.push_back(-std::llround(z.imag() * 1e6));
        }
        return k;
    };
    std::sort(found.begin(), found.end(), [&](const Found& a, const Found& b) { return key(a) < key(b); });
    std::vector<TwistedBundle> out;
    for (auto& f : found) out.push_back(std::move(f.bundle));
    return out;
}

}  // namespace gerbecat

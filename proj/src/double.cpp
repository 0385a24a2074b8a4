#include "gerbecat/double.hpp"

#include "gerbecat/arith.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace gerbecat {

namespace {

// off[g][a] = offset of block (a, a^-1 g) in (V (x) W)_g
std::vector<std::vector<int>> fuse_offsets(const FiniteGroup& G, const std::vector<int>& dv,
                                           const std::vector<int>& dw, std::vector<int>* total = nullptr) {
    const int n = G.order();
    std::vector<std::vector<int>> off(n, std::vector<int>(n, 0));
    if (total) total->assign(n, 0);
    for (int g = 0; g < n; ++g) {
        int acc = 0;
        for (int a = 0; a < n; ++a) {
            off[g][a] = acc;
            acc += dv[a] * dw[G.mul(G.inv(a), g)];
        }
        if (total) (*total)[g] = acc;
    }
    return off;
}

CMatrix kron(const CMatrix& A, const CMatrix& B) {
    CMatrix K(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return K;
}

void check_same_group(const GBundleOverG& V, const GBundleOverG& W) {
    if (!same_group(V.group, W.group)) throw Error("bundles over different groups");
}

using QVec = std::vector<Rational>;

// group algebra product, coefficient of k in x y
QVec qmul(const FiniteGroup& G, const QVec& x, const QVec& y) {
    const int n = G.order();
    QVec z(n, Rational(0));
    for (int a = 0; a < n; ++a) {
        if (x[a].numerator() == 0) continue;
        for (int b = 0; b < n; ++b)
            if (y[b].numerator() != 0) z[G.mul(a, b)] += x[a] * y[b];
    }
    return z;
}

bool qcentral(const FiniteGroup& G, const QVec& v, const std::vector<int>& gens) {
    const int n = G.order();
    for (int s : gens) {
        QVec d(n, Rational(0));
        d[s] = Rational(1);
        if (qmul(G, d, v) != qmul(G, v, d)) return false;
    }
    return true;
}

// v(t) = sum t_{g^-1} g
template <class T>
std::vector<T> vmap(const FiniteGroup& G, const std::vector<T>& t) {
    std::vector<T> v(t.size());
    for (int g = 0; g < G.order(); ++g) v[g] = t[G.inv(g)];
    return v;
}

// (s o t)_k = <k| R_s R_t |e>, R_t: x |-> x t~
template <class T>
std::vector<T> convolve_via_right_mult(const FiniteGroup& G, const std::vector<T>& s, const std::vector<T>& t) {
    const int n = G.order();
    std::vector<T> after_t(n, T(0));
    for (int g = 0; g < n; ++g) after_t[g] += t[g];  // e t~
    std::vector<T> out(n, T(0));
    for (int x = 0; x < n; ++x)
        for (int g = 0; g < n; ++g) out[G.mul(x, g)] += after_t[x] * s[g];
    return out;
}

}  // namespace

GBundleOverG unit_object(const GroupPtr& G) {
    const int n = G->order();
    GBundleOverG U;
    U.group = G;
    U.dims.assign(n, 0);
    U.dims[0] = 1;
    U.maps.resize(static_cast<std::size_t>(n) * n);
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) U.act(h, g) = CMatrix::Identity(U.dims[g], U.dims[g]);
    return U;
}

GBundleOverG fuse(const GBundleOverG& V, const GBundleOverG& W) {
    check_same_group(V, W);
    const FiniteGroup& G = *V.group;
    const int n = G.order();
    GBundleOverG T;
    T.group = V.group;
    auto off = fuse_offsets(G, V.dims, W.dims, &T.dims);
    T.maps.resize(static_cast<std::size_t>(n) * n);
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) {
            int k = G.conj(h, g);
            CMatrix M = CMatrix::Zero(T.dims[k], T.dims[g]);
            for (int a = 0; a < n; ++a) {
                int b = G.mul(G.inv(a), g);
                int r = V.dims[a] * W.dims[b];
                if (r == 0) continue;
                int a2 = G.conj(h, a);
                M.block(off[k][a2], off[g][a], r, r) = kron(V.act(h, a), W.act(h, b));
            }
            T.act(h, g) = std::move(M);
        }
    return T;
}

GMorphism identity_morphism(const GBundleOverG& V) {
    GMorphism f;
    for (int d : V.dims) f.push_back(CMatrix::Identity(d, d));
    return f;
}

GMorphism compose(const GMorphism& f, const GMorphism& g) {
    if (f.size() != g.size()) throw Error("morphisms over different groups");
    GMorphism h;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i].cols() != g[i].rows()) throw Error("incompatible morphisms", {static_cast<int>(i)});
        h.push_back(f[i] * g[i]);
    }
    return h;
}

GMorphism adjoint(const GMorphism& f) {
    GMorphism h;
    for (const auto& m : f) h.push_back(m.adjoint());
    return h;
}

GMorphism tensor_morphisms(const GMorphism& f, const GBundleOverG& X, const GBundleOverG& Xp, const GMorphism& h,
                           const GBundleOverG& Y, const GBundleOverG& Yp) {
    check_same_group(X, Y);
    const FiniteGroup& G = *X.group;
    const int n = G.order();
    std::vector<int> ts, tt;
    auto os = fuse_offsets(G, X.dims, Y.dims, &ts);
    auto ot = fuse_offsets(G, Xp.dims, Yp.dims, &tt);
    GMorphism out;
    for (int g = 0; g < n; ++g) {
        CMatrix M = CMatrix::Zero(tt[g], ts[g]);
        for (int a = 0; a < n; ++a) {
            int b = G.mul(G.inv(a), g);
            if (X.dims[a] * Y.dims[b] == 0 || Xp.dims[a] * Yp.dims[b] == 0) continue;
            M.block(ot[g][a], os[g][a], Xp.dims[a] * Yp.dims[b], X.dims[a] * Y.dims[b]) = kron(f[a], h[b]);
        }
        out.push_back(std::move(M));
    }
    return out;
}

GMorphism associator(const GBundleOverG& U, const GBundleOverG& V, const GBundleOverG& W) {
    check_same_group(U, V);
    check_same_group(V, W);
    const FiniteGroup& G = *U.group;
    const int n = G.order();
    std::vector<int> duv, dvw, dl, dr;
    auto o_uv = fuse_offsets(G, U.dims, V.dims, &duv);
    auto o_vw = fuse_offsets(G, V.dims, W.dims, &dvw);
    auto o_l = fuse_offsets(G, duv, W.dims, &dl);
    auto o_r = fuse_offsets(G, U.dims, dvw, &dr);
    GMorphism out;
    for (int g = 0; g < n; ++g) {
        CMatrix M = CMatrix::Zero(dr[g], dl[g]);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                int ab = G.mul(a, b);
                int c = G.mul(G.inv(ab), g);
                int bc = G.mul(b, c);
                int du = U.dims[a], dv = V.dims[b], dw = W.dims[c];
                for (int i = 0; i < du; ++i)
                    for (int j = 0; j < dv; ++j)
                        for (int k = 0; k < dw; ++k) {
                            int src = o_l[g][ab] + (o_uv[ab][a] + i * dv + j) * dw + k;
                            int tgt = o_r[g][a] + i * dvw[bc] + o_vw[bc][b] + j * dw + k;
                            M(tgt, src) = 1.0;
                        }
            }
        out.push_back(std::move(M));
    }
    return out;
}

GMorphism braid(const GBundleOverG& V, const GBundleOverG& W) {
    check_same_group(V, W);
    const FiniteGroup& G = *V.group;
    const int n = G.order();
    std::vector<int> dvw, dwv;
    auto o_vw = fuse_offsets(G, V.dims, W.dims, &dvw);
    auto o_wv = fuse_offsets(G, W.dims, V.dims, &dwv);
    GMorphism out;
    for (int g = 0; g < n; ++g) {
        CMatrix M = CMatrix::Zero(dwv[g], dvw[g]);
        for (int a = 0; a < n; ++a) {
            int b = G.mul(G.inv(a), g);
            int dv = V.dims[a], dw = W.dims[b];
            if (dv * dw == 0) continue;
            const CMatrix& R = V.act(G.inv(b), a);  // V_a -> V_{b^-1 a b}
            for (int iv = 0; iv < dv; ++iv)
                for (int iw = 0; iw < dw; ++iw)
                    for (int r = 0; r < dv; ++r)
                        M(o_wv[g][b] + iw * dv + r, o_vw[g][a] + iv * dw + iw) = R(r, iv);
        }
        out.push_back(std::move(M));
    }
    return out;
}

double equivariance_residual(const GMorphism& f, const GBundleOverG& V, const GBundleOverG& W) {
    check_same_group(V, W);
    const FiniteGroup& G = *V.group;
    const int n = G.order();
    double worst = 0;
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) {
            int k = G.conj(h, g);
            if (f[k].size() == 0 && f[g].size() == 0) continue;
            CMatrix D = f[k] * V.act(h, g) - W.act(h, g) * f[g];
            if (D.size()) worst = std::max(worst, D.cwiseAbs().maxCoeff());
        }
    return worst;
}

double unitarity_residual(const GMorphism& f) {
    double worst = 0;
    for (const auto& m : f) {
        if (m.size() == 0) continue;
        if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
        CMatrix D = m.adjoint() * m - CMatrix::Identity(m.cols(), m.cols());
        worst = std::max(worst, D.cwiseAbs().maxCoeff());
    }
    return worst;
}

double morphism_distance(const GMorphism& f, const GMorphism& g) {
    if (f.size() != g.size()) return std::numeric_limits<double>::infinity();
    double worst = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i].rows() != g[i].rows() || f[i].cols() != g[i].cols()) return std::numeric_limits<double>::infinity();
        if (f[i].size()) worst = std::max(worst, (f[i] - g[i]).cwiseAbs().maxCoeff());
    }
    return worst;
}

BraidReport braid_checks(const GBundleOverG& U, const GBundleOverG& V, const GBundleOverG& W) {
    BraidReport rep;
    auto id = [](const GBundleOverG& X) { return identity_morphism(X); };
    GBundleOverG UV = fuse(U, V), VU = fuse(V, U), UW = fuse(U, W), WU = fuse(W, U), VW = fuse(V, W),
                 WV = fuse(W, V);

    // Yang-Baxter, (U V) W -> (W V) U
    GMorphism lhs = compose(
        tensor_morphisms(braid(V, W), VW, WV, id(U), U, U),
        compose(adjoint(associator(V, W, U)),
                compose(tensor_morphisms(id(V), V, V, braid(U, W), UW, WU),
                        compose(associator(V, U, W), tensor_morphisms(braid(U, V), UV, VU, id(W), W, W)))));
    GMorphism rhs = compose(
        adjoint(associator(W, V, U)),
        compose(tensor_morphisms(id(W), W, W, braid(U, V), UV, VU),
                compose(associator(W, U, V),
                        compose(tensor_morphisms(braid(U, W), UW, WU, id(V), V, V),
                                compose(adjoint(associator(U, W, V)),
                                        compose(tensor_morphisms(id(U), U, U, braid(V, W), VW, WV),
                                                associator(U, V, W)))))));
    rep.yang_baxter = morphism_distance(lhs, rhs);

    // U past V (x) W: (U V) W -> V (W U)
    GMorphism h1l = compose(associator(V, W, U), compose(braid(U, VW), associator(U, V, W)));
    GMorphism h1r = compose(tensor_morphisms(id(V), V, V, braid(U, W), UW, WU),
                            compose(associator(V, U, W), tensor_morphisms(braid(U, V), UV, VU, id(W), W, W)));
    rep.hexagon_left = morphism_distance(h1l, h1r);

    // U (x) V past W: U (V W) -> (W U) V
    GMorphism h2l =
        compose(adjoint(associator(W, U, V)), compose(braid(UV, W), adjoint(associator(U, V, W))));
    GMorphism h2r = compose(tensor_morphisms(braid(U, W), UW, WU, id(V), V, V),
                            compose(adjoint(associator(U, W, V)), tensor_morphisms(id(U), U, U, braid(V, W), VW, WV)));
    rep.hexagon_right = morphism_distance(h2l, h2r);

    rep.equivariance = std::max({equivariance_residual(braid(U, V), UV, VU), equivariance_residual(braid(V, W), VW, WV),
                                 equivariance_residual(associator(U, V, W), fuse(UV, W), fuse(U, VW))});
    rep.unitarity = std::max({unitarity_residual(braid(U, V)), unitarity_residual(braid(V, W)),
                              unitarity_residual(associator(U, V, W))});
    return rep;
}

std::vector<SimpleObject> simples(const GroupPtr& Gp, std::uint64_t seed) {
    const FiniteGroup& G = *Gp;
    const int n = G.order();
    GroupAnalysis an = analyze(G);
    std::vector<SimpleObject> out;
    for (const auto& cls : an.classes) {
        int g0 = cls.front();
        const std::vector<int>& C = an.centralizers[g0];
        std::vector<int> pos(n, -1);
        for (std::size_t i = 0; i < C.size(); ++i) pos[C[i]] = static_cast<int>(i);
        std::vector<int> t(n, -1);
        for (int h = 0; h < n; ++h) {
            int g = G.conj(h, g0);
            if (t[g] < 0) t[g] = h;
        }
        IrrSystem irr = irreducible_representations(subgroup_as_group(Gp, C), seed);
        for (std::size_t r = 0; r < irr.dims.size(); ++r) {
            GBundleOverG V;
            V.group = Gp;
            V.dims.assign(n, 0);
            for (int g : cls) V.dims[g] = irr.dims[r];
            V.maps.resize(static_cast<std::size_t>(n) * n);
            for (int g = 0; g < n; ++g)
                for (int h = 0; h < n; ++h) {
                    int k = G.conj(h, g);
                    if (V.dims[g] == 0) {
                        V.act(h, g) = CMatrix::Zero(V.dims[k], 0);
                        continue;
                    }
                    int c = G.mul(G.mul(G.inv(t[k]), h), t[g]);
                    if (pos[c] < 0) throw InternalError("transversal element outside the centralizer");
                    V.act(h, g) = irr.reps[r][pos[c]];
                }
            out.push_back(SimpleObject{g0, static_cast<int>(r), std::move(V)});
        }
    }
    return out;
}

std::vector<long long> decompose(const GBundleOverG& V, const std::vector<SimpleObject>& S) {
    const FiniteGroup& G = *V.group;
    const int n = G.order();
    auto chi_v = double_character(V);
    std::vector<long long> m;
    for (const auto& s : S) {
        check_same_group(V, s.object);
        auto chi_s = double_character(s.object);
        cplx acc(0, 0);
        for (std::size_t i = 0; i < chi_v.size(); ++i) acc += std::conj(chi_s[i]) * chi_v[i];
        acc /= static_cast<double>(n);
        long long r = std::llround(acc.real());
        if (std::abs(acc - cplx(static_cast<double>(r), 0)) > 1e-6 || r < 0)
            throw InternalError("non-integral multiplicity " + std::to_string(acc.real()));
        m.push_back(r);
    }
    for (int g = 0; g < n; ++g) {
        long long d = 0;
        for (std::size_t i = 0; i < S.size(); ++i) d += m[i] * S[i].object.dims[g];
        if (d != V.dims[g]) throw InternalError("decomposition misses part of the fiber at " + std::to_string(g));
    }
    return m;
}

std::vector<std::vector<std::vector<long long>>> fusion_table(const std::vector<SimpleObject>& S) {
    std::vector<std::vector<std::vector<long long>>> N(S.size(), std::vector<std::vector<long long>>(S.size()));
    for (std::size_t i = 0; i < S.size(); ++i)
        for (std::size_t j = 0; j < S.size(); ++j) N[i][j] = decompose(fuse(S[i].object, S[j].object), S);
    return N;
}

CenterReport center_check(const GroupPtr& Gp, std::uint64_t seed) {
    const FiniteGroup& G = *Gp;
    const int n = G.order();
    GroupAnalysis an = analyze(G);
    std::vector<int> gens = generating_set(G);
    CenterReport rep;
    rep.class_count = static_cast<int>(an.classes.size());

    // center of C[G]: z with s z - z s = 0 for every generator s
    std::vector<std::vector<Rational>> rows;
    for (int s : gens)
        for (int k = 0; k < n; ++k) {
            std::vector<Rational> row(n, Rational(0));
            for (int z = 0; z < n; ++z) {
                if (G.mul(s, z) == k) row[z] += Rational(1);
                if (G.mul(z, s) == k) row[z] -= Rational(1);
            }
            rows.push_back(std::move(row));
        }
    rep.center_dim = n - rational_rank(rows);

    std::vector<QVec> indicators;
    for (const auto& cls : an.classes) {
        QVec t(n, Rational(0));
        for (int g : cls) t[g] = Rational(1);
        indicators.push_back(t);
    }
    rep.class_functions_central = true;
    for (const auto& t : indicators) rep.class_functions_central &= qcentral(G, vmap(G, t), gens);

    std::vector<char> in_center(n, 0);
    for (int z : an.center) in_center[z] = 1;
    rep.non_class_detected = true;
    for (int g = 0; g < n; ++g) {
        QVec d(n, Rational(0));
        d[g] = Rational(1);
        if (qcentral(G, vmap(G, d), gens) != static_cast<bool>(in_center[g])) rep.non_class_detected = false;
    }

    rep.convolution_exact = true;
    for (const auto& s : indicators)
        for (const auto& t : indicators) {
            QVec st = convolve_via_right_mult(G, s, t);
            QVec direct(n, Rational(0));
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) direct[G.mul(a, b)] += t[a] * s[b];
            if (st != direct || vmap(G, st) != qmul(G, vmap(G, s), vmap(G, t))) rep.convolution_exact = false;
        }

    // extension to the regular representation, T_reg = sum t_g L_g
    rep.restriction_exact = true;
    for (const auto& t : indicators) {
        std::vector<std::vector<Rational>> T(n, std::vector<Rational>(n, Rational(0)));  // T[row][col]
        for (int g = 0; g < n; ++g)
            for (int x = 0; x < n; ++x) T[G.mul(g, x)][x] += t[g];
        for (int g = 0; g < n; ++g)
            if (T[g][0] != t[g]) rep.restriction_exact = false;
        for (int s : gens)
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y)
                    if (T[G.mul(s, y)][G.mul(s, x)] != T[y][x]) rep.restriction_exact = false;
    }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    auto rand_vec = [&] {
        std::vector<cplx> v(n);
        for (auto& z : v) z = cplx(nd(rng), nd(rng));
        return v;
    };
    for (int trial = 0; trial < 4; ++trial) {
        auto s = rand_vec(), t = rand_vec();
        auto st = convolve_via_right_mult(G, s, t);
        auto lhs = vmap(G, st);
        auto vs = vmap(G, s), vt = vmap(G, t);
        std::vector<cplx> rhs(n, cplx(0, 0));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) rhs[G.mul(a, b)] += vs[a] * vt[b];
        for (int k = 0; k < n; ++k) rep.convolution_numeric = std::max(rep.convolution_numeric, std::abs(lhs[k] - rhs[k]));
    }

    IrrSystem irr = irreducible_representations(Gp, seed);
    for (const auto& ti : indicators) {
        std::vector<cplx> t(n);
        for (int g = 0; g < n; ++g) t[g] = cplx(boost::rational_cast<double>(ti[g]), 0);
        std::vector<cplx> back(n, cplx(0, 0));
        for (std::size_t r = 0; r < irr.dims.size(); ++r) {
            CMatrix A = CMatrix::Zero(irr.dims[r], irr.dims[r]);
            for (int g = 0; g < n; ++g) A += t[g] * irr.reps[r][g];
            cplx lambda = A.trace() / static_cast<double>(irr.dims[r]);
            // T acts on an irreducible by a scalar when t is a class function
            double scal = (A - lambda * CMatrix::Identity(irr.dims[r], irr.dims[r])).cwiseAbs().maxCoeff();
            rep.irreducible_roundtrip = std::max(rep.irreducible_roundtrip, scal);
            for (int g = 0; g < n; ++g)
                back[g] += static_cast<double>(irr.dims[r]) / n * lambda * std::conj(irr.chars[r][g]);
        }
        for (int g = 0; g < n; ++g) rep.irreducible_roundtrip = std::max(rep.irreducible_roundtrip, std::abs(back[g] - t[g]));
    }

    rep.pass = rep.center_dim == rep.class_count && rep.class_functions_central && rep.non_class_detected &&
               rep.convolution_exact && rep.restriction_exact && rep.convolution_numeric < 1e-10 &&
               rep.irreducible_roundtrip < 1e-10;
    return rep;
}

namespace {

// group elements g with g.x = x2, ascending, and their block offsets
struct ExtBlocks {
    std::vector<int> elems;
    std::vector<int> off;  // indexed by group element, -1 when absent
    int dim = 0;
};

ExtBlocks ext_blocks(const GBundleOverG& T, const GSet& S, int x2, int x) {
    const int n = S.group().order();
    ExtBlocks b;
    b.off.assign(n, -1);
    for (int g = 0; g < n; ++g)
        if (S.act(g, x) == x2) {
            b.elems.push_back(g);
            b.off[g] = b.dim;
            b.dim += T.dims[g];
        }
    return b;
}

}  // namespace

TwistedBundle extend_transformation(const GBundleOverG& T, const Gerbe& X) {
    if (!same_group(T.group, X.group_ptr())) throw Error("transformation over a different group");
    const FiniteGroup& G = *T.group;
    const int n = G.order();
    const int nx = X.size();
    Gerbe P = tensor(X, X, true);
    std::vector<ExtBlocks> blocks(P.size());
    std::vector<int> dims(P.size());
    for (int x2 = 0; x2 < nx; ++x2)
        for (int x = 0; x < nx; ++x) {
            blocks[x2 * nx + x] = ext_blocks(T, X.space, x2, x);
            dims[x2 * nx + x] = blocks[x2 * nx + x].dim;
        }
    std::vector<CMatrix> maps(static_cast<std::size_t>(P.size()) * n);
    for (int x2 = 0; x2 < nx; ++x2)
        for (int x = 0; x < nx; ++x) {
            int p = x2 * nx + x;
            for (int h = 0; h < n; ++h) {
                int q = X.space.act(h, x2) * nx + X.space.act(h, x);
                CMatrix M = CMatrix::Zero(dims[q], dims[p]);
                for (int g : blocks[p].elems) {
                    int k = G.conj(h, g);
                    int d = T.dims[g];
                    if (d == 0) continue;
                    Phase ph = X.cocycle.at(x, h, g) - X.cocycle.at(x, k, h);
                    M.block(blocks[q].off[k], blocks[p].off[g], d, d) = ph.to_complex() * T.act(h, g);
                }
                maps[static_cast<std::size_t>(p) * n + h] = std::move(M);
            }
        }
    return TwistedBundle(std::move(P), std::move(dims), std::move(maps));
}

double naturality_residual(const GBundleOverG& T, const Gerbe& X, const Gerbe& Y, const TwistedBundle& V) {
    const FiniteGroup& G = *T.group;
    const int n = G.order();
    const int nx = X.size(), ny = Y.size();
    if (V.gerbe().size() != nx * ny) throw Error("morphism has the wrong carrier");
    TwistedBundle TX = extend_transformation(T, X), TY = extend_transformation(T, Y);
    TwistedBundle A = compose_morphisms(TY, V, X, Y, Y);  // T_Y o V
    TwistedBundle B = compose_morphisms(V, TX, X, X, Y);  // V o T_X
    auto vdim = [&](int y, int x) { return V.dim(y * nx + x); };

    std::vector<CMatrix> omega(static_cast<std::size_t>(nx) * ny);
    for (int y = 0; y < ny; ++y)
        for (int x = 0; x < nx; ++x) {
            int p = y * nx + x;
            if (A.dim(p) != B.dim(p)) return std::numeric_limits<double>::infinity();
            std::vector<int> offA(ny, 0), offB(nx, 0);
            for (int y2 = 0, acc = 0; y2 < ny; ++y2) {
                offA[y2] = acc;
                acc += TY.dim(y * ny + y2) * vdim(y2, x);
            }
            for (int x2 = 0, acc = 0; x2 < nx; ++x2) {
                offB[x2] = acc;
                acc += vdim(y, x2) * TX.dim(x2 * nx + x);
            }
            CMatrix O = CMatrix::Zero(B.dim(p), A.dim(p));
            for (int g = 0; g < n; ++g) {
                int dT = T.dims[g];
                if (dT == 0) continue;
                int y2 = Y.space.act(G.inv(g), y);
                int x2 = X.space.act(g, x);
                ExtBlocks by = ext_blocks(T, Y.space, y, y2);
                ExtBlocks bx = ext_blocks(T, X.space, x2, x);
                int dv_src = vdim(y2, x), dv_tgt = vdim(y, x2);
                const CMatrix& Vg = V.map(g, y2 * nx + x);  // (g^-1 y, x) -> (y, g x)
                int dTX = TX.dim(x2 * nx + x);
                for (int iT = 0; iT < dT; ++iT)
                    for (int iV = 0; iV < dv_src; ++iV) {
                        int src = offA[y2] + (by.off[g] + iT) * dv_src + iV;
                        for (int jV = 0; jV < dv_tgt; ++jV) {
                            int tgt = offB[x2] + jV * dTX + bx.off[g] + iT;
                            O(tgt, src) = Vg(jV, iV);
                        }
                    }
            }
            omega[p] = std::move(O);
        }

    double worst = 0;
    for (int p = 0; p < nx * ny; ++p) {
        if (omega[p].size() == 0) continue;
        worst = std::max(worst, (omega[p].adjoint() * omega[p] - CMatrix::Identity(omega[p].cols(), omega[p].cols()))
                                    .cwiseAbs()
                                    .maxCoeff());
        int y = p / nx, x = p % nx;
        for (int h = 0; h < n; ++h) {
            int q = Y.space.act(h, y) * nx + X.space.act(h, x);
            CMatrix D = omega[q] * A.map(h, p) - B.map(h, p) * omega[p];
            worst = std::max(worst, D.cwiseAbs().maxCoeff());
        }
    }
    return worst;
}

GBundleOverG invert_grading(const GBundleOverG& T) {
    const FiniteGroup& G = *T.group;
    const int n = G.order();
    GBundleOverG V;
    V.group = T.group;
    V.maps.resize(static_cast<std::size_t>(n) * n);
    for (int g = 0; g < n; ++g) V.dims.push_back(T.dims[G.inv(g)]);
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) V.act(h, g) = T.act(h, G.inv(g));
    if (T.monomial) {
        V.monomial.emplace(static_cast<std::size_t>(n) * n);
        for (int g = 0; g < n; ++g)
            for (int h = 0; h < n; ++h)
                (*V.monomial)[static_cast<std::size_t>(g) * n + h] =
                    (*T.monomial)[static_cast<std::size_t>(G.inv(g)) * n + h];
    }
    return V;
}

namespace {

// off[g][a] = offset of block S_{g a^-1} (x) T_a in (S o T)_g
std::vector<std::vector<int>> comp_offsets(const FiniteGroup& G, const std::vector<int>& ds,
                                           const std::vector<int>& dt, std::vector<int>* total = nullptr) {
    const int n = G.order();
    std::vector<std::vector<int>> off(n, std::vector<int>(n, 0));
    if (total) total->assign(n, 0);
    for (int g = 0; g < n; ++g) {
        int acc = 0;
        for (int a = 0; a < n; ++a) {
            off[g][a] = acc;
            acc += ds[G.mul(g, G.inv(a))] * dt[a];
        }
        if (total) (*total)[g] = acc;
    }
    return off;
}

}  // namespace

GBundleOverG compose_transformations(const GBundleOverG& S, const GBundleOverG& T) {
    check_same_group(S, T);
    const FiniteGroup& G = *S.group;
    const int n = G.order();
    GBundleOverG R;
    R.group = S.group;
    auto off = comp_offsets(G, S.dims, T.dims, &R.dims);
    R.maps.resize(static_cast<std::size_t>(n) * n);
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) {
            int k = G.conj(h, g);
            CMatrix M = CMatrix::Zero(R.dims[k], R.dims[g]);
            for (int a = 0; a < n; ++a) {
                int s = G.mul(g, G.inv(a));
                int r = S.dims[s] * T.dims[a];
                if (r == 0) continue;
                M.block(off[k][G.conj(h, a)], off[g][a], r, r) = kron(S.act(h, s), T.act(h, a));
            }
            R.act(h, g) = std::move(M);
        }
    return R;
}

namespace {

// fuse(V(S), V(T)) -> V(S o T)
GMorphism coherence_map(const GBundleOverG& S, const GBundleOverG& T) {
    const FiniteGroup& G = *S.group;
    const int n = G.order();
    GBundleOverG VS = invert_grading(S), VT = invert_grading(T);
    std::vector<int> df, dc;
    auto of = fuse_offsets(G, VS.dims, VT.dims, &df);
    auto oc = comp_offsets(G, S.dims, T.dims, &dc);
    GMorphism M;
    for (int k = 0; k < n; ++k) {
        int ki = G.inv(k);
        CMatrix C = CMatrix::Zero(dc[ki], df[k]);
        for (int a = 0; a < n; ++a) {
            int b = G.mul(G.inv(a), k);
            int ds = S.dims[G.inv(a)], dt = T.dims[G.inv(b)];
            if (ds * dt == 0) continue;
            int a2 = G.mul(ki, a);
            CMatrix blk = kron(S.act(a2, G.inv(a)), CMatrix::Identity(dt, dt));
            C.block(oc[ki][a2], of[k][a], ds * dt, ds * dt) = blk;
        }
        M.push_back(std::move(C));
    }
    return M;
}

}  // namespace

FynReport fyn_check(const GBundleOverG& T, const GBundleOverG& S, double tol) {
    check_same_group(S, T);
    const GroupPtr& Gp = S.group;
    const FiniteGroup& G = *Gp;
    const int n = G.order();
    FynReport rep;

    GBundleOverG ST = compose_transformations(S, T), TS = compose_transformations(T, S);
    GBundleOverG VS = invert_grading(S), VT = invert_grading(T);
    GBundleOverG F = fuse(VS, VT), Fr = fuse(VT, VS);
    GBundleOverG VST = invert_grading(ST), VTS = invert_grading(TS);
    rep.dims_equal = F.dims == VST.dims && Fr.dims == VTS.dims;
    if (!rep.dims_equal) return rep;

    // composite of the extensions over the regular gerbe, read at (g, e)
    Gerbe R = regular_gerbe(Gp);
    TwistedBundle C = compose_morphisms(extend_transformation(S, R), extend_transformation(T, R), R, R, R);
    std::vector<int> dc;
    auto oc = comp_offsets(G, S.dims, T.dims, &dc);
    for (int g = 0; g < n; ++g) {
        int p = g * n;
        if (C.dim(p) != ST.dims[g]) {
            rep.composition_residual = std::numeric_limits<double>::infinity();
            break;
        }
        for (int h = 0; h < n; ++h) {
            int hg = G.mul(h, g);
            int k = G.conj(h, g);
            // block x' of the fiber at (hg, h) is block x' h^-1 of (S o T)_{hgh^-1}
            CMatrix P = CMatrix::Zero(dc[k], C.dim(hg * n + h));
            for (int x2 = 0, acc = 0; x2 < n; ++x2) {
                int a2 = G.mul(x2, G.inv(h));
                int r = S.dims[G.mul(hg, G.inv(x2))] * T.dims[a2];
                for (int i = 0; i < r; ++i) P(oc[k][a2] + i, acc + i) = 1.0;
                acc += r;
            }
            CMatrix D = P * C.map(h, p) - ST.act(h, g);
            if (D.size()) rep.composition_residual = std::max(rep.composition_residual, D.cwiseAbs().maxCoeff());
        }
    }

    GMorphism Mst = coherence_map(S, T), Mts = coherence_map(T, S);
    rep.coherence_residual = std::max({equivariance_residual(Mst, F, VST), unitarity_residual(Mst),
                                       equivariance_residual(Mts, Fr, VTS), unitarity_residual(Mts)});

    GMorphism transported = compose(Mts, compose(braid(VS, VT), adjoint(Mst)));
    auto ots = comp_offsets(G, T.dims, S.dims);
    GMorphism beta;
    for (int k = 0; k < n; ++k) {
        int g = G.inv(k);
        CMatrix B = CMatrix::Zero(TS.dims[g], ST.dims[g]);
        for (int a = 0; a < n; ++a) {
            int s = G.mul(g, G.inv(a));  // S degree, and the new T-side block index
            int ds = S.dims[s], dt = T.dims[a];
            if (ds * dt == 0) continue;
            const CMatrix& Ta = T.act(s, a);  // T_a -> T_{s a s^-1}
            int tdeg = G.conj(s, a);
            for (int is = 0; is < ds; ++is)
                for (int it = 0; it < dt; ++it)
                    for (int r = 0; r < T.dims[tdeg]; ++r)
                        B(ots[g][s] + r * ds + is, oc[g][a] + is * dt + it) = Ta(r, it);
        }
        beta.push_back(std::move(B));
    }
    rep.braid_residual = morphism_distance(transported, beta);
    rep.pass = rep.composition_residual < tol && rep.coherence_residual < tol && rep.braid_residual < tol;
    return rep;
}

CMatrix random_unitary(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    CMatrix A(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) A(i, j) = cplx(nd(rng), nd(rng));
    Eigen::HouseholderQR<CMatrix> qr(A);
    return qr.householderQ() * CMatrix::Identity(d, d);
}

GBundleOverG random_object(const std::vector<SimpleObject>& S, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, S.size() - 1);
    GBundleOverG V = S[pick(rng)].object;
    if (rng() % 2) V = direct_sum(V, S[pick(rng)].object);
    const int n = V.order();
    std::vector<CMatrix> U;
    for (int g = 0; g < n; ++g) U.push_back(random_unitary(V.dims[g], rng));
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) {
            int k = V.group->conj(h, g);
            V.act(h, g) = U[k] * V.act(h, g) * U[g].adjoint();
        }
    V.monomial.reset();
    return V;
}

}  // namespace gerbecat

#include "gerbecat/geochar.hpp"

#include "gerbecat/arith.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace gerbecat {

int GBundleOverG::total_dim() const {
    int s = 0;
    for (int d : dims) s += d;
    return s;
}

GBundleReport validate_gbundle(const GBundleOverG& V, double tol) {
    const FiniteGroup& G = *V.group;
    const int n = G.order();
    if (static_cast<int>(V.dims.size()) != n || V.maps.size() != static_cast<std::size_t>(n) * n)
        throw Error("bundle over G needs one fiber per element and one matrix per pair");
    GBundleReport rep;
    double worst = -1;
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) {
            const CMatrix& M = V.act(h, g);
            if (M.rows() != V.dims[G.conj(h, g)] || M.cols() != V.dims[g]) throw Error("matrix has the wrong shape", {g, h});
        }
    for (int g = 0; g < n; ++g) {
        const int d = V.dims[g];
        if (d == 0) continue;
        double id = (V.act(0, g) - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
        rep.functoriality = std::max(rep.functoriality, id);
        if (id > worst) worst = id, rep.witness = {g, 0};
        for (int h1 = 0; h1 < n; ++h1) {
            const CMatrix& M = V.act(h1, g);
            double u = (M.adjoint() * M - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
            rep.unitarity = std::max(rep.unitarity, u);
            if (u > worst) worst = u, rep.witness = {g, h1};
            int g1 = G.conj(h1, g);
            for (int h2 = 0; h2 < n; ++h2) {
                double r = (V.act(h2, g1) * M - V.act(G.mul(h2, h1), g)).cwiseAbs().maxCoeff();
                rep.functoriality = std::max(rep.functoriality, r);
                if (r > worst) worst = r, rep.witness = {g, h1, h2};
            }
        }
    }
    rep.pass = rep.unitarity <= tol && rep.functoriality <= tol;
    return rep;
}

GBundleOverG trivial_gbundle(const GroupPtr& G) {
    const int n = G->order();
    GBundleOverG V{G, std::vector<int>(n, 1), std::vector<CMatrix>(static_cast<std::size_t>(n) * n, CMatrix::Identity(1, 1)),
                   std::vector<GBundleOverG::Monomial>(static_cast<std::size_t>(n) * n, {{0}, {Phase()}})};
    return V;
}

GBundleOverG direct_sum(const GBundleOverG& V, const GBundleOverG& W) {
    if (!same_group(V.group, W.group)) throw Error("direct sum over different groups");
    const FiniteGroup& G = *V.group;
    const int n = G.order();
    GBundleOverG S;
    S.group = V.group;
    S.dims.resize(n);
    for (int g = 0; g < n; ++g) S.dims[g] = V.dims[g] + W.dims[g];
    S.maps.resize(static_cast<std::size_t>(n) * n);
    const bool mono = V.monomial && W.monomial;
    if (mono) S.monomial.emplace(static_cast<std::size_t>(n) * n);
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) {
            int k = G.conj(h, g);
            CMatrix M = CMatrix::Zero(S.dims[k], S.dims[g]);
            M.topLeftCorner(V.dims[k], V.dims[g]) = V.act(h, g);
            M.bottomRightCorner(W.dims[k], W.dims[g]) = W.act(h, g);
            std::size_t idx = static_cast<std::size_t>(g) * n + h;
            S.maps[idx] = std::move(M);
            if (mono) {
                auto m = (*V.monomial)[idx];
                const auto& w = (*W.monomial)[idx];
                for (std::size_t i = 0; i < w.perm.size(); ++i) {
                    m.perm.push_back(V.dims[k] + w.perm[i]);
                    m.phase.push_back(w.phase[i]);
                }
                (*S.monomial)[idx] = std::move(m);
            }
        }
    return S;
}

GBundleOverG geometric_character(const Gerbe& X) {
    const GSet& S = X.space;
    const FiniteGroup& G = S.group();
    const int n = G.order();
    std::vector<std::vector<int>> fix(n);
    std::vector<std::vector<int>> pos(n, std::vector<int>(S.size(), -1));
    for (int g = 0; g < n; ++g) {
        fix[g] = S.fixed_points(g);
        for (std::size_t i = 0; i < fix[g].size(); ++i) pos[g][fix[g][i]] = static_cast<int>(i);
    }
    GBundleOverG V;
    V.group = X.group_ptr();
    V.maps.resize(static_cast<std::size_t>(n) * n);
    V.monomial.emplace(static_cast<std::size_t>(n) * n);
    for (int g = 0; g < n; ++g) V.dims.push_back(static_cast<int>(fix[g].size()));
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) {
            int k = G.conj(h, g);
            CMatrix M = CMatrix::Zero(V.dims[k], V.dims[g]);
            GBundleOverG::Monomial mono;
            for (int i = 0; i < V.dims[g]; ++i) {
                int x = fix[g][i];
                int j = pos[k][S.act(h, x)];
                Phase ph = X.cocycle.at(x, k, h) - X.cocycle.at(x, h, g);
                M(j, i) = ph.to_complex();
                mono.perm.push_back(j);
                mono.phase.push_back(ph);
            }
            V.act(h, g) = std::move(M);
            (*V.monomial)[static_cast<std::size_t>(g) * n + h] = std::move(mono);
        }
    return V;
}

std::vector<cplx> double_character(const GBundleOverG& V) {
    const FiniteGroup& G = *V.group;
    const int n = G.order();
    std::vector<cplx> chi(static_cast<std::size_t>(n) * n, cplx(0, 0));
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h)
            if (G.commute(g, h) && V.dims[g] > 0) chi[static_cast<std::size_t>(g) * n + h] = V.act(h, g).trace();
    return chi;
}

CyclotomicValue double_character_exact(const GBundleOverG& V, int g, int h) {
    if (!V.monomial) throw Error("exact double character needs a monomial bundle");
    if (!V.group->commute(g, h)) throw Error("double character needs commuting elements", {g, h});
    const auto& m = (*V.monomial)[static_cast<std::size_t>(g) * V.order() + h];
    std::vector<std::pair<Rational, long long>> terms;
    for (std::size_t i = 0; i < m.perm.size(); ++i)
        if (m.perm[i] == static_cast<int>(i)) terms.push_back({m.phase[i].value(), 1});
    return cyclotomic_sum(terms);
}

TwistedBundle identity_morphism(const Gerbe& X) {
    Gerbe P = tensor(X, X, true);
    const int n = X.group().order();
    const int nx = X.size();
    std::vector<int> dims(P.size(), 0);
    for (int x = 0; x < nx; ++x) dims[x * nx + x] = 1;
    std::vector<CMatrix> maps(static_cast<std::size_t>(P.size()) * n);
    for (int p = 0; p < P.size(); ++p)
        for (int g = 0; g < n; ++g) {
            int d = dims[p];
            maps[static_cast<std::size_t>(p) * n + g] = CMatrix::Identity(d, d);
        }
    return TwistedBundle(std::move(P), std::move(dims), std::move(maps));
}

TwistedBundle equivalence_morphism(const Gerbe& X, const Gerbe& Y, const GerbeEquivalence& w) {
    if (!verify_equivalence(X, Y, w)) throw Error("not an isometric equivalence");
    Gerbe P = tensor(Y, X, true);
    const int n = X.group().order();
    const int nx = X.size();
    std::vector<int> dims(P.size(), 0);
    for (int x = 0; x < nx; ++x) dims[w.map[x] * nx + x] = 1;
    std::vector<CMatrix> maps(static_cast<std::size_t>(P.size()) * n);
    for (int p = 0; p < P.size(); ++p)
        for (int g = 0; g < n; ++g) {
            CMatrix M = CMatrix::Zero(dims[p], dims[p]);
            if (dims[p] == 1) M(0, 0) = w.gamma.at(g, p % nx).to_complex();
            maps[static_cast<std::size_t>(p) * n + g] = std::move(M);
        }
    return TwistedBundle(std::move(P), std::move(dims), std::move(maps));
}

namespace {

CMatrix kron(const CMatrix& A, const CMatrix& B) {
    CMatrix K(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j) K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return K;
}

void require_over(const TwistedBundle& E, const Gerbe& P, const char* what) {
    if (!E.gerbe().space.same_action(P.space) || !(E.gerbe().cocycle == P.cocycle))
        throw Error(std::string(what) + " does not live over the expected tensor gerbe");
}

}  // namespace

TwistedBundle compose_morphisms(const TwistedBundle& F, const TwistedBundle& E, const Gerbe& X, const Gerbe& Y,
                                const Gerbe& Z) {
    require_over(E, tensor(Y, X, true), "first morphism");
    require_over(F, tensor(Z, Y, true), "second morphism");
    Gerbe P = tensor(Z, X, true);
    const FiniteGroup& G = X.group();
    const int n = G.order();
    const int nx = X.size(), ny = Y.size(), nz = Z.size();
    auto dF = [&](int z, int y) { return F.dim(z * ny + y); };
    auto dE = [&](int y, int x) { return E.dim(y * nx + x); };
    std::vector<int> dims(P.size(), 0);
    std::vector<std::vector<int>> offset(P.size(), std::vector<int>(ny, 0));
    for (int z = 0; z < nz; ++z)
        for (int x = 0; x < nx; ++x) {
            int p = z * nx + x, acc = 0;
            for (int y = 0; y < ny; ++y) {
                offset[p][y] = acc;
                acc += dF(z, y) * dE(y, x);
            }
            dims[p] = acc;
        }
    std::vector<CMatrix> maps(static_cast<std::size_t>(P.size()) * n);
    for (int z = 0; z < nz; ++z)
        for (int x = 0; x < nx; ++x)
            for (int g = 0; g < n; ++g) {
                int p = z * nx + x;
                int gz = Z.space.act(g, z), gx = X.space.act(g, x);
                int q = gz * nx + gx;
                CMatrix M = CMatrix::Zero(dims[q], dims[p]);
                for (int y = 0; y < ny; ++y) {
                    int sz = dF(z, y) * dE(y, x);
                    if (sz == 0) continue;
                    int gy = Y.space.act(g, y);
                    M.block(offset[q][gy], offset[p][y], sz, sz) = kron(F.map(g, z * ny + y), E.map(g, y * nx + x));
                }
                maps[static_cast<std::size_t>(p) * n + g] = std::move(M);
            }
    return TwistedBundle(std::move(P), std::move(dims), std::move(maps));
}

MorphismCharacter character_of_morphism(const TwistedBundle& E, const Gerbe& X, const Gerbe& Y) {
    require_over(E, tensor(Y, X, true), "morphism");
    const FiniteGroup& G = X.group();
    const int n = G.order();
    const int nx = X.size();
    MorphismCharacter out;
    for (int g = 0; g < n; ++g) {
        auto fy = Y.space.fixed_points(g), fx = X.space.fixed_points(g);
        CMatrix M = CMatrix::Zero(fy.size(), fx.size());
        for (std::size_t i = 0; i < fy.size(); ++i)
            for (std::size_t j = 0; j < fx.size(); ++j) {
                int p = fy[i] * nx + fx[j];
                if (E.dim(p) > 0) M(i, j) = E.map(g, p).trace();
            }
        out.mats.push_back(std::move(M));
    }
    GBundleOverG cx = geometric_character(X), cy = geometric_character(Y);
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) {
            int k = G.conj(h, g);
            if (out.mats[g].size() == 0 && out.mats[k].size() == 0) continue;
            CMatrix lhs = out.mats[k] * cx.act(h, g);
            CMatrix rhs = cy.act(h, g) * out.mats[g];
            if (lhs.size() == 0) continue;
            out.intertwining_residual = std::max(out.intertwining_residual, (lhs - rhs).cwiseAbs().maxCoeff());
        }
    return out;
}

Rational hom_dimension(const Gerbe& X, const Gerbe& Y) {
    Gerbe P = tensor(Y, X, true);
    LoopGroupoid L2 = loop_groupoid(P.space, 2);
    std::vector<std::pair<Rational, long long>> terms;
    for (const auto& [p, g, h] : L2.objects) terms.push_back({double_transgression(P.cocycle, p, g, h).value(), 1});
    CyclotomicValue v = cyclotomic_sum(terms);
    if (!v.is_rational) throw InternalError("hom integral is not rational");
    Rational d = v.value / Rational(X.group().order());
    if (d.denominator() != 1 || d.numerator() < 0) throw InternalError("hom integral is not a dimension: " + to_string(d));
    return d;
}

Rational gbundle_hom_dimension(const GBundleOverG& V, const GBundleOverG& W) {
    if (!same_group(V.group, W.group)) throw Error("bundles over different groups");
    const FiniteGroup& G = *V.group;
    const int n = G.order();
    if (V.monomial && W.monomial) {
        std::vector<std::pair<Rational, long long>> terms;
        for (int g = 0; g < n; ++g)
            for (int h = 0; h < n; ++h) {
                if (!G.commute(g, h)) continue;
                const auto& a = (*V.monomial)[static_cast<std::size_t>(g) * n + h];
                const auto& b = (*W.monomial)[static_cast<std::size_t>(g) * n + h];
                for (std::size_t i = 0; i < a.perm.size(); ++i) {
                    if (a.perm[i] != static_cast<int>(i)) continue;
                    for (std::size_t j = 0; j < b.perm.size(); ++j)
                        if (b.perm[j] == static_cast<int>(j)) terms.push_back({(b.phase[j] - a.phase[i]).value(), 1});
                }
            }
        CyclotomicValue v = cyclotomic_sum(terms);
        if (!v.is_rational) throw InternalError("character pairing is not rational");
        return v.value / Rational(n);
    }
    auto a = double_character(V), b = double_character(W);
    cplx s(0, 0);
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    s /= static_cast<double>(n);
    long long r = std::llround(s.real());
    if (std::abs(s - cplx(static_cast<double>(r), 0)) > 1e-6) throw InternalError("character pairing is not an integer");
    return Rational(r);
}

std::vector<FaithfulnessEntry> verify_fully_faithful(const std::vector<Gerbe>& gerbes) {
    std::vector<GBundleOverG> ch;
    for (const auto& g : gerbes) ch.push_back(geometric_character(g));
    std::vector<FaithfulnessEntry> out;
    for (std::size_t i = 0; i < gerbes.size(); ++i)
        for (std::size_t j = 0; j < gerbes.size(); ++j) {
            FaithfulnessEntry e;
            e.x = static_cast<int>(i);
            e.y = static_cast<int>(j);
            e.lhs = hom_dimension(gerbes[i], gerbes[j]);
            e.rhs = gbundle_hom_dimension(ch[i], ch[j]);
            e.pass = e.lhs == e.rhs;
            out.push_back(e);
        }
    return out;
}

GSet gset_from_types(const GroupPtr& G, const std::vector<std::vector<int>>& types, const std::vector<int>& mult) {
    GSet out(G, std::vector<std::vector<int>>(G->order()));
    for (std::size_t t = 0; t < types.size(); ++t)
        for (int k = 0; k < mult[t]; ++k) out = disjoint_union(out, coset_gset(G, types[t]));
    return out;
}

NondistinguishResult nondistinguish_search(const GroupPtr& G, int max_size) {
    const int n = G->order();
    if (n > 48 || max_size > 12) throw Error("search bound exceeded (|G| <= 48, size <= 12)");
    NondistinguishResult res;
    res.types = subgroup_class_reps(*G);
    const int nt = static_cast<int>(res.types.size());
    const auto subgroups = all_subgroups(*G);
    std::vector<int> size(nt);
    std::vector<std::vector<long long>> dc(nt), marks(nt);
    for (int t = 0; t < nt; ++t) {
        GSet X = coset_gset(G, res.types[t]);
        size[t] = X.size();
        for (int g = 0; g < n; ++g)
            for (int h = 0; h < n; ++h) {
                long long c = 0;
                if (G->commute(g, h))
                    for (int x = 0; x < X.size(); ++x) c += X.act(g, x) == x && X.act(h, x) == x;
                dc[t].push_back(c);
            }
        for (const auto& K : subgroups) {
            long long c = 0;
            for (int x = 0; x < X.size(); ++x)
                c += std::all_of(K.begin(), K.end(), [&](int k) { return X.act(k, x) == x; });
            marks[t].push_back(c);
        }
    }
    std::map<std::vector<long long>, std::vector<std::vector<int>>> buckets;
    std::vector<int> mult(nt, 0);
    std::function<void(int, int)> rec = [&](int t, int room) {
        if (t == nt) {
            if (room == max_size) return;
            std::vector<long long> key(static_cast<std::size_t>(n) * n, 0);
            for (int s = 0; s < nt; ++s)
                for (std::size_t i = 0; i < key.size(); ++i) key[i] += mult[s] * dc[s][i];
            buckets[key].push_back(mult);
            return;
        }
        for (int m = 0; m * size[t] <= room; ++m) {
            mult[t] = m;
            rec(t + 1, room - m * size[t]);
        }
        mult[t] = 0;
    };
    rec(0, max_size);
    for (auto& [key, list] : buckets) {
        std::sort(list.begin(), list.end());
        for (std::size_t i = 0; i < list.size(); ++i)
            for (std::size_t j = i + 1; j < list.size(); ++j) {
                NondistinguishPair p{list[i], list[j], -1, false};
                for (std::size_t k = 0; k < subgroups.size() && p.marks_witness < 0; ++k) {
                    long long a = 0, b = 0;
                    for (int t = 0; t < nt; ++t) a += p.left[t] * marks[t][k], b += p.right[t] * marks[t][k];
                    if (a != b) p.marks_witness = static_cast<int>(k);
                }
                bool found = false;
                for_each_equivariant_bijection(gset_from_types(G, res.types, p.left), gset_from_types(G, res.types, p.right),
                                               nullptr, nullptr, [&](const std::vector<int>&) { return found = true; });
                p.no_bijection = !found;
                if (p.marks_witness < 0 || !p.no_bijection)
                    throw InternalError("distinct type multisets should give non-isomorphic G-sets");
                res.pairs.push_back(std::move(p));
            }
    }
    std::sort(res.pairs.begin(), res.pairs.end(), [](const auto& a, const auto& b) {
        return std::tie(a.left, a.right) < std::tie(b.left, b.right);
    });
    return res;
}

}  // namespace gerbecat

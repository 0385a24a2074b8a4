#include "gerbecat/extract.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace gerbecat {

ExtensionData make_extension(GroupPtr E, std::vector<int> K, std::optional<std::vector<int>> section) {
    std::sort(K.begin(), K.end());
    K.erase(std::unique(K.begin(), K.end()), K.end());
    if (!is_subgroup(*E, K)) throw Error("K is not a subgroup");
    if (!is_normal(*E, K)) throw Error("K is not normal");
    const int n = E->order();
    ExtensionData ext;
    ext.E = E;
    ext.K = K;
    ext.coset_of.assign(n, -1);
    std::vector<int> mins;
    for (int g = 0; g < n; ++g) {
        if (ext.coset_of[g] >= 0) continue;
        int id = static_cast<int>(mins.size());
        mins.push_back(g);
        for (int k : K) ext.coset_of[E->mul(g, k)] = id;
    }
    const int m = static_cast<int>(mins.size());
    std::vector<std::vector<int>> mult(m, std::vector<int>(m));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) mult[a][b] = ext.coset_of[E->mul(mins[a], mins[b])];
    ext.G = std::make_shared<const FiniteGroup>(mult, E->name().empty() ? "" : E->name() + "/K");
    ext.section = section ? *section : mins;
    if (static_cast<int>(ext.section.size()) != m) throw Error("section needs one representative per coset");
    for (int i = 0; i < m; ++i) {
        int r = ext.section[i];
        if (r < 0 || r >= n || ext.coset_of[r] != i) throw Error("section does not split the projection", {i});
    }
    if (ext.section[0] != 0) throw Error("section must send the identity to the identity");
    return ext;
}

std::vector<int> alternate_section(const ExtensionData& ext) {
    std::vector<int> s(ext.section.size(), 0);
    for (int g = 0; g < ext.E->order(); ++g) {
        int c = ext.coset_of[g];
        if (c != 0) s[c] = std::max(s[c], g);
    }
    return s;
}

int extension_cocycle(const ExtensionData& ext, int g2, int g1) {
    const FiniteGroup& E = *ext.E;
    int prod = ext.G->mul(g2, g1);
    return E.mul(E.mul(ext.section[g2], ext.section[g1]), E.inv(ext.section[prod]));
}

IrrSystem irreducible_representations(const GroupPtr& K, std::uint64_t seed) {
    IrreducibleOptions opt;
    opt.seed = seed;
    IrrSystem out;
    for (const auto& b : irreducible_bundles(trivial_gerbe(point_gset(K)), opt)) {
        std::vector<CMatrix> rho;
        std::vector<cplx> chi;
        for (int k = 0; k < K->order(); ++k) {
            rho.push_back(b.map(k, 0));
            chi.push_back(b.map(k, 0).trace());
        }
        out.reps.push_back(std::move(rho));
        out.chars.push_back(std::move(chi));
        out.dims.push_back(b.dim(0));
    }
    return out;
}

namespace {

struct KIndex {
    std::vector<int> pos;  // element of E -> position in K, -1 outside
    explicit KIndex(const ExtensionData& ext) : pos(ext.E->order(), -1) {
        for (std::size_t i = 0; i < ext.K.size(); ++i) pos[ext.K[i]] = static_cast<int>(i);
    }
};

// s(g)^-1 k s(g) for k in K, as a position in K
int twist(const ExtensionData& ext, const KIndex& ki, int g, int kpos) {
    const FiniteGroup& E = *ext.E;
    int s = ext.section[g];
    return ki.pos[E.mul(E.mul(E.inv(s), ext.K[kpos]), s)];
}

}  // namespace

GSet action_on_irr(const ExtensionData& ext, const IrrSystem& irr) {
    KIndex ki(ext);
    const int m = ext.G->order();
    const int nk = static_cast<int>(ext.K.size());
    const int r = static_cast<int>(irr.chars.size());
    std::vector<std::vector<int>> act(m, std::vector<int>(r, -1));
    for (int g = 0; g < m; ++g)
        for (int i = 0; i < r; ++i) {
            int match = -1;
            for (int j = 0; j < r; ++j) {
                double d = 0;
                for (int k = 0; k < nk; ++k) d = std::max(d, std::abs(irr.chars[j][k] - irr.chars[i][twist(ext, ki, g, k)]));
                if (d < 1e-6) {
                    if (match >= 0) throw Error("ambiguous character match", {g, i});
                    match = j;
                }
            }
            if (match < 0) throw Error("twisted character matches no irreducible", {g, i});
            act[g][i] = match;
        }
    return GSet(ext.G, act);
}

Extraction extract_gerbe(const ExtensionData& ext, const IrrSystem& irr, std::uint64_t seed) {
    KIndex ki(ext);
    GSet X = action_on_irr(ext, irr);
    const FiniteGroup& G = *ext.G;
    const int m = G.order();
    const int nk = static_cast<int>(ext.K.size());
    const int r = X.size();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    Extraction out;
    out.u.assign(m, std::vector<CMatrix>(r));
    for (int g = 0; g < m; ++g)
        for (int i = 0; i < r; ++i) {
            const int d = irr.dims[i];
            int gi = X.act(g, i);
            if (g == 0) {
                out.u[g][i] = CMatrix::Identity(d, d);
                continue;
            }
            CMatrix A(d, d);
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b) A(a, b) = cplx(nd(rng), nd(rng));
            CMatrix U = CMatrix::Zero(d, d);
            for (int k = 0; k < nk; ++k)
                U += irr.reps[i][twist(ext, ki, g, k)] * A * irr.reps[gi][k].adjoint();
            U /= static_cast<double>(nk);
            double lambda = (U.adjoint() * U).trace().real() / d;
            if (lambda < 1e-12) throw InternalError("Schur averaging produced zero");
            U /= std::sqrt(lambda);
            // Schur fixes U up to a scalar; pin the phase so u(g,i) is seed-independent
            Eigen::Index a0;
            U.col(0).cwiseAbs().maxCoeff(&a0);
            U *= std::abs(U(a0, 0)) / U(a0, 0);
            out.intertwiner_residual =
                std::max(out.intertwiner_residual, (U.adjoint() * U - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff());
            for (int k = 0; k < nk; ++k)
                out.intertwiner_residual = std::max(
                    out.intertwiner_residual,
                    (U * irr.reps[gi][k] - irr.reps[i][twist(ext, ki, g, k)] * U).cwiseAbs().maxCoeff());
            out.u[g][i] = std::move(U);
        }

    const FiniteGroup& E = *ext.E;
    const long long max_den = 2LL * E.order();
    Cochain c(2, X);
    for (int i = 0; i < r; ++i)
        for (int h = 0; h < m; ++h)
            for (int g = 0; g < m; ++g) {
                int hg = G.mul(h, g);
                int s = ext.section[hg];
                int psi = ki.pos[E.mul(E.mul(E.inv(s), extension_cocycle(ext, h, g)), s)];
                CMatrix M = irr.reps[i][psi] * out.u[g][i] * out.u[h][X.act(g, i)] * out.u[hg][i].adjoint();
                Eigen::Index a, b;
                M.cwiseAbs().maxCoeff(&a, &b);
                cplx lam = M(a, b);
                const int d = irr.dims[i];
                out.scalar_residual =
                    std::max(out.scalar_residual, (M - lam * CMatrix::Identity(d, d)).cwiseAbs().maxCoeff());
                double err = 0;
                Rational q = snap_to_rational(std::arg(lam) / (2 * std::numbers::pi), max_den, &err);
                out.snap_error = std::max(out.snap_error, err);
                c.at(i, h, g) = Phase(q);
            }
    if (out.snap_error > 1e-6 || out.scalar_residual > 1e-6 || out.intertwiner_residual > 1e-6)
        throw InternalError("extraction phases do not snap to roots of unity");
    std::vector<Rational> metric;
    for (int i = 0; i < r; ++i) metric.push_back(Rational(irr.dims[i], nk));
    out.gerbe = make_gerbe(X, c, metric);
    return out;
}

}  // namespace gerbecat

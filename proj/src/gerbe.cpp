#include "gerbecat/gerbe.hpp"

#include <functional>

namespace gerbecat {

Gerbe make_gerbe(GSet space, Cochain cocycle, std::vector<Rational> metric) {
    if (cocycle.degree() != 2 || !cocycle.carrier().same_action(space))
        throw Error("gerbe cocycle must be a 2-cochain on the gerbe's G-set");
    if (static_cast<int>(metric.size()) != space.size()) throw Error("metric needs one weight per point");
    for (int x = 0; x < space.size(); ++x)
        if (metric[x] <= Rational(0)) throw Error("metric weights must be positive", {x});
    for (int g = 0; g < space.group().order(); ++g)
        for (int x = 0; x < space.size(); ++x)
            if (metric[space.act(g, x)] != metric[x]) throw Error("metric is not G-invariant", {g, x});
    if (auto w = check_cocycle(cocycle)) throw Error("gerbe cocycle fails the cocycle identity", *w);
    return Gerbe{std::move(space), std::move(cocycle), std::move(metric)};
}

Gerbe trivial_gerbe(const GSet& space) {
    return make_gerbe(space, Cochain(2, space), std::vector<Rational>(space.size(), Rational(1)));
}

Gerbe regular_gerbe(const GroupPtr& G) { return trivial_gerbe(regular_gset(G)); }

Gerbe tensor(const Gerbe& Y, const Gerbe& X, bool conjugate_second) {
    if (!same_group(Y.group_ptr(), X.group_ptr())) throw Error("tensor of gerbes over different groups");
    GSet P = product_gset(Y.space, X.space);
    const int n = Y.group().order();
    const int nx = X.size();
    Cochain c(2, P);
    std::vector<Rational> k(P.size());
    for (int y = 0; y < Y.size(); ++y)
        for (int x = 0; x < nx; ++x) {
            int p = y * nx + x;
            k[p] = Y.metric[y] * X.metric[x];
            for (int g2 = 0; g2 < n; ++g2)
                for (int g1 = 0; g1 < n; ++g1) {
                    Phase a = Y.cocycle.at(y, g2, g1), b = X.cocycle.at(x, g2, g1);
                    c.at(p, g2, g1) = conjugate_second ? a - b : a + b;
                }
        }
    return make_gerbe(std::move(P), std::move(c), std::move(k));
}

void for_each_equivariant_bijection(const GSet& X, const GSet& Y, const std::vector<Rational>* kx,
                                    const std::vector<Rational>* ky,
                                    const std::function<bool(const std::vector<int>&)>& visit) {
    if (X.size() != Y.size() || X.orbits().size() != Y.orbits().size()) return;
    const int n = X.group().order();
    const auto& orbits = X.orbits();
    std::vector<int> f(X.size(), -1);
    std::vector<char> used(Y.orbits().size(), 0);
    bool stop = false;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (stop) return;
        if (i == orbits.size()) {
            stop = visit(f);
            return;
        }
        int r = orbits[i].front();
        for (int y = 0; y < Y.size() && !stop; ++y) {
            int oy = Y.orbit_of(y);
            if (used[oy] || Y.stabilizer(y) != X.stabilizer(r)) continue;
            if (kx && ky && (*kx)[r] != (*ky)[y]) continue;
            used[oy] = 1;
            for (int g = 0; g < n; ++g) f[X.act(g, r)] = Y.act(g, y);
            rec(i + 1);
            for (int x : orbits[i]) f[x] = -1;
            used[oy] = 0;
        }
    };
    rec(0);
}

std::optional<GerbeEquivalence> isometric_equivalent(const Gerbe& X, const Gerbe& Y) {
    if (!same_group(X.group_ptr(), Y.group_ptr())) throw Error("gerbes over different groups");
    std::optional<GerbeEquivalence> found;
    for_each_equivariant_bijection(X.space, Y.space, &X.metric, &Y.metric, [&](const std::vector<int>& f) {
        Cochain pulled = pullback(Y.cocycle, X.space, f);
        CohomologyResult r = cohomologous(X.cocycle, pulled);
        if (!r.cohomologous) return false;
        found = GerbeEquivalence{f, *r.gamma};
        return true;
    });
    return found;
}

bool verify_equivalence(const Gerbe& X, const Gerbe& Y, const GerbeEquivalence& w) {
    if (static_cast<int>(w.map.size()) != X.size() || X.size() != Y.size()) return false;
    std::vector<char> hit(Y.size(), 0);
    for (int y : w.map) {
        if (y < 0 || y >= Y.size() || hit[y]) return false;
        hit[y] = 1;
    }
    for (int g = 0; g < X.group().order(); ++g)
        for (int x = 0; x < X.size(); ++x)
            if (w.map[X.space.act(g, x)] != Y.space.act(g, w.map[x])) return false;
    for (int x = 0; x < X.size(); ++x)
        if (X.metric[x] != Y.metric[w.map[x]]) return false;
    return coboundary(w.gamma) == pullback(Y.cocycle, X.space, w.map) - X.cocycle;
}

}  // namespace gerbecat

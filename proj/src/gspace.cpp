#include "gerbecat/gspace.hpp"

#include <algorithm>
#include <map>

namespace gerbecat {

GSet::GSet(GroupPtr G, std::vector<std::vector<int>> act) : G_(std::move(G)) {
    const int n = G_->order();
    if (static_cast<int>(act.size()) != n) throw Error("action table needs one row per group element");
    size_ = n == 0 ? 0 : static_cast<int>(act[0].size());
    act_.resize(static_cast<std::size_t>(n) * size_);
    for (int g = 0; g < n; ++g) {
        if (static_cast<int>(act[g].size()) != size_) throw Error("ragged action table", {g});
        for (int x = 0; x < size_; ++x) {
            int y = act[g][x];
            if (y < 0 || y >= size_) throw Error("action table entry out of range", {g, x});
            act_[static_cast<std::size_t>(g) * size_ + x] = y;
        }
    }
    for (int x = 0; x < size_; ++x)
        if (this->act(0, x) != x) throw Error("identity does not act trivially", {x});
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h)
            for (int x = 0; x < size_; ++x)
                if (this->act(g, this->act(h, x)) != this->act(G_->mul(g, h), x))
                    throw Error("action is not compatible with multiplication", {g, h, x});
    orbit_of_.assign(size_, -1);
    for (int x = 0; x < size_; ++x) {
        if (orbit_of_[x] >= 0) continue;
        std::vector<int> orb;
        for (int g = 0; g < n; ++g) orb.push_back(this->act(g, x));
        std::sort(orb.begin(), orb.end());
        orb.erase(std::unique(orb.begin(), orb.end()), orb.end());
        int id = static_cast<int>(orbits_.size());
        for (int y : orb) orbit_of_[y] = id;
        orbits_.push_back(std::move(orb));
    }
    stab_.resize(size_);
    for (int x = 0; x < size_; ++x)
        for (int g = 0; g < n; ++g)
            if (this->act(g, x) == x) stab_[x].push_back(g);
}

std::vector<int> GSet::fixed_points(int g) const {
    std::vector<int> out;
    for (int x = 0; x < size_; ++x)
        if (act(g, x) == x) out.push_back(x);
    return out;
}

std::vector<std::vector<int>> GSet::table() const {
    std::vector<std::vector<int>> t(G_->order(), std::vector<int>(size_));
    for (int g = 0; g < G_->order(); ++g)
        for (int x = 0; x < size_; ++x) t[g][x] = act(g, x);
    return t;
}

GSet point_gset(const GroupPtr& G) { return GSet(G, std::vector<std::vector<int>>(G->order(), std::vector<int>{0})); }

GSet regular_gset(const GroupPtr& G) { return GSet(G, G->table()); }

GSet coset_gset(const GroupPtr& G, const std::vector<int>& Hin) {
    std::vector<int> H = Hin;
    std::sort(H.begin(), H.end());
    H.erase(std::unique(H.begin(), H.end()), H.end());
    if (!is_subgroup(*G, H)) throw Error("coset space needs a subgroup");
    const int n = G->order();
    std::vector<int> coset_min(n, -1);
    for (int g = 0; g < n; ++g) {
        int m = n;
        for (int h : H) m = std::min(m, G->mul(g, h));
        coset_min[g] = m;
    }
    std::vector<int> reps;
    for (int g = 0; g < n; ++g)
        if (coset_min[g] == g) reps.push_back(g);
    std::map<int, int> index;
    for (std::size_t i = 0; i < reps.size(); ++i) index[reps[i]] = static_cast<int>(i);
    std::vector<std::vector<int>> act(n, std::vector<int>(reps.size()));
    for (int g = 0; g < n; ++g)
        for (std::size_t i = 0; i < reps.size(); ++i) act[g][i] = index[coset_min[G->mul(g, reps[i])]];
    return GSet(G, act);
}

GSet conjugation_gset(const GroupPtr& G) {
    const int n = G->order();
    std::vector<std::vector<int>> act(n, std::vector<int>(n));
    for (int h = 0; h < n; ++h)
        for (int g = 0; g < n; ++g) act[h][g] = G->conj(h, g);
    return GSet(G, act);
}

GSet disjoint_union(const GSet& A, const GSet& B) {
    if (!same_group(A.group_ptr(), B.group_ptr())) throw Error("disjoint union over different groups");
    const int n = A.group().order();
    std::vector<std::vector<int>> act(n);
    for (int g = 0; g < n; ++g) {
        for (int x = 0; x < A.size(); ++x) act[g].push_back(A.act(g, x));
        for (int y = 0; y < B.size(); ++y) act[g].push_back(A.size() + B.act(g, y));
    }
    return GSet(A.group_ptr(), act);
}

GSet product_gset(const GSet& A, const GSet& B) {
    if (!same_group(A.group_ptr(), B.group_ptr())) throw Error("product over different groups");
    const int n = A.group().order();
    std::vector<std::vector<int>> act(n, std::vector<int>(A.size() * B.size()));
    for (int g = 0; g < n; ++g)
        for (int a = 0; a < A.size(); ++a)
            for (int b = 0; b < B.size(); ++b) act[g][a * B.size() + b] = A.act(g, a) * B.size() + B.act(g, b);
    return GSet(A.group_ptr(), act);
}

GSet sub_gset(const GSet& X, const std::vector<int>& points) {
    std::vector<int> pos(X.size(), -1);
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i] < 0 || points[i] >= X.size() || pos[points[i]] >= 0) throw Error("sub_gset: bad point list");
        pos[points[i]] = static_cast<int>(i);
    }
    const int n = X.group().order();
    std::vector<std::vector<int>> act(n, std::vector<int>(points.size()));
    for (int g = 0; g < n; ++g)
        for (std::size_t i = 0; i < points.size(); ++i) {
            int y = pos[X.act(g, points[i])];
            if (y < 0) throw Error("sub_gset: points are not closed under the action", {g, points[i]});
            act[g][i] = y;
        }
    return GSet(X.group_ptr(), act);
}

int LoopGroupoid::index_of(int x, int g, int h) const {
    const int n = space.group().order();
    std::size_t key = static_cast<std::size_t>(x) * n + g;
    if (level == 2) key = key * n + h;
    return lookup[key];
}

LoopGroupoid loop_of(const GSet& Y) {
    const FiniteGroup& G = Y.group();
    const int n = G.order();
    LoopGroupoid L;
    L.level = 1;
    L.base_size = Y.size();
    L.lookup.assign(static_cast<std::size_t>(Y.size()) * n, -1);
    for (int y = 0; y < Y.size(); ++y)
        for (int g = 0; g < n; ++g)
            if (Y.act(g, y) == y) {
                L.lookup[static_cast<std::size_t>(y) * n + g] = static_cast<int>(L.objects.size());
                L.objects.push_back({y, g, -1});
            }
    const int m = static_cast<int>(L.objects.size());
    std::vector<std::vector<int>> act(n, std::vector<int>(m));
    for (int h = 0; h < n; ++h)
        for (int i = 0; i < m; ++i) {
            auto [y, g, unused] = L.objects[i];
            (void)unused;
            act[h][i] = L.lookup[static_cast<std::size_t>(Y.act(h, y)) * n + G.conj(h, g)];
        }
    L.space = GSet(Y.group_ptr(), act);
    return L;
}

LoopGroupoid loop_groupoid(const GSet& X, int level) {
    if (level != 1 && level != 2) throw Error("loop groupoid level must be 1 or 2");
    LoopGroupoid L1 = loop_of(X);
    if (level == 1) return L1;
    LoopGroupoid L2 = loop_of(L1.space);
    const int n = X.group().order();
    LoopGroupoid out;
    out.level = 2;
    out.base_size = X.size();
    out.space = L2.space;
    out.lookup.assign(static_cast<std::size_t>(X.size()) * n * n, -1);
    for (std::size_t i = 0; i < L2.objects.size(); ++i) {
        auto [o, h, unused] = L2.objects[i];
        (void)unused;
        auto [x, g, unused2] = L1.objects[o];
        (void)unused2;
        out.objects.push_back({x, g, h});
        out.lookup[(static_cast<std::size_t>(x) * n + g) * n + h] = static_cast<int>(i);
    }
    return out;
}

Rational integrate(const GSet& X, const std::function<Rational(int)>& f) {
    Rational sum(0);
    for (int x = 0; x < X.size(); ++x) sum += f(x);
    return sum / Rational(X.group().order());
}

cplx integrate_complex(const GSet& X, const std::function<cplx(int)>& f) {
    cplx sum(0, 0);
    for (int x = 0; x < X.size(); ++x) sum += f(x);
    return sum / static_cast<double>(X.group().order());
}

}  // namespace gerbecat

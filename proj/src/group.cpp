#include "gerbecat/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace gerbecat {

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> mult, std::string name) : name_(std::move(name)) {
    n_ = static_cast<int>(mult.size());
    if (n_ == 0) throw Error("group table is empty");
    if (n_ > 200) throw Error("groups of order above 200 are not supported");
    mult_.resize(static_cast<std::size_t>(n_) * n_);
    for (int a = 0; a < n_; ++a) {
        if (static_cast<int>(mult[a].size()) != n_) throw Error("group table is not square", {a});
        for (int b = 0; b < n_; ++b) {
            int v = mult[a][b];
            if (v < 0 || v >= n_) throw Error("group table entry out of range", {a, b});
            mult_[a * n_ + b] = v;
        }
    }
    for (int a = 0; a < n_; ++a)
        if (mul(0, a) != a || mul(a, 0) != a) throw Error("element 0 is not a two-sided identity", {a});
    inv_.assign(n_, -1);
    for (int a = 0; a < n_; ++a) {
        for (int b = 0; b < n_; ++b)
            if (mul(a, b) == 0 && mul(b, a) == 0) {
                inv_[a] = b;
                break;
            }
        if (inv_[a] < 0) throw Error("element has no two-sided inverse", {a});
    }
    auto check = [&](int a, int b, int c) {
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) throw Error("multiplication is not associative", {a, b, c});
    };
    if (n_ <= 64) {
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b)
                for (int c = 0; c < n_; ++c) check(a, b, c);
    } else {
        std::mt19937 rng(0);
        std::uniform_int_distribution<int> pick(0, n_ - 1);
        for (int s = 0; s < 200000; ++s) check(pick(rng), pick(rng), pick(rng));
    }
}

std::vector<std::vector<int>> FiniteGroup::table() const {
    std::vector<std::vector<int>> t(n_, std::vector<int>(n_));
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b) t[a][b] = mul(a, b);
    return t;
}

GroupPtr cyclic_group(int n) {
    if (n < 1) throw Error("cyclic group needs n >= 1");
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return std::make_shared<FiniteGroup>(t, "Z" + std::to_string(n));
}

GroupPtr dihedral_group(int order) {
    if (order < 2 || order % 2 != 0) throw Error("dihedral group needs an even order >= 2");
    const int n = order / 2;
    // (s^a r^b)(s^c r^d) = s^(a+c) r^((-1)^c b + d)
    std::vector<std::vector<int>> t(order, std::vector<int>(order));
    for (int x = 0; x < order; ++x)
        for (int y = 0; y < order; ++y) {
            int a = x / n, b = x % n, c = y / n, d = y % n;
            int s = (a + c) % 2;
            int r = (((c ? -b : b) + d) % n + n) % n;
            t[x][y] = s * n + r;
        }
    return std::make_shared<FiniteGroup>(t, "D" + std::to_string(order));
}

GroupPtr symmetric_group(int n) {
    if (n < 1 || n > 5) throw Error("symmetric group supported for 1 <= n <= 5");
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> perms;
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    std::map<std::vector<int>, int> index;
    for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<int>(i);
    const int N = static_cast<int>(perms.size());
    std::vector<std::vector<int>> t(N, std::vector<int>(N));
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            std::vector<int> c(n);
            for (int i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
            t[a][b] = index[c];
        }
    return std::make_shared<FiniteGroup>(t, "S" + std::to_string(n));
}

GroupPtr quaternion_group() {
    // index = 2*unit + sign, units 1,i,j,k
    static const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int unit_sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    std::vector<std::vector<int>> t(8, std::vector<int>(8));
    for (int x = 0; x < 8; ++x)
        for (int y = 0; y < 8; ++y) {
            int u = x / 2, v = y / 2;
            int sign = (x % 2 + y % 2 + unit_sign[u][v]) % 2;
            t[x][y] = 2 * unit_mul[u][v] + sign;
        }
    return std::make_shared<FiniteGroup>(t, "Q8");
}

GroupPtr direct_product(const GroupPtr& A, const GroupPtr& B) {
    const int na = A->order(), nb = B->order();
    std::vector<std::vector<int>> t(na * nb, std::vector<int>(na * nb));
    for (int x = 0; x < na * nb; ++x)
        for (int y = 0; y < na * nb; ++y)
            t[x][y] = A->mul(x / nb, y / nb) * nb + B->mul(x % nb, y % nb);
    return std::make_shared<FiniteGroup>(t, A->name() + "x" + B->name());
}

GroupPtr subgroup_as_group(const GroupPtr& G, const std::vector<int>& H) {
    if (!is_subgroup(*G, H)) throw Error("element set is not a subgroup");
    std::vector<int> pos(G->order(), -1);
    for (std::size_t i = 0; i < H.size(); ++i) pos[H[i]] = static_cast<int>(i);
    const int n = static_cast<int>(H.size());
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[a][b] = pos[G->mul(H[a], H[b])];
    return std::make_shared<FiniteGroup>(t, G->name() + "_sub");
}

GroupAnalysis analyze(const FiniteGroup& G) {
    const int n = G.order();
    GroupAnalysis out;
    out.class_of.assign(n, -1);
    for (int g = 0; g < n; ++g) {
        if (out.class_of[g] >= 0) continue;
        std::set<int> cls;
        for (int h = 0; h < n; ++h) cls.insert(G.conj(h, g));
        int id = static_cast<int>(out.classes.size());
        out.classes.emplace_back(cls.begin(), cls.end());
        for (int x : cls) out.class_of[x] = id;
    }
    out.centralizers.resize(n);
    for (int g = 0; g < n; ++g) {
        for (int h = 0; h < n; ++h)
            if (G.commute(g, h)) out.centralizers[g].push_back(h);
        out.commuting_pairs += static_cast<long long>(out.centralizers[g].size());
        if (static_cast<int>(out.centralizers[g].size()) == n) out.center.push_back(g);
    }
    for (int g = 0; g < n; ++g)
        for (int h : out.centralizers[g])
            for (int k : out.centralizers[g])
                if (G.commute(h, k)) ++out.commuting_triples;
    return out;
}

std::vector<int> generated_subgroup(const FiniteGroup& G, const std::vector<int>& gens) {
    std::vector<char> in(G.order(), 0);
    std::vector<int> elems{0};
    in[0] = 1;
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (int s : gens) {
            int x = G.mul(elems[i], s);
            if (!in[x]) {
                in[x] = 1;
                elems.push_back(x);
            }
        }
    std::sort(elems.begin(), elems.end());
    return elems;
}

bool is_subgroup(const FiniteGroup& G, const std::vector<int>& H) {
    if (H.empty()) return false;
    std::vector<char> in(G.order(), 0);
    for (int h : H) {
        if (h < 0 || h >= G.order()) return false;
        in[h] = 1;
    }
    if (!in[0]) return false;
    for (int a : H) {
        if (!in[G.inv(a)]) return false;
        for (int b : H)
            if (!in[G.mul(a, b)]) return false;
    }
    return true;
}

bool is_normal(const FiniteGroup& G, const std::vector<int>& H) {
    std::vector<char> in(G.order(), 0);
    for (int h : H) in[h] = 1;
    for (int g = 0; g < G.order(); ++g)
        for (int h : H)
            if (!in[G.conj(g, h)]) return false;
    return true;
}

std::vector<std::vector<int>> all_subgroups(const FiniteGroup& G) {
    std::set<std::vector<int>> found;
    std::vector<std::vector<int>> cyclic;
    for (int g = 0; g < G.order(); ++g) {
        auto H = generated_subgroup(G, {g});
        if (found.insert(H).second) cyclic.push_back(H);
    }
    // close under joins with cyclic subgroups
    std::vector<std::vector<int>> frontier(found.begin(), found.end());
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& H : frontier)
            for (const auto& C : cyclic) {
                std::vector<int> gens = H;
                gens.insert(gens.end(), C.begin(), C.end());
                auto J = generated_subgroup(G, gens);
                if (found.insert(J).second) next.push_back(J);
            }
        frontier = std::move(next);
    }
    std::vector<std::vector<int>> out(found.begin(), found.end());
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

std::vector<std::vector<int>> subgroup_class_reps(const FiniteGroup& G) {
    auto subs = all_subgroups(G);
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> reps;
    for (const auto& H : subs) {
        if (seen.count(H)) continue;
        reps.push_back(H);
        for (int g = 0; g < G.order(); ++g) {
            std::vector<int> K;
            for (int h : H) K.push_back(G.conj(g, h));
            std::sort(K.begin(), K.end());
            seen.insert(K);
        }
    }
    return reps;
}

std::vector<int> generating_set(const FiniteGroup& G) {
    std::vector<int> gens;
    std::vector<int> H{0};
    for (int g = 1; g < G.order() && static_cast<int>(H.size()) < G.order(); ++g) {
        if (std::binary_search(H.begin(), H.end(), g)) continue;
        gens.push_back(g);
        H = generated_subgroup(G, gens);
    }
    return gens;
}

}  // namespace gerbecat

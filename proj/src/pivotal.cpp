#include "gerbecat/pivotal.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <random>

namespace gerbecat {

namespace {

std::size_t tidx(int r, int i, int j, int k) { return (static_cast<std::size_t>(i) * r + j) * r + k; }

}  // namespace

FusionRing make_fusion_ring(int rank, std::vector<int> star, const std::vector<std::array<int, 4>>& entries,
                            std::string name) {
    if (rank < 1) throw Error("fusion ring needs rank >= 1");
    if (static_cast<int>(star.size()) != rank) throw Error("star has the wrong length");
    for (int s : star)
        if (s < 0 || s >= rank) throw Error("star index out of range", {s});
    FusionRing R;
    R.rank = rank;
    R.star = std::move(star);
    R.N.assign(static_cast<std::size_t>(rank) * rank * rank, 0);
    R.name = std::move(name);
    for (const auto& e : entries) {
        for (int t = 0; t < 3; ++t)
            if (e[t] < 0 || e[t] >= rank) throw Error("structure constant index out of range", {e[0], e[1], e[2]});
        if (e[3] < 0) throw Error("negative structure constant", {e[0], e[1], e[2]});
        R.n(e[0], e[1], e[2]) = e[3];
    }
    return R;
}

RingCheck validate_fusion_ring(const FusionRing& R) {
    const int r = R.rank;
    auto fail = [](std::string ax, std::vector<int> w) { return RingCheck{false, std::move(ax), std::move(w)}; };
    if (R.star[0] != 0) return fail("unit is self-dual", {0});
    for (int i = 0; i < r; ++i)
        if (R.star[R.star[i]] != i) return fail("star is an involution", {i});
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            int d = i == j ? 1 : 0;
            if (R.n(i, 0, j) != d || R.n(i, j, 0) != d) return fail("unit", {i, 0, j});
        }
    for (int j = 0; j < r; ++j)
        for (int k = 0; k < r; ++k)
            if (R.n(0, j, k) != (k == R.star[j] ? 1 : 0)) return fail("duality", {0, j, k});
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            for (int k = 0; k < r; ++k) {
                int v = R.n(i, j, k);
                if (v != R.n(R.star[k], R.star[i], j)) return fail("reciprocity", {i, j, k});
                if (v != R.n(R.star[i], R.star[k], R.star[j])) return fail("star reverses products", {i, j, k});
            }
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            for (int k = 0; k < r; ++k)
                for (int l = 0; l < r; ++l) {
                    long long a = 0, b = 0;
                    for (int m = 0; m < r; ++m) {
                        a += static_cast<long long>(R.n(m, j, k)) * R.n(l, i, m);
                        b += static_cast<long long>(R.n(m, i, j)) * R.n(l, m, k);
                    }
                    if (a != b) return fail("associativity", {i, j, k, l});
                }
    return {};
}

FusionRing group_ring(const FiniteGroup& G) {
    const int n = G.order();
    std::vector<int> star(n);
    std::vector<std::array<int, 4>> e;
    for (int g = 0; g < n; ++g) {
        star[g] = G.inv(g);
        for (int h = 0; h < n; ++h) e.push_back({G.mul(g, h), g, h, 1});
    }
    return make_fusion_ring(n, star, e, "Z[" + G.name() + "]");
}

FusionRing yang_lee_ring() {
    return make_fusion_ring(2, {0, 1}, {{0, 0, 0, 1}, {1, 0, 1, 1}, {1, 1, 0, 1}, {0, 1, 1, 1}, {1, 1, 1, 1}},
                            "YangLee");
}

FusionRing yang_lee_printed_ring() {
    return make_fusion_ring(2, {0, 1}, {{0, 0, 0, 1}, {1, 0, 1, 1}, {1, 1, 0, 1}, {1, 1, 1, 1}}, "YangLee-printed");
}

FusionRing b_ring(int n) {
    if (n < 1) throw Error("B_n needs n >= 1");
    const int Y = n;
    std::vector<int> star(n + 1);
    std::vector<std::array<int, 4>> e;
    for (int i = 0; i < n; ++i) {
        star[i] = (n - i) % n;
        for (int j = 0; j < n; ++j) e.push_back({(i + j) % n, i, j, 1});
        e.push_back({Y, i, Y, 1});
        e.push_back({Y, Y, i, 1});
        e.push_back({i, Y, Y, 1});
    }
    star[Y] = Y;
    if (n > 1) e.push_back({Y, Y, Y, n - 1});
    return make_fusion_ring(n + 1, star, e, "B" + std::to_string(n));
}

FusionRing tambara_yamagami_ring(const FiniteGroup& A) {
    const int n = A.order();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (!A.commute(a, b)) throw Error("Tambara-Yamagami needs an abelian group", {a, b});
    const int Y = n;
    std::vector<int> star(n + 1);
    std::vector<std::array<int, 4>> e;
    for (int a = 0; a < n; ++a) {
        star[a] = A.inv(a);
        for (int b = 0; b < n; ++b) e.push_back({A.mul(a, b), a, b, 1});
        e.push_back({Y, a, Y, 1});
        e.push_back({Y, Y, a, 1});
        e.push_back({a, Y, Y, 1});
    }
    star[Y] = Y;
    return make_fusion_ring(n + 1, star, e, "TY(" + A.name() + ")");
}

FusionRing ring_product(const FusionRing& R, const FusionRing& S) {
    const int r = R.rank, s = S.rank;
    std::vector<int> star(r * s);
    std::vector<std::array<int, 4>> e;
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < s; ++b) star[a * s + b] = R.star[a] * s + S.star[b];
    for (int i1 = 0; i1 < r; ++i1)
        for (int j1 = 0; j1 < r; ++j1)
            for (int k1 = 0; k1 < r; ++k1) {
                int x = R.n(i1, j1, k1);
                if (!x) continue;
                for (int i2 = 0; i2 < s; ++i2)
                    for (int j2 = 0; j2 < s; ++j2)
                        for (int k2 = 0; k2 < s; ++k2) {
                            int y = S.n(i2, j2, k2);
                            if (y) e.push_back({i1 * s + i2, j1 * s + j2, k1 * s + k2, x * y});
                        }
            }
    return make_fusion_ring(r * s, star, e, R.name + "x" + S.name);
}

FusionRing relabel(const FusionRing& R, const std::vector<int>& perm) {
    const int r = R.rank;
    if (static_cast<int>(perm.size()) != r || perm[0] != 0) throw Error("relabeling must fix the unit");
    std::vector<int> seen(r, 0), star(r);
    for (int p : perm) {
        if (p < 0 || p >= r || seen[p]++) throw Error("relabeling is not a permutation");
    }
    for (int i = 0; i < r; ++i) star[perm[i]] = perm[R.star[i]];
    std::vector<std::array<int, 4>> e;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            for (int k = 0; k < r; ++k)
                if (R.n(i, j, k)) e.push_back({perm[i], perm[j], perm[k], R.n(i, j, k)});
    return make_fusion_ring(r, star, e, R.name);
}

FusionRing builtin_ring(const std::string& family, const std::vector<int>& params) {
    auto need = [&](std::size_t k) {
        if (params.size() != k) throw Error("ring family " + family + " takes " + std::to_string(k) + " parameter(s)");
    };
    if (family == "yanglee" || family == "A1") {
        need(0);
        return yang_lee_ring();
    }
    if (family == "yanglee-printed") {
        need(0);
        return yang_lee_printed_ring();
    }
    if (family == "B") {
        need(1);
        return b_ring(params[0]);
    }
    if (family == "TY") {
        need(1);
        return tambara_yamagami_ring(*cyclic_group(params[0]));
    }
    if (family == "group") {
        need(1);
        return group_ring(*cyclic_group(params[0]));
    }
    throw Error("unknown ring family " + family);
}

FusionRing ring_by_name(const std::string& name) {
    if (name == "A1" || name == "YL" || name == "yanglee") return yang_lee_ring();
    if (name == "yanglee-printed") return yang_lee_printed_ring();
    for (const auto& [prefix, family] : {std::pair<std::string, std::string>{"TY", "TY"}, {"B", "B"}, {"Z", "group"}}) {
        if (name.rfind(prefix, 0) != 0 || name.size() == prefix.size()) continue;
        const std::string digits = name.substr(prefix.size());
        if (digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 3) break;
        int n = std::stoi(digits);
        if (n < 1) break;
        return builtin_ring(family, {n});
    }
    throw Error("unknown fusion ring '" + name + "'");
}

PivotalSymbols trivial_symbols(const FusionRing& R) {
    PivotalSymbols e;
    e.rank = R.rank;
    e.sign.assign(R.N.size(), 0);
    for (std::size_t t = 0; t < R.N.size(); ++t)
        if (R.N[t] > 0) e.sign[t] = 1;
    return e;
}

PivotalSymbols twist_symbols(const FusionRing& R, const PivotalSymbols& eps, const std::vector<int>& f) {
    const int r = R.rank;
    if (static_cast<int>(f.size()) != r || f[0] != 1) throw Error("twist needs f_0 = 1");
    for (int i = 0; i < r; ++i)
        if (f[i] != f[R.star[i]] || (f[i] != 1 && f[i] != -1)) throw Error("twist needs f_i = f_{i*} = +-1", {i});
    PivotalSymbols out = eps;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            for (int k = 0; k < r; ++k)
                if (R.n(i, j, k)) out.at(i, j, k) *= f[i] * f[j] * f[k];
    return out;
}

TripleOrbits triple_orbits(const FusionRing& R) {
    const int r = R.rank;
    const std::size_t T = R.N.size();
    std::vector<int> parent(T);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    auto unite = [&](std::size_t a, std::size_t b) {
        int x = find(static_cast<int>(a)), y = find(static_cast<int>(b));
        if (x != y) parent[std::max(x, y)] = std::min(x, y);
    };
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            for (int k = 0; k < r; ++k) {
                if (!R.n(i, j, k)) continue;
                unite(tidx(r, i, j, k), tidx(r, R.star[k], R.star[i], j));
                unite(tidx(r, i, j, k), tidx(r, R.star[i], R.star[k], R.star[j]));
            }
    TripleOrbits o;
    o.orbit_of.assign(T, -1);
    std::map<int, int> id;
    // roots are minimal indices, and index order is lexicographic order
    for (std::size_t t = 0; t < T; ++t) {
        if (!R.N[t]) continue;
        int root = find(static_cast<int>(t));
        auto it = id.find(root);
        if (it == id.end()) {
            it = id.emplace(root, static_cast<int>(o.reps.size())).first;
            int i = root / (r * r), j = (root / r) % r, k = root % r;
            o.reps.push_back({i, j, k});
            o.forced.push_back(0);
        }
        o.orbit_of[t] = it->second;
        if (t / (static_cast<std::size_t>(r) * r) == 0) o.forced[it->second] = 1;
    }
    return o;
}

namespace {

struct PivSystem {
    TripleOrbits orbits;
    std::vector<int> free_index;  // orbit -> coordinate, -1 for forced
    int nfree = 0;
    std::vector<int> fclass;      // simple -> class of {i, i*}, -1 for the unit
    int nclass = 0;
    std::vector<std::vector<std::uint8_t>> twists;  // one row per class, over free coordinates
    F2Basis image;
    std::vector<int> gen_orbits;
    F2Basis image_plus_gens;
};

PivSystem piv_system(const FusionRing& R) {
    const int r = R.rank;
    PivSystem S;
    S.orbits = triple_orbits(R);
    for (std::size_t o = 0; o < S.orbits.reps.size(); ++o)
        S.free_index.push_back(S.orbits.forced[o] ? -1 : S.nfree++);
    S.fclass.assign(r, -1);
    for (int i = 1; i < r; ++i)
        if (S.fclass[i] < 0) S.fclass[i] = S.fclass[R.star[i]] >= 0 ? S.fclass[R.star[i]] : S.nclass++;
    S.twists.assign(S.nclass, std::vector<std::uint8_t>(S.nfree, 0));
    for (std::size_t o = 0; o < S.orbits.reps.size(); ++o) {
        int c = S.free_index[o];
        if (c < 0) continue;
        for (int x : S.orbits.reps[o])
            if (S.fclass[x] >= 0) S.twists[S.fclass[x]][c] ^= 1;
    }
    S.image = f2_span(S.twists, S.nfree);
    auto rows = S.twists;
    int dim = S.image.dim;
    for (std::size_t o = 0; o < S.orbits.reps.size(); ++o) {
        int c = S.free_index[o];
        if (c < 0) continue;
        std::vector<std::uint8_t> e(S.nfree, 0);
        e[c] = 1;
        rows.push_back(e);
        if (f2_rank(rows) > dim) {
            ++dim;
            S.gen_orbits.push_back(static_cast<int>(o));
        } else {
            rows.pop_back();
        }
    }
    return S;
}

}  // namespace

HPivClass pivotal_cohomology(const FusionRing& R) {
    PivSystem S = piv_system(R);
    HPivClass h;
    h.free_orbits = S.nfree;
    h.rank = S.nfree - S.image.dim;
    if (h.rank > 62) throw Error("pivotal cohomology too large to count");
    h.order = 1LL << h.rank;
    for (int o : S.gen_orbits) h.generators.push_back(S.orbits.reps[o]);
    return h;
}

SymbolClass symbol_class(const FusionRing& R, const PivotalSymbols& eps) {
    const int r = R.rank;
    if (eps.rank != r || eps.sign.size() != R.N.size()) throw Error("pivotal symbols have the wrong shape");
    PivSystem S = piv_system(R);
    std::vector<int> orbit_sign(S.orbits.reps.size(), 0);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            for (int k = 0; k < r; ++k) {
                if (!R.n(i, j, k)) continue;
                int s = eps.at(i, j, k);
                if (s != 1 && s != -1) throw Error("pivotal symbol is not a sign", {i, j, k});
                int o = S.orbits.orbit_of[tidx(r, i, j, k)];
                if (S.orbits.forced[o] && s != 1) throw Error("eps^0_{i i*} must be +1 (orbit of this triple)", {i, j, k});
                if (orbit_sign[o] == 0) orbit_sign[o] = s;
                else if (orbit_sign[o] != s) throw Error("pivotal symbols violate the conjugate-cyclic symmetry", {i, j, k});
            }
    std::vector<std::uint8_t> v(S.nfree, 0);
    for (std::size_t o = 0; o < orbit_sign.size(); ++o)
        if (S.free_index[o] >= 0 && orbit_sign[o] == -1) v[S.free_index[o]] = 1;
    // v = (twist part) + sum c_g e_g
    std::vector<std::vector<std::uint8_t>> cols = S.twists;
    for (int o : S.gen_orbits) {
        std::vector<std::uint8_t> e(S.nfree, 0);
        e[S.free_index[o]] = 1;
        cols.push_back(e);
    }
    const int nc = static_cast<int>(cols.size());
    std::vector<std::vector<std::uint8_t>> A(S.nfree, std::vector<std::uint8_t>(nc, 0));
    for (int c = 0; c < nc; ++c)
        for (int row = 0; row < S.nfree; ++row) A[row][c] = cols[c][row];
    auto sol = f2_solve(A, v, nc);
    if (!sol) throw InternalError("generators do not span the symbol space");
    SymbolClass out;
    // the generator coordinates are unique because the generators complement the image
    for (std::size_t g = 0; g < S.gen_orbits.size(); ++g) out.coords.push_back((*sol)[S.nclass + g]);
    out.trivial = std::all_of(out.coords.begin(), out.coords.end(), [](std::uint8_t c) { return c == 0; });
    return out;
}

TwistedSolution solve_twisted(const FusionRing& R, const PivotalSymbols& eps, bool spherical) {
    const int r = R.rank;
    TwistedSolution out;
    std::vector<std::array<int, 3>> triples;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            for (int k = 0; k < r; ++k)
                if (R.n(i, j, k)) triples.push_back({i, j, k});

    if (spherical) {
        std::vector<std::vector<std::uint8_t>> A;
        std::vector<std::uint8_t> b;
        for (auto [i, j, k] : triples) {
            std::vector<std::uint8_t> row(r, 0);
            row[j] ^= 1;
            row[k] ^= 1;
            row[i] ^= 1;
            A.push_back(row);
            b.push_back(eps.at(i, j, k) == -1 ? 1 : 0);
        }
        auto sol = f2_solve(A, b, r);
        out.exists = sol.has_value();
        if (out.exists) {
            for (int i = 0; i < r; ++i) out.phases.push_back(Rational((*sol)[i], 2));
            out.torsor_size = 1LL << (r - f2_rank(A));
        }
    } else {
        IntMatrix A;
        IntMatrix rhs;
        for (auto [i, j, k] : triples) {
            std::vector<long long> row(r, 0);
            row[j] += 1;
            row[k] += 1;
            row[i] -= 1;
            A.push_back(row);
            rhs.push_back({eps.at(i, j, k) == -1 ? 1 : 0});  // twice the phase
        }
        SmithForm sf = smith_diagonal(A, rhs);
        out.exists = true;
        std::vector<Rational> y(r, Rational(0));
        for (std::size_t row = 0; row < A.size(); ++row) {
            BigInt u = sf.rhs[row][0];
            if (static_cast<int>(row) < sf.rank) {
                BigInt d = sf.diag[row] * 2;
                y[row] = Rational(static_cast<long long>(u % d), static_cast<long long>(d));
            } else if (u % 2 != 0) {
                out.exists = false;
            }
        }
        if (out.exists) {
            for (int i = 0; i < r; ++i) {
                Rational acc(0);
                for (int c = 0; c < r; ++c) {
                    if (y[c].numerator() == 0) continue;
                    BigInt v = sf.V[i][c] % y[c].denominator();
                    acc += Rational(static_cast<long long>(v)) * y[c];
                }
                out.phases.push_back(Phase(acc).value());
            }
            if (sf.rank < r) {
                out.torsor_size = -1;
            } else {
                BigInt prod = 1;
                for (int c = 0; c < sf.rank; ++c) prod *= sf.diag[c];
                out.torsor_size = static_cast<long long>(boost::multiprecision::abs(prod));
            }
        }
    }
    if (out.exists) {
        for (auto [i, j, k] : triples) {
            Phase lhs = Phase(out.phases[j]) + Phase(out.phases[k]);
            Phase rhs = Phase(out.phases[i]) + Phase(eps.at(i, j, k) == -1 ? Rational(1, 2) : Rational(0));
            if (!(lhs == rhs)) throw InternalError("twisted solution fails a relation");
        }
        out.unit_and_duals = Phase(out.phases[0]).is_zero();
        for (int i = 0; i < r; ++i)
            out.unit_and_duals = out.unit_and_duals && (Phase(out.phases[i]) + Phase(out.phases[R.star[i]])).is_zero();
    }
    return out;
}

DimensionReport dimension_checks(const FusionRing& R, const PivotalSymbols& eps, const std::vector<double>& d) {
    const int r = R.rank;
    if (static_cast<int>(d.size()) != r) throw Error("dimension vector has the wrong length");
    DimensionReport rep;
    rep.paired_positive = true;
    for (int i = 0; i < r; ++i) {
        if (d[i] == 0.0) throw Error("dimensions must be nonzero", {i});
        if (d[i] * d[R.star[i]] <= 0) rep.paired_positive = false;
    }
    for (int j = 0; j < r; ++j)
        for (int k = 0; k < r; ++k) {
            double s = 0;
            for (int i = 0; i < r; ++i)
                if (R.n(i, j, k)) s += eps.at(i, j, k) * R.n(i, j, k) * d[i];
            rep.residual = std::max(rep.residual, std::abs(d[j] * d[k] - s));
        }
    return rep;
}

FPDimensions frobenius_perron(const FusionRing& R, int max_iter) {
    const int r = R.rank;
    Eigen::MatrixXd M = Eigen::MatrixXd::Identity(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            for (int k = 0; k < r; ++k) M(i, k) += R.n(i, j, k);
    Eigen::VectorXd v = Eigen::VectorXd::Ones(r);
    FPDimensions out;
    for (out.iterations = 1; out.iterations <= max_iter; ++out.iterations) {
        Eigen::VectorXd w = M * v;
        w /= w(0);
        double delta = (w - v).cwiseAbs().maxCoeff();
        v = w;
        if (delta < 1e-14) break;
    }
    if (out.iterations > max_iter) throw Error("power iteration did not converge; raise the iteration cap");
    out.d.assign(v.data(), v.data() + r);
    for (int j = 0; j < r; ++j)
        for (int k = 0; k < r; ++k) {
            double s = 0;
            for (int i = 0; i < r; ++i) s += R.n(i, j, k) * out.d[i];
            out.homomorphism_residual = std::max(out.homomorphism_residual, std::abs(out.d[j] * out.d[k] - s));
        }
    return out;
}

GrouplikeCounts grouplike_counts(const FiniteGroup& G) {
    const int n = G.order();
    IntMatrix A;
    for (int g = 0; g < n; ++g)
        for (int s = 0; s < n; ++s) {
            std::vector<long long> row(n, 0);
            row[g] += 1;
            row[s] += 1;
            row[G.mul(g, s)] -= 1;
            A.push_back(row);
        }
    CokernelShape c = cokernel(A, n);
    if (c.free_rank != 0) throw InternalError("abelianization of a finite group has free part");
    GrouplikeCounts out{1, 1};
    for (const auto& d : c.torsion) {
        out.evenhanded *= static_cast<long long>(d);
        if (d % 2 == 0) out.spherical *= 2;
    }
    return out;
}

double semisimple_dagger_check(const std::vector<double>& kA, const std::vector<double>& kB, std::uint64_t seed,
                               double g_weight_scale) {
    for (double k : kA)
        if (!(k > 0)) throw Error("weights must be positive");
    for (double k : kB)
        if (!(k > 0)) throw Error("weights must be positive");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    std::uniform_int_distribution<int> mult(1, 3);
    auto rand_mat = [&](int a, int b) {
        Eigen::MatrixXcd M(a, b);
        for (int i = 0; i < a; ++i)
            for (int j = 0; j < b; ++j) M(i, j) = cplx(nd(rng), nd(rng));
        return M;
    };
    auto rand_invertible = [&](int a) {
        Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(a, a) * 2.0 + 0.5 * rand_mat(a, a);
        return M;
    };
    double worst = 0;
    for (std::size_t mu = 0; mu < kB.size(); ++mu)
        for (std::size_t i = 0; i < kA.size(); ++i) {
            int m = mult(rng), n = mult(rng);  // dim Hom(e_mu, F e_i), dim Hom(e_mu, G e_i)
            if (kA.size() == 1 && kB.size() == 1) m = n = 1;
            Eigen::MatrixXcd theta = rand_mat(n, m);
            // adjunction matrices in independent bases; the left adjunction is Psi = kappa Phi^T
            Eigen::MatrixXcd phiF = rand_invertible(m), phiG = rand_invertible(n);
            double kapF = kB[mu] / kA[i];
            double kapG = g_weight_scale * kB[mu] / kA[i];
            Eigen::MatrixXcd psiF = kapF * phiF.transpose(), psiG = kapG * phiG.transpose();
            Eigen::MatrixXcd right = phiF * theta.transpose() * phiG.inverse();
            Eigen::MatrixXcd left = psiF.transpose() * theta.transpose() * psiG.transpose().inverse();
            worst = std::max(worst, (left - right).cwiseAbs().maxCoeff());
        }
    return worst;
}

}  // namespace gerbecat

#include "gerbecat/cochain.hpp"

#include "gerbecat/arith.hpp"

#include <algorithm>

namespace gerbecat {

namespace {

std::size_t cochain_size(int degree, const GSet& X) {
    const std::size_t n = X.group().order();
    switch (degree) {
    case 0: return X.size();
    case 1: return X.size() * n;
    case 2: return X.size() * n * n;
    default: throw Error("cochain degree must be 0, 1 or 2");
    }
}

}  // namespace

Cochain::Cochain(int degree, GSet carrier)
    : degree_(degree), n_(carrier.group().order()), carrier_(std::move(carrier)) {
    entries_.assign(cochain_size(degree_, carrier_), Phase());
}

Cochain::Cochain(int degree, GSet carrier, std::vector<Phase> entries)
    : degree_(degree), n_(carrier.group().order()), carrier_(std::move(carrier)), entries_(std::move(entries)) {
    if (entries_.size() != cochain_size(degree_, carrier_))
        throw Error("cochain has " + std::to_string(entries_.size()) + " entries, expected " +
                    std::to_string(cochain_size(degree_, carrier_)));
}

bool Cochain::normalized() const {
    if (degree_ == 0) return true;
    if (degree_ == 1) {
        for (int x = 0; x < carrier_.size(); ++x)
            if (!at(0, x).is_zero()) return false;
        return true;
    }
    for (int x = 0; x < carrier_.size(); ++x)
        for (int g = 0; g < n_; ++g)
            if (!at(x, 0, g).is_zero() || !at(x, g, 0).is_zero()) return false;
    return true;
}

bool Cochain::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Phase& p) { return p.is_zero(); });
}

long long Cochain::order() const {
    long long N = 1;
    for (const auto& p : entries_) N = lcm_ll(N, p.denominator());
    return N;
}

void Cochain::require_compatible(const Cochain& o) const {
    if (degree_ != o.degree_) throw Error("cochain degrees differ");
    if (!carrier_.same_action(o.carrier_)) throw Error("cochain carriers differ");
}

Cochain Cochain::operator+(const Cochain& o) const {
    require_compatible(o);
    Cochain r = *this;
    for (std::size_t i = 0; i < entries_.size(); ++i) r.entries_[i] += o.entries_[i];
    return r;
}

Cochain Cochain::operator-(const Cochain& o) const {
    require_compatible(o);
    Cochain r = *this;
    for (std::size_t i = 0; i < entries_.size(); ++i) r.entries_[i] -= o.entries_[i];
    return r;
}

Cochain Cochain::operator-() const {
    Cochain r = *this;
    for (auto& e : r.entries_) e = -e;
    return r;
}

bool Cochain::operator==(const Cochain& o) const {
    return degree_ == o.degree_ && carrier_.same_action(o.carrier_) && entries_ == o.entries_;
}

std::optional<std::vector<int>> check_cocycle(const Cochain& c) {
    const GSet& X = c.carrier();
    const FiniteGroup& G = X.group();
    const int n = G.order();
    if (c.degree() == 0) {
        for (int x = 0; x < X.size(); ++x)
            for (int g = 0; g < n; ++g)
                if (c.at(X.act(g, x)) != c.at(x)) return std::vector<int>{x, g};
        return std::nullopt;
    }
    if (c.degree() == 1) {
        for (int x = 0; x < X.size(); ++x)
            for (int h2 = 0; h2 < n; ++h2)
                for (int h1 = 0; h1 < n; ++h1)
                    if (c.at(h2, X.act(h1, x)) + c.at(h1, x) != c.at(G.mul(h2, h1), x))
                        return std::vector<int>{x, h2, h1};
        return std::nullopt;
    }
    if (!c.normalized()) throw Error("2-cochain is not normalized; normalize it first");
    for (int x = 0; x < X.size(); ++x)
        for (int g3 = 0; g3 < n; ++g3)
            for (int g2 = 0; g2 < n; ++g2)
                for (int g1 = 0; g1 < n; ++g1) {
                    Phase lhs = c.at(x, g2, g1) + c.at(x, g3, G.mul(g2, g1));
                    Phase rhs = c.at(X.act(g1, x), g3, g2) + c.at(x, G.mul(g3, g2), g1);
                    if (lhs != rhs) return std::vector<int>{x, g3, g2, g1};
                }
    return std::nullopt;
}

Cochain coboundary(const Cochain& gamma) {
    const GSet& X = gamma.carrier();
    const FiniteGroup& G = X.group();
    const int n = G.order();
    if (gamma.degree() == 0) {
        Cochain out(1, X);
        for (int x = 0; x < X.size(); ++x)
            for (int g = 0; g < n; ++g) out.at(g, x) = gamma.at(X.act(g, x)) - gamma.at(x);
        return out;
    }
    if (gamma.degree() != 1) throw Error("coboundary is defined here for degrees 0 and 1");
    Cochain out(2, X);
    for (int x = 0; x < X.size(); ++x)
        for (int g2 = 0; g2 < n; ++g2)
            for (int g1 = 0; g1 < n; ++g1)
                out.at(x, g2, g1) = gamma.at(g2, X.act(g1, x)) + gamma.at(g1, x) - gamma.at(G.mul(g2, g1), x);
    return out;
}

Cochain normalize(const Cochain& c, Cochain* gamma_out) {
    if (c.degree() != 2) throw Error("normalize expects a 2-cochain");
    const GSet& X = c.carrier();
    Cochain gamma(1, X);
    for (int x = 0; x < X.size(); ++x)
        for (int g = 0; g < X.group().order(); ++g) gamma.at(g, x) = c.at(x, 0, 0);
    Cochain out = c - coboundary(gamma);
    if (gamma_out) *gamma_out = gamma;
    return out;
}

Cochain transgress(const Cochain& c, LoopGroupoid* loop) {
    const GSet& X = c.carrier();
    const FiniteGroup& G = X.group();
    const int n = G.order();
    LoopGroupoid L = loop_of(X);
    if (c.degree() == 2) {
        if (check_cocycle(c)) throw Error("transgression needs a cocycle");
        Cochain out(1, L.space);
        for (int o = 0; o < L.space.size(); ++o) {
            auto [x, g, unused] = L.objects[o];
            (void)unused;
            for (int h = 0; h < n; ++h) out.at(h, o) = c.at(x, G.conj(h, g), h) - c.at(x, h, g);
        }
        if (loop) *loop = std::move(L);
        return out;
    }
    if (c.degree() == 1) {
        Cochain out(0, L.space);
        for (int o = 0; o < L.space.size(); ++o) {
            auto [y, g, unused] = L.objects[o];
            (void)unused;
            out.at(o) = c.at(g, y);
        }
        if (loop) *loop = std::move(L);
        return out;
    }
    throw Error("cannot transgress a degree-0 cochain");
}

Phase double_transgression(const Cochain& c, int x, int g, int h) { return c.at(x, g, h) - c.at(x, h, g); }

Cochain pullback(const Cochain& c, const GSet& X, const std::vector<int>& f) {
    const GSet& Y = c.carrier();
    const int n = X.group().order();
    if (static_cast<int>(f.size()) != X.size()) throw Error("pullback map has the wrong length");
    for (int x = 0; x < X.size(); ++x)
        for (int g = 0; g < n; ++g)
            if (f[X.act(g, x)] != Y.act(g, f[x])) throw Error("pullback map is not equivariant", {x, g});
    Cochain out(c.degree(), X);
    for (int x = 0; x < X.size(); ++x) {
        if (c.degree() == 0) {
            out.at(x) = c.at(f[x]);
            continue;
        }
        for (int g = 0; g < n; ++g) {
            if (c.degree() == 1) {
                out.at(g, x) = c.at(g, f[x]);
                continue;
            }
            for (int g1 = 0; g1 < n; ++g1) out.at(x, g, g1) = c.at(f[x], g, g1);
        }
    }
    return out;
}

CohomologyResult cohomologous(const Cochain& c1, const Cochain& c2) {
    if (c1.degree() != c2.degree() || (c1.degree() != 1 && c1.degree() != 2))
        throw Error("cohomologous compares two cochains of degree 1 or 2");
    if (!c1.carrier().same_action(c2.carrier())) throw Error("cochain carriers differ");
    const GSet& X = c1.carrier();
    const FiniteGroup& G = X.group();
    const int n = G.order();
    const int deg = c1.degree();
    Cochain diff = c2 - c1;
    CohomologyResult out;
    const long long M = diff.order() * n;
    out.modulus = M;
    if (diff.is_zero()) {
        out.cohomologous = true;
        out.gamma = Cochain(deg - 1, X);
        return out;
    }
    const int nx = X.size();
    const std::size_t unknowns = deg == 2 ? static_cast<std::size_t>(nx) * n : nx;
    IntMatrix A(diff.size(), std::vector<long long>(unknowns, 0));
    std::vector<long long> b(A.size());
    for (std::size_t row = 0; row < diff.size(); ++row) {
        const Rational& r = diff.entries()[row].value();
        b[row] = r.numerator() * (M / r.denominator());
    }
    if (deg == 2) {
        for (int x = 0; x < nx; ++x)
            for (int g2 = 0; g2 < n; ++g2)
                for (int g1 = 0; g1 < n; ++g1) {
                    std::size_t row = (static_cast<std::size_t>(x) * n + g2) * n + g1;
                    A[row][static_cast<std::size_t>(X.act(g1, x)) * n + g2] += 1;
                    A[row][static_cast<std::size_t>(x) * n + g1] += 1;
                    A[row][static_cast<std::size_t>(x) * n + G.mul(g2, g1)] -= 1;
                }
    } else {
        for (int x = 0; x < nx; ++x)
            for (int g = 0; g < n; ++g) {
                std::size_t row = static_cast<std::size_t>(x) * n + g;
                A[row][X.act(g, x)] += 1;
                A[row][x] -= 1;
            }
    }
    ModSolution sol = solve_mod(std::move(A), std::move(b), M);
    if (!sol.solvable) {
        out.certificate = std::move(sol.certificate);
        if (evaluate_functional(out.certificate, diff).is_zero())
            throw InternalError("cohomology certificate does not separate");
        return out;
    }
    Cochain gamma(deg - 1, X);
    for (std::size_t i = 0; i < unknowns; ++i) gamma.entry(i) = Phase(sol.x[i], M);
    if (!(coboundary(gamma) == diff)) throw InternalError("modular solve returned a non-solution");
    out.cohomologous = true;
    out.gamma = std::move(gamma);
    return out;
}

std::optional<Cochain> cohomologous_bruteforce(const Cochain& c1, const Cochain& c2, int order, int max_arrows) {
    if (!c1.carrier().same_action(c2.carrier())) throw Error("cochain carriers differ");
    const GSet& X = c1.carrier();
    const FiniteGroup& G = X.group();
    const int n = G.order();
    const int nx = X.size();
    std::vector<int> var_of(static_cast<std::size_t>(nx) * n, -1);  // arrow -> variable
    std::vector<std::pair<int, int>> vars;
    for (int x = 0; x < nx; ++x)
        for (int g = 1; g < n; ++g) {
            var_of[static_cast<std::size_t>(x) * n + g] = static_cast<int>(vars.size());
            vars.push_back({x, g});
        }
    if (static_cast<int>(vars.size()) > max_arrows) throw Error("carrier too large for exhaustive search");
    Cochain diff = c2 - c1;
    struct Eq {
        int x, g2, g1;
    };
    std::vector<std::vector<Eq>> bucket(vars.size() + 1);
    for (int x = 0; x < nx; ++x)
        for (int g2 = 0; g2 < n; ++g2)
            for (int g1 = 0; g1 < n; ++g1) {
                int v = std::max({var_of[static_cast<std::size_t>(X.act(g1, x)) * n + g2],
                                  var_of[static_cast<std::size_t>(x) * n + g1],
                                  var_of[static_cast<std::size_t>(x) * n + G.mul(g2, g1)]});
                bucket[v + 1].push_back({x, g2, g1});
            }
    Cochain gamma(1, X);
    auto holds = [&](const Eq& e) {
        Phase lhs = gamma.at(e.g2, X.act(e.g1, e.x)) + gamma.at(e.g1, e.x) - gamma.at(G.mul(e.g2, e.g1), e.x);
        return lhs == diff.at(e.x, e.g2, e.g1);
    };
    for (const auto& e : bucket[0])
        if (!holds(e)) return std::nullopt;
    const int nv = static_cast<int>(vars.size());
    std::vector<int> val(nv, -1);
    int k = 0;
    while (k >= 0) {
        if (k == nv) return gamma;
        ++val[k];
        if (val[k] >= order) {
            val[k] = -1;
            gamma.at(vars[k].second, vars[k].first) = Phase();
            --k;
            continue;
        }
        gamma.at(vars[k].second, vars[k].first) = Phase(val[k], order);
        bool ok = true;
        for (const auto& e : bucket[k + 1])
            if (!holds(e)) {
                ok = false;
                break;
            }
        if (ok) ++k;
    }
    return std::nullopt;
}

Cochain random_cochain(int degree, const GSet& carrier, int den, std::mt19937_64& rng) {
    Cochain c(degree, carrier);
    std::uniform_int_distribution<int> pick(0, den - 1);
    const int n = carrier.group().order();
    for (std::size_t i = 0; i < c.size(); ++i) {
        Phase p(pick(rng), den);
        if (degree == 1 && static_cast<int>(i % n) == 0) p = Phase();
        if (degree == 2) {
            int g1 = static_cast<int>(i % n), g2 = static_cast<int>((i / n) % n);
            if (g1 == 0 || g2 == 0) p = Phase();
        }
        c.entry(i) = p;
    }
    return c;
}

Phase evaluate_functional(const std::vector<long long>& lambda, const Cochain& c) {
    Rational acc(0);
    for (std::size_t j = 0; j < lambda.size() && j < c.size(); ++j)
        if (lambda[j] != 0) acc += Rational(lambda[j]) * c.entries()[j].value();
    return Phase(acc);
}

}  // namespace gerbecat

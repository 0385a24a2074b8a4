#include "gerbecat/tqft.hpp"

#include "gerbecat/arith.hpp"

#include <algorithm>

namespace gerbecat {

namespace {

void commuting_tuples(const FiniteGroup& G, int n, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == n) {
        out.push_back(cur);
        return;
    }
    for (int g = 0; g < G.order(); ++g) {
        bool ok = true;
        for (int h : cur) ok = ok && G.commute(g, h);
        if (!ok) continue;
        cur.push_back(g);
        commuting_tuples(G, n, cur, out);
        cur.pop_back();
    }
}

}  // namespace

FieldGroupoid torus_fields(const GroupPtr& Gp, int n) {
    const FiniteGroup& G = *Gp;
    if (n < 1 || n > 3) throw Error("torus dimension must be 1, 2 or 3");
    if (n == 3 && G.order() > 24) throw Error("three-torus fields need |G| <= 24");
    FieldGroupoid F;
    F.n = n;
    std::vector<int> cur;
    commuting_tuples(G, n, cur, F.tuples);
    std::vector<std::vector<int>> act(G.order(), std::vector<int>(F.tuples.size()));
    for (int h = 0; h < G.order(); ++h)
        for (std::size_t i = 0; i < F.tuples.size(); ++i) {
            std::vector<int> t = F.tuples[i];
            for (int& g : t) g = G.conj(h, g);
            act[h][i] = static_cast<int>(std::lower_bound(F.tuples.begin(), F.tuples.end(), t) - F.tuples.begin());
        }
    F.space = GSet(Gp, std::move(act));
    return F;
}

CrossingReport verify_crossing(const GSet& fields, const Cochain& omega) {
    if (!omega.carrier().same_action(fields)) throw Error("cochain lives on a different G-set");
    if (auto w = check_cocycle(omega)) throw Error("omega is not a cocycle", *w);
    CrossingReport rep;
    rep.degree = omega.degree();
    const FiniteGroup& G = fields.group();
    if (rep.degree == 1) {
        // integral over the loop groupoid of the holonomy e(omega(g <- x))
        std::vector<std::pair<Rational, long long>> terms;
        for (int x = 0; x < fields.size(); ++x)
            for (int g : fields.stabilizer(x)) terms.emplace_back(omega.at(g, x).value(), 1);
        CyclotomicValue s = cyclotomic_sum(terms);
        if (!s.is_rational) throw InternalError("loop integral is not rational");
        rep.integral = s.value / Rational(G.order());
        FlatSectionSpace fs = flat_section_space(omega);
        rep.flat_dim = fs.dim;
        rep.component_count = fs.component_count;
        rep.pass = rep.integral == Rational(rep.flat_dim) && rep.component_count == rep.flat_dim &&
                   fs.nullspace_dim == rep.flat_dim;
    } else if (rep.degree == 2) {
        FlatSectionSpace fs = flat_section_space(transgress(omega));
        rep.flat_dim = fs.dim;
        rep.integral = fs.integral;
        rep.component_count = fs.component_count;
        Gerbe X = make_gerbe(fields, omega, std::vector<Rational>(fields.size(), Rational(1)));
        rep.irreducible_count = static_cast<int>(irreducible_bundles(X).size());
        rep.pass = rep.irreducible_count == rep.flat_dim && rep.integral == Rational(rep.flat_dim) &&
                   fs.nullspace_dim == rep.flat_dim;
    } else {
        throw Error("crossing with the circle needs a cochain of degree 1 or 2");
    }
    return rep;
}

Rational torus_partition(const GroupPtr& G, int n) {
    if (n == 3 && G->order() > 24) throw Error("three-torus partition needs |G| <= 24");
    std::vector<int> cur;
    std::vector<std::vector<int>> tuples;
    commuting_tuples(*G, n, cur, tuples);
    return Rational(static_cast<long long>(tuples.size()), G->order());
}

}  // namespace gerbecat

#include "gerbecat/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace gerbecat::io {

namespace {

[[noreturn]] void bad(const std::string& what, std::vector<int> witness = {}) { throw Error(what, std::move(witness)); }

const json& field(const json& j, const char* key, const char* kind) {
    if (!j.is_object() || !j.contains(key)) bad(std::string(kind) + ": missing field '" + key + "'");
    return j.at(key);
}

int as_int(const json& j, const char* what) {
    if (!j.is_number_integer()) bad(std::string(what) + ": expected an integer");
    return j.get<int>();
}

std::vector<int> int_list(const json& j, const char* what) {
    if (!j.is_array()) bad(std::string(what) + ": expected an array of integers");
    std::vector<int> out;
    for (const auto& v : j) out.push_back(as_int(v, what));
    return out;
}

std::vector<std::vector<int>> int_table(const json& j, const char* what) {
    if (!j.is_array()) bad(std::string(what) + ": expected an array of arrays");
    std::vector<std::vector<int>> out;
    for (const auto& row : j) out.push_back(int_list(row, what));
    return out;
}

// A string reference that is not a known name is a file relative to ctx.base;
// the returned context has its base moved to that file's directory.
std::pair<json, Context> deref(const json& j, const Context& ctx) {
    if (!j.is_string()) return {j, ctx};
    auto p = ctx.base / j.get<std::string>();
    Context inner = ctx;
    inner.base = p.parent_path();
    return {read_file(p), inner};
}

GroupPtr renamed(const GroupPtr& G, const std::string& name) {
    return std::make_shared<FiniteGroup>(G->table(), name);
}

int require_group_index(const FiniteGroup& G, int g, const char* what) {
    if (g < 0 || g >= G.order()) bad(std::string(what) + ": element " + std::to_string(g) + " out of range");
    return g;
}

std::pair<int, int> parse_key(const std::string& key) {
    auto comma = key.find(',');
    if (comma == std::string::npos) bad("map key '" + key + "' is not of the form \"a,b\"");
    try {
        std::size_t u1 = 0, u2 = 0;
        int a = std::stoi(key.substr(0, comma), &u1);
        int b = std::stoi(key.substr(comma + 1), &u2);
        if (u1 != comma || u2 != key.size() - comma - 1) throw std::invalid_argument("");
        return {a, b};
    } catch (const std::exception&) {
        bad("map key '" + key + "' is not of the form \"a,b\"");
    }
}

double clean(double v) { return std::abs(v) < 1e-12 ? 0.0 : v; }

}  // namespace

json read_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) bad("cannot open '" + p.string() + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        bad("'" + p.string() + "': " + e.what());
    }
}

GroupPtr group_by_name(const std::string& name) {
    auto x = name.find('x');
    if (x != std::string::npos) {
        auto A = group_by_name(name.substr(0, x));
        auto B = group_by_name(name.substr(x + 1));
        return renamed(direct_product(A, B), name);
    }
    if (name == "Q8") return quaternion_group();
    if (name.size() >= 2 && (name[0] == 'Z' || name[0] == 'C' || name[0] == 'D' || name[0] == 'S')) {
        int n = 0;
        try {
            std::size_t used = 0;
            n = std::stoi(name.substr(1), &used);
            if (used != name.size() - 1) n = 0;
        } catch (const std::exception&) {
            n = 0;
        }
        if (n >= 1 && n <= 64) {
            switch (name[0]) {
            case 'Z':
            case 'C': return renamed(cyclic_group(n), "Z" + std::to_string(n));
            case 'D':
                if (n >= 2) return renamed(dihedral_group(2 * n), name);
                break;
            case 'S':
                if (n <= 5) return symmetric_group(n);
                break;
            }
        }
    }
    bad("unknown group name '" + name + "'");
}

GroupPtr load_group(const json& j0, const Context& ctx) {
    if (j0.is_string()) {
        const std::string s = j0.get<std::string>();
        if (auto it = ctx.groups.find(s); it != ctx.groups.end()) return it->second;
        if (s.size() < 5 || s.substr(s.size() - 5) != ".json") return group_by_name(s);
    }
    auto [j, c] = deref(j0, ctx);
    if (!j.is_object()) bad("group: expected an object");
    if (j.contains("builtin")) {
        const std::string b = j.at("builtin").get<std::string>();
        const json params = j.value("params", json::array());
        auto param = [&](std::size_t i) {
            if (!params.is_array() || params.size() <= i) bad("group builtin '" + b + "': missing parameter");
            return as_int(params[i], "group params");
        };
        if (b == "cyclic") {
            int n = param(0);
            if (n < 1) bad("cyclic: order must be positive");
            return renamed(cyclic_group(n), "Z" + std::to_string(n));
        }
        if (b == "dihedral") {
            int n = param(0);
            if (n < 2) bad("dihedral: n must be at least 2");
            return renamed(dihedral_group(2 * n), "D" + std::to_string(n));
        }
        if (b == "symmetric") {
            int n = param(0);
            if (n < 1 || n > 5) bad("symmetric: n must be in 1..5");
            return symmetric_group(n);
        }
        if (b == "quaternion") return quaternion_group();
        if (b == "product") {
            if (!params.is_array() || params.size() != 2) bad("product: expected two group references");
            auto A = load_group(params[0], c);
            auto B = load_group(params[1], c);
            return renamed(direct_product(A, B), A->name() + "x" + B->name());
        }
        bad("unknown group builtin '" + b + "'");
    }
    auto mult = int_table(field(j, "mult", "group"), "group mult");
    if (j.contains("order") && as_int(j.at("order"), "group order") != static_cast<int>(mult.size()))
        bad("group: order does not match the table");
    return std::make_shared<FiniteGroup>(mult, j.value("name", std::string()));
}

GSet load_gset(const json& j0, const Context& ctx) {
    auto [j, c] = deref(j0, ctx);
    if (!j.is_object()) bad("gset: expected an object");
    if (j.contains("builtin")) {
        const std::string b = j.at("builtin").get<std::string>();
        if (b == "union" || b == "product") {
            const char* key = b == "union" ? "parts" : "factors";
            const json& parts = field(j, key, "gset");
            if (!parts.is_array() || parts.empty()) bad(std::string("gset ") + b + ": empty '" + key + "'");
            GSet out = load_gset(parts[0], c);
            for (std::size_t i = 1; i < parts.size(); ++i) {
                GSet next = load_gset(parts[i], c);
                if (!same_group(out.group_ptr(), next.group_ptr())) bad("gset " + b + ": groups differ");
                out = b == "union" ? disjoint_union(out, next) : product_gset(out, next);
            }
            return out;
        }
        auto G = load_group(field(j, "group", "gset"), c);
        if (b == "point") return point_gset(G);
        if (b == "regular") return regular_gset(G);
        if (b == "conjugation") return conjugation_gset(G);
        if (b == "coset") {
            auto H = int_list(field(j, "subgroup", "gset"), "coset subgroup");
            for (int h : H) require_group_index(*G, h, "coset subgroup");
            std::sort(H.begin(), H.end());
            H.erase(std::unique(H.begin(), H.end()), H.end());
            if (!is_subgroup(*G, H)) bad("coset: not a subgroup");
            return coset_gset(G, H);
        }
        bad("unknown gset builtin '" + b + "'");
    }
    auto G = load_group(field(j, "group", "gset"), c);
    auto act = int_table(field(j, "act", "gset"), "gset act");
    if (j.contains("size")) {
        int size = as_int(j.at("size"), "gset size");
        for (const auto& row : act)
            if (static_cast<int>(row.size()) != size) bad("gset: act rows must have 'size' entries");
    }
    return GSet(G, act);
}

Cochain load_cochain(const json& j0, const Context& ctx, const GSet* carrier) {
    auto [j, c] = deref(j0, ctx);
    if (!j.is_object()) bad("cocycle: expected an object");
    GSet X;
    if (j.contains("gset")) {
        X = load_gset(j.at("gset"), c);
        if (carrier && !X.same_action(*carrier)) bad("cocycle: carrier differs from the enclosing gset");
    } else if (carrier) {
        X = *carrier;
    } else {
        bad("cocycle: missing field 'gset'");
    }
    int degree = as_int(field(j, "degree", "cocycle"), "cocycle degree");
    if (degree < 0 || degree > 2) bad("cocycle: degree must be 0, 1 or 2");
    Cochain out(degree, X);
    if (!j.contains("entries")) return out;
    const json& e = j.at("entries");
    if (!e.is_array() || e.size() != out.size())
        bad("cocycle: expected " + std::to_string(out.size()) + " entries, got " +
            std::to_string(e.is_array() ? e.size() : 0));
    for (std::size_t i = 0; i < e.size(); ++i) out.entry(i) = Phase(rational_from(e[i]));
    return out;
}

Gerbe load_gerbe(const json& j0, const Context& ctx) {
    if (j0.is_string())
        if (auto it = ctx.gerbes.find(j0.get<std::string>()); it != ctx.gerbes.end()) return it->second;
    auto [j, c] = deref(j0, ctx);
    if (!j.is_object()) bad("gerbe: expected an object");
    GSet X = load_gset(field(j, "gset", "gerbe"), c);
    Cochain cc = j.contains("cocycle") ? load_cochain(j.at("cocycle"), c, &X) : Cochain(2, X);
    if (cc.degree() != 2) bad("gerbe: cocycle must have degree 2");
    std::vector<Rational> metric(X.size(), Rational(1));
    if (j.contains("metric")) {
        const json& m = j.at("metric");
        if (!m.is_array() || static_cast<int>(m.size()) != X.size())
            bad("gerbe: metric needs one weight per point");
        for (std::size_t i = 0; i < m.size(); ++i) metric[i] = rational_from(m[i]);
    }
    return make_gerbe(X, cc, metric);
}

TwistedBundle load_bundle(const json& j0, const Context& ctx, double* tol) {
    auto [j, c] = deref(j0, ctx);
    if (!j.is_object()) bad("bundle: expected an object");
    Gerbe X = load_gerbe(field(j, "gerbe", "bundle"), c);
    auto dims = int_list(field(j, "dims", "bundle"), "bundle dims");
    if (static_cast<int>(dims.size()) != X.size()) bad("bundle: dims needs one entry per point");
    for (int d : dims)
        if (d < 0) bad("bundle: negative fiber dimension");
    const int n = X.group().order();
    std::vector<CMatrix> maps(static_cast<std::size_t>(X.size()) * n);
    const json maps_j = j.value("maps", json::object());
    if (!maps_j.is_object()) bad("bundle: 'maps' must be an object");
    std::vector<char> seen(maps.size(), 0);
    for (const auto& [key, val] : maps_j.items()) {
        auto [x, g] = parse_key(key);
        if (x < 0 || x >= X.size()) bad("bundle: point out of range in key '" + key + "'");
        require_group_index(X.group(), g, "bundle map key");
        std::size_t id = static_cast<std::size_t>(x) * n + g;
        maps[id] = matrix_from(val, dims[X.space.act(g, x)], dims[x]);
        seen[id] = 1;
    }
    for (int x = 0; x < X.size(); ++x)
        for (int g = 0; g < n; ++g) {
            std::size_t id = static_cast<std::size_t>(x) * n + g;
            if (seen[id]) continue;
            int r = dims[X.space.act(g, x)], cdim = dims[x];
            if (r * cdim != 0) bad("bundle: missing map for key '" + std::to_string(x) + "," + std::to_string(g) + "'");
            maps[id] = CMatrix(r, cdim);
        }
    if (tol) *tol = j.value("tol", kDefaultTol);
    return TwistedBundle(X, dims, maps);
}

GBundleOverG load_fusion_object(const json& j0, const Context& ctx) {
    auto [j, c] = deref(j0, ctx);
    if (!j.is_object()) bad("fusion object: expected an object");
    if (j.contains("carrier") && j.at("carrier") != "conjugation") bad("fusion object: carrier must be 'conjugation'");
    GBundleOverG V;
    V.group = load_group(field(j, "group", "fusion object"), c);
    const int n = V.order();
    V.dims = int_list(field(j, "dims", "fusion object"), "fusion object dims");
    if (static_cast<int>(V.dims.size()) != n) bad("fusion object: dims needs one entry per group element");
    for (int d : V.dims)
        if (d < 0) bad("fusion object: negative fiber dimension");
    V.maps.assign(static_cast<std::size_t>(n) * n, CMatrix());
    std::vector<char> seen(V.maps.size(), 0);
    const json maps_j = j.value("maps", json::object());
    if (!maps_j.is_object()) bad("fusion object: 'maps' must be an object");
    for (const auto& [key, val] : maps_j.items()) {
        auto [g, h] = parse_key(key);
        require_group_index(*V.group, g, "fusion object map key");
        require_group_index(*V.group, h, "fusion object map key");
        V.act(h, g) = matrix_from(val, V.dims[V.group->conj(h, g)], V.dims[g]);
        seen[static_cast<std::size_t>(g) * n + h] = 1;
    }
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) {
            if (seen[static_cast<std::size_t>(g) * n + h]) continue;
            int r = V.dims[V.group->conj(h, g)];
            if (r * V.dims[g] != 0)
                bad("fusion object: missing map for key '" + std::to_string(g) + "," + std::to_string(h) + "'");
            V.act(h, g) = CMatrix(r, V.dims[g]);
        }
    return V;
}

ExtensionData load_extension(const json& j0, const Context& ctx) {
    auto [j, c] = deref(j0, ctx);
    if (!j.is_object()) bad("extension: expected an object");
    auto E = load_group(field(j, "E", "extension"), c);
    auto K = int_list(field(j, "K", "extension"), "extension K");
    for (int k : K) require_group_index(*E, k, "extension K");
    std::sort(K.begin(), K.end());
    K.erase(std::unique(K.begin(), K.end()), K.end());
    std::optional<std::vector<int>> section;
    if (j.contains("section")) {
        const json& s = j.at("section");
        if (s.is_string()) {
            if (s.get<std::string>() != "alternate") bad("extension: section must be a list or \"alternate\"");
            auto ext = make_extension(E, K);
            return make_extension(E, K, alternate_section(ext));
        }
        section = int_list(s, "extension section");
        for (int g : *section) require_group_index(*E, g, "extension section");
    }
    return make_extension(E, K, section);
}

FusionRing load_ring(const json& j0, const Context& ctx) {
    auto [j, c] = deref(j0, ctx);
    if (!j.is_object()) bad("fusion ring: expected an object");
    if (j.contains("builtin")) {
        std::vector<int> params;
        if (j.contains("params")) params = int_list(j.at("params"), "fusion ring params");
        return builtin_ring(j.at("builtin").get<std::string>(), params);
    }
    int rank = as_int(field(j, "rank", "fusion ring"), "fusion ring rank");
    if (rank < 1) bad("fusion ring: rank must be positive");
    if (j.contains("unit") && as_int(j.at("unit"), "fusion ring unit") != 0) bad("fusion ring: the unit must be 0");
    auto star = int_list(field(j, "star", "fusion ring"), "fusion ring star");
    std::vector<std::array<int, 4>> entries;
    for (const auto& e : field(j, "N", "fusion ring")) {
        auto v = int_list(e, "fusion ring N");
        if (v.size() != 4) bad("fusion ring: N entries are [i, j, k, n]");
        entries.push_back({v[0], v[1], v[2], v[3]});
    }
    return make_fusion_ring(rank, star, entries, j.value("name", std::string()));
}

PivotalSymbols load_symbols(const json& j, const FusionRing& R) {
    PivotalSymbols eps = trivial_symbols(R);
    for (const auto& e : field(j, "eps", "pivotal")) {
        auto v = int_list(e, "pivotal eps");
        if (v.size() != 4) bad("pivotal: eps entries are [i, j, k, sign]");
        for (int t = 0; t < 3; ++t)
            if (v[t] < 0 || v[t] >= R.rank) bad("pivotal: index out of range", {v[0], v[1], v[2]});
        if (v[3] != 1 && v[3] != -1) bad("pivotal: sign must be +1 or -1", {v[0], v[1], v[2]});
        if (!R.n(v[0], v[1], v[2])) bad("pivotal: triple is not admissible", {v[0], v[1], v[2]});
        eps.at(v[0], v[1], v[2]) = v[3];
    }
    return eps;
}

json rational_json(const Rational& r) { return to_string(r); }

Rational rational_from(const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    bad("expected a rational \"p/q\"");
}

json complex_json(const cplx& z) { return json::array({clean(z.real()), clean(z.imag())}); }

json matrix_json(const CMatrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

CMatrix matrix_from(const json& j, int rows, int cols) {
    std::ostringstream shape;
    shape << rows << "x" << cols;
    if (!j.is_array() || static_cast<int>(j.size()) != rows) bad("matrix: expected shape " + shape.str());
    CMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols) bad("matrix: expected shape " + shape.str());
        for (int c = 0; c < cols; ++c) {
            const json& z = j[r][c];
            if (z.is_number()) {
                m(r, c) = cplx(z.get<double>(), 0);
            } else if (z.is_array() && z.size() == 2 && z[0].is_number() && z[1].is_number()) {
                m(r, c) = cplx(z[0].get<double>(), z[1].get<double>());
            } else {
                bad("matrix: entries are [re, im]");
            }
        }
    }
    return m;
}

json to_json(const FiniteGroup& G) {
    return json{{"name", G.name()}, {"order", G.order()}, {"mult", G.table()}};
}

json to_json(const GSet& X) {
    return json{{"group", to_json(X.group())}, {"size", X.size()}, {"act", X.table()}};
}

json to_json(const Cochain& c) {
    json e = json::array();
    for (const auto& p : c.entries()) e.push_back(p.str());
    return json{{"gset", to_json(c.carrier())}, {"degree", c.degree()}, {"entries", e}};
}

json to_json(const Gerbe& X) {
    json cj = to_json(X.cocycle);
    cj.erase("gset");
    json m = json::array();
    for (const auto& k : X.metric) m.push_back(rational_json(k));
    return json{{"gset", to_json(X.space)}, {"cocycle", cj}, {"metric", m}};
}

json to_json(const TwistedBundle& E) {
    json maps = json::object();
    const int n = E.gerbe().group().order();
    for (int x = 0; x < E.gerbe().size(); ++x)
        for (int g = 0; g < n; ++g)
            if (E.map(g, x).size()) maps[std::to_string(x) + "," + std::to_string(g)] = matrix_json(E.map(g, x));
    return json{{"gerbe", to_json(E.gerbe())}, {"dims", E.dims()}, {"maps", maps}};
}

json to_json(const GBundleOverG& V) {
    json maps = json::object();
    const int n = V.order();
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h)
            if (V.act(h, g).size()) maps[std::to_string(g) + "," + std::to_string(h)] = matrix_json(V.act(h, g));
    return json{{"group", to_json(*V.group)}, {"carrier", "conjugation"}, {"dims", V.dims}, {"maps", maps}};
}

json to_json(const FusionRing& R) {
    json N = json::array();
    for (int i = 0; i < R.rank; ++i)
        for (int j = 0; j < R.rank; ++j)
            for (int k = 0; k < R.rank; ++k)
                if (R.n(i, j, k)) N.push_back({i, j, k, R.n(i, j, k)});
    return json{{"name", R.name}, {"rank", R.rank}, {"unit", 0}, {"star", R.star}, {"N", N}};
}

}  // namespace gerbecat::io

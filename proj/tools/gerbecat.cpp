#include "gerbecat/catalog.hpp"
#include "gerbecat/tqft.hpp"
#include "gerbecat/twohilb.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

using namespace gerbecat;
using io::json;

namespace {

struct Check {
    std::string name;
    bool pass = false;
    json lhs, rhs;
    std::optional<double> residual;
    json witness;
};

struct Report {
    std::vector<Check> checks;
    json result = json::object();

    bool pass() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    }
    Check& add(std::string name, bool pass, json lhs = nullptr, json rhs = nullptr) {
        checks.push_back({std::move(name), pass, std::move(lhs), std::move(rhs), std::nullopt, nullptr});
        return checks.back();
    }
    // passes iff residual <= tol
    Check& below(std::string name, double residual, double tol) {
        Check& c = add(std::move(name), residual <= tol, residual, tol);
        c.residual = residual;
        return c;
    }
};

struct Options {
    std::uint64_t seed = 0;
    double tol = kDefaultTol;
    std::string format = "json";
    std::string catalog;
};

json rat(const Rational& r) {
    if (r.denominator() == 1) return r.numerator();
    return to_string(r);
}

json witness_json(const std::vector<int>& w) { return w.empty() ? json(nullptr) : json(w); }

json phases_json(const std::vector<Rational>& v) {
    json out = json::array();
    for (const auto& r : v) out.push_back(to_string(r));
    return out;
}

std::string emit(const std::string& command, const Report& rep, const std::string& format) {
    json checks = json::array();
    for (const auto& c : rep.checks) {
        json j{{"check", c.name}, {"status", c.pass ? "pass" : "fail"}, {"lhs", c.lhs}, {"rhs", c.rhs}};
        if (c.residual) j["residual"] = *c.residual;
        if (!c.witness.is_null()) j["witness"] = c.witness;
        checks.push_back(j);
    }
    if (format == "tsv") {
        std::ostringstream out;
        out << "check\tstatus\tlhs\trhs\tresidual\n";
        for (const auto& c : rep.checks)
            out << c.name << '\t' << (c.pass ? "pass" : "fail") << '\t' << c.lhs.dump() << '\t' << c.rhs.dump() << '\t'
                << (c.residual ? json(*c.residual).dump() : "") << '\n';
        for (const auto& [k, v] : rep.result.items()) out << "result." << k << '\t' << v.dump() << '\n';
        return out.str();
    }
    json doc{{"command", command}, {"status", rep.pass() ? "pass" : "fail"}, {"checks", checks},
             {"result", rep.result}};
    return doc.dump(2) + "\n";
}

// Resolution of command-line references against files and the catalog.
class Resolver {
public:
    explicit Resolver(const Options& opt) : opt_(opt) {}

    const Catalog& catalog() {
        if (!cat_) cat_ = load_catalog(opt_.catalog.empty() ? default_catalog_path() : std::filesystem::path(opt_.catalog));
        return *cat_;
    }

    GroupPtr group(const std::string& ref) {
        if (is_file(ref)) return io::load_group(json(ref), io::Context{});
        if (has_catalog())
            for (const auto& [name, G] : catalog().groups)
                if (name == ref) return G;
        return io::group_by_name(ref);
    }

    // Catalog short names are looked up under the given group first.
    Gerbe gerbe(const std::string& ref, const std::string& group = "") {
        if (is_file(ref)) return io::load_gerbe(json(ref), io::Context{});
        if (const CatalogGerbe* g = find(ref, group)) return g->gerbe;
        if (group.empty() && ref == "trivial-pt") throw Error("'" + ref + "' needs --group");
        if (!group.empty()) {
            GroupPtr G = this->group(group);
            if (ref == "trivial-pt") return trivial_gerbe(point_gset(G));
            if (ref == "regular") return regular_gerbe(G);
        }
        throw Error("no gerbe file or catalog entry named '" + ref + "'");
    }

    Cochain cochain(const std::string& ref, const std::string& group = "") {
        if (is_file(ref)) return io::load_cochain(json(ref), io::Context{});
        return gerbe(ref, group).cocycle;
    }

    static bool is_file(const std::string& ref) {
        std::error_code ec;
        return std::filesystem::is_regular_file(ref, ec);
    }

private:
    bool has_catalog() {
        if (cat_) return true;
        std::error_code ec;
        auto dir = opt_.catalog.empty() ? default_catalog_path() : std::filesystem::path(opt_.catalog);
        if (!std::filesystem::is_regular_file(dir / "index.json", ec)) return false;
        catalog();
        return true;
    }

    const CatalogGerbe* find(const std::string& ref, const std::string& group) {
        if (!has_catalog()) return nullptr;
        if (!group.empty())
            if (const CatalogGerbe* g = catalog().find(group + "/" + ref)) return g;
        return catalog().find(ref);
    }

    const Options& opt_;
    std::optional<Catalog> cat_;
};

std::vector<int> parse_ints(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw Error("expected a comma-separated list of integers, got '" + s + "'");
        }
    }
    return out;
}

std::vector<Rational> parse_rationals(const std::string& s) {
    std::vector<Rational> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(parse_rational(tok));
    return out;
}

std::vector<double> parse_doubles(const std::string& s) {
    std::vector<double> out;
    for (const auto& r : parse_rationals(s)) out.push_back(boost::rational_cast<double>(r));
    return out;
}

// ---- shared check groups -------------------------------------------------

void flat_section_checks(Report& rep, const std::string& tag, const Gerbe& X, std::uint64_t seed, bool irreducibles) {
    Cochain tau = transgress(X.cocycle);
    FlatSectionSpace fs;
    try {
        fs = flat_section_space(tau);
    } catch (const InternalError& e) {
        rep.add(tag + "flat sections agree", false, e.what(), nullptr);
        return;
    }
    rep.add(tag + "flat sections agree", fs.dim == fs.component_count && fs.dim == fs.nullspace_dim &&
                                             fs.integral == Rational(fs.dim),
            fs.dim, json{{"integral", to_string(fs.integral)}, {"components", fs.component_count},
                         {"nullspace", fs.nullspace_dim}});
    if (!irreducibles) return;
    IrreducibleOptions opt;
    opt.seed = seed;
    auto irr = irreducible_bundles(X, opt);
    rep.add(tag + "irreducibles = flat sections", static_cast<int>(irr.size()) == fs.dim,
            static_cast<int>(irr.size()), fs.dim);
    CMatrix gram = character_gram(irr);
    double gres = irr.empty() ? 0.0
                              : (gram - CMatrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
    rep.below(tag + "character gram is identity", gres, 1e-6);
}

void character_checks(Report& rep, const std::string& tag, const Gerbe& X, double tol, json* out = nullptr) {
    GBundleOverG V = geometric_character(X);
    GBundleReport vr = validate_gbundle(V, tol);
    rep.add(tag + "geometric character valid", vr.pass, vr.unitarity, vr.functoriality).witness =
        witness_json(vr.witness);
    LoopGroupoid loop;
    Cochain tau = transgress(X.cocycle, &loop);
    const FiniteGroup& G = X.group();
    const int n = G.order();
    bool exact = true;
    std::vector<int> bad;
    json values = json::array();
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) {
            if (!G.commute(g, h)) continue;
            std::vector<std::pair<Rational, long long>> terms;
            for (int x = 0; x < X.size(); ++x)
                if (X.space.act(g, x) == x && X.space.act(h, x) == x)
                    terms.push_back({tau.at(h, loop.index_of(x, g)).value(), 1});
            CyclotomicValue want = cyclotomic_sum(terms);
            CyclotomicValue got = double_character_exact(V, g, h);
            bool same = want.is_rational == got.is_rational &&
                        (want.is_rational ? want.value == got.value : std::abs(want.approx - got.approx) < 1e-9);
            if (!same && exact) bad = {g, h};
            exact &= same;
            if (out)
                values.push_back(json{{"g", g}, {"h", h},
                                      {"value", got.is_rational ? rat(got.value) : io::complex_json(got.approx)}});
        }
    rep.add(tag + "double character = fixed-point sum", exact).witness = witness_json(bad);
    if (out) {
        (*out)["dims"] = V.dims;
        (*out)["double_character"] = values;
    }
}

void crossing_checks(Report& rep, const std::string& tag, const GSet& fields, const Cochain& omega, std::uint64_t seed) {
    CrossingReport r = verify_crossing(fields, omega);
    json rhs = omega.degree() == 1 ? json(to_string(r.integral)) : json(r.irreducible_count);
    rep.add(tag + "crossing degree " + std::to_string(omega.degree()), r.pass, r.flat_dim, rhs);
    std::mt19937_64 rng(seed);
    Cochain shifted = omega + coboundary(random_cochain(omega.degree() - 1, fields, 4, rng));
    CrossingReport r2 = verify_crossing(fields, shifted);
    rep.add(tag + "crossing gauge invariance", r2.pass && r2.flat_dim == r.flat_dim && r2.integral == r.integral &&
                                                   r2.irreducible_count == r.irreducible_count,
            r2.flat_dim, r.flat_dim);
}

// Functional check: lambda kills d of every basis gamma and not c2 - c1.
bool certificate_valid(const CohomologyResult& res, const Cochain& c1, const Cochain& c2) {
    Cochain diff = c2 - c1;
    if (evaluate_functional(res.certificate, diff).is_zero()) return false;
    Cochain basis(diff.degree() - 1, diff.carrier());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        Cochain e = basis;
        e.entry(i) = Phase(1, res.modulus);
        if (!evaluate_functional(res.certificate, coboundary(e)).is_zero()) return false;
    }
    return true;
}

json cohomology_checks(Report& rep, const std::string& tag, const Cochain& c1, const Cochain& c2) {
    CohomologyResult res = cohomologous(c1, c2);
    json out{{"cohomologous", res.cohomologous}, {"modulus", res.modulus}};
    if (res.cohomologous) {
        bool ok = res.gamma && coboundary(*res.gamma) == c2 - c1;
        rep.add(tag + "coboundary witness verifies", ok);
        json g = json::array();
        if (res.gamma)
            for (const auto& p : res.gamma->entries()) g.push_back(p.str());
        out["gamma"] = g;
    } else {
        rep.add(tag + "obstruction certificate verifies", certificate_valid(res, c1, c2));
        out["certificate"] = res.certificate;
    }
    try {
        auto brute = cohomologous_bruteforce(c1, c2, 4, 16);
        rep.add(tag + "brute-force search agrees", !brute || res.cohomologous, brute.has_value(), res.cohomologous);
        out["bruteforce"] = brute.has_value();
    } catch (const Error&) {
        out["bruteforce"] = "skipped";
    }
    return out;
}

Cochain restrict_to_orbit(const Cochain& c, const std::vector<int>& orbit) {
    GSet sub = sub_gset(c.carrier(), orbit);
    return pullback(c, sub, orbit);
}

json extraction_checks(Report& rep, const std::string& tag, const ExtensionData& ext, double tol, std::uint64_t seed) {
    IrrSystem irr = irreducible_representations(subgroup_as_group(ext.E, ext.K), seed);
    Extraction ex = extract_gerbe(ext, irr, seed);
    rep.below(tag + "intertwiners", ex.intertwiner_residual, tol);
    rep.below(tag + "scalar composite", ex.scalar_residual, tol);
    rep.below(tag + "rational snap", ex.snap_error, 1e-6);
    json orbits = json::array();
    for (const auto& orb : ex.gerbe.space.orbits()) {
        Cochain c = restrict_to_orbit(ex.gerbe.cocycle, orb);
        json o = cohomology_checks(rep, tag + "orbit " + std::to_string(orb.front()) + " ", Cochain(2, c.carrier()), c);
        orbits.push_back(json{{"points", orb}, {"dims", [&] {
                                  json d = json::array();
                                  for (int x : orb) d.push_back(irr.dims[x]);
                                  return d;
                              }()},
                              {"trivial_class", o["cohomologous"]}});
    }
    ExtensionData alt = make_extension(ext.E, ext.K, alternate_section(ext));
    Extraction ex2 = extract_gerbe(alt, irr, seed);
    auto w = isometric_equivalent(ex.gerbe, ex2.gerbe);
    rep.add(tag + "section independence", w && verify_equivalence(ex.gerbe, ex2.gerbe, *w));
    return json{{"gerbe", io::to_json(ex.gerbe)}, {"orbits", orbits}};
}

json simples_json(const std::vector<SimpleObject>& S, const FiniteGroup& G) {
    GroupAnalysis an = analyze(G);
    json out = json::array();
    for (std::size_t i = 0; i < S.size(); ++i)
        out.push_back(json{{"index", i}, {"class_rep", S[i].class_rep},
                           {"class_size", an.classes[an.class_of[S[i].class_rep]].size()}, {"irrep", S[i].irrep},
                           {"dim", S[i].object.total_dim()}});
    return out;
}

void double_group_checks(Report& rep, const std::string& tag, const GroupPtr& G, std::uint64_t seed, double tol) {
    auto S = simples(G, seed);
    GroupAnalysis an = analyze(*G);
    long long dim2 = 0;
    bool valid = true;
    for (const auto& s : S) {
        dim2 += static_cast<long long>(s.object.total_dim()) * s.object.total_dim();
        valid &= validate_gbundle(s.object, tol).pass;
    }
    const long long n = G->order();
    rep.add(tag + "simples valid", valid);
    rep.add(tag + "simples = commuting triples / |G|", static_cast<long long>(S.size()) * n == an.commuting_triples,
            static_cast<long long>(S.size()), rat(Rational(an.commuting_triples, n)));
    rep.add(tag + "sum of squared dims = |G|^2", dim2 == n * n, dim2, n * n);
    rep.add(tag + "simples = torus partition", Rational(static_cast<long long>(S.size())) == torus_partition(G, 3),
            static_cast<long long>(S.size()), rat(torus_partition(G, 3)));
}

void center_checks(Report& rep, const std::string& tag, const GroupPtr& G, std::uint64_t seed, double tol) {
    CenterReport c = center_check(G, seed);
    rep.add(tag + "center dim = class count", c.center_dim == c.class_count, c.center_dim, c.class_count);
    rep.add(tag + "class functions central", c.class_functions_central);
    rep.add(tag + "non-class elements detected", c.non_class_detected);
    rep.add(tag + "convolution exact", c.convolution_exact);
    rep.add(tag + "restriction exact", c.restriction_exact);
    rep.below(tag + "convolution numeric", c.convolution_numeric, tol);
    rep.below(tag + "irreducible round trip", c.irreducible_roundtrip, tol);
}

// ---- commands ------------------------------------------------------------

struct Args {
    std::string group, gset, builtin, subgroup, cocycle, a, b, gerbe, x, y, metric, bundle, extension, normal, ring,
        eps, weights_a = "1,1,2", weights_b = "1,2";
    int i = -1, j = -1, trials = 20, instances = 5, degree = 2;
    bool spherical = false, alternate = false, emit = false;
    double perturb = 1.0;
};

FusionRing load_ring_arg(const Args& a) {
    if (!a.ring.empty()) {
        if (Resolver::is_file(a.ring)) return io::load_ring(json(a.ring), io::Context{});
        return ring_by_name(a.ring);
    }
    if (!a.builtin.empty()) return ring_by_name(a.builtin);
    throw Error("give --builtin or --ring");
}

GSet gset_arg(const Args& a, Resolver& R) {
    if (!a.gset.empty()) return io::load_gset(json(a.gset), io::Context{});
    if (a.group.empty() || a.builtin.empty()) throw Error("give --gset, or --group with --builtin");
    GroupPtr G = R.group(a.group);
    if (a.builtin == "point") return point_gset(G);
    if (a.builtin == "regular") return regular_gset(G);
    if (a.builtin == "conjugation") return conjugation_gset(G);
    if (a.builtin == "coset") {
        auto H = parse_ints(a.subgroup);
        for (int h : H)
            if (h < 0 || h >= G->order()) throw Error("subgroup element out of range");
        std::sort(H.begin(), H.end());
        if (!is_subgroup(*G, H)) throw Error("--subgroup is not a subgroup");
        return coset_gset(G, H);
    }
    throw Error("unknown gset builtin '" + a.builtin + "'");
}

void require(const std::string& v, const char* flag) {
    if (v.empty()) throw Error(std::string("missing ") + flag);
}

void cmd_group_info(const Args& a, const Options&, Resolver& R, Report& rep) {
    require(a.group, "--group");
    GroupPtr G = R.group(a.group);
    GroupAnalysis an = analyze(*G);
    const int n = G->order();
    std::vector<int> comms;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) comms.push_back(G->mul(G->mul(x, y), G->mul(G->inv(x), G->inv(y))));
    const int derived = static_cast<int>(generated_subgroup(*G, comms).size());
    std::size_t total = 0;
    for (const auto& c : an.classes) total += c.size();
    rep.add("class equation", static_cast<int>(total) == n, static_cast<int>(total), n);
    rep.add("commuting pairs = |G| * classes", an.commuting_pairs == static_cast<long long>(n) * static_cast<long long>(an.classes.size()),
            an.commuting_pairs, static_cast<long long>(n) * static_cast<long long>(an.classes.size()));
    rep.result = json{{"name", G->name()},
                      {"order", n},
                      {"classes", an.classes},
                      {"center", an.center},
                      {"commuting_pairs", an.commuting_pairs},
                      {"commuting_triples", an.commuting_triples},
                      {"abelianization_order", n / derived},
                      {"generators", generating_set(*G)},
                      {"mult", G->table()}};
}

void cmd_gset_info(const Args& a, const Options&, Resolver& R, Report& rep) {
    GSet X = gset_arg(a, R);
    Rational loops = integrate(loop_of(X).space, [](int) { return Rational(1); });
    rep.add("loop integral = orbit count", loops == Rational(static_cast<long long>(X.orbits().size())),
            to_string(loops), X.orbits().size());
    json stab = json::array();
    for (int x = 0; x < X.size(); ++x) stab.push_back(X.stabilizer(x));
    rep.result = json{{"group", X.group().name()}, {"size", X.size()}, {"orbits", X.orbits()},
                      {"stabilizers", stab}, {"act", X.table()}};
}

void cmd_cocycle_check(const Args& a, const Options&, Resolver& R, Report& rep) {
    require(a.cocycle, "--cocycle");
    Cochain c = R.cochain(a.cocycle, a.group);
    if (c.degree() < 1) throw Error("cocycle check needs degree 1 or 2");
    if (c.degree() == 2) rep.add("normalized", c.normalized());
    std::optional<std::vector<int>> bad;
    if (c.degree() == 1 || c.normalized()) bad = check_cocycle(c);
    rep.add("cocycle condition", !bad && (c.degree() == 1 || c.normalized())).witness =
        bad ? json(*bad) : json(nullptr);
    rep.result = json{{"degree", c.degree()}, {"order", c.order()}, {"size", c.size()}};
}

void cmd_cocycle_transgress(const Args& a, const Options&, Resolver& R, Report& rep) {
    require(a.cocycle, "--cocycle");
    Cochain c = R.cochain(a.cocycle, a.group);
    if (c.degree() < 1) throw Error("transgression needs degree 1 or 2");
    LoopGroupoid loop;
    Cochain t = transgress(c, &loop);
    if (t.degree() == 1) {
        auto bad = check_cocycle(t);
        rep.add("transgression is a cocycle", !bad).witness = bad ? json(*bad) : json(nullptr);
    } else {
        bool invariant = true;
        for (int g = 0; g < t.carrier().group().order(); ++g)
            for (int o = 0; o < t.carrier().size(); ++o) invariant &= t.at(t.carrier().act(g, o)) == t.at(o);
        rep.add("transgression is invariant", invariant);
    }
    json objs = json::array();
    for (const auto& o : loop.objects) objs.push_back(json{{"x", o[0]}, {"g", o[1]}});
    rep.result = json{{"loop_objects", objs}, {"cochain", io::to_json(t)}};
}

void cmd_cocycle_cohomologous(const Args& a, const Options&, Resolver& R, Report& rep) {
    require(a.a, "--a");
    require(a.b, "--b");
    Cochain c1 = R.cochain(a.a, a.group), c2 = R.cochain(a.b, a.group);
    rep.result = cohomology_checks(rep, "", c1, c2);
}

void cmd_gerbe_make(const Args& a, const Options&, Resolver& R, Report& rep) {
    Gerbe X;
    if (!a.gerbe.empty()) {
        X = R.gerbe(a.gerbe, a.group);
    } else {
        GSet S = gset_arg(a, R);
        Cochain c = a.cocycle.empty() ? Cochain(2, S) : io::load_cochain(json(a.cocycle), io::Context{}, &S);
        std::vector<Rational> m = a.metric.empty() ? std::vector<Rational>(S.size(), Rational(1))
                                                   : parse_rationals(a.metric);
        X = make_gerbe(S, c, m);
    }
    rep.add("valid gerbe", true);
    rep.result = io::to_json(X);
}

void cmd_gerbe_equiv(const Args& a, const Options&, Resolver& R, Report& rep) {
    require(a.x, "--x");
    require(a.y, "--y");
    Gerbe X = R.gerbe(a.x, a.group), Y = R.gerbe(a.y, a.group);
    auto w = isometric_equivalent(X, Y);
    auto back = isometric_equivalent(Y, X);
    rep.add("symmetric", w.has_value() == back.has_value(), w.has_value(), back.has_value());
    json res{{"equivalent", w.has_value()}};
    if (w) {
        rep.add("witness verifies", verify_equivalence(X, Y, *w));
        json g = json::array();
        for (const auto& p : w->gamma.entries()) g.push_back(p.str());
        res["map"] = w->map;
        res["gamma"] = g;
    }
    rep.result = res;
}

void cmd_gerbe_char(const Args& a, const Options& o, Resolver& R, Report& rep) {
    require(a.gerbe, "--gerbe");
    Gerbe X = R.gerbe(a.gerbe, a.group);
    json out = json::object();
    character_checks(rep, "", X, o.tol, &out);
    if (a.emit) out["bundle"] = io::to_json(geometric_character(X));
    rep.result = out;
}

void cmd_bundle_validate(const Args& a, const Options& o, Resolver&, Report& rep) {
    require(a.bundle, "--bundle");
    double tol = o.tol;
    TwistedBundle E = io::load_bundle(json(a.bundle), io::Context{}, &tol);
    BundleReport r = validate_bundle(E, tol);
    rep.add("unitary and functorial", r.pass, r.unitarity, r.functoriality).witness = witness_json(r.witness);
    rep.result = json{{"unitarity", r.unitarity}, {"functoriality", r.functoriality}, {"tol", tol},
                      {"total_dim", E.total_dim()}};
}

void cmd_bundle_irreducibles(const Args& a, const Options& o, Resolver& R, Report& rep) {
    require(a.gerbe, "--gerbe");
    Gerbe X = R.gerbe(a.gerbe, a.group);
    IrreducibleOptions opt;
    opt.seed = o.seed;
    opt.tol = o.tol;
    auto irr = irreducible_bundles(X, opt);
    const int fd = flat_section_dim(transgress(X.cocycle));
    rep.add("count = flat sections", static_cast<int>(irr.size()) == fd, static_cast<int>(irr.size()), fd);
    CMatrix gram = character_gram(irr);
    double gres = irr.empty() ? 0.0 : (gram - CMatrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
    rep.below("character gram is identity", gres, 1e-6);
    bool valid = true;
    json dims = json::array(), bundles = json::array();
    for (const auto& E : irr) {
        valid &= validate_bundle(E, o.tol).pass;
        dims.push_back(E.dims());
        if (a.emit) bundles.push_back(io::to_json(E));
    }
    rep.add("irreducibles valid", valid);
    rep.result = json{{"count", irr.size()}, {"dims", dims}};
    if (a.emit) rep.result["bundles"] = bundles;
}

void cmd_bundle_character(const Args& a, const Options& o, Resolver&, Report& rep) {
    require(a.bundle, "--bundle");
    double tol = o.tol;
    TwistedBundle E = io::load_bundle(json(a.bundle), io::Context{}, &tol);
    BundleReport br = validate_bundle(E, tol);
    rep.add("bundle valid", br.pass, br.unitarity, br.functoriality);
    LoopSection s = twisted_character(E);
    rep.below("character is flat", flatness_residual(s, transgress(E.gerbe().cocycle)), tol);
    json vals = json::array();
    for (std::size_t k = 0; k < s.values.size(); ++k)
        vals.push_back(json{{"x", s.loop.objects[k][0]}, {"g", s.loop.objects[k][1]},
                            {"value", io::complex_json(s.values[k])}});
    rep.result = json{{"character", vals}, {"norm", io::complex_json(section_inner(s, s))}};
}

void cmd_hom_dim(const Args& a, const Options&, Resolver& R, Report& rep) {
    require(a.x, "--x");
    require(a.y, "--y");
    Gerbe X = R.gerbe(a.x, a.group), Y = R.gerbe(a.y, a.group);
    if (!same_group(X.group_ptr(), Y.group_ptr())) throw Error("--x and --y live over different groups");
    Rational d = hom_dimension(X, Y);
    const int flat = flat_section_dim(transgress(tensor(Y, X, true).cocycle));
    Rational dch = gbundle_hom_dimension(geometric_character(X), geometric_character(Y));
    rep.add("integral = flat sections", d == Rational(flat), rat(d), flat);
    rep.add("integral = character pairing", d == dch, rat(d), rat(dch));
    rep.result = json{{"dim", rat(d)}};
}

void cmd_double_simples(const Args& a, const Options& o, Resolver& R, Report& rep) {
    require(a.group, "--group");
    GroupPtr G = R.group(a.group);
    double_group_checks(rep, "", G, o.seed, o.tol);
    auto S = simples(G, o.seed);
    rep.result = json{{"count", S.size()}, {"simples", simples_json(S, *G)}};
}

void cmd_double_fuse(const Args& a, const Options& o, Resolver& R, Report& rep) {
    require(a.group, "--group");
    GroupPtr G = R.group(a.group);
    auto S = simples(G, o.seed);
    const int r = static_cast<int>(S.size());
    auto dim = [&](int k) { return static_cast<long long>(S[k].object.total_dim()); };
    if (a.i >= 0 || a.j >= 0) {
        if (a.i < 0 || a.j < 0 || a.i >= r || a.j >= r) throw Error("--i and --j must both be simple indices");
        auto m = decompose(fuse(S[a.i].object, S[a.j].object), S);
        long long total = 0;
        bool nonneg = true;
        for (int k = 0; k < r; ++k) {
            total += m[k] * dim(k);
            nonneg &= m[k] >= 0;
        }
        rep.add("nonnegative integers", nonneg);
        rep.add("dimensions multiply", total == dim(a.i) * dim(a.j), total, dim(a.i) * dim(a.j));
        rep.result = json{{"i", a.i}, {"j", a.j}, {"multiplicities", m}};
        return;
    }
    auto N = fusion_table(S);
    bool nonneg = true, dims_ok = true, comm = true, unit = true;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            long long total = 0;
            for (int k = 0; k < r; ++k) {
                nonneg &= N[i][j][k] >= 0;
                total += N[i][j][k] * dim(k);
                comm &= N[i][j][k] == N[j][i][k];
            }
            dims_ok &= total == dim(i) * dim(j);
            if (i == 0)
                for (int k = 0; k < r; ++k) unit &= N[0][j][k] == (j == k);
        }
    rep.add("nonnegative integers", nonneg);
    rep.add("dimensions multiply", dims_ok);
    rep.add("commutative", comm);
    rep.add("unit row", unit);
    rep.result = json{{"table", N}};
}

void cmd_double_braid(const Args& a, const Options& o, Resolver& R, Report& rep) {
    require(a.group, "--group");
    GroupPtr G = R.group(a.group);
    auto S = simples(G, o.seed);
    std::mt19937_64 rng(o.seed);
    BraidReport worst;
    for (int t = 0; t < a.trials; ++t) {
        GBundleOverG U = random_object(S, rng), V = random_object(S, rng), W = random_object(S, rng);
        BraidReport b = braid_checks(U, V, W);
        worst.yang_baxter = std::max(worst.yang_baxter, b.yang_baxter);
        worst.hexagon_left = std::max(worst.hexagon_left, b.hexagon_left);
        worst.hexagon_right = std::max(worst.hexagon_right, b.hexagon_right);
        worst.equivariance = std::max(worst.equivariance, b.equivariance);
        worst.unitarity = std::max(worst.unitarity, b.unitarity);
    }
    rep.below("yang-baxter", worst.yang_baxter, o.tol);
    rep.below("hexagon left", worst.hexagon_left, o.tol);
    rep.below("hexagon right", worst.hexagon_right, o.tol);
    rep.below("braid equivariant", worst.equivariance, o.tol);
    rep.below("braid unitary", worst.unitarity, o.tol);
    rep.result = json{{"trials", a.trials}};
}

void cmd_double_center(const Args& a, const Options& o, Resolver& R, Report& rep) {
    require(a.group, "--group");
    GroupPtr G = R.group(a.group);
    center_checks(rep, "", G, o.seed, o.tol);
    rep.result = json{{"class_count", analyze(*G).classes.size()}};
}

void cmd_double_dim(const Args& a, const Options& o, Resolver& R, Report& rep) {
    require(a.group, "--group");
    GroupPtr G = R.group(a.group);
    std::vector<std::pair<std::string, Gerbe>> gerbes;
    try {
        for (const auto& g : R.catalog().gerbes_over(a.group)) gerbes.emplace_back(g.name, g.gerbe);
    } catch (const Error&) {
    }
    if (gerbes.empty()) gerbes = {{"trivial-pt", trivial_gerbe(point_gset(G))}, {"regular", regular_gerbe(G)}};
    G = gerbes.front().second.group_ptr();
    auto S = simples(G, o.seed);
    const int n = G->order();
    bool valid = true;
    double restriction = 0, naturality = 0, composition = 0, coherence = 0, braid = 0;
    bool dims_equal = true;
    int morphisms = 0;
    Gerbe reg = regular_gerbe(G);
    for (int s = 0; s < a.instances; ++s) {
        std::mt19937_64 rng(o.seed + static_cast<std::uint64_t>(s));
        GBundleOverG T = random_object(S, rng), U = random_object(S, rng);
        for (const auto& [name, X] : gerbes) valid &= validate_bundle(extend_transformation(T, X), o.tol).pass;
        TwistedBundle E = extend_transformation(T, reg);
        for (int g = 0; g < n; ++g)
            for (int h = 0; h < n; ++h) {
                const CMatrix& m = E.map(h, g * n);
                const CMatrix& t = T.act(h, g);
                if (m.rows() != t.rows() || m.cols() != t.cols()) restriction = INFINITY;
                else if (m.size()) restriction = std::max(restriction, (m - t).cwiseAbs().maxCoeff());
            }
        for (const auto& [nx, X] : gerbes)
            for (const auto& [ny, Y] : gerbes) {
                if (X.size() * Y.size() * n > 64) continue;
                for (const auto& V : irreducible_bundles(tensor(Y, X, true))) {
                    naturality = std::max(naturality, naturality_residual(T, X, Y, V));
                    ++morphisms;
                }
            }
        FynReport f = fyn_check(T, U, o.tol);
        dims_equal &= f.dims_equal;
        composition = std::max(composition, f.composition_residual);
        coherence = std::max(coherence, f.coherence_residual);
        braid = std::max(braid, f.braid_residual);
    }
    rep.add("extensions valid", valid);
    rep.below("restriction over regular gerbe", restriction, o.tol);
    rep.below("naturality", naturality, o.tol);
    rep.add("fyn dims equal", dims_equal);
    rep.below("fyn composition", composition, o.tol);
    rep.below("fyn coherence", coherence, o.tol);
    rep.below("fyn braid", braid, o.tol);
    json names = json::array();
    for (const auto& [name, X] : gerbes) names.push_back(name);
    rep.result = json{{"gerbes", names}, {"instances", a.instances}, {"morphisms", morphisms}};
}

void ring_valid_check(Report& rep, const FusionRing& R) {
    RingCheck rc = validate_fusion_ring(R);
    rep.add("fusion ring axioms", rc.pass, rc.axiom.empty() ? json(nullptr) : json(rc.axiom)).witness =
        witness_json(rc.witness);
    if (!rc.pass) throw Error("invalid fusion ring: " + rc.axiom, rc.witness);
}

void cmd_pivotal_hpiv(const Args& a, const Options&, Resolver&, Report& rep) {
    FusionRing R = load_ring_arg(a);
    ring_valid_check(rep, R);
    HPivClass h = pivotal_cohomology(R);
    rep.add("order = 2^rank", h.order == (1LL << h.rank), h.order, 1LL << h.rank);
    rep.result = json{{"ring", R.name}, {"order", h.order}, {"rank", h.rank}, {"free_orbits", h.free_orbits},
                      {"generators", h.generators}};
}

void cmd_pivotal_solve(const Args& a, const Options&, Resolver&, Report& rep) {
    FusionRing R = load_ring_arg(a);
    ring_valid_check(rep, R);
    PivotalSymbols eps = a.eps.empty() ? trivial_symbols(R) : io::load_symbols(io::read_file(a.eps), R);
    SymbolClass cls = symbol_class(R, eps);
    TwistedSolution sol = solve_twisted(R, eps, a.spherical);
    if (sol.exists) {
        bool ok = true;
        std::vector<int> bad;
        for (int i = 0; i < R.rank && ok; ++i)
            for (int j = 0; j < R.rank && ok; ++j)
                for (int k = 0; k < R.rank && ok; ++k) {
                    if (!R.n(i, j, k)) continue;
                    Phase lhs = Phase(sol.phases[j]) + Phase(sol.phases[k]);
                    Phase rhs = Phase(sol.phases[i]) + Phase(eps.at(i, j, k) < 0 ? Rational(1, 2) : Rational(0));
                    if (lhs != rhs) {
                        ok = false;
                        bad = {i, j, k};
                    }
                }
        rep.add("solution satisfies the equations", ok).witness = witness_json(bad);
    }
    if (a.spherical) rep.add("trivial class iff solvable", cls.trivial == sol.exists, cls.trivial, sol.exists);
    rep.result = json{{"class", cls.coords},     {"trivial_class", cls.trivial}, {"exists", sol.exists},
                      {"phases", phases_json(sol.phases)}, {"torsor_size", sol.torsor_size},
                      {"unit_and_duals", sol.unit_and_duals}, {"spherical", a.spherical}};
}

void cmd_pivotal_fpdim(const Args& a, const Options& o, Resolver&, Report& rep) {
    FusionRing R = load_ring_arg(a);
    ring_valid_check(rep, R);
    FPDimensions fp = frobenius_perron(R);
    rep.below("dimensions form a character", fp.homomorphism_residual, o.tol);
    rep.result = json{{"d", fp.d}, {"iterations", fp.iterations}};
}

void cmd_pivotal_dagger(const Args& a, const Options& o, Resolver&, Report& rep) {
    auto kA = parse_doubles(a.weights_a), kB = parse_doubles(a.weights_b);
    for (double k : kA)
        if (!(k > 0)) throw Error("weights must be positive");
    for (double k : kB)
        if (!(k > 0)) throw Error("weights must be positive");
    if (kA.empty() || kB.empty()) throw Error("weights must be non-empty");
    double worst = 0, best = INFINITY;
    for (int s = 0; s < a.instances; ++s) {
        double r = semisimple_dagger_check(kA, kB, o.seed + static_cast<std::uint64_t>(s), a.perturb);
        worst = std::max(worst, r);
        best = std::min(best, r);
    }
    if (a.perturb == 1.0) {
        rep.below("left dagger = right dagger", worst, o.tol);
    } else {
        rep.add("perturbed weights break the dagger", best > 1e-3, best, 1e-3);
    }
    rep.result = json{{"max_residual", worst}, {"min_residual", best}, {"instances", a.instances}};
}

void cmd_extract(const Args& a, const Options& o, Resolver& R, Report& rep) {
    ExtensionData ext;
    if (!a.extension.empty()) {
        ext = io::load_extension(json(a.extension), io::Context{});
    } else {
        require(a.group, "--group");
        require(a.normal, "--normal");
        GroupPtr E = R.group(a.group);
        auto K = parse_ints(a.normal);
        for (int k : K)
            if (k < 0 || k >= E->order()) throw Error("--normal element out of range");
        std::sort(K.begin(), K.end());
        K.erase(std::unique(K.begin(), K.end()), K.end());
        ext = make_extension(E, K);
    }
    if (a.alternate) ext = make_extension(ext.E, ext.K, alternate_section(ext));
    rep.result = extraction_checks(rep, "", ext, o.tol, o.seed);
    rep.result["section"] = ext.section;
}

void cmd_tqft(const Args& a, const Options& o, Resolver& R, Report& rep) {
    if (a.degree != 1 && a.degree != 2) throw Error("--degree must be 1 or 2");
    Cochain omega;
    if (!a.cocycle.empty()) {
        omega = R.cochain(a.cocycle, a.group);
        if (omega.degree() == 2 && a.degree == 1) omega = transgress(omega);
        if (omega.degree() != a.degree) throw Error("cocycle degree does not match --degree");
    } else {
        require(a.group, "--group");
        GroupPtr G = R.group(a.group);
        omega = a.degree == 2 ? Cochain(2, point_gset(G)) : Cochain(1, torus_fields(G, 1).space);
    }
    crossing_checks(rep, "", omega.carrier(), omega, o.seed);
    CrossingReport r = verify_crossing(omega.carrier(), omega);
    rep.result = json{{"degree", r.degree},
                      {"flat_dim", r.flat_dim},
                      {"integral", to_string(r.integral)},
                      {"component_count", r.component_count},
                      {"irreducible_count", r.irreducible_count}};
}

void cmd_catalog_run_all(const Args& a, const Options& o, Resolver& R, Report& rep) {
    const Catalog& cat = R.catalog();
    std::vector<std::string> groups;
    for (const auto& [name, G] : cat.groups)
        if (a.group.empty() || name == a.group) groups.push_back(name);
    if (groups.empty()) throw Error("catalog has no group '" + a.group + "'");
    json summary = json::array();
    for (const auto& gname : groups) {
        GroupPtr G = cat.group(gname);
        auto entries = cat.gerbes_over(gname);
        std::vector<Gerbe> gerbes;
        json names = json::array();
        for (const auto& e : entries) {
            const std::string tag = e.name + ": ";
            const Gerbe& X = e.gerbe;
            flat_section_checks(rep, tag, X, o.seed, X.size() * G->order() <= 64);
            character_checks(rep, tag, X, o.tol);
            crossing_checks(rep, tag, X.space, X.cocycle, o.seed);
            crossing_checks(rep, tag, loop_of(X.space).space, transgress(X.cocycle), o.seed);
            auto w = isometric_equivalent(X, X);
            rep.add(tag + "self-equivalence", w && verify_equivalence(X, X, *w));
            cohomology_checks(rep, tag + "vs trivial: ", Cochain(2, X.space), X.cocycle);
            gerbes.push_back(X);
            names.push_back(e.name);
        }
        auto ff = verify_fully_faithful(gerbes);
        int passed = 0;
        json failures = json::array();
        for (const auto& f : ff) {
            passed += f.pass;
            if (!f.pass) failures.push_back({entries[f.x].name, entries[f.y].name});
        }
        rep.add(gname + ": fully faithful", passed == static_cast<int>(ff.size()), passed, ff.size()).witness =
            failures.empty() ? json(nullptr) : failures;
        for (const auto& ex : cat.extensions)
            if (ex.group == gname) extraction_checks(rep, ex.name + ": ", ex.ext, o.tol, o.seed);
        double_group_checks(rep, gname + ": ", G, o.seed, o.tol);
        center_checks(rep, gname + ": ", G, o.seed, o.tol);
        summary.push_back(json{{"group", gname}, {"gerbes", names}});
    }
    int failed = 0;
    for (const auto& c : rep.checks) failed += !c.pass;
    rep.result = json{{"groups", summary}, {"checks", rep.checks.size()}, {"failed", failed}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gerbecat: finite equivariant gerbes, twisted bundles, the fusion double and pivotal solvers"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    Args args;
    app.add_option("--seed", opt.seed, "seed for all randomness")->capture_default_str();
    app.add_option("--tol", opt.tol, "numeric tolerance")->capture_default_str();
    app.add_option("--format", opt.format, "output format")->check(CLI::IsMember({"json", "tsv"}))->capture_default_str();
    app.add_option("--catalog", opt.catalog, "catalog directory (overrides GERBECAT_CATALOG)");

    using Fn = std::function<void(const Args&, const Options&, Resolver&, Report&)>;
    Fn chosen;
    std::string command;
    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, Fn fn) {
        CLI::App* sub = parent->add_subcommand(name, help);
        sub->fallthrough();
        std::string full = parent == &app ? name : parent->get_name() + " " + name;
        sub->callback([&chosen, &command, fn, full] {
            chosen = fn;
            command = full;
        });
        return sub;
    };
    auto node = [&](const std::string& name, const std::string& help) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->require_subcommand(1);
        sub->fallthrough();
        return sub;
    };

    auto* group = node("group", "finite groups");
    leaf(group, "info", "classes, center and commuting counts", cmd_group_info)
        ->add_option("--group", args.group, "group name or group.json")->required();

    auto* gset = node("gset", "finite G-sets");
    auto* gi = leaf(gset, "info", "orbits and stabilizers", cmd_gset_info);
    gi->add_option("--gset", args.gset, "gset.json");
    gi->add_option("--group", args.group, "group for --builtin");
    gi->add_option("--builtin", args.builtin, "point, regular, coset or conjugation");
    gi->add_option("--subgroup", args.subgroup, "comma-separated subgroup for coset");

    auto* coc = node("cocycle", "groupoid cochains");
    auto* cc = leaf(coc, "check", "cocycle condition", cmd_cocycle_check);
    cc->add_option("--cocycle", args.cocycle, "cocycle.json or catalog gerbe")->required();
    cc->add_option("--group", args.group, "catalog group for short names");
    auto* ct = leaf(coc, "transgress", "transgression to the loop groupoid", cmd_cocycle_transgress);
    ct->add_option("--cocycle", args.cocycle, "cocycle.json or catalog gerbe")->required();
    ct->add_option("--group", args.group, "catalog group for short names");
    auto* ch = leaf(coc, "cohomologous", "decide b - a = d gamma", cmd_cocycle_cohomologous);
    ch->add_option("--a", args.a, "first cocycle")->required();
    ch->add_option("--b", args.b, "second cocycle")->required();
    ch->add_option("--group", args.group, "catalog group for short names");

    auto* ger = node("gerbe", "equivariant gerbes");
    auto* gm = leaf(ger, "make", "validate and normalize a gerbe", cmd_gerbe_make);
    gm->add_option("--gerbe", args.gerbe, "gerbe.json or catalog name");
    gm->add_option("--gset", args.gset, "gset.json");
    gm->add_option("--group", args.group, "group for --builtin or catalog names");
    gm->add_option("--builtin", args.builtin, "point, regular, coset or conjugation");
    gm->add_option("--subgroup", args.subgroup, "subgroup for coset");
    gm->add_option("--cocycle", args.cocycle, "cocycle.json");
    gm->add_option("--metric", args.metric, "comma-separated weights");
    auto* ge = leaf(ger, "equiv", "isometric equivalence with witness", cmd_gerbe_equiv);
    ge->add_option("--x", args.x)->required();
    ge->add_option("--y", args.y)->required();
    ge->add_option("--group", args.group);
    auto* gc = leaf(ger, "char", "geometric character", cmd_gerbe_char);
    gc->add_option("--gerbe", args.gerbe)->required();
    gc->add_option("--group", args.group);
    gc->add_flag("--emit", args.emit, "include the bundle");

    auto* bun = node("bundle", "twisted bundles");
    leaf(bun, "validate", "unitarity and twisted functoriality", cmd_bundle_validate)
        ->add_option("--bundle", args.bundle, "bundle.json")->required();
    auto* bi = leaf(bun, "irreducibles", "irreducible twisted bundles", cmd_bundle_irreducibles);
    bi->add_option("--gerbe", args.gerbe)->required();
    bi->add_option("--group", args.group);
    bi->add_flag("--emit", args.emit, "include the bundles");
    leaf(bun, "character", "twisted character as a flat section", cmd_bundle_character)
        ->add_option("--bundle", args.bundle, "bundle.json")->required();

    auto* hom = node("hom", "morphism categories");
    auto* hd = leaf(hom, "dim", "dimension of Hom(X, Y)", cmd_hom_dim);
    hd->add_option("--x", args.x)->required();
    hd->add_option("--y", args.y)->required();
    hd->add_option("--group", args.group);

    auto* dbl = node("double", "conjugation-equivariant bundles over G");
    leaf(dbl, "simples", "simple objects", cmd_double_simples)->add_option("--group", args.group)->required();
    auto* df = leaf(dbl, "fuse", "fusion multiplicities", cmd_double_fuse);
    df->add_option("--group", args.group)->required();
    df->add_option("--i", args.i, "first simple");
    df->add_option("--j", args.j, "second simple");
    auto* db = leaf(dbl, "braid-check", "Yang-Baxter and hexagons", cmd_double_braid);
    db->add_option("--group", args.group)->required();
    db->add_option("--trials", args.trials)->capture_default_str();
    leaf(dbl, "center-check", "decategorified center", cmd_double_center)->add_option("--group", args.group)->required();
    auto* dd = leaf(dbl, "dim-check", "extension, naturality and composition", cmd_double_dim);
    dd->add_option("--group", args.group)->required();
    dd->add_option("--instances", args.instances)->capture_default_str();

    auto* piv = node("pivotal", "pivotal symbols on fusion rings");
    auto ring_opts = [&](CLI::App* s) {
        s->add_option("--builtin", args.builtin, "A1, yanglee-printed, B<n>, TY<n> or Z<n>");
        s->add_option("--ring", args.ring, "fusion_ring.json or builtin name");
    };
    ring_opts(leaf(piv, "hpiv", "pivotal cohomology group", cmd_pivotal_hpiv));
    auto* ps = leaf(piv, "solve", "solve the twisted equations", cmd_pivotal_solve);
    ring_opts(ps);
    ps->add_option("--eps", args.eps, "pivotal.json");
    ps->add_flag("--spherical", args.spherical, "solve over +1/-1");
    ring_opts(leaf(piv, "fpdim", "Frobenius-Perron dimensions", cmd_pivotal_fpdim));
    auto* pd = leaf(piv, "dagger-check", "left and right daggers agree", cmd_pivotal_dagger);
    pd->add_option("--weights-a", args.weights_a)->capture_default_str();
    pd->add_option("--weights-b", args.weights_b)->capture_default_str();
    pd->add_option("--perturb", args.perturb, "scale on the second functor's weights")->capture_default_str();
    pd->add_option("--instances", args.instances)->capture_default_str();

    auto* ext = node("extract", "gerbes from group extensions");
    auto* eg = leaf(ext, "gerbe", "extract the gerbe over Irr(K)", cmd_extract);
    eg->add_option("--extension", args.extension, "extension.json");
    eg->add_option("--group", args.group, "E");
    eg->add_option("--normal", args.normal, "comma-separated K");
    eg->add_flag("--alternate", args.alternate, "use the alternate section");

    auto* tq = node("tqft", "torus fields");
    auto* tc = leaf(tq, "circle-check", "crossing with the circle", cmd_tqft);
    tc->add_option("--group", args.group);
    tc->add_option("--cocycle", args.cocycle, "cocycle.json or catalog gerbe");
    tc->add_option("--degree", args.degree)->capture_default_str();

    auto* catn = node("catalog", "the bundled catalog");
    leaf(catn, "run-all", "every check on every catalog entry", cmd_catalog_run_all)->add_option("--group", args.group);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    Report rep;
    try {
        Resolver R(opt);
        chosen(args, opt, R, rep);
    } catch (const Error& e) {
        std::cerr << "gerbecat: " << e.what();
        if (!e.witness().empty()) {
            std::cerr << " (witness";
            for (int w : e.witness()) std::cerr << ' ' << w;
            std::cerr << ')';
        }
        std::cerr << '\n';
        return 2;
    } catch (const io::json::exception& e) {
        std::cerr << "gerbecat: malformed input: " << e.what() << '\n';
        return 2;
    } catch (const InternalError& e) {
        std::cerr << "gerbecat: internal disagreement: " << e.what() << '\n';
        return 1;
    }
    std::cout << emit(command, rep, opt.format);
    return rep.pass() ? 0 : 1;
}

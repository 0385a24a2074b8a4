#include "gerbecat/catalog.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>

using namespace gerbecat;
using io::json;

namespace {

io::Context ctx() { return io::Context{}; }

// exact comparison of two bundles' data
bool same_bundle(const TwistedBundle& A, const TwistedBundle& B) {
    if (A.dims() != B.dims()) return false;
    const int n = A.gerbe().group().order();
    for (int x = 0; x < A.gerbe().size(); ++x)
        for (int g = 0; g < n; ++g)
            if (A.map(g, x).size() && (A.map(g, x) - B.map(g, x)).cwiseAbs().maxCoeff() > 1e-12) return false;
    return true;
}

}  // namespace

TEST(IO, GroupNames) {
    EXPECT_TRUE(io::group_by_name("Z4")->same_table(*cyclic_group(4)));
    EXPECT_TRUE(io::group_by_name("C4")->same_table(*cyclic_group(4)));
    auto D4 = io::group_by_name("D4");
    EXPECT_EQ(D4->order(), 8);
    EXPECT_EQ(D4->name(), "D4");
    EXPECT_TRUE(D4->same_table(*dihedral_group(8)));
    EXPECT_TRUE(io::group_by_name("Z2xZ2")->same_table(*direct_product(cyclic_group(2), cyclic_group(2))));
    EXPECT_TRUE(io::group_by_name("S3")->same_table(*symmetric_group(3)));
    EXPECT_TRUE(io::group_by_name("Q8")->same_table(*quaternion_group()));
    for (const char* bad : {"", "Z", "Z0", "S9", "Q9", "Zx", "D1", "X3"}) EXPECT_THROW(io::group_by_name(bad), Error) << bad;
}

TEST(IO, GroupObjects) {
    json table = {{"order", 2}, {"mult", {{0, 1}, {1, 0}}}, {"name", "two"}};
    auto G = io::load_group(table, ctx());
    EXPECT_EQ(G->name(), "two");
    EXPECT_TRUE(G->same_table(*cyclic_group(2)));
    EXPECT_THROW(io::load_group(json{{"mult", {{0, 1}, {1, 1}}}}, ctx()), Error);
    EXPECT_THROW(io::load_group(json{{"order", 3}, {"mult", {{0, 1}, {1, 0}}}}, ctx()), Error);
    json prod = {{"builtin", "product"}, {"params", {"S3", {{"builtin", "cyclic"}, {"params", {2}}}}}};
    auto P = io::load_group(prod, ctx());
    EXPECT_EQ(P->order(), 12);
    EXPECT_EQ(P->name(), "S3xZ2");
    EXPECT_TRUE(io::load_group(json{{"builtin", "dihedral"}, {"params", {3}}}, ctx())->same_table(*dihedral_group(6)));
    EXPECT_THROW(io::load_group(json{{"builtin", "cyclic"}}, ctx()), Error);
    EXPECT_THROW(io::load_group(json{{"builtin", "moonshine"}, {"params", {1}}}, ctx()), Error);
    // serialised tables load back unchanged
    auto Q = quaternion_group();
    EXPECT_TRUE(io::load_group(io::to_json(*Q), ctx())->same_table(*Q));
}

TEST(IO, GSetBuiltinsAndRoundTrip) {
    auto S3 = symmetric_group(3);
    json coset = {{"builtin", "coset"}, {"group", "S3"}, {"subgroup", {4, 0, 3}}};
    GSet X = io::load_gset(coset, ctx());
    EXPECT_TRUE(X.same_action(coset_gset(S3, {0, 3, 4})));
    json uni = {{"builtin", "union"}, {"parts", {{{"builtin", "point"}, {"group", "S3"}}, coset}}};
    EXPECT_EQ(io::load_gset(uni, ctx()).size(), 3);
    json prod = {{"builtin", "product"}, {"factors", {coset, coset}}};
    EXPECT_EQ(io::load_gset(prod, ctx()).orbits().size(), 2u);
    EXPECT_TRUE(io::load_gset(io::to_json(X), ctx()).same_action(X));
    EXPECT_THROW(io::load_gset(json{{"builtin", "coset"}, {"group", "S3"}, {"subgroup", {0, 1, 3}}}, ctx()), Error);
    EXPECT_THROW(io::load_gset(json{{"builtin", "coset"}, {"group", "S3"}, {"subgroup", {0, 7}}}, ctx()), Error);
    EXPECT_THROW(io::load_gset(json{{"group", "Z2"}, {"size", 2}, {"act", {{0, 1}, {0, 0}}}}, ctx()), Error);
}

TEST(IO, CochainsAndGerbes) {
    auto K = io::group_by_name("Z2xZ2");
    GSet pt = point_gset(K);
    Cochain c(2, pt);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) c.at(0, a, b) = Phase((a >> 1) * (b & 1), 2);
    Gerbe X = make_gerbe(pt, c, {Rational(1, 3)});
    json j = io::to_json(X);
    EXPECT_EQ(j["metric"][0], "1/3");
    EXPECT_EQ(j["cocycle"]["entries"][6], "0");
    EXPECT_EQ(j["cocycle"]["entries"][9], "1/2");
    Gerbe Y = io::load_gerbe(j, ctx());
    EXPECT_TRUE(Y.cocycle == X.cocycle);
    EXPECT_EQ(Y.metric, X.metric);
    EXPECT_TRUE(io::load_cochain(io::to_json(c), ctx()) == c);

    json bad = j;
    bad["cocycle"]["entries"].erase(0);
    EXPECT_THROW(io::load_gerbe(bad, ctx()), Error);
    bad = j;
    bad["cocycle"]["entries"][5] = "1/3";  // c(1,1) breaks the cocycle condition
    EXPECT_THROW(io::load_gerbe(bad, ctx()), Error);
    bad = j;
    bad["metric"] = {"-1"};
    EXPECT_THROW(io::load_gerbe(bad, ctx()), Error);
    bad = j;
    bad["metric"] = {"1/0"};
    EXPECT_THROW(io::load_gerbe(bad, ctx()), Error);
    // missing cocycle and metric mean zero and unit
    Gerbe T = io::load_gerbe(json{{"gset", {{"builtin", "regular"}, {"group", "S3"}}}}, ctx());
    EXPECT_TRUE(T.cocycle.is_zero());
    EXPECT_EQ(T.metric, std::vector<Rational>(6, Rational(1)));
}

TEST(IO, BundlesRoundTrip) {
    Gerbe X = regular_gerbe(symmetric_group(3));
    auto irr = irreducible_bundles(trivial_gerbe(coset_gset(symmetric_group(3), {0, 1})));
    ASSERT_FALSE(irr.empty());
    for (const auto& E : irr) {
        double tol = 0;
        TwistedBundle F = io::load_bundle(io::to_json(E), ctx(), &tol);
        EXPECT_TRUE(same_bundle(E, F));
        EXPECT_EQ(tol, kDefaultTol);
        EXPECT_TRUE(validate_bundle(F).pass);
    }
    json j = io::to_json(trivial_line_bundle(X));
    j["maps"].erase("0,1");
    EXPECT_THROW(io::load_bundle(j, ctx()), Error);
    j = io::to_json(trivial_line_bundle(X));
    j["maps"]["0,1"] = json::array({json::array({json::array({1, 0}), json::array({0, 0})})});
    EXPECT_THROW(io::load_bundle(j, ctx()), Error);
    j = io::to_json(trivial_line_bundle(X));
    j["maps"]["0;1"] = j["maps"]["0,1"];
    EXPECT_THROW(io::load_bundle(j, ctx()), Error);

    auto S = simples(quaternion_group());
    for (const auto& s : S) {
        GBundleOverG V = io::load_fusion_object(io::to_json(s.object), ctx());
        EXPECT_EQ(V.dims, s.object.dims);
        EXPECT_TRUE(validate_gbundle(V).pass);
        EXPECT_EQ(gbundle_hom_dimension(V, V), Rational(1));
    }
}

TEST(IO, RingsSymbolsAndExtensions) {
    FusionRing B3 = b_ring(3);
    FusionRing R = io::load_ring(io::to_json(B3), ctx());
    EXPECT_EQ(R.N, B3.N);
    EXPECT_EQ(R.star, B3.star);
    EXPECT_EQ(io::load_ring(json{{"builtin", "B"}, {"params", {3}}}, ctx()).N, B3.N);
    EXPECT_THROW(io::load_ring(json{{"rank", 2}, {"unit", 1}, {"star", {0, 1}}, {"N", json::array()}}, ctx()), Error);

    PivotalSymbols eps = io::load_symbols(json{{"eps", {{2, 1, 1, -1}}}}, R);
    EXPECT_EQ(eps.at(2, 1, 1), -1);
    EXPECT_EQ(eps.at(1, 2, 2), 1);
    EXPECT_THROW(io::load_symbols(json{{"eps", {{1, 1, 1, -1}}}}, R), Error);
    EXPECT_THROW(io::load_symbols(json{{"eps", {{2, 1, 1, 2}}}}, R), Error);

    ExtensionData alt = io::load_extension(json{{"E", "Q8"}, {"K", {1, 0}}, {"section", "alternate"}}, ctx());
    EXPECT_EQ(alt.section, (std::vector<int>{0, 3, 5, 7}));
    EXPECT_THROW(io::load_extension(json{{"E", "S3"}, {"K", {0, 1}}}, ctx()), Error);
}

TEST(IO, RingNames) {
    EXPECT_EQ(ring_by_name("A1").N, yang_lee_ring().N);
    EXPECT_EQ(ring_by_name("B3").N, b_ring(3).N);
    EXPECT_EQ(ring_by_name("TY2").rank, 3);
    EXPECT_EQ(ring_by_name("Z4").rank, 4);
    for (const char* bad : {"B", "Bx", "TY", "Z0", "foo"}) EXPECT_THROW(ring_by_name(bad), Error) << bad;
}

TEST(IO, FilesResolveRelativeToTheirDirectory) {
    auto dir = std::filesystem::temp_directory_path() / "gerbecat_io_test";
    std::filesystem::create_directories(dir / "sub");
    std::ofstream(dir / "sub" / "group.json") << R"({"builtin": "symmetric", "params": [3]})";
    std::ofstream(dir / "sub" / "gset.json") << R"({"builtin": "coset", "group": "group.json", "subgroup": [0, 3, 4]})";
    std::ofstream(dir / "gerbe.json") << R"({"gset": "sub/gset.json", "metric": ["2", "2"]})";
    std::ofstream(dir / "broken.json") << R"({"gset": )";
    io::Context c;
    c.base = dir;
    Gerbe X = io::load_gerbe(json("gerbe.json"), c);
    EXPECT_EQ(X.size(), 2);
    EXPECT_EQ(X.metric[1], Rational(2));
    EXPECT_THROW(io::load_gerbe(json("broken.json"), c), Error);
    EXPECT_THROW(io::load_gerbe(json("missing.json"), c), Error);
    std::filesystem::remove_all(dir);
}

TEST(Catalog, ContentsAndInvariants) {
    Catalog cat = load_catalog();
    std::vector<std::string> names;
    for (const auto& [n, G] : cat.groups) names.push_back(n);
    EXPECT_EQ(names, (std::vector<std::string>{"Z4", "Z2xZ2", "S3", "D4", "Q8"}));
    EXPECT_GE(cat.gerbes.size(), 12u);
    for (const auto& name : {"Z2xZ2/schur-pt", "Z2xZ2/q8-center", "Z2xZ2/q8-center-alt", "S3/trivial-pt",
                             "S3/coset-A3", "D4/regular", "Q8/twisted-pt"})
        EXPECT_NE(cat.find(name), nullptr) << name;
    for (const auto& g : cat.gerbes) {
        EXPECT_TRUE(same_group(g.gerbe.group_ptr(), cat.group(g.group))) << g.name;
        EXPECT_EQ(g.gerbe.group().name(), g.group);
        EXPECT_FALSE(check_cocycle(g.gerbe.cocycle).has_value()) << g.name;
    }
    EXPECT_EQ(cat.extensions.size(), 2u);
    // the twisted points are coboundaries, the Schur point is not
    for (const auto& [n, G] : cat.groups) {
        const Gerbe& t = cat.find(n + "/twisted-pt")->gerbe;
        EXPECT_FALSE(t.cocycle.is_zero()) << n;
        EXPECT_TRUE(cohomologous(Cochain(2, t.space), t.cocycle).cohomologous) << n;
    }
    const Gerbe& schur = cat.find("Z2xZ2/schur-pt")->gerbe;
    EXPECT_FALSE(cohomologous(Cochain(2, schur.space), schur.cocycle).cohomologous);
    // extraction gerbes for the two sections are isometrically equivalent
    const Gerbe& e1 = cat.find("Z2xZ2/q8-center")->gerbe;
    const Gerbe& e2 = cat.find("Z2xZ2/q8-center-alt")->gerbe;
    auto w = isometric_equivalent(e1, e2);
    ASSERT_TRUE(w.has_value());
    EXPECT_TRUE(verify_equivalence(e1, e2, *w));
    EXPECT_EQ(e1.metric, (std::vector<Rational>{Rational(1, 2), Rational(1, 2)}));
    // named references resolve through the context
    io::Context c = cat.context();
    EXPECT_EQ(io::load_group(json("D4"), c), cat.group("D4"));
    EXPECT_TRUE(io::load_gerbe(json("S3/coset-A3"), c).cocycle == cat.find("S3/coset-A3")->gerbe.cocycle);
}

TEST(Catalog, EnvironmentOverride) {
    const char* old = std::getenv("GERBECAT_CATALOG");
    std::string saved = old ? old : "";
    setenv("GERBECAT_CATALOG", "/nonexistent/catalog", 1);
    EXPECT_EQ(default_catalog_path(), std::filesystem::path("/nonexistent/catalog"));
    EXPECT_THROW(load_catalog(), Error);
    if (old) setenv("GERBECAT_CATALOG", saved.c_str(), 1);
    else unsetenv("GERBECAT_CATALOG");
    EXPECT_NO_THROW(load_catalog());
}

TEST(GSet, SubGSetOfOrbit) {
    auto S3 = symmetric_group(3);
    GSet X = disjoint_union(point_gset(S3), coset_gset(S3, {0, 1}));
    GSet sub = sub_gset(X, {3, 1, 2});
    EXPECT_EQ(sub.size(), 3);
    for (int g = 0; g < 6; ++g)
        for (int i = 0; i < 3; ++i) {
            int pts[] = {3, 1, 2};
            EXPECT_EQ(pts[sub.act(g, i)], X.act(g, pts[i]));
        }
    EXPECT_THROW(sub_gset(X, {1, 2}), Error);
    EXPECT_THROW(sub_gset(X, {0, 0}), Error);
}

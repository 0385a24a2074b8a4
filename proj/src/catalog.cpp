#include "gerbecat/catalog.hpp"

#include <cstdlib>

#ifndef GERBECAT_DEFAULT_CATALOG
#define GERBECAT_DEFAULT_CATALOG "catalog"
#endif

namespace gerbecat {

namespace {

// Same gerbe data over the catalog's copy of the group.
Gerbe rehome(const Gerbe& X, const GroupPtr& G) {
    GSet space(G, X.space.table());
    return make_gerbe(space, Cochain(2, space, X.cocycle.entries()), X.metric);
}

}  // namespace

GroupPtr Catalog::group(const std::string& name) const {
    for (const auto& [n, G] : groups)
        if (n == name) return G;
    throw Error("catalog has no group '" + name + "'");
}

std::vector<CatalogGerbe> Catalog::gerbes_over(const std::string& group) const {
    std::vector<CatalogGerbe> out;
    for (const auto& g : gerbes)
        if (g.group == group) out.push_back(g);
    return out;
}

const CatalogGerbe* Catalog::find(const std::string& name) const {
    for (const auto& g : gerbes)
        if (g.name == name) return &g;
    return nullptr;
}

io::Context Catalog::context(std::filesystem::path base) const {
    io::Context ctx;
    ctx.base = std::move(base);
    for (const auto& [n, G] : groups) ctx.groups[n] = G;
    for (const auto& g : gerbes) ctx.gerbes[g.name] = g.gerbe;
    return ctx;
}

std::filesystem::path default_catalog_path() {
    if (const char* env = std::getenv("GERBECAT_CATALOG"); env && *env) return env;
    return GERBECAT_DEFAULT_CATALOG;
}

Catalog load_catalog(const std::filesystem::path& dir) {
    Catalog cat;
    cat.dir = dir;
    const io::json index = io::read_file(dir / "index.json");
    try {
        io::Context ctx;
        ctx.base = dir;
        for (const auto& e : index.at("groups")) {
            const std::string name = e.at("name").get<std::string>();
            GroupPtr G = io::load_group(e.at("group"), ctx);
            G = std::make_shared<FiniteGroup>(G->table(), name);
            cat.groups.emplace_back(name, G);
            ctx.groups[name] = G;
        }
        for (const auto& e : index.at("gerbes")) {
            const std::string group = e.at("group").get<std::string>();
            GroupPtr G = cat.group(group);
            Gerbe X = io::load_gerbe(e.at("gerbe"), ctx);
            if (!same_group(X.group_ptr(), G)) throw Error("catalog gerbe '" + e.at("name").get<std::string>() +
                                                           "' is not over " + group);
            cat.gerbes.push_back({group + "/" + e.at("name").get<std::string>(), group, rehome(X, G)});
        }
        for (const auto& e : index.value("extractions", io::json::array())) {
            const std::string group = e.at("group").get<std::string>();
            const std::string name = group + "/" + e.at("name").get<std::string>();
            GroupPtr G = cat.group(group);
            ExtensionData ext = io::load_extension(e.at("extension"), ctx);
            if (!same_group(ext.G, G)) throw Error("catalog extraction '" + name + "' has quotient other than " + group);
            Extraction ex = extract_gerbe(ext, irreducible_representations(subgroup_as_group(ext.E, ext.K)));
            cat.extensions.push_back({name, group, ext});
            cat.gerbes.push_back({name, group, rehome(ex.gerbe, G)});
        }
    } catch (const io::json::exception& e) {
        throw Error("catalog index: " + std::string(e.what()));
    }
    return cat;
}

}  // namespace gerbecat

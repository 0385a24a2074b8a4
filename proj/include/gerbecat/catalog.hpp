#pragma once

#include "gerbecat/io.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace gerbecat {

struct CatalogGerbe {
    std::string name;   ///< "<group>/<short name>"
    std::string group;
    Gerbe gerbe;
};

struct CatalogExtension {
    std::string name;
    std::string group;  ///< catalog name of the quotient
    ExtensionData ext;
};

/**
 * The bundled collection of named groups, gerbes and extensions, read from
 * <dir>/index.json. Extraction entries are materialised with seed 0.
 */
struct Catalog {
    std::filesystem::path dir;
    std::vector<std::pair<std::string, GroupPtr>> groups;  ///< index order
    std::vector<CatalogGerbe> gerbes;
    std::vector<CatalogExtension> extensions;

    GroupPtr group(const std::string& name) const;
    std::vector<CatalogGerbe> gerbes_over(const std::string& group) const;
    const CatalogGerbe* find(const std::string& name) const;
    /// Named groups and gerbes for reference resolution.
    io::Context context(std::filesystem::path base = ".") const;
};

/// $GERBECAT_CATALOG when set, otherwise the catalog shipped with the sources.
std::filesystem::path default_catalog_path();
Catalog load_catalog(const std::filesystem::path& dir = default_catalog_path());

}  // namespace gerbecat

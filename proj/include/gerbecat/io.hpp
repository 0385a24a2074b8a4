#pragma once

// JSON formats for groups, G-sets, cochains, gerbes, bundles, extensions,
// fusion rings and pivotal symbols. Rationals are "p/q" strings and complex
// numbers are [re, im] pairs. Parsing errors throw Error.

#include "gerbecat/double.hpp"
#include "gerbecat/extract.hpp"
#include "gerbecat/pivotal.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <string>

namespace gerbecat::io {

using json = nlohmann::json;

/**
 * Resolution context for references. A reference is either an inline
 * object or a string; strings name an entry of `groups` / `gerbes` when
 * present there and are otherwise read as paths relative to `base`.
 */
struct Context {
    std::filesystem::path base = ".";
    std::map<std::string, GroupPtr> groups;
    std::map<std::string, Gerbe> gerbes;
};

json read_file(const std::filesystem::path& p);

/// Z<n>, D<n> (order 2n), S<n>, Q8, and products joined by 'x', e.g. Z2xZ2.
GroupPtr group_by_name(const std::string& name);

GroupPtr load_group(const json& j, const Context& ctx);
GSet load_gset(const json& j, const Context& ctx);
/// `carrier` is used when the object has no "gset" field.
Cochain load_cochain(const json& j, const Context& ctx, const GSet* carrier = nullptr);
Gerbe load_gerbe(const json& j, const Context& ctx);
TwistedBundle load_bundle(const json& j, const Context& ctx, double* tol = nullptr);
GBundleOverG load_fusion_object(const json& j, const Context& ctx);
ExtensionData load_extension(const json& j, const Context& ctx);
FusionRing load_ring(const json& j, const Context& ctx);
/// Triples that are not listed get +1.
PivotalSymbols load_symbols(const json& j, const FusionRing& R);

json rational_json(const Rational& r);
Rational rational_from(const json& j);
/// [re, im], with entries below 1e-12 in magnitude written as 0.
json complex_json(const cplx& z);
json matrix_json(const CMatrix& m);
CMatrix matrix_from(const json& j, int rows, int cols);

json to_json(const FiniteGroup& G);
json to_json(const GSet& X);
json to_json(const Cochain& c);
json to_json(const Gerbe& X);
json to_json(const TwistedBundle& E);
json to_json(const GBundleOverG& V);
json to_json(const FusionRing& R);

}  // namespace gerbecat::io

#pragma once

#include "gerbecat/bundle.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace gerbecat {

/**
 * A group extension K -> E -> G = E/K with a set-theoretic section.
 * Cosets of K are numbered by their minimal element; coset 0 is K.
 */
struct ExtensionData {
    GroupPtr E;
    std::vector<int> K;          ///< sorted, normal
    GroupPtr G;                  ///< quotient, coset i at index i
    std::vector<int> coset_of;   ///< element of E -> coset index
    std::vector<int> section;    ///< coset index -> representative in E, section[0] = 0
};

/// Without a section the minimal element of each coset is used.
ExtensionData make_extension(GroupPtr E, std::vector<int> K, std::optional<std::vector<int>> section = std::nullopt);
/// The maximal element of each non-trivial coset.
std::vector<int> alternate_section(const ExtensionData& ext);

/// phi(g2, g1) = s(g2) s(g1) s(g2 g1)^-1, an element of K.
int extension_cocycle(const ExtensionData& ext, int g2, int g1);

/// Irreducible unitary representations of K, as matrices indexed by the
/// position of k in the sorted element list of K.
struct IrrSystem {
    std::vector<std::vector<CMatrix>> reps;
    std::vector<int> dims;
    std::vector<std::vector<cplx>> chars;
};

/// Numeric irreducibles of a group via the block split of its point gerbe.
IrrSystem irreducible_representations(const GroupPtr& K, std::uint64_t seed = 0);

/// G acting on Irr(K) by (g.rho)(k) = rho(s(g)^-1 k s(g)), matched by characters.
GSet action_on_irr(const ExtensionData& ext, const IrrSystem& irr);

struct Extraction {
    Gerbe gerbe;                          ///< over Irr(K), metric dim(rho)/|K|
    std::vector<std::vector<CMatrix>> u;  ///< u[g][i]: rho_{g.i} -> rho_i(s(g)^-1 . s(g))
    double intertwiner_residual = 0;
    double scalar_residual = 0;           ///< distance of the composite from a scalar
    double snap_error = 0;
};

/**
 * The extracted gerbe. Intertwiners come from Schur averaging of a seeded
 * random matrix; c_i(h, g) is the scalar
 *   rho_i(s(hg)^-1 phi(h,g) s(hg)) u(g,i) u(h,g.i) u(hg,i)^*
 * snapped to a rational of denominator at most 2|E|.
 */
Extraction extract_gerbe(const ExtensionData& ext, const IrrSystem& irr, std::uint64_t seed = 0);

}  // namespace gerbecat

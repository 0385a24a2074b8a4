#pragma once

#include "gerbecat/arith.hpp"
#include "gerbecat/bundle.hpp"

#include <optional>
#include <vector>

namespace gerbecat {

/**
 * Conjugation-equivariant bundle over G: a fiber V_g per group element and
 * unitaries V(h:g): V_g -> V_{h g h^-1} with V(h2 : h1 g h1^-1) V(h1:g) = V(h2 h1 : g).
 * When every V(h:g) is monomial the exact permutation and phases are kept
 * alongside the matrices.
 */
struct GBundleOverG {
    struct Monomial {
        std::vector<int> perm;      ///< basis i of V_g goes to basis perm[i] of V_{hgh^-1}
        std::vector<Phase> phase;   ///< with this phase
    };

    GroupPtr group;
    std::vector<int> dims;
    std::vector<CMatrix> maps;                     ///< index g*|G| + h
    std::optional<std::vector<Monomial>> monomial;  ///< same indexing

    int order() const { return group->order(); }
    const CMatrix& act(int h, int g) const { return maps[static_cast<std::size_t>(g) * order() + h]; }
    CMatrix& act(int h, int g) { return maps[static_cast<std::size_t>(g) * order() + h]; }
    int total_dim() const;
};

struct GBundleReport {
    double unitarity = 0;
    double functoriality = 0;
    bool pass = false;
    std::vector<int> witness;  ///< g, h1[, h2]
};

/// Checks shapes exactly and the unitarity/composition rules at tol.
GBundleReport validate_gbundle(const GBundleOverG& V, double tol = kDefaultTol);

/// Line at every g with trivial action.
GBundleOverG trivial_gbundle(const GroupPtr& G);
/// Blocks concatenated in argument order.
GBundleOverG direct_sum(const GBundleOverG& V, const GBundleOverG& W);

/**
 * Push-forward of the transgressed line bundle: the fiber at g has one
 * localized basis vector per fixed point of g (ascending), and
 * V(h:g) sends the vector at x to e(tau(c)(h <- (x,g))) times the vector at h.x.
 */
GBundleOverG geometric_character(const Gerbe& X);

/// chi(g,h) = Tr V(h:g) for commuting g,h; index g*|G|+h, zero elsewhere.
std::vector<cplx> double_character(const GBundleOverG& V);
/// Exact double character of a monomial bundle, as rational when possible.
CyclotomicValue double_character_exact(const GBundleOverG& V, int g, int h);

/// Identity morphism of X: a line on the diagonal of X x conj(X).
TwistedBundle identity_morphism(const Gerbe& X);
/// Line bundle on the graph of f realising an isometric equivalence X -> Y.
TwistedBundle equivalence_morphism(const Gerbe& X, const Gerbe& Y, const GerbeEquivalence& w);
/// F o E for E over Y x conj(X) and F over Z x conj(Y); the fiber at (z,x) is
/// the sum over y of F(z,y) (x) E(y,x), ordered by y.
TwistedBundle compose_morphisms(const TwistedBundle& F, const TwistedBundle& E, const Gerbe& X, const Gerbe& Y,
                                const Gerbe& Z);

struct MorphismCharacter {
    std::vector<CMatrix> mats;         ///< per g: |Fix_Y(g)| x |Fix_X(g)|
    double intertwining_residual = 0;  ///< against the actions of ch(X) and ch(Y)
};

/// Entry (y,x) of ch(E)_g is Tr E(g <- (y,x)), taken over simultaneous fixed points.
MorphismCharacter character_of_morphism(const TwistedBundle& E, const Gerbe& X, const Gerbe& Y);

/// Integral over the double loop groupoid of (Y x X)_G of tau^2(c_Y - c_X).
Rational hom_dimension(const Gerbe& X, const Gerbe& Y);

/// (1/|G|) sum over commuting (g,h) of conj(chi_V(g,h)) chi_W(g,h), exact for monomial bundles.
Rational gbundle_hom_dimension(const GBundleOverG& V, const GBundleOverG& W);

struct FaithfulnessEntry {
    int x = 0, y = 0;
    Rational lhs{0}, rhs{0};
    bool pass = false;
};
std::vector<FaithfulnessEntry> verify_fully_faithful(const std::vector<Gerbe>& gerbes);

struct NondistinguishPair {
    std::vector<int> left, right;  ///< multiplicities per transitive type
    int marks_witness = -1;        ///< index of a subgroup with different fixed-point counts
    bool no_bijection = false;     ///< exhaustive search found no equivariant bijection
};

struct NondistinguishResult {
    std::vector<std::vector<int>> types;  ///< subgroup representatives H of the transitive types G/H
    std::vector<NondistinguishPair> pairs;
};

/// Non-isomorphic G-sets of size at most max_size with identical double characters.
NondistinguishResult nondistinguish_search(const GroupPtr& G, int max_size);
/// G-set with the given multiplicities of transitive types.
GSet gset_from_types(const GroupPtr& G, const std::vector<std::vector<int>>& types, const std::vector<int>& mult);

}  // namespace gerbecat

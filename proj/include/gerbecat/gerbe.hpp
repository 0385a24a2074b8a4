#pragma once

#include "gerbecat/cochain.hpp"

#include <optional>
#include <vector>

namespace gerbecat {

/**
 * Finite equivariant gerbe with a metric: a G-set, the normalized 2-cocycle
 * of a chosen section, and a G-invariant positive weight k_x per point.
 */
struct Gerbe {
    GSet space;
    Cochain cocycle;
    std::vector<Rational> metric;

    const FiniteGroup& group() const { return space.group(); }
    const GroupPtr& group_ptr() const { return space.group_ptr(); }
    int size() const { return space.size(); }
};

/// Validates cocycle and metric; throws Error with a witness otherwise.
Gerbe make_gerbe(GSet space, Cochain cocycle, std::vector<Rational> metric);
/// Unit metric, zero cocycle.
Gerbe trivial_gerbe(const GSet& space);
/// Free G-set with zero cocycle and unit metric.
Gerbe regular_gerbe(const GroupPtr& G);

/// Y x X with diagonal action, cocycle c_Y +- c_X and product metric.
/// Point (y, x) has index y*|X| + x.
Gerbe tensor(const Gerbe& Y, const Gerbe& X, bool conjugate_second);

struct GerbeEquivalence {
    std::vector<int> map;  ///< equivariant bijection X -> Y
    Cochain gamma;         ///< d gamma = map^* c_Y - c_X
};

/// Equivariant bijections matching stabilizers and weights, orbit by orbit.
/// Calls `visit` for each; stops when it returns true.
void for_each_equivariant_bijection(const GSet& X, const GSet& Y, const std::vector<Rational>* kx,
                                    const std::vector<Rational>* ky,
                                    const std::function<bool(const std::vector<int>&)>& visit);

/// First isometric equivalence in canonical order, if any.
std::optional<GerbeEquivalence> isometric_equivalent(const Gerbe& X, const Gerbe& Y);

/// Checks a claimed equivalence independently of how it was found.
bool verify_equivalence(const Gerbe& X, const Gerbe& Y, const GerbeEquivalence& w);

}  // namespace gerbecat

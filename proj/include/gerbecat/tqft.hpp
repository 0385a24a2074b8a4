#pragma once

#include "gerbecat/bundle.hpp"

#include <vector>

namespace gerbecat {

/// Fields on the n-torus: commuting n-tuples under simultaneous conjugation.
struct FieldGroupoid {
    GSet space;
    std::vector<std::vector<int>> tuples;  ///< lexicographic order; point i is tuples[i]
    int n = 0;
};

/// n in {1,2,3}; |G| <= 24 when n = 3.
FieldGroupoid torus_fields(const GroupPtr& G, int n);

struct CrossingReport {
    int degree = 0;
    Rational integral{0};  ///< degree 1: integral of tau(omega) over the loop groupoid
    int flat_dim = 0;       ///< flat sections of omega (degree 1) or tau(omega) (degree 2)
    int component_count = 0;
    int irreducible_count = -1;  ///< degree 2: irreducible omega-twisted bundles
    bool pass = false;
};

/// Compares both sides of crossing with the circle, each computed two ways.
CrossingReport verify_crossing(const GSet& fields, const Cochain& omega);

/// Commuting n-tuples / |G|.
Rational torus_partition(const GroupPtr& G, int n = 3);

}  // namespace gerbecat

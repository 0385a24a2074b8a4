#pragma once

#include "gerbecat/arith.hpp"
#include "gerbecat/group.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace gerbecat {

/// Based ring with simple objects 0..rank-1, unit 0, duality `star`, and
/// structure constants N^i_{jk} = multiplicity of i in j k.
struct FusionRing {
    int rank = 0;
    std::vector<int> star;
    std::vector<int> N;  ///< index (i*rank + j)*rank + k
    std::string name;

    int n(int i, int j, int k) const { return N[(static_cast<std::size_t>(i) * rank + j) * rank + k]; }
    int& n(int i, int j, int k) { return N[(static_cast<std::size_t>(i) * rank + j) * rank + k]; }
};

FusionRing make_fusion_ring(int rank, std::vector<int> star, const std::vector<std::array<int, 4>>& entries,
                            std::string name = "");

struct RingCheck {
    bool pass = true;
    std::string axiom;        ///< first failing axiom
    std::vector<int> witness; ///< its indices
};

/// Scans unit, involution, duality, reciprocity and associativity exhaustively.
RingCheck validate_fusion_ring(const FusionRing& R);

/// Z[G]; element g is simple g.
FusionRing group_ring(const FiniteGroup& G);
/// 1 and X with X^2 = 1 + X.
FusionRing yang_lee_ring();
/// The relation X^2 = X as printed in the source; fails duality.
FusionRing yang_lee_printed_ring();
/// X_0..X_{n-1}, Y with Y^2 = (n-1)Y + sum X_i; Y is index n.
FusionRing b_ring(int n);
/// Z[A] + Z[Y] with Y^2 = sum over A; Y is index |A|. A must be abelian.
FusionRing tambara_yamagami_ring(const FiniteGroup& A);
/// Tensor product; (a,b) has index a*|S|+b.
FusionRing ring_product(const FusionRing& R, const FusionRing& S);
/// Relabels non-unit simples: old index i becomes perm[i]; perm[0] must be 0.
FusionRing relabel(const FusionRing& R, const std::vector<int>& perm);
/// family in {yanglee, yanglee-printed, B, TY, group}; params as the family needs.
FusionRing builtin_ring(const std::string& family, const std::vector<int>& params);
/// Short names: A1 (or YL), yanglee-printed, B<n>, TY<n> over Z/n, Z<n> for Z[Z/n].
FusionRing ring_by_name(const std::string& name);

/// A sign per admissible triple (N^i_{jk} > 0); 0 elsewhere.
struct PivotalSymbols {
    int rank = 0;
    std::vector<int> sign;  ///< same indexing as FusionRing::N
    int at(int i, int j, int k) const { return sign[(static_cast<std::size_t>(i) * rank + j) * rank + k]; }
    int& at(int i, int j, int k) { return sign[(static_cast<std::size_t>(i) * rank + j) * rank + k]; }
};

PivotalSymbols trivial_symbols(const FusionRing& R);
/// eps'^i_{jk} = f_i f_j f_k eps^i_{jk}; f needs f_0 = 1 and f_i = f_{i*}.
PivotalSymbols twist_symbols(const FusionRing& R, const PivotalSymbols& eps, const std::vector<int>& f);

/// Orbits of admissible triples under (i,j,k) -> (k*, i*, j) and (i,j,k) -> (i*, k*, j*).
struct TripleOrbits {
    std::vector<std::array<int, 3>> reps;  ///< lexicographically least member
    std::vector<int> orbit_of;             ///< per triple index, -1 when not admissible
    std::vector<char> forced;              ///< contains eps^0_{i i*}, so the sign is +1
};
TripleOrbits triple_orbits(const FusionRing& R);

struct HPivClass {
    int rank = 0;                               ///< H_piv = (Z/2)^rank
    long long order = 1;
    int free_orbits = 0;
    std::vector<std::array<int, 3>> generators;  ///< orbit representatives spanning a complement of the twists
};
HPivClass pivotal_cohomology(const FusionRing& R);

struct SymbolClass {
    std::vector<std::uint8_t> coords;  ///< coordinates on HPivClass::generators
    bool trivial = true;
};
/// Throws Error with the offending triple when eps violates the symmetries.
SymbolClass symbol_class(const FusionRing& R, const PivotalSymbols& eps);

struct TwistedSolution {
    bool exists = false;
    std::vector<Rational> phases;  ///< t_i = e(phases[i])
    long long torsor_size = 0;     ///< number of solutions, -1 if infinite
    bool unit_and_duals = false;   ///< t_0 = 1 and t_{i*} t_i = 1 on the returned solution
};
/// t_j t_k = eps^i_{jk} t_i over U(1), or over {+1,-1} when spherical.
TwistedSolution solve_twisted(const FusionRing& R, const PivotalSymbols& eps, bool spherical);

struct DimensionReport {
    double residual = 0;       ///< max |d_j d_k - sum eps^i_{jk} N^i_{jk} d_i|
    bool paired_positive = false;
};
DimensionReport dimension_checks(const FusionRing& R, const PivotalSymbols& eps, const std::vector<double>& d);

struct FPDimensions {
    std::vector<double> d;
    double homomorphism_residual = 0;
    int iterations = 0;
};
FPDimensions frobenius_perron(const FusionRing& R, int max_iter = 100000);

struct GrouplikeCounts {
    long long evenhanded = 0;  ///< |Hom(G, U(1))|
    long long spherical = 0;   ///< |Hom(G, {+1,-1})|
};
GrouplikeCounts grouplike_counts(const FiniteGroup& G);

/**
 * Random functors F, G between semisimple categories with weights kA, kB,
 * a random natural transformation theta, random bases, and left adjunctions
 * Psi scaled by k_mu/k_i; returns the largest difference between the left
 * and right daggers of theta. `g_weight_scale` rescales the weights used
 * for G's adjunction.
 */
double semisimple_dagger_check(const std::vector<double>& kA, const std::vector<double>& kB, std::uint64_t seed,
                               double g_weight_scale = 1.0);

}  // namespace gerbecat

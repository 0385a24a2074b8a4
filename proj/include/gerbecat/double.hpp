#pragma once

#include "gerbecat/extract.hpp"
#include "gerbecat/geochar.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace gerbecat {

// Objects of the fusion double are conjugation-equivariant bundles over G
// (GBundleOverG). Fibers of V (x) W are laid out as blocks V_a (x) W_b with
// ab = g, ordered by a, each block a Kronecker product with the V index major.

/// A morphism of bundles over G: one matrix per group element.
using GMorphism = std::vector<CMatrix>;

GBundleOverG unit_object(const GroupPtr& G);
/// (V (x) W)_g = sum over ab = g of V_a (x) W_b; h acts by V(h:a) (x) W(h:b).
GBundleOverG fuse(const GBundleOverG& V, const GBundleOverG& W);

GMorphism identity_morphism(const GBundleOverG& V);
/// f o g, degreewise.
GMorphism compose(const GMorphism& f, const GMorphism& g);
GMorphism adjoint(const GMorphism& f);
/// f (x) h : X (x) Y -> X' (x) Y'
GMorphism tensor_morphisms(const GMorphism& f, const GBundleOverG& X, const GBundleOverG& Xp, const GMorphism& h,
                           const GBundleOverG& Y, const GBundleOverG& Yp);
/// (U (x) V) (x) W -> U (x) (V (x) W), a block permutation.
GMorphism associator(const GBundleOverG& U, const GBundleOverG& V, const GBundleOverG& W);
/// V (x) W -> W (x) V, v_a (x) w_b |-> w_b (x) V(b^-1 : a) v_a.
GMorphism braid(const GBundleOverG& V, const GBundleOverG& W);

/// max |f_{hgh^-1} V(h:g) - W(h:g) f_g|
double equivariance_residual(const GMorphism& f, const GBundleOverG& V, const GBundleOverG& W);
double unitarity_residual(const GMorphism& f);
double morphism_distance(const GMorphism& f, const GMorphism& g);

struct BraidReport {
    double yang_baxter = 0;
    double hexagon_left = 0;   ///< braiding U past V (x) W
    double hexagon_right = 0;  ///< braiding U (x) V past W
    double equivariance = 0;
    double unitarity = 0;
};
/// Yang-Baxter and both hexagons in bracketed form, with explicit associators.
BraidReport braid_checks(const GBundleOverG& U, const GBundleOverG& V, const GBundleOverG& W);

struct SimpleObject {
    int class_rep = 0;   ///< minimal element of the conjugacy class
    int irrep = 0;       ///< index into the centralizer's irreducibles
    GBundleOverG object;
};

/// One simple per (conjugacy class, irreducible of the centralizer), induced
/// along the transversal t_g = least h with h g0 h^-1 = g.
std::vector<SimpleObject> simples(const GroupPtr& G, std::uint64_t seed = 0);

/// Multiplicities (1/|G|) sum conj(chi_S) chi_V; throws if not integral within 1e-6.
std::vector<long long> decompose(const GBundleOverG& V, const std::vector<SimpleObject>& S);

/// N[i][j][k] = multiplicity of simple k in S_i (x) S_j.
std::vector<std::vector<std::vector<long long>>> fusion_table(const std::vector<SimpleObject>& S);

struct CenterReport {
    int class_count = 0;
    int center_dim = 0;              ///< dimension of Z(C[G]) by exact linear algebra
    bool class_functions_central = false;
    bool non_class_detected = false; ///< every delta at a non-central element maps outside the center
    bool convolution_exact = false;  ///< v(s o t) = v(s) v(t) on class-function pairs
    bool restriction_exact = false;  ///< restriction of the extension to C[G] returns t
    double convolution_numeric = 0;  ///< seeded complex inputs
    double irreducible_roundtrip = 0;
    bool pass = false;
};
CenterReport center_check(const GroupPtr& G, std::uint64_t seed = 0);

/// Extension of a transformation T to a bundle over X (x) conj(X): the fiber at
/// (x', x) is the sum of T_g over g with g.x = x', ordered by g.
TwistedBundle extend_transformation(const GBundleOverG& T, const Gerbe& X);

/// Residual of the naturality square T_Y o V = V o T_X for V: X -> Y, through
/// the coherence map that swaps factors and transports along V(g <- (g^-1 y, x)).
double naturality_residual(const GBundleOverG& T, const Gerbe& X, const Gerbe& Y, const TwistedBundle& V);

/// V(T)_g = T_{g^-1}, V(T)(h:g) = T(h:g^-1).
GBundleOverG invert_grading(const GBundleOverG& T);
/// (S o T)_g = sum over a of S_{g a^-1} (x) T_a, ordered by a.
GBundleOverG compose_transformations(const GBundleOverG& S, const GBundleOverG& T);

struct FynReport {
    bool dims_equal = false;
    double composition_residual = 0;  ///< composite over EG against compose_transformations
    double coherence_residual = 0;    ///< equivariance and unitarity of the coherence map
    double braid_residual = 0;        ///< transported braid against the conjugate-first-factor formula
    bool pass = false;
};
FynReport fyn_check(const GBundleOverG& T, const GBundleOverG& S, double tol = 1e-8);

/// Haar-distributed unitary from a complex Gaussian matrix.
CMatrix random_unitary(int d, std::mt19937_64& rng);
/// A sum of one or two simples with a random unitary change of basis in every
/// fiber; the monomial data is dropped.
GBundleOverG random_object(const std::vector<SimpleObject>& S, std::mt19937_64& rng);

}  // namespace gerbecat

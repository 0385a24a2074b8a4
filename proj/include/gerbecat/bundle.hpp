#pragma once

#include "gerbecat/gerbe.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace gerbecat {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kDefaultTol = 1e-8;

/**
 * Twisted unitary equivariant bundle over a gerbe: a fiber dimension per
 * point and a matrix E(g <- x): E_x -> E_{g.x} per arrow, with
 * E(g2 <- g1.x) E(g1 <- x) = e(c_x(g2, g1)) E(g2 g1 <- x).
 */
class TwistedBundle {
public:
    TwistedBundle() = default;
    /// maps are indexed x*|G| + g; shapes are checked here, the rest by validate_bundle.
    TwistedBundle(Gerbe gerbe, std::vector<int> dims, std::vector<CMatrix> maps);

    const Gerbe& gerbe() const { return gerbe_; }
    const std::vector<int>& dims() const { return dims_; }
    int dim(int x) const { return dims_[x]; }
    int total_dim() const;
    const CMatrix& map(int g, int x) const { return maps_[static_cast<std::size_t>(x) * n_ + g]; }
    CMatrix& map(int g, int x) { return maps_[static_cast<std::size_t>(x) * n_ + g]; }

private:
    Gerbe gerbe_;
    int n_ = 1;
    std::vector<int> dims_;
    std::vector<CMatrix> maps_;
};

struct BundleReport {
    double unitarity = 0;
    double functoriality = 0;
    bool pass = false;
    /// kind (0 unitarity, 1 identity, 2 functoriality), x, g[, g2] of the worst entry
    std::vector<int> witness;
};

BundleReport validate_bundle(const TwistedBundle& E, double tol = kDefaultTol);

/// Line bundle with every arrow acting by 1; needs a zero cocycle.
TwistedBundle trivial_line_bundle(const Gerbe& X);
/// Blocks concatenated in argument order.
TwistedBundle direct_sum(const TwistedBundle& E, const TwistedBundle& F);
/// Left regular module of the twisted groupoid algebra: fiber at x spanned by arrows ending at x.
TwistedBundle regular_bundle(const Gerbe& X);

/// Section of a line bundle over a loop groupoid, one value per loop object.
struct LoopSection {
    LoopGroupoid loop;
    std::vector<cplx> values;
};

/// chi(x, g) = Tr E(g <- x), flat for tau(c). With `conjugate` the complex
/// conjugate is stored instead, which is flat for -tau(c).
LoopSection twisted_character(const TwistedBundle& E, bool conjugate = false);

/// max |chi(h.o) - e(alpha(h <- o)) chi(o)|
double flatness_residual(const LoopSection& s, const Cochain& alpha);

/// (s, s') = sum conj(s) s' / |G|
cplx section_inner(const LoopSection& s, const LoopSection& t);

struct FlatSectionSpace {
    int dim = 0;
    Rational integral{0};           ///< integral of tau(alpha) over the next loop groupoid
    int component_count = 0;        ///< orbits with trivial restricted character
    int nullspace_dim = 0;          ///< numeric rank deficit of the flatness system
    std::vector<std::vector<cplx>> basis;  ///< one section per good orbit, on alpha's carrier
};

/// Dimension of flat sections of the line bundle alpha (a 1-cocycle on any
/// action groupoid). Three independent methods; throws InternalError when
/// they disagree.
FlatSectionSpace flat_section_space(const Cochain& alpha);
inline int flat_section_dim(const Cochain& alpha) { return flat_section_space(alpha).dim; }

struct IrreducibleOptions {
    std::uint64_t seed = 0;
    int max_algebra_dim = 256;  ///< bound on |X||G|
    double tol = kDefaultTol;
};

/// Pairwise non-isomorphic irreducible twisted bundles, split numerically
/// from the twisted groupoid algebra; sorted by total dimension, then
/// by character values.
std::vector<TwistedBundle> irreducible_bundles(const Gerbe& X, const IrreducibleOptions& opt = {});

/// Gram matrix of the characters of the given bundles.
CMatrix character_gram(const std::vector<TwistedBundle>& bundles);

}  // namespace gerbecat

#pragma once

#include "gerbecat/gspace.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace gerbecat {

/**
 * U(1)-valued cochain on the action groupoid of a G-set.
 *
 * degree 0: one phase per point x
 * degree 1: one phase per arrow (g <- x), index x*|G| + g
 * degree 2: one phase per composable pair, c_x(g2, g1) meaning g1 first,
 *           index (x*|G| + g2)*|G| + g1
 */
class Cochain {
public:
    Cochain() = default;
    Cochain(int degree, GSet carrier);
    Cochain(int degree, GSet carrier, std::vector<Phase> entries);

    int degree() const { return degree_; }
    const GSet& carrier() const { return carrier_; }
    const std::vector<Phase>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    Phase& entry(std::size_t i) { return entries_[i]; }

    Phase& at(int x) { return entries_[x]; }
    const Phase& at(int x) const { return entries_[x]; }
    /// arrow g <- x
    Phase& at(int g, int x) { return entries_[idx1(g, x)]; }
    const Phase& at(int g, int x) const { return entries_[idx1(g, x)]; }
    /// c_x(g2, g1)
    Phase& at(int x, int g2, int g1) { return entries_[idx2(x, g2, g1)]; }
    const Phase& at(int x, int g2, int g1) const { return entries_[idx2(x, g2, g1)]; }

    bool normalized() const;
    bool is_zero() const;
    /// lcm of the denominators of all entries
    long long order() const;

    Cochain operator+(const Cochain& o) const;
    Cochain operator-(const Cochain& o) const;
    Cochain operator-() const;
    bool operator==(const Cochain& o) const;

private:
    std::size_t idx1(int g, int x) const { return static_cast<std::size_t>(x) * n_ + g; }
    std::size_t idx2(int x, int g2, int g1) const { return (static_cast<std::size_t>(x) * n_ + g2) * n_ + g1; }
    void require_compatible(const Cochain& o) const;

    int degree_ = 0;
    int n_ = 1;
    GSet carrier_;
    std::vector<Phase> entries_;
};

/// First violating tuple in canonical order, or nullopt when c is a cocycle.
/// Degree 2: (x, g3, g2, g1); degree 1: (x, h2, h1). Throws on an un-normalized 2-cochain.
std::optional<std::vector<int>> check_cocycle(const Cochain& c);

/// d of a degree 0 or 1 cochain.
Cochain coboundary(const Cochain& gamma);

/// Twist c by an explicit coboundary so that it becomes normalized;
/// gamma_out receives the 1-cochain used (c_normalized = c - d gamma).
Cochain normalize(const Cochain& c, Cochain* gamma_out = nullptr);

/**
 * Transgression to the loop groupoid of the carrier.
 * degree 2 -> 1: tau(c)(h <- (x,g)) = c_x(h g h^-1, h) - c_x(h, g)
 * degree 1 -> 0: tau(a)((y,g)) = a(g <- y)
 * The result lives on loop_of(carrier).space; `loop` receives the labels.
 */
Cochain transgress(const Cochain& c, LoopGroupoid* loop = nullptr);

/// Second transgression of a 2-cocycle evaluated at a commuting fixed triple:
/// c_x(g,h) - c_x(h,g).
Phase double_transgression(const Cochain& c, int x, int g, int h);

/// Pull back along an equivariant map f: X -> carrier.
Cochain pullback(const Cochain& c, const GSet& X, const std::vector<int>& f);

struct CohomologyResult {
    bool cohomologous = false;
    std::optional<Cochain> gamma;             ///< d gamma = c2 - c1
    std::vector<long long> certificate;       ///< integer functional on 2-cochain entries
    long long modulus = 1;
};

/**
 * Decide whether c2 - c1 is a coboundary (degree 1 or 2; gamma has one
 * degree less). Works modulo M = N*|G| where N
 * is the lcm of the denominators of c2 - c1; a solution with values in
 * (1/M)Z exists whenever any solution does. Without a solution the
 * certificate lambda satisfies: sum lambda_j (d gamma)_j is an integer for
 * every gamma with values in (1/M)Z, while sum lambda_j (c2-c1)_j is not.
 */
CohomologyResult cohomologous(const Cochain& c1, const Cochain& c2);

/// Exhaustive search over gamma with values in (1/order)Z, gamma(e <- x) = 0.
/// Throws if the number of free arrows exceeds max_arrows.
std::optional<Cochain> cohomologous_bruteforce(const Cochain& c1, const Cochain& c2, int order = 4,
                                               int max_arrows = 64);

/// Seeded random cochain with entries in (1/den)Z; degree-1 cochains vanish on identity arrows.
Cochain random_cochain(int degree, const GSet& carrier, int den, std::mt19937_64& rng);

/// Sum of lambda_j * entry_j as an element of Q/Z.
Phase evaluate_functional(const std::vector<long long>& lambda, const Cochain& c);

}  // namespace gerbecat

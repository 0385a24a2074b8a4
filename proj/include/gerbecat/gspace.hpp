#pragma once

#include "gerbecat/group.hpp"

#include <array>
#include <functional>
#include <vector>

namespace gerbecat {

/**
 * A finite left G-set. act(g, x) is g.x; orbits and stabilizers are
 * computed on construction. The action groupoid has one arrow g: x -> g.x
 * for every pair (g, x).
 */
class GSet {
public:
    GSet() = default;
    /// act[g][x]; throws Error with witness on an action-axiom violation.
    GSet(GroupPtr G, std::vector<std::vector<int>> act);

    const FiniteGroup& group() const { return *G_; }
    const GroupPtr& group_ptr() const { return G_; }
    int size() const { return size_; }
    int act(int g, int x) const { return act_[static_cast<std::size_t>(g) * size_ + x]; }

    /// Orbits as sorted point lists, ordered by minimal point.
    const std::vector<std::vector<int>>& orbits() const { return orbits_; }
    int orbit_of(int x) const { return orbit_of_[x]; }
    const std::vector<int>& stabilizer(int x) const { return stab_[x]; }
    std::vector<int> fixed_points(int g) const;
    bool same_action(const GSet& o) const { return size_ == o.size_ && act_ == o.act_ && same_group(G_, o.G_); }
    std::vector<std::vector<int>> table() const;

private:
    GroupPtr G_;
    int size_ = 0;
    std::vector<int> act_;
    std::vector<std::vector<int>> orbits_;
    std::vector<int> orbit_of_;
    std::vector<std::vector<int>> stab_;
};

GSet point_gset(const GroupPtr& G);
/// G acting on itself by left multiplication.
GSet regular_gset(const GroupPtr& G);
/// Left cosets gH, ordered by their minimal element.
GSet coset_gset(const GroupPtr& G, const std::vector<int>& H);
/// G acting on itself by conjugation.
GSet conjugation_gset(const GroupPtr& G);
/// Points of A first, then points of B.
GSet disjoint_union(const GSet& A, const GSet& B);
/// The sub-G-set on `points` (a union of orbits), renumbered in the given order.
GSet sub_gset(const GSet& X, const std::vector<int>& points);
/// Diagonal action; (a,b) has index a*|B|+b.
GSet product_gset(const GSet& A, const GSet& B);

/**
 * Iterated loop groupoid of an action groupoid, realised as a G-set.
 * Level-1 objects are (x,g) with g.x = x; level-2 objects are (x,g,h) with
 * g and h commuting and fixing x. G acts by h.(x,g) = (h.x, h g h^-1).
 * Objects are listed in lexicographic order.
 */
struct LoopGroupoid {
    GSet space;
    int level = 1;
    std::vector<std::array<int, 3>> objects;  ///< (x, g, h); h = -1 at level 1
    int index_of(int x, int g, int h = -1) const;
    std::vector<int> lookup;  ///< dense (x,g[,h]) -> object index or -1
    int base_size = 0;
};

/// Loop groupoid of the action groupoid of X at level 1 or 2.
LoopGroupoid loop_groupoid(const GSet& X, int level);

/// Objects (y, g) of the loop groupoid of an arbitrary G-set Y (level 1),
/// returned with the induced G-set.
LoopGroupoid loop_of(const GSet& Y);

/// Groupoid measure: sum over objects of f(x)/|G|.
Rational integrate(const GSet& X, const std::function<Rational(int)>& f);
cplx integrate_complex(const GSet& X, const std::function<cplx(int)>& f);

}  // namespace gerbecat

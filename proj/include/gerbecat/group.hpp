#pragma once

#include "gerbecat/phase.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace gerbecat {

/**
 * A finite group stored as a multiplication table. Elements are dense
 * indices 0..order-1 and 0 is the identity.
 */
class FiniteGroup {
public:
    /// Validates the table; throws Error with a witness on failure.
    explicit FiniteGroup(std::vector<std::vector<int>> mult, std::string name = "");

    int order() const { return n_; }
    int mul(int a, int b) const { return mult_[a * n_ + b]; }
    int inv(int a) const { return inv_[a]; }
    /// h g h^-1
    int conj(int h, int g) const { return mul(mul(h, g), inv(h)); }
    bool commute(int a, int b) const { return mul(a, b) == mul(b, a); }
    const std::string& name() const { return name_; }
    std::vector<std::vector<int>> table() const;
    bool same_table(const FiniteGroup& o) const { return mult_ == o.mult_; }

private:
    int n_ = 0;
    std::vector<int> mult_;
    std::vector<int> inv_;
    std::string name_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

inline bool same_group(const GroupPtr& a, const GroupPtr& b) { return a == b || a->same_table(*b); }

/// Cyclic group Z/n; element k is the k-th power of the generator.
GroupPtr cyclic_group(int n);
/// Dihedral group of order 2n: index k is r^k, index n+k is s r^k, s r s = r^-1.
GroupPtr dihedral_group(int order);
/// Symmetric group on n <= 5 letters; permutations in lexicographic order of
/// their images, composed as (a b)(i) = a(b(i)).
GroupPtr symmetric_group(int n);
/// Quaternion group: 1,-1,i,-i,j,-j,k,-k.
GroupPtr quaternion_group();
/// Direct product; (a,b) has index a*|B|+b.
GroupPtr direct_product(const GroupPtr& A, const GroupPtr& B);
/// The subgroup on the given sorted element set, renumbered by position.
GroupPtr subgroup_as_group(const GroupPtr& G, const std::vector<int>& H);

struct GroupAnalysis {
    std::vector<std::vector<int>> classes;   ///< ordered by minimal element
    std::vector<int> class_of;
    std::vector<std::vector<int>> centralizers;
    std::vector<int> center;
    long long commuting_pairs = 0;
    long long commuting_triples = 0;
};

GroupAnalysis analyze(const FiniteGroup& G);

/// Closure of a generating set.
std::vector<int> generated_subgroup(const FiniteGroup& G, const std::vector<int>& gens);
bool is_subgroup(const FiniteGroup& G, const std::vector<int>& H);
bool is_normal(const FiniteGroup& G, const std::vector<int>& H);
/// All subgroups (sorted element sets), sorted by (size, elements).
std::vector<std::vector<int>> all_subgroups(const FiniteGroup& G);
/// Subgroups up to conjugacy: one representative (the first in all_subgroups order) per class.
std::vector<std::vector<int>> subgroup_class_reps(const FiniteGroup& G);
/// A small generating set, chosen greedily by element index.
std::vector<int> generating_set(const FiniteGroup& G);

}  // namespace gerbecat

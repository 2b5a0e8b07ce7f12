#pragma once

#include <optional>
#include <string>
#include <vector>

namespace grouplab {

/// Finite group given by element ids and a full multiplication table.
/// Element 0 is always the identity. The table is validated on construction:
/// latin square, identity, inverses, associativity (desk-scale groups only).
class FiniteGroup {
public:
    FiniteGroup(std::vector<std::string> ids, std::vector<std::vector<int>> table);

    int size() const { return static_cast<int>(ids_.size()); }
    int identity() const { return e_; }
    int mul(int a, int b) const { return table_[a][b]; }
    int inv(int a) const { return inv_[a]; }
    int conj(int g, int h) const { return mul(mul(g, h), inv(g)); }  // g h g^-1
    int order_of(int a) const;

    const std::string& id(int a) const { return ids_[a]; }
    int index_of(const std::string& id) const;  // throws if unknown
    const std::vector<std::vector<int>>& table() const { return table_; }

    bool is_abelian() const;

    /// Closure of a generating set, sorted ascending.
    std::vector<int> closure(std::vector<int> generators) const;

    /// All automorphisms as permutation vectors sigma with
    /// sigma[ab] = sigma[a]sigma[b]. Exhaustive; intended for |F| <= 12.
    std::vector<std::vector<int>> automorphisms() const;

    /// True if the subgroup (given as a sorted element list) is normal.
    bool is_normal(const std::vector<int>& subgroup) const;

    /// Quotient by a normal subgroup. Returns the quotient group and the
    /// projection map element -> coset index.
    std::pair<FiniteGroup, std::vector<int>> quotient(const std::vector<int>& normal_subgroup) const;

private:
    std::vector<std::string> ids_;
    std::vector<std::vector<int>> table_;
    std::vector<int> inv_;
    int e_ = 0;
};

// Builders for the test corpus.
FiniteGroup cyclic_group(int n);                         // ids "0","1",...
FiniteGroup trivial_group();
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
FiniteGroup symmetric3();                                // S3 on 3 letters
FiniteGroup group_from_permutations(const std::vector<std::vector<int>>& generators);

/// Structure of a finite abelian group presented as a FiniteGroup:
/// invariant factors k_1 | k_2 | ... (largest first here is NOT required;
/// we store them largest-order-first as produced by the peel-off recursion)
/// together with generators realizing  G = <g_1> + ... + <g_r>  as an
/// internal direct sum, and coordinates for every element.
struct AbelianDecomposition {
    std::vector<long long> factors;           // orders of the chosen generators
    std::vector<int> generators;              // element indices
    std::vector<std::vector<long long>> coords;  // per element, one coord per factor
};

AbelianDecomposition abelian_decomposition(const FiniteGroup& g,
                                           const std::vector<int>& subgroup);

}  // namespace grouplab

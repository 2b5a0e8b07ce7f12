#include "grouplab/finite_group.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace grouplab {

FiniteGroup::FiniteGroup(std::vector<std::string> ids, std::vector<std::vector<int>> table)
    : ids_(std::move(ids)), table_(std::move(table)) {
    int n = static_cast<int>(ids_.size());
    if (n == 0) throw std::invalid_argument("FiniteGroup: empty");
    if (static_cast<int>(table_.size()) != n)
        throw std::invalid_argument("FiniteGroup: table size mismatch");
    for (const auto& row : table_) {
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("FiniteGroup: table row size mismatch");
        for (int v : row)
            if (v < 0 || v >= n) throw std::invalid_argument("FiniteGroup: table entry out of range");
    }
    for (int a = 0; a < n; ++a)
        if (table_[0][a] != a || table_[a][0] != a)
            throw std::invalid_argument("FiniteGroup: element 0 is not an identity");
    for (int a = 0; a < n; ++a) {
        std::vector<bool> seen_row(n, false), seen_col(n, false);
        for (int b = 0; b < n; ++b) {
            if (seen_row[table_[a][b]] || seen_col[table_[b][a]])
                throw std::invalid_argument("FiniteGroup: table is not a latin square");
            seen_row[table_[a][b]] = true;
            seen_col[table_[b][a]] = true;
        }
    }
    inv_.assign(n, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (table_[a][b] == 0 && table_[b][a] == 0) inv_[a] = b;
    for (int a = 0; a < n; ++a)
        if (inv_[a] < 0) throw std::invalid_argument("FiniteGroup: missing inverse");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
                    throw std::invalid_argument("FiniteGroup: not associative");
}

int FiniteGroup::order_of(int a) const {
    int x = a, ord = 1;
    while (x != e_) { x = mul(x, a); ++ord; }
    return ord;
}

int FiniteGroup::index_of(const std::string& id) const {
    for (int i = 0; i < size(); ++i)
        if (ids_[i] == id) return i;
    throw std::invalid_argument("FiniteGroup: unknown element id '" + id + "'");
}

bool FiniteGroup::is_abelian() const {
    for (int a = 0; a < size(); ++a)
        for (int b = a + 1; b < size(); ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

std::vector<int> FiniteGroup::closure(std::vector<int> generators) const {
    std::set<int> seen{e_};
    std::vector<int> todo{e_};
    for (int g : generators)
        if (seen.insert(g).second) todo.push_back(g);
    for (size_t i = 0; i < todo.size(); ++i)
        for (int g : generators) {
            int p = mul(todo[i], g);
            if (seen.insert(p).second) todo.push_back(p);
            p = mul(g, todo[i]);
            if (seen.insert(p).second) todo.push_back(p);
        }
    return std::vector<int>(seen.begin(), seen.end());
}

std::vector<std::vector<int>> FiniteGroup::automorphisms() const {
    int n = size();
    std::vector<std::vector<int>> result;
    std::vector<int> sigma(n, -1);
    std::vector<bool> used(n, false);
    sigma[e_] = e_;
    used[e_] = true;

    std::vector<int> orders(n);
    for (int a = 0; a < n; ++a) orders[a] = order_of(a);

    std::function<void(int)> rec = [&](int a) {
        if (a == n) {
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y)
                    if (sigma[mul(x, y)] != mul(sigma[x], sigma[y])) return;
            result.push_back(sigma);
            return;
        }
        if (sigma[a] >= 0) { rec(a + 1); return; }
        for (int img = 0; img < n; ++img) {
            if (used[img] || orders[img] != orders[a]) continue;
            sigma[a] = img;
            used[img] = true;
            // partial consistency: products of already-assigned elements
            bool ok = true;
            for (int x = 0; x <= a && ok; ++x)
                for (int y = 0; y <= a && ok; ++y) {
                    if (sigma[x] < 0 || sigma[y] < 0) continue;
                    int xy = mul(x, y);
                    if (sigma[xy] >= 0 && sigma[xy] != mul(sigma[x], sigma[y])) ok = false;
                }
            if (ok) rec(a + 1);
            sigma[a] = -1;
            used[img] = false;
        }
    };
    rec(0);
    return result;
}

bool FiniteGroup::is_normal(const std::vector<int>& subgroup) const {
    std::set<int> sub(subgroup.begin(), subgroup.end());
    for (int g = 0; g < size(); ++g)
        for (int h : subgroup)
            if (!sub.count(conj(g, h))) return false;
    return true;
}

std::pair<FiniteGroup, std::vector<int>> FiniteGroup::quotient(
    const std::vector<int>& normal_subgroup) const {
    if (!is_normal(normal_subgroup))
        throw std::invalid_argument("FiniteGroup::quotient: subgroup not normal");
    int n = size();
    std::vector<int> coset(n, -1);
    std::vector<int> reps;
    for (int a = 0; a < n; ++a) {  // element 0 is the identity, so its coset is 0
        if (coset[a] >= 0) continue;
        int idx = static_cast<int>(reps.size());
        for (int h : normal_subgroup) coset[mul(a, h)] = idx;
        reps.push_back(a);
        if (coset[a] < 0) throw std::logic_error("quotient: subgroup does not contain identity");
    }
    int q = static_cast<int>(reps.size());
    std::vector<std::vector<int>> table(q, std::vector<int>(q));
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) table[i][j] = coset[mul(reps[i], reps[j])];
    std::vector<std::string> ids(q);
    for (int i = 0; i < q; ++i) ids[i] = ids_[reps[i]] + "~";
    return {FiniteGroup(std::move(ids), std::move(table)), coset};
}

FiniteGroup cyclic_group(int n) {
    if (n <= 0) throw std::invalid_argument("cyclic_group: n must be positive");
    std::vector<std::string> ids(n);
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i) {
        ids[i] = std::to_string(i);
        for (int j = 0; j < n; ++j) table[i][j] = (i + j) % n;
    }
    return FiniteGroup(std::move(ids), std::move(table));
}

FiniteGroup trivial_group() { return cyclic_group(1); }

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
    int na = a.size(), nb = b.size();
    std::vector<std::string> ids;
    std::vector<std::vector<int>> table(na * nb, std::vector<int>(na * nb));
    ids.reserve(na * nb);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j) ids.push_back(a.id(i) + "," + b.id(j));
    auto idx = [nb](int i, int j) { return i * nb + j; };
    for (int i1 = 0; i1 < na; ++i1)
        for (int j1 = 0; j1 < nb; ++j1)
            for (int i2 = 0; i2 < na; ++i2)
                for (int j2 = 0; j2 < nb; ++j2)
                    table[idx(i1, j1)][idx(i2, j2)] = idx(a.mul(i1, i2), b.mul(j1, j2));
    return FiniteGroup(std::move(ids), std::move(table));
}

FiniteGroup group_from_permutations(const std::vector<std::vector<int>>& generators) {
    if (generators.empty()) throw std::invalid_argument("group_from_permutations: no generators");
    size_t deg = generators[0].size();
    auto compose = [deg](const std::vector<int>& p, const std::vector<int>& q) {
        std::vector<int> r(deg);
        for (size_t i = 0; i < deg; ++i) r[i] = p[q[i]];
        return r;
    };
    std::vector<int> identity(deg);
    for (size_t i = 0; i < deg; ++i) identity[i] = static_cast<int>(i);
    std::map<std::vector<int>, int> index;
    std::vector<std::vector<int>> elems{identity};
    index[identity] = 0;
    for (size_t i = 0; i < elems.size(); ++i)
        for (const auto& g : generators) {
            auto p = compose(elems[i], g);
            if (!index.count(p)) {
                index[p] = static_cast<int>(elems.size());
                elems.push_back(p);
            }
        }
    int n = static_cast<int>(elems.size());
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) table[i][j] = index.at(compose(elems[i], elems[j]));
    std::vector<std::string> ids(n);
    for (int i = 0; i < n; ++i) {
        std::string s = "p";
        for (int v : elems[i]) s += std::to_string(v);
        ids[i] = s;
    }
    return FiniteGroup(std::move(ids), std::move(table));
}

FiniteGroup symmetric3() { return group_from_permutations({{1, 0, 2}, {1, 2, 0}}); }

namespace {

int pow_in(const FiniteGroup& g, int a, long long k) {
    int x = a;
    long long left = k;
    if (left < 0) { x = g.inv(a); left = -left; }
    int acc = g.identity();
    while (left > 0) {
        if (left & 1) acc = g.mul(acc, x);
        x = g.mul(x, x);
        left >>= 1;
    }
    return acc;
}

/// Recursive decomposition of an abelian FiniteGroup into cyclic summands:
/// returns generator indices and their orders (exponent first).
void decompose_rec(const FiniteGroup& grp, std::vector<int>& gens, std::vector<long long>& factors) {
    if (grp.size() == 1) return;
    int g1 = 1;
    long long k1 = 0;
    for (int a = 0; a < grp.size(); ++a) {
        long long o = grp.order_of(a);
        if (o > k1) { k1 = o; g1 = a; }
    }
    std::vector<int> cyc;
    {
        int x = grp.identity();
        do { cyc.push_back(x); x = grp.mul(x, g1); } while (x != grp.identity());
    }
    std::sort(cyc.begin(), cyc.end());
    auto [q, proj] = grp.quotient(cyc);

    std::vector<int> qgens;
    std::vector<long long> qfactors;
    decompose_rec(q, qgens, qfactors);

    gens.push_back(g1);
    factors.push_back(k1);
    for (size_t i = 0; i < qgens.size(); ++i) {
        long long d = qfactors[i];
        // any preimage of the quotient generator
        int t = -1;
        for (int a = 0; a < grp.size(); ++a)
            if (proj[a] == qgens[i]) { t = a; break; }
        // t^d lies in <g1>; peel off the g1-part so the lift has exact order d
        int td = pow_in(grp, t, d);
        long long c = -1;
        for (long long e = 0; e < k1; ++e)
            if (pow_in(grp, g1, e) == td) { c = e; break; }
        if (c < 0) throw std::logic_error("abelian decomposition: lift not over <g1>");
        if (c % d != 0) throw std::logic_error("abelian decomposition: division step failed");
        int t_adj = grp.mul(t, grp.inv(pow_in(grp, g1, c / d)));
        if (grp.order_of(t_adj) != d)
            throw std::logic_error("abelian decomposition: adjusted lift has wrong order");
        gens.push_back(t_adj);
        factors.push_back(d);
    }
}

}  // namespace

AbelianDecomposition abelian_decomposition(const FiniteGroup& g, const std::vector<int>& subgroup) {
    std::set<int> sub(subgroup.begin(), subgroup.end());
    if (!sub.count(g.identity()))
        throw std::invalid_argument("abelian_decomposition: missing identity");
    for (int a : subgroup)
        for (int b : subgroup) {
            if (!sub.count(g.mul(a, b)))
                throw std::invalid_argument("abelian_decomposition: not a subgroup");
            if (g.mul(a, b) != g.mul(b, a))
                throw std::invalid_argument("abelian_decomposition: not abelian");
        }

    // standalone copy of the subgroup, identity first
    std::vector<int> elems(subgroup.begin(), subgroup.end());
    std::sort(elems.begin(), elems.end());
    std::vector<int> to_parent;
    to_parent.push_back(g.identity());
    for (int a : elems)
        if (a != g.identity()) to_parent.push_back(a);
    std::map<int, int> from_parent;
    for (size_t i = 0; i < to_parent.size(); ++i) from_parent[to_parent[i]] = static_cast<int>(i);
    int n = static_cast<int>(to_parent.size());
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    std::vector<std::string> ids(n);
    for (int i = 0; i < n; ++i) {
        ids[i] = g.id(to_parent[i]);
        for (int j = 0; j < n; ++j) table[i][j] = from_parent.at(g.mul(to_parent[i], to_parent[j]));
    }
    FiniteGroup grp(std::move(ids), std::move(table));

    AbelianDecomposition out;
    std::vector<int> gens_local;
    decompose_rec(grp, gens_local, out.factors);
    for (int gi : gens_local) out.generators.push_back(to_parent[gi]);

    long long total = 1;
    for (long long f : out.factors) total *= f;
    if (total != static_cast<long long>(subgroup.size()))
        throw std::logic_error("abelian_decomposition: size mismatch");

    // coordinates of every element by full enumeration of the direct sum
    std::map<int, std::vector<long long>> coord_of;
    std::vector<long long> counter(out.factors.size(), 0);
    for (long long cnt = 0; cnt < total; ++cnt) {
        int acc = g.identity();
        for (size_t i = 0; i < out.generators.size(); ++i)
            acc = g.mul(acc, pow_in(g, out.generators[i], counter[i]));
        if (coord_of.count(acc)) throw std::logic_error("abelian_decomposition: not a direct sum");
        coord_of[acc] = counter;
        size_t i = 0;
        while (i < counter.size()) {
            if (++counter[i] < out.factors[i]) break;
            counter[i] = 0;
            ++i;
        }
    }
    out.coords.resize(g.size());
    for (int a : subgroup) out.coords[a] = coord_of.at(a);
    return out;
}

}  // namespace grouplab

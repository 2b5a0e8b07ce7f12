#include "grouplab/cohomology.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace grouplab {

// ---------------------------------------------------------------------------
// FiniteModule
// ---------------------------------------------------------------------------

FiniteModule::FiniteModule(FiniteGroup f_, std::vector<long long> factors_,
                           std::vector<IMat> action_)
    : f(std::move(f_)), factors(std::move(factors_)), action(std::move(action_)) {
    if (factors.empty()) throw std::invalid_argument("FiniteModule: empty factor list");
    for (long long k : factors)
        if (k < 1) throw std::invalid_argument("FiniteModule: factors must be >= 1");
    if (action.size() != static_cast<size_t>(f.size()))
        throw std::invalid_argument("FiniteModule: one action matrix per group element");
    int r = rank();
    for (const auto& a : action) {
        if (static_cast<int>(a.size()) != r)
            throw std::invalid_argument("FiniteModule: action matrix shape");
        for (const auto& row : a)
            if (static_cast<int>(row.size()) != r)
                throw std::invalid_argument("FiniteModule: action matrix shape");
        // well-definedness: A_ij k_j = 0 mod k_i
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                if ((a[i][j] * factors[j]) % factors[i] != 0)
                    throw std::invalid_argument("FiniteModule: action not well defined mod factors");
    }
    // identity and homomorphism modulo the factors
    auto eq_mod = [&](const IMat& a, const IMat& b) {
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                if (((a[i][j] - b[i][j]) % factors[i] + factors[i]) % factors[i] != 0) return false;
        return true;
    };
    if (!eq_mod(action[f.identity()], imat_identity(r)))
        throw std::invalid_argument("FiniteModule: action(e) != I");
    for (int g = 0; g < f.size(); ++g)
        for (int h = 0; h < f.size(); ++h)
            if (!eq_mod(imat_mul(action[g], action[h]), action[f.mul(g, h)]))
                throw std::invalid_argument("FiniteModule: action is not a homomorphism");
}

long long FiniteModule::size() const {
    long long s = 1;
    for (long long k : factors) s *= k;
    return s;
}

FiniteModule::Elem FiniteModule::reduce(Elem x) const {
    for (size_t i = 0; i < x.size(); ++i) {
        x[i] %= factors[i];
        if (x[i] < 0) x[i] += factors[i];
    }
    return x;
}

FiniteModule::Elem FiniteModule::add(const Elem& a, const Elem& b) const {
    Elem out(a);
    for (size_t i = 0; i < out.size(); ++i) out[i] += b[i];
    return reduce(std::move(out));
}

FiniteModule::Elem FiniteModule::neg(const Elem& a) const {
    Elem out(a);
    for (auto& v : out) v = -v;
    return reduce(std::move(out));
}

FiniteModule::Elem FiniteModule::scale(long long c, const Elem& a) const {
    Elem out(a);
    for (auto& v : out) v *= c;
    return reduce(std::move(out));
}

FiniteModule::Elem FiniteModule::act(int g, const Elem& a) const {
    int r = rank();
    Elem out(r, 0);
    for (int i = 0; i < r; ++i) {
        long long acc = 0;
        for (int j = 0; j < r; ++j) acc += action[g][i][j] * a[j];
        out[i] = acc;
    }
    return reduce(std::move(out));
}

FiniteModule FiniteModule::trivial(FiniteGroup f, std::vector<long long> factors) {
    int r = static_cast<int>(factors.size());
    std::vector<IMat> act(f.size(), imat_identity(r));
    return FiniteModule(std::move(f), std::move(factors), std::move(act));
}

// ---------------------------------------------------------------------------
// Cochain tables
// ---------------------------------------------------------------------------

const FiniteModule::Elem& CochainTable::at(int g) const {
    if (degree != 1) throw std::logic_error("CochainTable: degree-1 access on degree-2 table");
    return values[g];
}
const FiniteModule::Elem& CochainTable::at(int g, int h) const {
    if (degree != 2) throw std::logic_error("CochainTable: degree-2 access on degree-1 table");
    return values[g * group_size + h];
}
FiniteModule::Elem& CochainTable::at(int g) {
    if (degree != 1) throw std::logic_error("CochainTable: degree-1 access on degree-2 table");
    return values[g];
}
FiniteModule::Elem& CochainTable::at(int g, int h) {
    if (degree != 2) throw std::logic_error("CochainTable: degree-2 access on degree-1 table");
    return values[g * group_size + h];
}

CochainTable CochainTable::zero1(const FiniteModule& m) {
    CochainTable t;
    t.degree = 1;
    t.group_size = m.f.size();
    t.values.assign(t.group_size, m.zero());
    return t;
}

CochainTable CochainTable::zero2(const FiniteModule& m) {
    CochainTable t;
    t.degree = 2;
    t.group_size = m.f.size();
    t.values.assign(static_cast<size_t>(t.group_size) * t.group_size, m.zero());
    return t;
}

bool is_two_cocycle(const FiniteModule& m, const CochainTable& f) {
    if (f.degree != 2) throw std::invalid_argument("is_two_cocycle: need a degree-2 table");
    const auto& grp = m.f;
    int n = grp.size();
    int e = grp.identity();
    // normalization
    for (int g = 0; g < n; ++g)
        if (f.at(e, g) != m.zero() || f.at(g, e) != m.zero()) return false;
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h)
            for (int k = 0; k < n; ++k) {
                auto lhs = m.act(g, f.at(h, k));
                lhs = m.add(lhs, m.neg(f.at(grp.mul(g, h), k)));
                lhs = m.add(lhs, f.at(g, grp.mul(h, k)));
                lhs = m.add(lhs, m.neg(f.at(g, h)));
                if (lhs != m.zero()) return false;
            }
    return true;
}

CochainTable coboundary(const FiniteModule& m, const CochainTable& a) {
    if (a.degree != 1) throw std::invalid_argument("coboundary: need a degree-1 table");
    const auto& grp = m.f;
    if (a.at(grp.identity()) != m.zero())
        throw std::invalid_argument("coboundary: cochain not normalized");
    CochainTable out = CochainTable::zero2(m);
    for (int g = 0; g < grp.size(); ++g)
        for (int h = 0; h < grp.size(); ++h) {
            auto v = m.add(a.at(g), m.act(g, a.at(h)));
            v = m.add(v, m.neg(a.at(grp.mul(g, h))));
            out.at(g, h) = v;
        }
    if (!is_two_cocycle(m, out)) throw std::logic_error("coboundary: output failed cocycle check");
    return out;
}

// ---------------------------------------------------------------------------
// H^2 via one Smith normal form
// ---------------------------------------------------------------------------

namespace {

/// Row-style Hermite basis of the lattice generated by integer vectors;
/// returns a square basis matrix (rows). Requires full rank.
IMat integer_lattice_row_basis(const std::vector<std::vector<long long>>& generators, size_t dim) {
    IMat rows(generators.begin(), generators.end());
    size_t r = 0;
    for (size_t col = 0; col < dim && r < rows.size(); ++col) {
        while (true) {
            size_t piv = rows.size();
            long long best = 0;
            for (size_t i = r; i < rows.size(); ++i) {
                long long av = std::llabs(rows[i][col]);
                if (av != 0 && (best == 0 || av < best)) { best = av; piv = i; }
            }
            if (piv == rows.size()) break;
            std::swap(rows[r], rows[piv]);
            bool done = true;
            for (size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][col] == 0) continue;
                long long q = rows[i][col] / rows[r][col];
                for (size_t c = col; c < dim; ++c) rows[i][c] -= q * rows[r][c];
                if (rows[i][col] != 0) done = false;
            }
            if (done) break;
        }
        if (r < rows.size() && rows[r][col] != 0) ++r;
    }
    if (r != dim) throw std::logic_error("integer_lattice_row_basis: generators not full rank");
    rows.resize(dim);
    return rows;
}

}  // namespace

std::vector<long long> h2(const FiniteModule& m) {
    const auto& grp = m.f;
    int nf = grp.size();
    int r = m.rank();
    if (nf > 12 || r > 3)
        throw std::invalid_argument("h2: desk-scale limit |F| <= 12, rank <= 3 exceeded");
    if (nf == 1) return {};
    int e = grp.identity();

    // variable layout: pairs (g,h), g != e, h != e
    std::vector<int> nontrivial;
    for (int g = 0; g < nf; ++g)
        if (g != e) nontrivial.push_back(g);
    int np = static_cast<int>(nontrivial.size());
    auto pair_index = std::vector<std::vector<int>>(nf, std::vector<int>(nf, -1));
    int d2 = 0;
    for (int g : nontrivial)
        for (int h : nontrivial) pair_index[g][h] = d2++;
    int dim2 = d2 * r;
    auto var_of = [&](int g, int h, int coord) { return pair_index[g][h] * r + coord; };

    // delta^2 rows over triples of nontrivial elements
    std::vector<std::vector<long long>> rows;
    std::vector<long long> moduli;
    for (int g : nontrivial)
        for (int h : nontrivial)
            for (int k : nontrivial) {
                int gh = grp.mul(g, h), hk = grp.mul(h, k);
                for (int i = 0; i < r; ++i) {
                    std::vector<long long> row(dim2, 0);
                    // + g . f(h,k)
                    for (int j = 0; j < r; ++j) row[var_of(h, k, j)] += m.action[g][i][j];
                    // - f(gh, k)
                    if (gh != e) row[var_of(gh, k, i)] -= 1;
                    // + f(g, hk)
                    if (hk != e) row[var_of(g, hk, i)] += 1;
                    // - f(g, h)
                    row[var_of(g, h, i)] -= 1;
                    rows.push_back(std::move(row));
                    moduli.push_back(m.factors[i]);
                }
            }

    // stacked kernel [A | diag(moduli)]: integer kernel projected to the
    // cochain coordinates gives the cocycle lattice Z~ (contains the moduli
    // lattice by module well-definedness)
    size_t nrows = rows.size();
    IMat stacked(nrows, std::vector<long long>(dim2 + nrows, 0));
    for (size_t i = 0; i < nrows; ++i) {
        for (int j = 0; j < dim2; ++j) stacked[i][j] = rows[i][j];
        stacked[i][dim2 + i] = moduli[i];
    }
    auto kernel = integer_kernel(stacked);
    std::vector<std::vector<long long>> z_gens;
    for (const auto& v : kernel) z_gens.push_back(std::vector<long long>(v.begin(), v.begin() + dim2));
    IMat z_basis = integer_lattice_row_basis(z_gens, dim2);

    // coboundary lattice generators: delta of unit 1-cochains, plus moduli
    std::vector<std::vector<long long>> b_gens;
    for (int g : nontrivial)
        for (int j = 0; j < r; ++j) {
            CochainTable a = CochainTable::zero1(m);
            a.at(g)[j] = 1;
            CochainTable d = coboundary(m, a);
            std::vector<long long> vec(dim2, 0);
            for (int x : nontrivial)
                for (int y : nontrivial)
                    for (int i = 0; i < r; ++i) vec[var_of(x, y, i)] = d.at(x, y)[i];
            b_gens.push_back(std::move(vec));
        }
    for (int g : nontrivial)
        for (int h : nontrivial)
            for (int i = 0; i < r; ++i) {
                std::vector<long long> vec(dim2, 0);
                vec[var_of(g, h, i)] = m.factors[i];
                b_gens.push_back(std::move(vec));
            }

    // coefficients of the B generators in the Z basis: rows of z_basis span,
    // so solve x^T Z = b^T, i.e. Z^T x = b
    QMat zt(dim2, QVec(dim2, Rat(0)));
    for (int i = 0; i < dim2; ++i)
        for (int j = 0; j < dim2; ++j) zt[i][j] = Rat(z_basis[j][i]);
    IMat coeff_cols(dim2, std::vector<long long>(b_gens.size(), 0));
    for (size_t bidx = 0; bidx < b_gens.size(); ++bidx) {
        QVec rhs(dim2);
        for (int i = 0; i < dim2; ++i) rhs[i] = Rat(b_gens[bidx][i]);
        auto sol = qmat_solve(zt, rhs);
        if (!sol) throw std::logic_error("h2: coboundary outside cocycle lattice");
        for (int i = 0; i < dim2; ++i) {
            if (!(*sol)[i].is_integer()) throw std::logic_error("h2: non-integral coefficient");
            coeff_cols[i][bidx] = (*sol)[i].num;
        }
    }
    SmithForm s = smith_normal_form(coeff_cols);
    std::vector<long long> out;
    for (long long dgl : s.diag) {
        long long ad = std::llabs(dgl);
        if (ad == 0) throw std::logic_error("h2: quotient not finite");
        if (ad > 1) out.push_back(ad);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Extensions
// ---------------------------------------------------------------------------

ExtensionData::ExtensionData(FiniteGroup e_, std::vector<int> t_, FiniteGroup f_,
                             std::vector<int> pi_, std::vector<int> section_)
    : e(std::move(e_)), t_elements(std::move(t_)), f(std::move(f_)), pi(std::move(pi_)),
      section(std::move(section_)) {
    std::set<int> tset(t_elements.begin(), t_elements.end());
    if (!tset.count(e.identity())) throw std::invalid_argument("ExtensionData: T misses identity");
    for (int a : t_elements)
        for (int b : t_elements) {
            if (!tset.count(e.mul(a, b))) throw std::invalid_argument("ExtensionData: T not closed");
            if (e.mul(a, b) != e.mul(b, a))
                throw std::invalid_argument("ExtensionData: T not abelian");
        }
    if (!e.is_normal(t_elements)) throw std::invalid_argument("ExtensionData: T not normal");
    if (static_cast<int>(pi.size()) != e.size())
        throw std::invalid_argument("ExtensionData: pi size");
    for (int a = 0; a < e.size(); ++a)
        for (int b = 0; b < e.size(); ++b)
            if (pi[e.mul(a, b)] != f.mul(pi[a], pi[b]))
                throw std::invalid_argument("ExtensionData: pi not a homomorphism");
    for (int a : t_elements)
        if (pi[a] != f.identity()) throw std::invalid_argument("ExtensionData: pi(T) != e");
    // kernel of pi must be exactly T
    size_t kernel_size = 0;
    for (int a = 0; a < e.size(); ++a)
        if (pi[a] == f.identity()) ++kernel_size;
    if (kernel_size != t_elements.size())
        throw std::invalid_argument("ExtensionData: ker(pi) != T");
    if (static_cast<int>(section.size()) != f.size())
        throw std::invalid_argument("ExtensionData: section size");
    if (section[f.identity()] != e.identity())
        throw std::invalid_argument("ExtensionData: section not normalized");
    for (int g = 0; g < f.size(); ++g)
        if (pi[section[g]] != g) throw std::invalid_argument("ExtensionData: pi o s != id");
}

ExtensionModule module_from_extension(const ExtensionData& ext) {
    ExtensionModule out{FiniteModule::trivial(trivial_group(), {1}), {}, {}, {}};
    auto dec = abelian_decomposition(ext.e, ext.t_elements);

    int r = static_cast<int>(dec.factors.size());
    if (r == 0) {
        // trivial T: rank-1 module with factor 1
        std::vector<IMat> act(ext.f.size(), imat_identity(1));
        out.module = FiniteModule(ext.f, {1}, std::move(act));
        out.generators = {};
        out.coords_of.assign(ext.e.size(), {});
        out.coords_of[ext.e.identity()] = {0};
        out.element_of_coords = {ext.e.identity()};
        return out;
    }

    // conjugation action of F through the section: matrix column j holds the
    // coordinates of s(g) gen_j s(g)^{-1}
    std::vector<IMat> action(ext.f.size(), IMat(r, std::vector<long long>(r, 0)));
    for (int g = 0; g < ext.f.size(); ++g) {
        int sg = ext.section[g];
        for (int j = 0; j < r; ++j) {
            int img = ext.e.conj(sg, dec.generators[j]);
            const auto& coords = dec.coords[img];
            for (int i = 0; i < r; ++i) action[g][i][j] = coords[i];
        }
    }
    out.module = FiniteModule(ext.f, dec.factors, std::move(action));
    out.generators = dec.generators;
    out.coords_of.assign(ext.e.size(), {});
    long long total = 1;
    for (long long k : dec.factors) total *= k;
    out.element_of_coords.assign(total, -1);
    for (int a : ext.t_elements) {
        out.coords_of[a] = std::vector<long long>(dec.coords[a].begin(), dec.coords[a].end());
        long long idx = 0;
        for (int i = r - 1; i >= 0; --i) idx = idx * dec.factors[i] + dec.coords[a][i];
        out.element_of_coords[idx] = a;
    }
    return out;
}

long long ExtensionModule::flat_index(const FiniteModule::Elem& x) const {
    long long idx = 0;
    for (int i = static_cast<int>(x.size()) - 1; i >= 0; --i)
        idx = idx * module.factors[i] + x[i];
    return idx;
}

int ExtensionModule::element_of(const FiniteModule::Elem& x) const {
    int el = element_of_coords[flat_index(module.reduce(x))];
    if (el < 0) throw std::logic_error("ExtensionModule: unmapped coordinates");
    return el;
}

CochainTable cocycle_from_section(const ExtensionData& ext, const ExtensionModule& em) {
    CochainTable out = CochainTable::zero2(em.module);
    std::set<int> tset(ext.t_elements.begin(), ext.t_elements.end());
    for (int g = 0; g < ext.f.size(); ++g)
        for (int h = 0; h < ext.f.size(); ++h) {
            int prod = ext.e.mul(ext.section[g], ext.section[h]);
            int v = ext.e.mul(prod, ext.e.inv(ext.section[ext.f.mul(g, h)]));
            if (!tset.count(v)) throw std::logic_error("cocycle_from_section: value outside T");
            out.at(g, h) = em.coords_of[v];
        }
    if (!is_two_cocycle(em.module, out))
        throw std::logic_error("cocycle_from_section: cocycle identity failed");
    return out;
}

ExtensionData grid_extension_from_semidirect(const SemidirectGroup& g, long long n) {
    if (n < 1) throw std::invalid_argument("grid_extension_from_semidirect: n >= 1 required");
    int m = g.torus_dim();
    const FiniteGroup& f = g.finite_part();
    long long grid = 1;
    for (int i = 0; i < m; ++i) grid *= n;
    long long total = grid * f.size();

    auto encode = [&](const std::vector<long long>& t, int fg) {
        long long idx = 0;
        for (int i = m - 1; i >= 0; --i) idx = idx * n + t[i];
        return static_cast<int>(idx * f.size() + fg);
    };
    auto decode_t = [&](int id) {
        std::vector<long long> t(m);
        long long idx = id / f.size();
        for (int i = 0; i < m; ++i) {
            t[i] = idx % n;
            idx /= n;
        }
        return t;
    };
    auto decode_f = [&](int id) { return id % f.size(); };

    std::vector<std::string> ids(total);
    std::vector<std::vector<int>> table(total, std::vector<int>(total));
    for (int a = 0; a < total; ++a) {
        auto ta = decode_t(a);
        int fa = decode_f(a);
        std::ostringstream os;
        os << "(";
        for (int i = 0; i < m; ++i) os << ta[i] << (i + 1 < m ? "," : "");
        os << ";" << f.id(fa) << ")";
        ids[a] = os.str();
        for (int b = 0; b < total; ++b) {
            auto tb = decode_t(b);
            int fb = decode_f(b);
            // (ta, fa)(tb, fb) = (ta + alpha_fa tb, fa fb) on the (1/n)-grid
            std::vector<long long> t(m, 0);
            const IMat& mat = g.action(fa);
            for (int i = 0; i < m; ++i) {
                long long acc = ta[i];
                for (int jj = 0; jj < m; ++jj) acc += mat[i][jj] * tb[jj];
                t[i] = ((acc % n) + n) % n;
            }
            table[a][b] = encode(t, f.mul(fa, fb));
        }
    }
    FiniteGroup e(std::move(ids), std::move(table));

    std::vector<int> t_elems;
    for (long long idx = 0; idx < grid; ++idx) t_elems.push_back(static_cast<int>(idx * f.size()));
    std::vector<int> pi(total);
    for (int a = 0; a < total; ++a) pi[a] = decode_f(a);
    std::vector<int> section(f.size());
    for (int fg = 0; fg < f.size(); ++fg) section[fg] = encode(std::vector<long long>(m, 0), fg);
    return ExtensionData(std::move(e), std::move(t_elems), f, std::move(pi), std::move(section));
}

// ---------------------------------------------------------------------------
// Splitting after quotient
// ---------------------------------------------------------------------------

SplittingReport split_after_quotient(const ExtensionData& ext) {
    SplittingReport rep;
    ExtensionModule em = module_from_extension(ext);
    const FiniteModule& mod = em.module;
    long long n_mod = mod.factors.empty() ? 1 : mod.factors[0];
    for (long long k : mod.factors)
        if (k != n_mod) {
            rep.reason = "kernel is not a full grid ((1/N)Z)^d / Z^d";
            return rep;
        }
    long long m = ext.f.size();
    rep.n_modulus = n_mod;
    rep.m = m;
    if (n_mod % m != 0) {
        rep.reason = "grid modulus N not divisible by |F|";
        return rep;
    }

    CochainTable fs = cocycle_from_section(ext, em);

    // solve m (f_s + delta a) = 0 over the module: unknowns a(g), g != e
    const auto& grp = ext.f;
    int nf = grp.size();
    int e = grp.identity();
    int r = mod.rank();
    std::vector<int> nontrivial;
    for (int g = 0; g < nf; ++g)
        if (g != e) nontrivial.push_back(g);
    std::map<int, int> slot;
    for (size_t i = 0; i < nontrivial.size(); ++i) slot[nontrivial[i]] = static_cast<int>(i);
    int nvars = static_cast<int>(nontrivial.size()) * r;

    std::vector<std::vector<long long>> rows;
    std::vector<long long> rhs, moduli;
    for (int g = 0; g < nf; ++g)
        for (int h = 0; h < nf; ++h) {
            int gh = grp.mul(g, h);
            for (int i = 0; i < r; ++i) {
                std::vector<long long> row(nvars, 0);
                if (g != e)
                    row[slot[g] * r + i] += m;
                if (h != e)
                    for (int j = 0; j < r; ++j) row[slot[h] * r + j] += m * mod.action[g][i][j];
                if (gh != e) row[slot[gh] * r + i] -= m;
                rows.push_back(std::move(row));
                rhs.push_back(-m * fs.at(g, h)[i]);
                moduli.push_back(n_mod);
            }
        }
    IMat a_mat(rows.begin(), rows.end());
    auto sol = solve_modular(a_mat, rhs, moduli);
    if (!sol) {
        rep.reason = "m [f_s] does not vanish over this grid; increase N";
        return rep;
    }

    rep.found = true;
    rep.a = CochainTable::zero1(mod);
    for (int g : nontrivial)
        for (int i = 0; i < r; ++i) rep.a.at(g)[i] = ((*sol)[slot[g] * r + i] % n_mod + n_mod) % n_mod;
    rep.a_prime = CochainTable::zero1(mod);
    for (int g = 0; g < nf; ++g) rep.a_prime.at(g) = mod.scale(m, rep.a.at(g));

    // modified section s'(g) = a(g) s(g)
    rep.section_prime.assign(nf, 0);
    for (int g = 0; g < nf; ++g) {
        int t_el = em.element_of(rep.a.at(g));
        rep.section_prime[g] = ext.e.mul(t_el, ext.section[g]);
    }
    ExtensionData ext_prime(ext.e, ext.t_elements, ext.f, ext.pi, rep.section_prime);
    rep.f_sprime = cocycle_from_section(ext_prime, em);

    // T_m = m-torsion of the grid
    std::set<int> tm;
    for (int a : ext.t_elements) {
        const auto& c = em.coords_of[a];
        bool torsion = true;
        for (int i = 0; i < r; ++i)
            if ((m * c[i]) % n_mod != 0) torsion = false;
        if (torsion) tm.insert(a);
    }
    rep.tm_size = static_cast<long long>(tm.size());

    rep.cocycle_in_tm = true;
    for (int g = 0; g < nf; ++g)
        for (int h = 0; h < nf; ++h) {
            int el = em.element_of(rep.f_sprime.at(g, h));
            if (!tm.count(el)) rep.cocycle_in_tm = false;
        }

    // F' = <s'(F) u T_m>
    std::vector<int> gens(tm.begin(), tm.end());
    for (int g = 0; g < nf; ++g) gens.push_back(rep.section_prime[g]);
    auto fprime = ext.e.closure(gens);
    rep.fprime_order = static_cast<long long>(fprime.size());

    // T . F' = E and T n F' = T_m
    std::set<int> product;
    for (int t : ext.t_elements)
        for (int x : fprime) product.insert(ext.e.mul(t, x));
    rep.t_times_fprime_is_e = static_cast<int>(product.size()) == ext.e.size();
    std::set<int> tset(ext.t_elements.begin(), ext.t_elements.end());
    std::set<int> cap;
    for (int x : fprime)
        if (tset.count(x)) cap.insert(x);
    rep.t_cap_fprime_is_tm = cap == tm;
    return rep;
}

ExtensionData extension_from_json(const std::string& json_text) {
    auto j = nlohmann::json::parse(json_text);
    auto parse_group = [&](const nlohmann::json& tj) {
        std::vector<std::string> ids;
        for (const auto& id : tj.at(0)) ids.push_back(id.get<std::string>());
        int n = static_cast<int>(ids.size());
        std::vector<std::vector<int>> table(n, std::vector<int>(n));
        auto index_of = [&](const std::string& s) {
            for (int i = 0; i < n; ++i)
                if (ids[i] == s) return i;
            throw std::invalid_argument("extension_from_json: unknown id " + s);
        };
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) table[a][b] = index_of(tj.at(a).at(b).get<std::string>());
        return FiniteGroup(ids, table);
    };
    FiniteGroup e = parse_group(j.at("E"));
    FiniteGroup f = parse_group(j.at("F"));
    std::vector<int> t;
    for (const auto& id : j.at("T")) t.push_back(e.index_of(id.get<std::string>()));
    std::vector<int> pi(e.size());
    for (int a = 0; a < e.size(); ++a) pi[a] = f.index_of(j.at("pi").at(e.id(a)).get<std::string>());
    std::vector<int> section(f.size());
    for (int g = 0; g < f.size(); ++g)
        section[g] = e.index_of(j.at("section").at(f.id(g)).get<std::string>());
    return ExtensionData(std::move(e), std::move(t), std::move(f), std::move(pi),
                         std::move(section));
}

}  // namespace grouplab

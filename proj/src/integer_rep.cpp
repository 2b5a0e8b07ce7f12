#include "grouplab/integer_rep.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace grouplab {

IntegerRep::IntegerRep(FiniteGroup g, std::vector<IMat> mats)
    : group(std::move(g)), matrices(std::move(mats)) {
    if (matrices.size() != static_cast<size_t>(group.size()))
        throw std::invalid_argument("IntegerRep: one matrix per element required");
    size_t m = matrices[0].size();
    if (m == 0) throw std::invalid_argument("IntegerRep: zero-dimensional");
    for (const auto& mat : matrices) {
        if (mat.size() != m) throw std::invalid_argument("IntegerRep: dimension mismatch");
        for (const auto& row : mat)
            if (row.size() != m) throw std::invalid_argument("IntegerRep: non-square matrix");
        long long det = imat_det(mat);
        if (det != 1 && det != -1)
            throw std::invalid_argument("IntegerRep: image matrix not in GL(m,Z)");
    }
    if (!imat_is_identity(matrices[group.identity()]))
        throw std::invalid_argument("IntegerRep: identity does not map to I");
    for (int a = 0; a < group.size(); ++a)
        for (int b = 0; b < group.size(); ++b)
            if (!imat_eq(imat_mul(matrices[a], matrices[b]), matrices[group.mul(a, b)]))
                throw std::invalid_argument("IntegerRep: homomorphism check failed");
}

RationalLattice RationalLattice::from_generators(int m, const QMat& generator_columns) {
    RationalLattice out;
    out.basis = lattice_canonical_basis(m, generator_columns);
    out.index_data = lattice_quotient_factors(out.basis);
    return out;
}

RationalLattice RationalLattice::standard(int m) {
    return from_generators(m, QMat(m, QVec(0)));
}

RationalLattice RationalLattice::scaled(int m, long long k) {
    QMat gens(m, QVec(m, Rat(0)));
    for (int i = 0; i < m; ++i) gens[i][i] = Rat(1, k);
    return from_generators(m, gens);
}

FaithfulnessReport is_faithful(const IntegerRep& rep) {
    FaithfulnessReport out;
    for (int g = 0; g < rep.group.size(); ++g)
        if (imat_is_identity(rep.matrices[g])) out.kernel.push_back(g);
    out.faithful = out.kernel.size() == 1;
    return out;
}

namespace {

bool is_scalar(const IMat& a) {
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a.size(); ++j) {
            if (i != j && a[i][j] != 0) return false;
            if (i == j && a[i][j] != a[0][0]) return false;
        }
    return true;
}

/// Verify W (rows) spans a subspace invariant under every image matrix.
bool verify_invariant(const IntegerRep& rep, const QMat& w_rows) {
    QMat basis = qmat_row_basis(w_rows);
    if (basis.empty() || basis.size() >= static_cast<size_t>(rep.dim())) return false;
    for (const auto& mat : rep.matrices) {
        QMat q = qmat_from_int(mat);
        for (const auto& row : basis) {
            // image of the row vector under the matrix acting on columns:
            // treat row as a column vector
            QVec img = qmat_apply(q, row);
            if (!qmat_in_span(basis, img)) return false;
        }
    }
    return true;
}

/// Rational eigenlines of a 2x2 integer matrix.
std::vector<QVec> rational_eigenlines_2x2(const IMat& a) {
    // char poly x^2 - tr x + det; rational roots need a perfect-square discriminant
    long long tr = a[0][0] + a[1][1];
    long long det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    long long disc = tr * tr - 4 * det;
    std::vector<QVec> lines;
    if (disc < 0) return lines;
    long long s = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(disc))));
    while (s * s < disc) ++s;
    while (s * s > disc) --s;
    if (s * s != disc) return lines;
    for (long long root2 : {tr + s, tr - s}) {
        Rat lambda(root2, 2);
        // kernel of (A - lambda I): [[a-l, b],[c, d-l]]
        Rat a00 = Rat(a[0][0]) - lambda, a01 = Rat(a[0][1]);
        Rat a10 = Rat(a[1][0]), a11 = Rat(a[1][1]) - lambda;
        QVec v;
        if (!a00.is_zero() || !a01.is_zero())
            v = {a01, -a00};
        else if (!a10.is_zero() || !a11.is_zero())
            v = {a11, -a10};
        else
            v = {Rat(1), Rat(0)};  // matrix is scalar lambda; any line works
        bool dup = false;
        for (const auto& u : lines)
            if ((u[0] * v[1] - u[1] * v[0]).is_zero()) dup = true;
        if (!dup) lines.push_back(v);
        if (s == 0) break;
    }
    return lines;
}

// --- minimal polynomial and rational factorization helpers (m <= 4) --------

/// Minimal polynomial of a rational matrix, monic, as coefficient vector
/// low-degree-first. Found as the first linear dependence among I, z, z^2...
QVec minimal_polynomial(const QMat& z) {
    size_t n = z.size();
    std::vector<QMat> powers{qmat_identity(static_cast<int>(n))};
    for (size_t k = 1; k <= n; ++k) powers.push_back(qmat_mul(powers.back(), z));
    for (size_t deg = 1; deg <= n; ++deg) {
        // solve sum_{k<deg} c_k z^k = -z^deg
        QMat a(n * n, QVec(deg, Rat(0)));
        QVec b(n * n, Rat(0));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                for (size_t k = 0; k < deg; ++k) a[i * n + j][k] = powers[k][i][j];
                b[i * n + j] = -powers[deg][i][j];
            }
        auto sol = qmat_solve(a, b);
        if (sol) {
            QVec p = *sol;
            p.push_back(Rat(1));
            return p;
        }
    }
    throw std::logic_error("minimal_polynomial: not annihilated by degree n");
}

/// Rational roots of a polynomial with rational coefficients (low first).
std::vector<Rat> rational_roots(const QVec& poly) {
    // clear denominators to get integer coefficients
    long long lcm = 1;
    for (const auto& c : poly) lcm = std::lcm(lcm, c.den);
    std::vector<long long> ic;
    for (const auto& c : poly) ic.push_back(c.num * (lcm / c.den));
    while (!ic.empty() && ic.back() == 0) ic.pop_back();
    if (ic.size() <= 1) return {};
    // strip powers of x
    size_t low = 0;
    while (low < ic.size() && ic[low] == 0) ++low;
    std::vector<Rat> roots;
    if (low > 0) roots.push_back(Rat(0));
    std::vector<long long> c(ic.begin() + low, ic.end());
    long long a0 = std::llabs(c.front()), an = std::llabs(c.back());
    auto divisors = [](long long v) {
        std::vector<long long> d;
        for (long long i = 1; i * i <= v; ++i)
            if (v % i == 0) { d.push_back(i); d.push_back(v / i); }
        return d;
    };
    auto eval_zero = [&](const Rat& r) {
        Rat acc(0), pw(1);
        for (const auto& coef : c) { acc += Rat(coef) * pw; pw *= r; }
        return acc.is_zero();
    };
    for (long long p : divisors(a0))
        for (long long q : divisors(an))
            for (int sgn = -1; sgn <= 1; sgn += 2) {
                Rat cand(sgn * p, q);
                bool dup = false;
                for (const auto& r : roots)
                    if (r == cand) dup = true;
                if (!dup && eval_zero(cand)) roots.push_back(cand);
            }
    return roots;
}

/// A monic rational factor of the monic polynomial p (low first), of degree
/// >= 1 and < deg p, if one exists with small search effort: linear factors
/// from rational roots, quadratic factors by bounded coefficient search.
std::optional<QVec> nontrivial_monic_factor(const QVec& poly) {
    size_t deg = poly.size() - 1;
    if (deg <= 1) return std::nullopt;
    auto roots = rational_roots(poly);
    if (!roots.empty()) return QVec{-roots[0], Rat(1)};
    if (deg < 4) return std::nullopt;  // degree 2,3 with no rational root: irreducible
    // search monic quadratic factors x^2 + a x + b with small rational a, b
    // (desk scale: representations here have tiny coefficients)
    auto divides = [&](const QVec& f) {
        // polynomial long division by a monic f: zero remainder <=> divisible
        QVec r = poly;
        while (r.size() >= f.size()) {
            Rat lead = r.back();
            size_t shift = r.size() - f.size();
            for (size_t i = 0; i < f.size(); ++i) r[shift + i] -= lead * f[i];
            while (!r.empty() && r.back().is_zero()) r.pop_back();
        }
        return r.empty();
    };
    for (long long a = -6; a <= 6; ++a)
        for (long long b = -6; b <= 6; ++b) {
            if (b == 0) continue;
            QVec f{Rat(b), Rat(a), Rat(1)};
            if (divides(f)) return f;
        }
    return std::nullopt;
}

/// p(z) for a monic polynomial (low first) and square rational matrix z.
QMat poly_of_matrix(const QVec& poly, const QMat& z) {
    size_t n = z.size();
    QMat acc(n, QVec(n, Rat(0)));
    QMat pw = qmat_identity(static_cast<int>(n));
    for (size_t k = 0; k < poly.size(); ++k) {
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) acc[i][j] += poly[k] * pw[i][j];
        if (k + 1 < poly.size()) pw = qmat_mul(pw, z);
    }
    return acc;
}

/// Kernel of a rational matrix, as rows.
QMat rational_kernel_rows(const QMat& a) {
    size_t n = a[0].size();
    QMat w = a;
    qmat_row_reduce(w);
    // identify pivot columns
    std::vector<int> pivot_of_col(n, -1);
    size_t r = 0;
    for (size_t c = 0; c < n && r < w.size(); ++c)
        if (!w[r][c].is_zero()) pivot_of_col[c] = static_cast<int>(r++);
    QMat kernel;
    for (size_t c = 0; c < n; ++c) {
        if (pivot_of_col[c] >= 0) continue;
        QVec v(n, Rat(0));
        v[c] = Rat(1);
        for (size_t cc = 0; cc < n; ++cc)
            if (pivot_of_col[cc] >= 0) v[cc] = -w[pivot_of_col[cc]][c];
        kernel.push_back(v);
    }
    return kernel;
}

}  // namespace

IrreducibilityVerdict rational_irreducible(const IntegerRep& rep, unsigned seed) {
    int m = rep.dim();
    if (m == 1) return Irreducible{true};

    if (m == 2) {
        // complete: an invariant line must be a common rational eigenline
        const IMat* pivot = nullptr;
        for (const auto& mat : rep.matrices)
            if (!is_scalar(mat)) { pivot = &mat; break; }
        if (!pivot) {
            QMat w{{Rat(1), Rat(0)}};
            return Reducible{w};  // scalar action fixes every line
        }
        for (const auto& line : rational_eigenlines_2x2(*pivot)) {
            QMat w{line};
            if (verify_invariant(rep, w)) return Reducible{w};
        }
        return Irreducible{true};
    }

    if (m > 4) return Undecided{};

    // generic-element method for m in {3, 4}
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long long> coef(-3, 3);
    bool saw_full_degree_irreducible = false;
    const int draws = 24;
    for (int draw = 0; draw < draws; ++draw) {
        QMat z(m, QVec(m, Rat(0)));
        for (const auto& mat : rep.matrices) {
            long long c = coef(rng);
            if (c == 0) continue;
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) z[i][j] += Rat(c * mat[i][j]);
        }
        QVec mu = minimal_polynomial(z);
        auto factor = nontrivial_monic_factor(mu);
        if (factor) {
            QMat pz = poly_of_matrix(*factor, z);
            QMat ker = rational_kernel_rows(pz);
            if (!ker.empty() && ker.size() < static_cast<size_t>(m) && verify_invariant(rep, ker))
                return Reducible{ker};
        } else if (mu.size() == static_cast<size_t>(m) + 1) {
            saw_full_degree_irreducible = true;
        }
    }
    if (saw_full_degree_irreducible) return Irreducible{false};
    return Undecided{};
}

bool is_reducible_verdict(const IrreducibilityVerdict& v) {
    return std::holds_alternative<Reducible>(v);
}

IntegerRep invariant_lattice_quotient(const IntegerRep& rep, const RationalLattice& lattice) {
    int m = rep.dim();
    if (static_cast<int>(lattice.basis.size()) != m)
        throw std::invalid_argument("invariant_lattice_quotient: dimension mismatch");
    QMat b = lattice.basis;
    QMat binv = qmat_inverse(b);
    std::vector<IMat> induced;
    for (int g = 0; g < rep.group.size(); ++g) {
        QMat q = qmat_mul(binv, qmat_mul(qmat_from_int(rep.matrices[g]), b));
        IMat out(m, std::vector<long long>(m));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                if (!q[i][j].is_integer()) {
                    std::ostringstream os;
                    os << "invariant_lattice_quotient: lattice not invariant under element '"
                       << rep.group.id(g) << "' (basis column " << j << ")";
                    throw std::invalid_argument(os.str());
                }
                out[i][j] = q[i][j].num;
            }
        induced.push_back(std::move(out));
    }
    return IntegerRep(rep.group, std::move(induced));
}

std::optional<GlzConjugacy> glz_conjugate(const IntegerRep& a, const IntegerRep& b,
                                          long long entry_bound) {
    if (a.dim() != b.dim()) throw std::invalid_argument("glz_conjugate: dimension mismatch");
    if (a.group.size() != b.group.size())
        throw std::invalid_argument("glz_conjugate: group size mismatch");
    int m = a.dim();
    auto autos = a.group.automorphisms();

    // enumerate P row-major, entries in [-bound, bound], lexicographically
    long long span = 2 * entry_bound + 1;
    long long total = 1;
    for (int i = 0; i < m * m; ++i) {
        total *= span;
        if (total > 100'000'000LL)
            throw std::invalid_argument("glz_conjugate: search space too large");
    }
    for (long long code = 0; code < total; ++code) {
        long long c = code;
        IMat p(m, std::vector<long long>(m));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                p[i][j] = (c % span) - entry_bound;
                c /= span;
            }
        long long det = imat_det(p);
        if (det != 1 && det != -1) continue;
        for (const auto& sigma : autos) {
            bool ok = true;
            for (int g = 0; g < a.group.size() && ok; ++g)
                if (!imat_eq(imat_mul(p, a.matrices[g]), imat_mul(b.matrices[sigma[g]], p)))
                    ok = false;
            if (ok) return GlzConjugacy{p, sigma};
        }
    }
    return std::nullopt;
}

MinimalityReport minimality_check(const IntegerRep& rep) {
    MinimalityReport out;
    out.faithful = is_faithful(rep).faithful;
    out.irreducibility = rational_irreducible(rep);
    out.scale_quotients_self_conjugate = true;
    for (long long k : {2LL, 3LL}) {
        auto induced = invariant_lattice_quotient(rep, RationalLattice::scaled(rep.dim(), k));
        bool same = true;
        for (int g = 0; g < rep.group.size(); ++g)
            if (!imat_eq(induced.matrices[g], rep.matrices[g])) same = false;
        if (!same) {
            auto conj = glz_conjugate(induced, rep);
            if (!conj) out.scale_quotients_self_conjugate = false;
        }
    }
    bool irr = std::holds_alternative<Irreducible>(out.irreducibility);
    out.minimal = out.faithful && irr && out.scale_quotients_self_conjugate;
    return out;
}

IntegerRep integer_rep_from_json(const std::string& json_text) {
    auto j = nlohmann::json::parse(json_text);
    auto table_json = j.at("table");
    // element ids are the first table row (e * x = x, and row 0 is the identity row)
    std::vector<std::string> ids;
    for (const auto& id : table_json.at(0)) ids.push_back(id.get<std::string>());
    int n = static_cast<int>(ids.size());
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    auto index_of = [&](const std::string& s) {
        for (int i = 0; i < n; ++i)
            if (ids[i] == s) return i;
        throw std::invalid_argument("integer_rep_from_json: unknown id " + s);
    };
    for (int i = 0; i < n; ++i)
        for (int j2 = 0; j2 < n; ++j2)
            table[i][j2] = index_of(table_json.at(i).at(j2).get<std::string>());
    FiniteGroup group(ids, table);
    int m = j.at("m").get<int>();
    std::vector<IMat> mats(n, IMat(m, std::vector<long long>(m, 0)));
    for (int g = 0; g < n; ++g) {
        auto mj = j.at("matrices").at(ids[g]);
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c) mats[g][r][c] = mj.at(r).at(c).get<long long>();
    }
    return IntegerRep(std::move(group), std::move(mats));
}

std::string minimality_report_to_json(const MinimalityReport& report) {
    nlohmann::json j;
    j["faithful"] = report.faithful;
    if (std::holds_alternative<Reducible>(report.irreducibility)) {
        j["irreducible"] = false;
        nlohmann::json w = nlohmann::json::array();
        for (const auto& row : std::get<Reducible>(report.irreducibility).witness_rows) {
            nlohmann::json r = nlohmann::json::array();
            for (const auto& v : row) r.push_back(v.str());
            w.push_back(r);
        }
        j["reducible_witness"] = w;
    } else if (std::holds_alternative<Irreducible>(report.irreducibility)) {
        j["irreducible"] = true;
        j["irreducibility_certified"] = std::get<Irreducible>(report.irreducibility).certified;
    } else {
        j["irreducible"] = nullptr;
    }
    j["scale_quotients_self_conjugate"] = report.scale_quotients_self_conjugate;
    j["minimal"] = report.minimal;
    return j.dump(2);
}

}  // namespace grouplab

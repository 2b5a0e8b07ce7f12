#include "grouplab/exact_linalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace grouplab {

namespace {

long long checked_ll(__int128 v, const char* what) {
    if (v > static_cast<__int128>(INT64_MAX) || v < static_cast<__int128>(INT64_MIN))
        throw std::overflow_error(std::string("integer overflow in ") + what);
    return static_cast<long long>(v);
}

long long mul_ll(long long a, long long b, const char* what = "imat") {
    return checked_ll(static_cast<__int128>(a) * b, what);
}

void check_rect(const IMat& a) {
    if (a.empty()) throw std::invalid_argument("empty matrix");
    for (const auto& r : a)
        if (r.size() != a[0].size()) throw std::invalid_argument("ragged matrix");
}

}  // namespace

IMat imat_identity(int n) {
    IMat out(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i) out[i][i] = 1;
    return out;
}

IMat imat_mul(const IMat& a, const IMat& b) {
    check_rect(a);
    check_rect(b);
    size_t n = a.size(), k = a[0].size(), m = b[0].size();
    if (b.size() != k) throw std::invalid_argument("imat_mul: shape mismatch");
    IMat out(n, std::vector<long long>(m, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < m; ++j) {
            __int128 acc = 0;
            for (size_t l = 0; l < k; ++l) acc += static_cast<__int128>(a[i][l]) * b[l][j];
            out[i][j] = checked_ll(acc, "imat_mul");
        }
    return out;
}

IMat imat_neg(const IMat& a) {
    IMat out = a;
    for (auto& r : out)
        for (auto& v : r) v = -v;
    return out;
}

bool imat_eq(const IMat& a, const IMat& b) { return a == b; }

bool imat_is_identity(const IMat& a) {
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != a.size()) return false;
        for (size_t j = 0; j < a.size(); ++j)
            if (a[i][j] != (i == j ? 1 : 0)) return false;
    }
    return true;
}

long long imat_det(const IMat& a) {
    check_rect(a);
    if (a.size() != a[0].size()) throw std::invalid_argument("imat_det: not square");
    Rat d = qmat_det(qmat_from_int(a));
    if (!d.is_integer()) throw std::logic_error("imat_det: non-integer determinant");
    return d.num;
}

IMat imat_unimodular_inverse(const IMat& a) {
    long long det = imat_det(a);
    if (det != 1 && det != -1) throw std::invalid_argument("imat_unimodular_inverse: |det| != 1");
    QMat inv = qmat_inverse(qmat_from_int(a));
    IMat out(a.size(), std::vector<long long>(a.size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a.size(); ++j) {
            if (!inv[i][j].is_integer()) throw std::logic_error("unimodular inverse not integral");
            out[i][j] = inv[i][j].num;
        }
    return out;
}

QMat qmat_identity(int n) {
    QMat out(n, QVec(n, Rat(0)));
    for (int i = 0; i < n; ++i) out[i][i] = Rat(1);
    return out;
}

QMat qmat_from_int(const IMat& a) {
    QMat out(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        out[i].reserve(a[i].size());
        for (long long v : a[i]) out[i].push_back(Rat(v));
    }
    return out;
}

QMat qmat_mul(const QMat& a, const QMat& b) {
    size_t n = a.size(), k = a[0].size(), m = b[0].size();
    if (b.size() != k) throw std::invalid_argument("qmat_mul: shape mismatch");
    QMat out(n, QVec(m, Rat(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < m; ++j) {
            Rat acc(0);
            for (size_t l = 0; l < k; ++l) acc += a[i][l] * b[l][j];
            out[i][j] = acc;
        }
    return out;
}

QVec qmat_apply(const QMat& a, const QVec& x) {
    QVec out(a.size(), Rat(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != x.size()) throw std::invalid_argument("qmat_apply: shape mismatch");
        Rat acc(0);
        for (size_t j = 0; j < x.size(); ++j) acc += a[i][j] * x[j];
        out[i] = acc;
    }
    return out;
}

Rat qmat_det(const QMat& a) {
    size_t n = a.size();
    QMat w = a;
    Rat det(1);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && w[piv][col].is_zero()) ++piv;
        if (piv == n) return Rat(0);
        if (piv != col) { std::swap(w[piv], w[col]); det = -det; }
        det *= w[col][col];
        Rat inv = Rat(1) / w[col][col];
        for (size_t r = col + 1; r < n; ++r) {
            if (w[r][col].is_zero()) continue;
            Rat f = w[r][col] * inv;
            for (size_t c = col; c < n; ++c) w[r][c] -= f * w[col][c];
        }
    }
    return det;
}

QMat qmat_inverse(const QMat& a) {
    size_t n = a.size();
    QMat w = a, inv = qmat_identity(static_cast<int>(n));
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && w[piv][col].is_zero()) ++piv;
        if (piv == n) throw std::invalid_argument("qmat_inverse: singular matrix");
        std::swap(w[piv], w[col]);
        std::swap(inv[piv], inv[col]);
        Rat f = Rat(1) / w[col][col];
        for (size_t c = 0; c < n; ++c) { w[col][c] *= f; inv[col][c] *= f; }
        for (size_t r = 0; r < n; ++r) {
            if (r == col || w[r][col].is_zero()) continue;
            Rat g = w[r][col];
            for (size_t c = 0; c < n; ++c) {
                w[r][c] -= g * w[col][c];
                inv[r][c] -= g * inv[col][c];
            }
        }
    }
    return inv;
}

int qmat_row_reduce(QMat& rows) {
    if (rows.empty()) return 0;
    size_t ncols = rows[0].size();
    size_t rank = 0;
    for (size_t col = 0; col < ncols && rank < rows.size(); ++col) {
        size_t piv = rank;
        while (piv < rows.size() && rows[piv][col].is_zero()) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        Rat f = Rat(1) / rows[rank][col];
        for (size_t c = 0; c < ncols; ++c) rows[rank][c] *= f;
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col].is_zero()) continue;
            Rat g = rows[r][col];
            for (size_t c = 0; c < ncols; ++c) rows[r][c] -= g * rows[rank][c];
        }
        ++rank;
    }
    return static_cast<int>(rank);
}

QMat qmat_row_basis(const QMat& rows) {
    QMat w = rows;
    int rank = qmat_row_reduce(w);
    w.resize(rank);
    return w;
}

std::optional<QVec> qmat_solve(const QMat& a, const QVec& b) {
    size_t nr = a.size(), nc = nr ? a[0].size() : 0;
    QMat aug(nr, QVec(nc + 1, Rat(0)));
    for (size_t i = 0; i < nr; ++i) {
        for (size_t j = 0; j < nc; ++j) aug[i][j] = a[i][j];
        aug[i][nc] = b[i];
    }
    qmat_row_reduce(aug);
    QVec x(nc, Rat(0));
    for (size_t r = 0; r < nr; ++r) {
        size_t lead = nc + 1;
        for (size_t c = 0; c <= nc; ++c)
            if (!aug[r][c].is_zero()) { lead = c; break; }
        if (lead == nc) return std::nullopt;  // 0 = nonzero
        if (lead > nc) continue;              // zero row
        x[lead] = aug[r][nc];                 // free vars stay 0
        for (size_t c = lead + 1; c < nc; ++c) x[lead] -= aug[r][c] * x[c];
        // echelon form is fully reduced, so trailing pivot columns are clear
    }
    // verify (cheap at desk scale, catches free-variable interplay)
    for (size_t i = 0; i < nr; ++i) {
        Rat acc(0);
        for (size_t j = 0; j < nc; ++j) acc += a[i][j] * x[j];
        if (acc != b[i]) return std::nullopt;
    }
    return x;
}

bool qmat_in_span(const QMat& basis, const QVec& v) {
    bool vzero = true;
    for (const auto& c : v)
        if (!c.is_zero()) { vzero = false; break; }
    if (basis.empty()) return vzero;
    QMat b2 = basis;
    int r1 = qmat_row_reduce(b2);
    QMat b3 = basis;
    b3.push_back(v);
    int r2 = qmat_row_reduce(b3);
    return r1 == r2;
}

// ---------------------------------------------------------------------------
// Smith normal form
// ---------------------------------------------------------------------------

SmithForm smith_normal_form(const IMat& a) {
    check_rect(a);
    size_t nr = a.size(), nc = a[0].size();
    IMat d = a;
    IMat u = imat_identity(static_cast<int>(nr));
    IMat v = imat_identity(static_cast<int>(nc));

    auto row_add = [&](size_t dst, size_t src, long long f) {
        for (size_t j = 0; j < nc; ++j) d[dst][j] = checked_ll((__int128)d[dst][j] + (__int128)f * d[src][j], "snf");
        for (size_t j = 0; j < nr; ++j) u[dst][j] = checked_ll((__int128)u[dst][j] + (__int128)f * u[src][j], "snf");
    };
    auto col_add = [&](size_t dst, size_t src, long long f) {
        for (size_t i = 0; i < nr; ++i) d[i][dst] = checked_ll((__int128)d[i][dst] + (__int128)f * d[i][src], "snf");
        for (size_t i = 0; i < nc; ++i) v[i][dst] = checked_ll((__int128)v[i][dst] + (__int128)f * v[i][src], "snf");
    };
    auto row_swap = [&](size_t x, size_t y) { std::swap(d[x], d[y]); std::swap(u[x], u[y]); };
    auto col_swap = [&](size_t x, size_t y) {
        for (size_t i = 0; i < nr; ++i) std::swap(d[i][x], d[i][y]);
        for (size_t i = 0; i < nc; ++i) std::swap(v[i][x], v[i][y]);
    };
    auto row_negate = [&](size_t x) {
        for (auto& t : d[x]) t = -t;
        for (auto& t : u[x]) t = -t;
    };

    size_t t = 0;
    while (t < nr && t < nc) {
        // find a pivot of minimal absolute value in the lower-right block
        size_t pi = t, pj = t;
        long long best = 0;
        for (size_t i = t; i < nr; ++i)
            for (size_t j = t; j < nc; ++j) {
                long long av = std::llabs(d[i][j]);
                if (av != 0 && (best == 0 || av < best)) { best = av; pi = i; pj = j; }
            }
        if (best == 0) break;
        row_swap(t, pi);
        col_swap(t, pj);
        if (d[t][t] < 0) row_negate(t);

        bool clean = true;
        for (size_t i = t + 1; i < nr; ++i) {
            if (d[i][t] == 0) continue;
            long long q = d[i][t] / d[t][t];
            row_add(i, t, -q);
            if (d[i][t] != 0) clean = false;
        }
        for (size_t j = t + 1; j < nc; ++j) {
            if (d[t][j] == 0) continue;
            long long q = d[t][j] / d[t][t];
            col_add(j, t, -q);
            if (d[t][j] != 0) clean = false;
        }
        if (!clean) continue;  // smaller remainders exist; pick a new pivot

        // divisibility fix-up: d[t][t] must divide everything below-right
        bool fixed = true;
        for (size_t i = t + 1; i < nr && fixed; ++i)
            for (size_t j = t + 1; j < nc && fixed; ++j)
                if (d[i][j] % d[t][t] != 0) {
                    row_add(t, i, 1);
                    fixed = false;
                }
        if (!fixed) continue;
        ++t;
    }

    SmithForm out;
    out.u = std::move(u);
    out.v = std::move(v);
    out.diag.assign(std::min(nr, nc), 0);
    for (size_t i = 0; i < out.diag.size(); ++i) out.diag[i] = d[i][i];
    out.d = std::move(d);
    return out;
}

std::vector<std::vector<long long>> integer_kernel(const IMat& a) {
    SmithForm s = smith_normal_form(a);
    size_t nc = a[0].size();
    std::vector<std::vector<long long>> kernel;
    for (size_t j = 0; j < nc; ++j) {
        bool zero_col = j >= s.diag.size() || s.diag[j] == 0;
        if (!zero_col) continue;
        std::vector<long long> col(nc);
        for (size_t i = 0; i < nc; ++i) col[i] = s.v[i][j];
        kernel.push_back(std::move(col));
    }
    return kernel;
}

std::optional<std::vector<long long>> solve_integer(const IMat& a, const std::vector<long long>& b) {
    SmithForm s = smith_normal_form(a);
    size_t nr = a.size(), nc = a[0].size();
    if (b.size() != nr) throw std::invalid_argument("solve_integer: shape mismatch");
    // U A V = D, so A x = b  <=>  D y = U b with x = V y.
    std::vector<long long> ub(nr, 0);
    for (size_t i = 0; i < nr; ++i) {
        __int128 acc = 0;
        for (size_t j = 0; j < nr; ++j) acc += (__int128)s.u[i][j] * b[j];
        ub[i] = checked_ll(acc, "solve_integer");
    }
    std::vector<long long> y(nc, 0);
    for (size_t i = 0; i < nr; ++i) {
        long long di = i < s.diag.size() ? s.diag[i] : 0;
        if (di == 0) {
            if (ub[i] != 0) return std::nullopt;
        } else {
            if (ub[i] % di != 0) return std::nullopt;
            if (i < nc) y[i] = ub[i] / di;
        }
    }
    std::vector<long long> x(nc, 0);
    for (size_t i = 0; i < nc; ++i) {
        __int128 acc = 0;
        for (size_t j = 0; j < nc; ++j) acc += (__int128)s.v[i][j] * y[j];
        x[i] = checked_ll(acc, "solve_integer");
    }
    return x;
}

std::optional<std::vector<long long>> solve_modular(const IMat& a,
                                                    const std::vector<long long>& b,
                                                    const std::vector<long long>& moduli) {
    size_t nr = a.size(), nc = a[0].size();
    if (moduli.size() != nr) throw std::invalid_argument("solve_modular: moduli size");
    // Append one slack column per congruence row: A x + n_r * s_r = b.
    size_t extra = 0;
    for (long long m : moduli)
        if (m != 0) ++extra;
    IMat aug(nr, std::vector<long long>(nc + extra, 0));
    size_t slack = 0;
    for (size_t i = 0; i < nr; ++i) {
        for (size_t j = 0; j < nc; ++j) aug[i][j] = a[i][j];
        if (moduli[i] != 0) aug[i][nc + slack++] = moduli[i];
    }
    auto sol = solve_integer(aug, b);
    if (!sol) return std::nullopt;
    sol->resize(nc);
    return sol;
}

std::vector<long long> quotient_invariant_factors(const IMat& a) {
    SmithForm s = smith_normal_form(a);
    std::vector<long long> out;
    for (long long d : s.diag) {
        long long ad = std::llabs(d);
        if (ad == 0) throw std::invalid_argument("quotient_invariant_factors: singular matrix");
        if (ad > 1) out.push_back(ad);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Lattices
// ---------------------------------------------------------------------------

QMat lattice_canonical_basis(int m, const QMat& generator_columns) {
    // Scale so everything is integral: lattice L with Z^m <= L <= (1/N) Z^m,
    // work with N*L as an integer lattice. Coordinates are reversed so that a
    // standard row HNF yields, after mapping back, an upper-triangular column
    // basis with positive diagonal and row entries reduced into [0, diag).
    long long scale = 1;
    for (const auto& row : generator_columns)
        for (const auto& v : row) scale = std::lcm(scale, v.den);
    size_t ngen = generator_columns.empty() ? 0 : generator_columns[0].size();
    size_t total = ngen + static_cast<size_t>(m);
    // generator rows in reversed coordinates (lattice vectors of scale*L)
    IMat rows(total, std::vector<long long>(m, 0));
    for (size_t j = 0; j < ngen; ++j)
        for (int i = 0; i < m; ++i) {
            Rat v = generator_columns[i][j] * Rat(scale);
            if (!v.is_integer()) throw std::logic_error("lattice scaling failed");
            rows[j][m - 1 - i] = v.num;
        }
    for (int i = 0; i < m; ++i) rows[ngen + i][m - 1 - i] = scale;

    size_t r = 0;
    for (int col = 0; col < m && r < rows.size(); ++col) {
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
                for (int c = 0; c < m; ++c)
                    rows[i][c] = checked_ll((__int128)rows[i][c] - (__int128)q * rows[r][c], "hnf");
                if (rows[i][col] != 0) done = false;
            }
            if (done) break;
        }
        if (r < rows.size() && rows[r][col] != 0) {
            if (rows[r][col] < 0)
                for (int c = 0; c < m; ++c) rows[r][c] = -rows[r][c];
            ++r;
        } else {
            throw std::invalid_argument("lattice_canonical_basis: generators not full rank");
        }
    }
    rows.resize(m);
    // reduce above-pivot entries column by column, left to right: row i is
    // zero before column i, so later reductions leave earlier columns alone
    for (int i = 0; i < m; ++i) {
        if (rows[i][i] == 0) throw std::logic_error("lattice basis: missing pivot");
        for (int k = 0; k < i; ++k) {
            long long q = rows[k][i] / rows[i][i];
            if (rows[k][i] % rows[i][i] < 0) q -= 1;  // floor -> remainder in [0, diag)
            if (q == 0) continue;
            for (int c = 0; c < m; ++c)
                rows[k][c] = checked_ll((__int128)rows[k][c] - (__int128)q * rows[i][c], "hnf-reduce");
        }
    }
    // Map back: basis column j = reversed rows[m-1-j], unscaled.
    QMat basis(m, QVec(m, Rat(0)));
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < m; ++i) basis[i][j] = Rat(rows[m - 1 - j][m - 1 - i], scale);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < i; ++j)
            if (!basis[i][j].is_zero()) throw std::logic_error("lattice basis not triangular");
        if (!(basis[i][i] > Rat(0))) throw std::logic_error("lattice basis diagonal not positive");
    }
    return basis;
}

std::vector<long long> lattice_quotient_factors(const QMat& basis) {
    QMat inv = qmat_inverse(basis);
    IMat c(basis.size(), std::vector<long long>(basis.size()));
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = 0; j < basis.size(); ++j) {
            if (!inv[i][j].is_integer())
                throw std::invalid_argument("lattice does not contain Z^m");
            c[i][j] = inv[i][j].num;
        }
    return quotient_invariant_factors(c);
}

}  // namespace grouplab

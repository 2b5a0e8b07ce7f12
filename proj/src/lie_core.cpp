#include "grouplab/lie_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace grouplab {

namespace {

Rat bracket_coord(const LieAlgebraData& l, int i, int j, int k) { return l.c[i][j][k]; }

/// <x, y> with coordinate vectors and the Gram matrix.
Rat gram_inner(const QMat& gram, const QVec& x, const QVec& y) {
    Rat acc(0);
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = 0; j < y.size(); ++j) acc += x[i] * gram[i][j] * y[j];
    return acc;
}

QVec bracket_vectors(const LieAlgebraData& l, const QVec& x, const QVec& y) {
    QVec out(l.n, Rat(0));
    for (int i = 0; i < l.n; ++i) {
        if (x[i].is_zero()) continue;
        for (int j = 0; j < l.n; ++j) {
            if (y[j].is_zero()) continue;
            for (int k = 0; k < l.n; ++k) out[k] += x[i] * y[j] * l.c[i][j][k];
        }
    }
    return out;
}

/// Exact integer square root test for a nonnegative rational.
std::optional<Rat> rational_sqrt(const Rat& v) {
    if (v.num < 0) return std::nullopt;
    auto isqrt = [](long long x) {
        long long r = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(x))));
        while (r * r > x) --r;
        while ((r + 1) * (r + 1) <= x) ++r;
        return r;
    };
    long long sn = isqrt(v.num), sd = isqrt(v.den);
    if (sn * sn == v.num && sd * sd == v.den) return Rat(sn, sd);
    return std::nullopt;
}

/// Jacobi eigenvalue iteration for a small symmetric matrix.
std::vector<double> symmetric_eigenvalues(std::vector<std::vector<double>> a) {
    size_t n = a.size();
    for (int sweep = 0; sweep < 200; ++sweep) {
        double off = 0;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
        if (off < 1e-28) break;
        for (size_t p = 0; p < n; ++p)
            for (size_t q = p + 1; q < n; ++q) {
                if (std::abs(a[p][q]) < 1e-300) continue;
                double theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1));
                double cs = 1 / std::sqrt(t * t + 1), sn = t * cs;
                for (size_t k = 0; k < n; ++k) {
                    double akp = a[k][p], akq = a[k][q];
                    a[k][p] = cs * akp - sn * akq;
                    a[k][q] = sn * akp + cs * akq;
                }
                for (size_t k = 0; k < n; ++k) {
                    double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = cs * apk - sn * aqk;
                    a[q][k] = sn * apk + cs * aqk;
                }
            }
    }
    std::vector<double> ev(n);
    for (size_t i = 0; i < n; ++i) ev[i] = a[i][i];
    std::sort(ev.begin(), ev.end());
    return ev;
}

}  // namespace

LieAlgebraData::LieAlgebraData(int n_, std::vector<std::vector<QVec>> c_, QMat gram_)
    : n(n_), c(std::move(c_)), gram(std::move(gram_)) {
    if (n <= 0) throw std::invalid_argument("LieAlgebraData: dimension must be positive");
    if (static_cast<int>(c.size()) != n) throw std::invalid_argument("LieAlgebraData: c shape");
    for (const auto& row : c) {
        if (static_cast<int>(row.size()) != n) throw std::invalid_argument("LieAlgebraData: c shape");
        for (const auto& v : row)
            if (static_cast<int>(v.size()) != n)
                throw std::invalid_argument("LieAlgebraData: c shape");
    }
    if (static_cast<int>(gram.size()) != n) throw std::invalid_argument("LieAlgebraData: gram shape");
    for (const auto& row : gram)
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("LieAlgebraData: gram shape");

    // antisymmetry
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (c[i][j][k] != -c[j][i][k])
                    throw std::invalid_argument("LieAlgebraData: antisymmetry fails");
    // Jacobi identity on basis triples
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    Rat acc(0);
                    for (int m = 0; m < n; ++m)
                        acc += c[i][j][m] * c[m][k][l] + c[j][k][m] * c[m][i][l] +
                               c[k][i][m] * c[m][j][l];
                    if (!acc.is_zero())
                        throw std::invalid_argument("LieAlgebraData: Jacobi identity fails");
                }
    // symmetric positive definite gram (leading principal minors)
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (gram[i][j] != gram[j][i])
                throw std::invalid_argument("LieAlgebraData: gram not symmetric");
    for (int k = 1; k <= n; ++k) {
        QMat minor(k, QVec(k, Rat(0)));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) minor[i][j] = gram[i][j];
        if (!(qmat_det(minor) > Rat(0)))
            throw std::invalid_argument("LieAlgebraData: gram not positive definite");
    }
    // ad-invariance: <[e_i, e_j], e_l> + <e_j, [e_i, e_l]> = 0
    invariant = true;
    for (int i = 0; i < n && invariant; ++i)
        for (int j = 0; j < n && invariant; ++j)
            for (int l = 0; l < n && invariant; ++l) {
                Rat acc(0);
                for (int k = 0; k < n; ++k)
                    acc += c[i][j][k] * gram[k][l] + c[i][l][k] * gram[j][k];
                if (!acc.is_zero()) invariant = false;
            }
}

namespace {
std::vector<std::vector<QVec>> zero_constants(int n) {
    return std::vector<std::vector<QVec>>(n, std::vector<QVec>(n, QVec(n, Rat(0))));
}
}  // namespace

LieAlgebraData so3_algebra() {
    auto c = zero_constants(3);
    // epsilon_{ijk}
    c[0][1][2] = Rat(1);
    c[1][0][2] = Rat(-1);
    c[1][2][0] = Rat(1);
    c[2][1][0] = Rat(-1);
    c[2][0][1] = Rat(1);
    c[0][2][1] = Rat(-1);
    return LieAlgebraData(3, c, qmat_identity(3));
}

LieAlgebraData su2_algebra() { return so3_algebra(); }

LieAlgebraData su2_algebra_neg_half_trace() {
    auto l = so3_algebra();
    for (auto& row : l.c)
        for (auto& v : row)
            for (auto& x : v) x *= Rat(2);
    return LieAlgebraData(3, l.c, qmat_identity(3));
}

LieAlgebraData abelian_algebra(int m) { return LieAlgebraData(m, zero_constants(m), qmat_identity(m)); }

LieAlgebraData direct_sum(const LieAlgebraData& a, const LieAlgebraData& b) {
    int n = a.n + b.n;
    auto c = zero_constants(n);
    QMat gram(n, QVec(n, Rat(0)));
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j) {
            gram[i][j] = a.gram[i][j];
            for (int k = 0; k < a.n; ++k) c[i][j][k] = a.c[i][j][k];
        }
    for (int i = 0; i < b.n; ++i)
        for (int j = 0; j < b.n; ++j) {
            gram[a.n + i][a.n + j] = b.gram[i][j];
            for (int k = 0; k < b.n; ++k) c[a.n + i][a.n + j][a.n + k] = b.c[i][j][k];
        }
    return LieAlgebraData(n, c, gram);
}

LieAlgebraData u2_algebra() { return direct_sum(su2_algebra(), abelian_algebra(1)); }

LieAlgebraData with_gram_scaled(const LieAlgebraData& l, const Rat& factor) {
    if (!(factor > Rat(0))) throw std::invalid_argument("with_gram_scaled: factor must be positive");
    QMat gram = l.gram;
    for (auto& row : gram)
        for (auto& v : row) v *= factor;
    return LieAlgebraData(l.n, l.c, gram);
}

Subalgebra derived_subalgebra(const LieAlgebraData& l) {
    QMat span;
    for (int i = 0; i < l.n; ++i)
        for (int j = i + 1; j < l.n; ++j) span.push_back(l.c[i][j]);
    Subalgebra out{qmat_row_basis(span)};
    if (l.invariant) {
        // compact type: the derived subalgebra must be an ideal
        for (int i = 0; i < l.n; ++i) {
            QVec ei(l.n, Rat(0));
            ei[i] = Rat(1);
            for (const auto& b : out.basis_rows) {
                QVec br = bracket_vectors(l, ei, b);
                if (!qmat_in_span(out.basis_rows, br))
                    throw std::logic_error("derived_subalgebra: not an ideal");
            }
        }
    }
    return out;
}

bool is_perfect(const LieAlgebraData& l) {
    if (!l.invariant)
        throw std::invalid_argument(
            "is_perfect: requires an ad-invariant inner product (compact type)");
    return derived_subalgebra(l).dim() == l.n;
}

RicciResult ricci_min(const LieAlgebraData& l) {
    if (!l.invariant)
        throw std::invalid_argument("ricci_min: requires an ad-invariant inner product");
    if (derived_subalgebra(l).dim() != l.n)
        throw std::invalid_argument("ricci_min: requires a semisimple algebra (trivial center)");

    // Gram-Schmidt over the rationals; exact normalization when every squared
    // norm is a perfect rational square, floating point otherwise.
    int n = l.n;
    QMat b;  // orthogonal basis rows (coordinates in the original basis)
    std::vector<Rat> d;
    for (int k = 0; k < n; ++k) {
        QVec v(n, Rat(0));
        v[k] = Rat(1);
        for (int j = 0; j < static_cast<int>(b.size()); ++j) {
            Rat coef = gram_inner(l.gram, v, b[j]) / d[j];
            for (int i = 0; i < n; ++i) v[i] -= coef * b[j][i];
        }
        Rat nn = gram_inner(l.gram, v, v);
        if (!(nn > Rat(0))) throw std::logic_error("ricci_min: Gram-Schmidt broke down");
        b.push_back(v);
        d.push_back(nn);
    }
    bool exact = true;
    std::vector<Rat> inv_norm(n, Rat(1));
    for (int j = 0; j < n; ++j) {
        auto s = rational_sqrt(d[j]);
        if (s)
            inv_norm[j] = Rat(1) / *s;
        else
            exact = false;
    }
    double cond = 1.0;
    {
        double mx = 0, mn = 1e300;
        for (const auto& dj : d) {
            mx = std::max(mx, dj.to_double());
            mn = std::min(mn, dj.to_double());
        }
        cond = std::sqrt(mx / mn);
    }

    RicciResult out;
    out.exact_pipeline = exact;
    out.condition_estimate = cond;

    if (exact) {
        // orthonormal basis rows t[a] = b[a] / |b[a]|
        QMat t(n, QVec(n, Rat(0)));
        for (int a = 0; a < n; ++a)
            for (int i = 0; i < n; ++i) t[a][i] = b[a][i] * inv_norm[a];
        // structure constants in the new basis: chat[a][b] = coords of
        // [t_a, t_b] over t (solve T^T x = bracket since rows span)
        QMat t_rows = t;  // rows are basis vectors
        QMat t_mat(n, QVec(n, Rat(0)));  // columns are basis vectors
        for (int i = 0; i < n; ++i)
            for (int a = 0; a < n; ++a) t_mat[i][a] = t_rows[a][i];
        QMat t_inv = qmat_inverse(t_mat);
        std::vector<std::vector<QVec>> chat(n, std::vector<QVec>(n, QVec(n, Rat(0))));
        for (int a = 0; a < n; ++a)
            for (int bb = 0; bb < n; ++bb) {
                QVec br = bracket_vectors(l, t_rows[a], t_rows[bb]);
                chat[a][bb] = qmat_apply(t_inv, br);
            }
        QMat form(n, QVec(n, Rat(0)));
        for (int a = 0; a < n; ++a)
            for (int bb = 0; bb < n; ++bb) {
                Rat acc(0);
                for (int i = 0; i < n; ++i)
                    for (int m = 0; m < n; ++m) acc += chat[a][i][m] * chat[bb][i][m];
                form[a][bb] = acc * Rat(1, 4);
            }
        out.form = form;
        std::vector<std::vector<double>> fd(n, std::vector<double>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) fd[i][j] = form[i][j].to_double();
        out.value = symmetric_eigenvalues(fd).front();
    } else {
        // floating-point orthonormalization
        std::vector<std::vector<double>> t(n, std::vector<double>(n));
        for (int a = 0; a < n; ++a) {
            double nn = std::sqrt(d[a].to_double());
            for (int i = 0; i < n; ++i) t[a][i] = b[a][i].to_double() / nn;
        }
        std::vector<std::vector<double>> tm(n, std::vector<double>(n));
        for (int i = 0; i < n; ++i)
            for (int a = 0; a < n; ++a) tm[i][a] = t[a][i];
        // invert tm with Gaussian elimination
        std::vector<std::vector<double>> inv(n, std::vector<double>(n, 0));
        for (int i = 0; i < n; ++i) inv[i][i] = 1;
        for (int col = 0; col < n; ++col) {
            int piv = col;
            for (int r = col; r < n; ++r)
                if (std::abs(tm[r][col]) > std::abs(tm[piv][col])) piv = r;
            std::swap(tm[piv], tm[col]);
            std::swap(inv[piv], inv[col]);
            double f = tm[col][col];
            for (int cc = 0; cc < n; ++cc) { tm[col][cc] /= f; inv[col][cc] /= f; }
            for (int r = 0; r < n; ++r) {
                if (r == col) continue;
                double g = tm[r][col];
                for (int cc = 0; cc < n; ++cc) {
                    tm[r][cc] -= g * tm[col][cc];
                    inv[r][cc] -= g * inv[col][cc];
                }
            }
        }
        auto bracket_d = [&](const std::vector<double>& x, const std::vector<double>& y) {
            std::vector<double> outv(n, 0);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    double f = x[i] * y[j];
                    if (f == 0) continue;
                    for (int k = 0; k < n; ++k) outv[k] += f * l.c[i][j][k].to_double();
                }
            return outv;
        };
        std::vector<std::vector<std::vector<double>>> chat(
            n, std::vector<std::vector<double>>(n, std::vector<double>(n, 0)));
        for (int a = 0; a < n; ++a)
            for (int bb = 0; bb < n; ++bb) {
                auto br = bracket_d(t[a], t[bb]);
                for (int m = 0; m < n; ++m) {
                    double acc = 0;
                    for (int k = 0; k < n; ++k) acc += inv[m][k] * br[k];
                    chat[a][bb][m] = acc;
                }
            }
        std::vector<std::vector<double>> form(n, std::vector<double>(n, 0));
        for (int a = 0; a < n; ++a)
            for (int bb = 0; bb < n; ++bb) {
                double acc = 0;
                for (int i = 0; i < n; ++i)
                    for (int m = 0; m < n; ++m) acc += chat[a][i][m] * chat[bb][i][m];
                form[a][bb] = acc / 4.0;
            }
        out.value = symmetric_eigenvalues(form).front();
    }
    if (out.value <= 0) throw std::logic_error("ricci_min: non-positive value on semisimple input");
    return out;
}

double myers_bound(const LieAlgebraData& l) {
    RicciResult r = ricci_min(l);
    return M_PI * std::sqrt((l.n - 1) / r.value);
}

// ---------------------------------------------------------------------------
// Exponential coverage
// ---------------------------------------------------------------------------

namespace {

/// After orthonormalization the corpus algebras have chat = s * epsilon for
/// one positive scale s; the exponential chart is then u -> exp of the
/// axis-angle vector s*u.
double epsilon_scale(const LieAlgebraData& l) {
    if (l.n != 3) throw std::invalid_argument("exp_coverage_check: need a 3-dimensional algebra");
    RicciResult r = ricci_min(l);  // validates compact type + semisimplicity
    double s;
    if (r.exact_pipeline && !r.form.empty()) {
        // Ric = s^2 / 2 * I for scaled epsilon constants
        s = std::sqrt(2.0 * r.form[0][0].to_double());
    } else {
        s = std::sqrt(2.0 * r.value);
    }
    return s;
}

struct StreamPermutation {
    unsigned long long mult, add, mask, period;
    explicit StreamPermutation(unsigned long long count, unsigned long long seed) {
        period = 1;
        while (period < count) period <<= 1;
        mask = period - 1;
        mult = 8 * (seed % 1000003) + 5;  // 5 mod 8: full period on powers of two
        add = 2 * seed + 1;
    }
    unsigned long long next(unsigned long long state) const { return (mult * state + add) & mask; }
};

}  // namespace

CoverageReport exp_coverage_check(const GroupPtr& g, const LieAlgebraData& l, double delta,
                                  double mesh, const CoverageOptions& opts) {
    bool so3 = g->kind() == SamplableGroup::Kind::SO3;
    bool su2 = g->kind() == SamplableGroup::Kind::SU2;
    if (!so3 && !su2)
        throw std::invalid_argument("exp_coverage_check: unsupported group realization");
    if (delta <= 0 || mesh <= 0)
        throw std::invalid_argument("exp_coverage_check: delta and mesh must be positive");

    double s = epsilon_scale(l);

    auto oracle = g->eps_net(opts.oracle_mesh);
    double threshold = 2 * mesh + oracle.mesh;

    CoverageReport rep;
    rep.threshold = threshold;
    rep.oracle_points = oracle.points.size();
    rep.image_points = 0;

    // Per-oracle running minima; points leave the active list once they are
    // covered within threshold or certified unreachable by the angle bound.
    size_t no = oracle.points.size();
    std::vector<double> runmin(no, 1e300);
    std::vector<char> covered(no, 0), prefiltered(no, 0);
    std::vector<size_t> active;

    // angle prefilter: image rotation angles are at most s * delta
    double max_angle = s * delta;
    double prefilter_gap = 0;
    for (size_t i = 0; i < no; ++i) {
        const Quat& q = oracle.points[i].quat;
        double lb = 0;
        if (so3 && max_angle < M_PI) {
            double theta = 2 * std::acos(std::min(1.0, std::abs(q.w)));
            if (theta > max_angle) lb = 2 * std::sqrt(2.0) * std::sin((theta - max_angle) / 2);
        } else if (su2 && max_angle < 2 * M_PI) {
            double phi = 2 * std::acos(std::clamp(q.w, -1.0, 1.0));  // in [0, 2 pi]
            if (phi > max_angle) {
                double diff = (phi - max_angle) / 2;
                lb = 2 * std::sqrt(2.0) * std::sin(diff / 2);
            }
        }
        if (lb > threshold) {
            prefiltered[i] = 1;
            prefilter_gap = std::max(prefilter_gap, lb);
        } else {
            active.push_back(i);
        }
    }

    // grid over the closed delta-ball, streamed in pseudo-random order
    long long steps = static_cast<long long>(std::floor(delta / mesh));
    long long side = 2 * steps + 1;
    unsigned long long cube = static_cast<unsigned long long>(side) * side * side;
    StreamPermutation perm(cube, opts.seed);

    unsigned long long state = 0;
    for (unsigned long long it = 0; it < perm.period && !active.empty(); ++it) {
        state = perm.next(state);
        if (state >= cube) continue;
        unsigned long long rem = state;
        long long ix = static_cast<long long>(rem % side) - steps;
        rem /= side;
        long long iy = static_cast<long long>(rem % side) - steps;
        rem /= side;
        long long iz = static_cast<long long>(rem % side) - steps;
        double ux = ix * mesh, uy = iy * mesh, uz = iz * mesh;
        if (ux * ux + uy * uy + uz * uz > delta * delta) continue;
        ++rep.image_points;
        Quat q = quat_exp_axis_angle(s * ux, s * uy, s * uz);
        for (size_t idx = 0; idx < active.size();) {
            size_t i = active[idx];
            const Quat& o = oracle.points[i].quat;
            double d = so3 ? so3_distance(q, o) : su2_distance(q, o);
            if (d < runmin[i]) runmin[i] = d;
            if (runmin[i] <= threshold) {
                covered[i] = 1;
                active[idx] = active.back();
                active.pop_back();
            } else {
                ++idx;
            }
        }
    }
    // report the true grid-ball size regardless of the early exit
    rep.image_points = 0;
    for (long long ix = -steps; ix <= steps; ++ix)
        for (long long iy = -steps; iy <= steps; ++iy)
            for (long long iz = -steps; iz <= steps; ++iz) {
                double ux = ix * mesh, uy = iy * mesh, uz = iz * mesh;
                if (ux * ux + uy * uy + uz * uz <= delta * delta) ++rep.image_points;
            }

    bool all_covered = active.empty();
    for (size_t i = 0; i < no; ++i)
        if (prefiltered[i]) all_covered = false;

    rep.covered = all_covered;
    if (all_covered) {
        double gap = 0;
        for (size_t i = 0; i < no; ++i) gap = std::max(gap, runmin[i]);
        rep.gap = gap;
        rep.gap_is_lower_bound = false;
        rep.detail = "all oracle points reached within threshold";
    } else {
        // exact minima for points that survived the full stream; prefiltered
        // points only carry the angle lower bound
        double gap = prefilter_gap;
        bool lower = prefilter_gap > 0;
        for (size_t i : active) gap = std::max(gap, runmin[i]);
        rep.gap = gap;
        rep.gap_is_lower_bound = lower;
        rep.detail = "uncovered oracle points remain";
    }
    return rep;
}

double sampled_diameter(const GroupPtr& g, double mesh) {
    auto net = g->eps_net(mesh);
    double mx = 0;
    for (size_t i = 0; i < net.points.size(); ++i)
        for (size_t j = i + 1; j < net.points.size(); ++j)
            mx = std::max(mx, g->distance(net.points[i], net.points[j]));
    return mx;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

namespace {
Rat rat_from_json(const nlohmann::json& v) {
    if (v.is_string()) return parse_rat(v.get<std::string>());
    if (v.is_number_integer()) return Rat(v.get<long long>());
    throw std::invalid_argument("lie_algebra_from_json: entries must be \"p/q\" strings");
}
}  // namespace

LieAlgebraData lie_algebra_from_json(const std::string& json_text) {
    auto j = nlohmann::json::parse(json_text);
    int n = j.at("n").get<int>();
    std::vector<std::vector<QVec>> c(n, std::vector<QVec>(n, QVec(n, Rat(0))));
    for (int i = 0; i < n; ++i)
        for (int jj = 0; jj < n; ++jj)
            for (int k = 0; k < n; ++k) c[i][jj][k] = rat_from_json(j.at("c").at(i).at(jj).at(k));
    QMat gram(n, QVec(n, Rat(0)));
    for (int i = 0; i < n; ++i)
        for (int jj = 0; jj < n; ++jj) gram[i][jj] = rat_from_json(j.at("gram").at(i).at(jj));
    return LieAlgebraData(n, std::move(c), std::move(gram));
}

std::string lie_algebra_to_json(const LieAlgebraData& l) {
    nlohmann::json j;
    j["n"] = l.n;
    nlohmann::json cj = nlohmann::json::array();
    for (int i = 0; i < l.n; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int jj = 0; jj < l.n; ++jj) {
            nlohmann::json v = nlohmann::json::array();
            for (int k = 0; k < l.n; ++k) v.push_back(l.c[i][jj][k].str());
            row.push_back(v);
        }
        cj.push_back(row);
    }
    j["c"] = cj;
    nlohmann::json gj = nlohmann::json::array();
    for (int i = 0; i < l.n; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int jj = 0; jj < l.n; ++jj) row.push_back(l.gram[i][jj].str());
        gj.push_back(row);
    }
    j["gram"] = gj;
    return j.dump(2);
}

}  // namespace grouplab

#include "grouplab/isolation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

namespace grouplab {

IsolationVerdict isolation_verdict(const LieAlgebraData& l) {
    IsolationVerdict out;
    out.derived = derived_subalgebra(l);
    out.perfect_identity_component = is_perfect(l);
    out.isolated = out.perfect_identity_component;
    out.codimension = l.n - out.derived.dim();
    return out;
}

std::vector<SubgroupHandle> approximation_sequence(const GroupPtr& parent,
                                                   const std::vector<int>& ns) {
    auto kind = parent->kind();
    if (kind != SamplableGroup::Kind::Torus && kind != SamplableGroup::Kind::Semidirect)
        throw std::invalid_argument("approximation_sequence: need a torus or semidirect group");
    std::vector<SubgroupHandle> out;
    out.reserve(ns.size());
    for (int n : ns) {
        if (n < 1) throw std::invalid_argument("approximation_sequence: n must be >= 1");
        out.push_back(SubgroupHandle::cyclic_grid(parent, n));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Conjugacy search
// ---------------------------------------------------------------------------

namespace {

/// Nelder-Mead on a fixed-dimension chart. Returns the best point found and
/// adds its evaluation count to `evals`.
std::pair<std::vector<double>, double> nelder_mead(
    const std::function<double(const std::vector<double>&)>& f, std::vector<double> start,
    double scale, long long max_evals, long long& evals) {
    size_t dim = start.size();
    std::vector<std::vector<double>> simplex{start};
    for (size_t i = 0; i < dim; ++i) {
        auto v = start;
        v[i] += scale;
        simplex.push_back(v);
    }
    std::vector<double> value(simplex.size());
    for (size_t i = 0; i < simplex.size(); ++i) {
        value[i] = f(simplex[i]);
        ++evals;
    }
    auto order = [&] {
        std::vector<size_t> idx(simplex.size());
        for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return value[a] < value[b]; });
        std::vector<std::vector<double>> s2;
        std::vector<double> v2;
        for (size_t i : idx) {
            s2.push_back(simplex[i]);
            v2.push_back(value[i]);
        }
        simplex = std::move(s2);
        value = std::move(v2);
    };
    order();
    while (evals < max_evals) {
        // centroid of all but worst
        std::vector<double> centroid(dim, 0);
        for (size_t i = 0; i + 1 < simplex.size(); ++i)
            for (size_t d = 0; d < dim; ++d) centroid[d] += simplex[i][d];
        for (size_t d = 0; d < dim; ++d) centroid[d] /= static_cast<double>(dim);

        auto blend = [&](double t) {
            std::vector<double> p(dim);
            for (size_t d = 0; d < dim; ++d)
                p[d] = centroid[d] + t * (simplex.back()[d] - centroid[d]);
            return p;
        };
        auto reflected = blend(-1.0);
        double fr = f(reflected);
        ++evals;
        if (fr < value.front()) {
            auto expanded = blend(-2.0);
            double fe = f(expanded);
            ++evals;
            if (fe < fr) {
                simplex.back() = expanded;
                value.back() = fe;
            } else {
                simplex.back() = reflected;
                value.back() = fr;
            }
        } else if (fr < value[value.size() - 2]) {
            simplex.back() = reflected;
            value.back() = fr;
        } else {
            auto contracted = blend(0.5);
            double fc = f(contracted);
            ++evals;
            if (fc < value.back()) {
                simplex.back() = contracted;
                value.back() = fc;
            } else {
                for (size_t i = 1; i < simplex.size(); ++i) {
                    for (size_t d = 0; d < dim; ++d)
                        simplex[i][d] = simplex[0][d] + 0.5 * (simplex[i][d] - simplex[0][d]);
                    value[i] = f(simplex[i]);
                    ++evals;
                    if (evals >= max_evals) break;
                }
            }
        }
        order();
        if (value.back() - value.front() < 1e-14) break;  // flat simplex
    }
    return {simplex.front(), value.front()};
}

}  // namespace

ConjugacySearchResult conjugacy_search(const SubgroupHandle& h, const SubgroupHandle& k,
                                       const GroupPtr& ambient, const ConjugacySearchOptions& opts) {
    if (h.parent().get() != ambient.get() || k.parent().get() != ambient.get())
        throw std::invalid_argument("conjugacy_search: handles must live in the ambient group");

    double sample_mesh = 0.02;
    SampleSet hs = sample_of(h, sample_mesh);
    SampleSet ks = sample_of(k, sample_mesh);

    auto kind = ambient->kind();
    bool rotation_like =
        kind == SamplableGroup::Kind::SO3 || kind == SamplableGroup::Kind::SU2;
    bool semi = kind == SamplableGroup::Kind::Semidirect;
    if (!rotation_like && !semi)
        throw std::invalid_argument("conjugacy_search: no search chart for this group kind");

    double lip = ambient->distortion_bound();
    double err = hs.mesh * lip + ks.mesh;

    long long evals = 0;
    auto residual_of = [&](const GroupElement& g) {
        std::vector<GroupElement> conj;
        conj.reserve(hs.points.size());
        for (const auto& p : hs.points) conj.push_back(ambient->conjugate(g, p));
        SampleSet cs(ambient, std::move(conj), hs.mesh * lip);
        return hausdorff_distance(cs, ks).estimate;
    };

    GroupElement identity = ambient->identity();
    double baseline = residual_of(identity);
    ++evals;

    GroupElement best_g = identity;
    double best = baseline;

    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    int torus_m = semi ? ambient->torus_dim() : 0;
    int dim = rotation_like ? 3 : torus_m;
    int nf = semi ? ambient->semidirect_group().finite_part().size() : 1;

    auto chart_element = [&](int fpart, const std::vector<double>& u) {
        if (rotation_like) {
            Quat q = quat_exp_axis_angle(u[0], u[1], u[2]);
            return kind == SamplableGroup::Kind::SO3 ? GroupElement::make_rotation(q)
                                                     : GroupElement::make_unitary(q);
        }
        QVec coords(torus_m);
        for (int i = 0; i < torus_m; ++i) {
            double frac = u[i] - std::floor(u[i]);
            // snap to a fine rational grid so semidirect arithmetic stays exact
            long long num = std::llround(frac * 720720.0);
            coords[i] = mod1(Rat(num, 720720));
        }
        return GroupElement::make_semi(TorusPoint{coords}, fpart);
    };

    long long budget_per_start = std::max<long long>(32, opts.budget / std::max(1, opts.restarts));
    for (int restart = 0; restart < opts.restarts && evals < opts.budget; ++restart) {
        for (int fpart = 0; fpart < nf && evals < opts.budget; ++fpart) {
            std::vector<double> start(dim, 0.0);
            if (restart > 0) {
                double range = rotation_like ? M_PI : 0.5;
                for (int i = 0; i < dim; ++i) start[i] = unit(rng) * range;
            }
            auto objective = [&](const std::vector<double>& u) {
                return residual_of(chart_element(fpart, u));
            };
            auto [u, fu] = nelder_mead(objective, start, rotation_like ? 0.4 : 0.1,
                                       evals + budget_per_start, evals);
            if (fu < best) {
                best = fu;
                best_g = chart_element(fpart, u);
            }
            if (best <= opts.tol) break;
        }
        if (best <= opts.tol) break;
    }

    ConjugacySearchResult out;
    out.best_g = best_g;
    out.residual = best;
    out.error_bound = err;
    out.iterations = evals;
    out.converged = best <= opts.tol + err;
    out.baseline = baseline;
    return out;
}

// ---------------------------------------------------------------------------
// Turing gap
// ---------------------------------------------------------------------------

std::vector<NamedRotationGroup> default_turing_candidates() {
    return finite_rotation_group_catalog(60, 30);
}

TuringGapReport turing_gap(double net_mesh, const std::vector<NamedRotationGroup>& candidates,
                           int threads) {
    if (candidates.empty()) throw std::invalid_argument("turing_gap: no candidates");
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;

    // flatten candidate elements once; per-group segments
    struct Segment {
        size_t begin, end;
    };
    std::vector<Segment> segments;
    std::vector<double> cw, cx, cy, cz;
    for (const auto& grp : candidates) {
        Segment s{cw.size(), cw.size() + grp.elements.size()};
        segments.push_back(s);
        for (const auto& q : grp.elements) {
            cw.push_back(q.w);
            cx.push_back(q.x);
            cy.push_back(q.y);
            cz.push_back(q.z);
        }
    }
    size_t total = cw.size();
    size_t ngroups = candidates.size();

    // SO(3) net grid geometry (same construction as SamplableGroup::eps_net)
    double h = 2.0 * net_mesh / std::sqrt(6.0) * 0.999;
    double include = M_PI + h * std::sqrt(3.0) / 2.0;
    double mesh = std::sqrt(2.0) * h * std::sqrt(3.0) / 2.0;
    long long steps = static_cast<long long>(std::ceil(include / h));

    struct Accum {
        std::vector<double> elem_best_s2;   // per element: max s^2 over net
        std::vector<double> group_worst_s2; // per group: min over net of (max s^2 in group)
        size_t points = 0;
    };

    auto run_range = [&](long long ix_begin, long long ix_end, Accum& acc) {
        acc.elem_best_s2.assign(total, -1.0);
        acc.group_worst_s2.assign(ngroups, 2.0);
        for (long long ix = ix_begin; ix < ix_end; ++ix) {
            double ux = ix * h;
            for (long long iy = -steps; iy <= steps; ++iy) {
                double uy = iy * h;
                for (long long iz = -steps; iz <= steps; ++iz) {
                    double uz = iz * h;
                    double r2 = ux * ux + uy * uy + uz * uz;
                    if (r2 > include * include) continue;
                    ++acc.points;
                    double t = std::sqrt(r2);
                    double half = t / 2;
                    double s = t < 1e-300 ? 0.0 : std::sin(half) / t;
                    double qw = std::cos(half), qx = s * ux, qy = s * uy, qz = s * uz;
                    for (size_t g = 0; g < ngroups; ++g) {
                        double block_max = -1.0;
                        for (size_t j = segments[g].begin; j < segments[g].end; ++j) {
                            double dotv = qw * cw[j] + qx * cx[j] + qy * cy[j] + qz * cz[j];
                            double s2 = dotv * dotv;
                            if (s2 > acc.elem_best_s2[j]) acc.elem_best_s2[j] = s2;
                            if (s2 > block_max) block_max = s2;
                        }
                        if (block_max < acc.group_worst_s2[g]) acc.group_worst_s2[g] = block_max;
                    }
                }
            }
        }
    };

    std::vector<Accum> accs(threads);
    {
        std::vector<std::thread> pool;
        long long span = 2 * steps + 1;
        for (int t = 0; t < threads; ++t) {
            long long b = -steps + span * t / threads;
            long long e = -steps + span * (t + 1) / threads;
            pool.emplace_back(run_range, b, e, std::ref(accs[t]));
        }
        for (auto& th : pool) th.join();
    }

    Accum merged;
    merged.elem_best_s2.assign(total, -1.0);
    merged.group_worst_s2.assign(ngroups, 2.0);
    for (const auto& a : accs) {
        merged.points += a.points;
        for (size_t j = 0; j < total; ++j)
            merged.elem_best_s2[j] = std::max(merged.elem_best_s2[j], a.elem_best_s2[j]);
        for (size_t g = 0; g < ngroups; ++g)
            merged.group_worst_s2[g] = std::min(merged.group_worst_s2[g], a.group_worst_s2[g]);
    }

    auto s2_to_dist = [](double s2) {
        double v = 1.0 - std::min(1.0, s2);
        return std::sqrt(8.0 * v);
    };

    TuringGapReport rep;
    rep.net_mesh = mesh;
    rep.error_bound = mesh;
    rep.net_points = merged.points;
    rep.min_gap = 1e300;
    for (size_t g = 0; g < ngroups; ++g) {
        double covering = s2_to_dist(merged.group_worst_s2[g]);  // net -> candidate
        double reverse = 0;                                      // candidate -> net
        for (size_t j = segments[g].begin; j < segments[g].end; ++j)
            reverse = std::max(reverse, s2_to_dist(merged.elem_best_s2[j]));
        TuringGapRow row;
        row.name = candidates[g].name;
        row.order = segments[g].end - segments[g].begin;
        row.estimate = std::max(covering, reverse);
        row.error_bound = mesh;
        rep.rows.push_back(row);
        if (row.estimate < rep.min_gap) {
            rep.min_gap = row.estimate;
            rep.argmin = row.name;
        }
    }
    return rep;
}

}  // namespace grouplab

// Acceptance suite: every release-gating property in one binary, one
// pass/fail line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "grouplab/cohomology.hpp"
#include "grouplab/experiments.hpp"
#include "grouplab/functorial.hpp"
#include "grouplab/isolation.hpp"
#include "h2_enumeration_oracle.hpp"

using namespace grouplab;

namespace {

int failures = 0;

void report(const std::string& name, bool pass, const std::string& detail, double seconds) {
    std::printf("[%s] %-28s %s (%.1fs)\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str(),
                seconds);
    if (!pass) ++failures;
}

template <class Fn>
void criterion(const std::string& name, Fn&& fn) {
    auto start = std::chrono::steady_clock::now();
    bool pass = false;
    std::string detail;
    try {
        std::tie(pass, detail) = fn();
    } catch (const std::exception& ex) {
        pass = false;
        detail = std::string("exception: ") + ex.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report(name, pass, detail, secs);
}

// --------------------------------------------------------------------------

std::pair<bool, std::string> approximation_criterion() {
    bool ok = true;
    std::string detail;
    for (const char* name : {"T1", "T2", "G_alpha", "G_beta"}) {
        GroupPtr g = corpus_group(name);
        SampleSet full = sample_of(SubgroupHandle::full(g), 0.004);
        double prev = 1e300;
        double last = 1e300;
        for (int n : {2, 4, 8, 16, 32}) {
            SampleSet s = sample_of(SubgroupHandle::cyclic_grid(g, n), 0.1);
            auto r = hausdorff_distance(s, full);
            double lower = r.estimate - r.error_bound;
            if (lower >= prev) ok = false;
            prev = lower;
            last = lower;
            if (std::string(name) == "T1") {
                double expected = 1.0 / (2.0 * n);
                if (std::abs(r.estimate - expected) > r.error_bound + 1e-12) ok = false;
            }
        }
        if (last >= 0.05) ok = false;
        detail += std::string(name) + " ";
    }
    return {ok, detail + "grids strictly decreasing, below 0.05 at n=32"};
}

std::pair<bool, std::string> isolation_criterion() {
    struct Case {
        const char* name;
        bool expected;
    };
    std::vector<Case> cases{{"so3", true},  {"su2", true}, {"su2+su2", true}, {"r1", false},
                            {"r2", false},  {"r3", false}, {"u2", false},     {"so3+r1", false}};
    int agree = 0;
    for (const auto& c : cases) {
        LieAlgebraData l = corpus_algebra(c.name);
        auto v = isolation_verdict(l);
        // independent oracle: exact derived-subalgebra dimension comparison
        bool oracle = derived_subalgebra(l).dim() == l.n;
        if (v.isolated == c.expected && v.isolated == oracle) ++agree;
    }
    return {agree == static_cast<int>(cases.size()),
            std::to_string(agree) + "/" + std::to_string(cases.size()) + " verdicts agree"};
}

std::pair<bool, std::string> myers_criterion() {
    auto l = so3_algebra();
    auto ric = ricci_min(l);
    bool ok = ric.exact_pipeline && ric.value == 0.5;

    // sphere-sampling oracle, 1e5 unit vectors
    std::mt19937_64 rng(12345);
    std::normal_distribution<double> gauss(0, 1);
    double best = 1e300;
    for (int trial = 0; trial < 100000; ++trial) {
        double x[3], norm = 0;
        for (auto& v : x) {
            v = gauss(rng);
            norm += v * v;
        }
        norm = std::sqrt(norm);
        double hs = 0;
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) {
                double acc = 0;
                for (int a = 0; a < 3; ++a) acc += x[a] / norm * l.c[a][i][k].to_double();
                hs += acc * acc;
            }
        best = std::min(best, hs / 4.0);
    }
    if (std::abs(ric.value - best) > 1e-6) ok = false;

    double delta = myers_bound(l);
    if (std::abs(delta - 2 * M_PI) > 1e-12) ok = false;

    auto so3 = corpus_group("SO3");
    CoverageOptions opts;
    opts.oracle_mesh = 0.3;
    auto cov_full = exp_coverage_check(so3, l, delta, 0.05, opts);
    auto cov_short = exp_coverage_check(so3, l, 1.0, 0.05, opts);
    if (!cov_full.covered) ok = false;
    if (cov_short.covered) ok = false;

    char buf[160];
    std::snprintf(buf, sizeof buf, "ric=%.6f delta=%.6f oracle|diff|=%.2e cover(2pi)=%d cover(1)=%d",
                  ric.value, delta, std::abs(ric.value - best), cov_full.covered ? 1 : 0,
                  cov_short.covered ? 1 : 0);
    return {ok, buf};
}

std::pair<bool, std::string> cohomology_criterion() {
    // h2 against the brute-force enumeration oracle; >= 30 cases within the
    // bounds |F| <= 6, |M| <= 27 (chosen where full enumeration is tractable)
    int cases = 0, matched = 0;
    auto check = [&](const FiniteModule& m) {
        ++cases;
        grouplab_test::H2Oracle oracle(m);
        if (h2(m) == oracle.invariant_factors()) ++matched;
    };
    // |F| = 2: single cochain slot, any module
    for (long long k : {2, 3, 4, 5, 6, 8, 9, 12, 16, 25, 27})
        check(FiniteModule::trivial(cyclic_group(2), {k}));
    check(FiniteModule::trivial(cyclic_group(2), {2, 2}));
    check(FiniteModule::trivial(cyclic_group(2), {2, 4}));
    check(FiniteModule::trivial(cyclic_group(2), {3, 9}));
    check(FiniteModule::trivial(cyclic_group(2), {2, 2, 2}));
    check(FiniteModule(cyclic_group(2), {4}, {imat_identity(1), {{-1}}}));
    check(FiniteModule(cyclic_group(2), {3}, {imat_identity(1), {{-1}}}));
    check(FiniteModule(cyclic_group(2), {27}, {imat_identity(1), {{-1}}}));
    // |F| = 3
    for (long long k : {2, 3, 4, 9}) check(FiniteModule::trivial(cyclic_group(3), {k}));
    check(FiniteModule::trivial(cyclic_group(3), {3, 3}));
    check(FiniteModule::trivial(cyclic_group(3), {2, 3}));
    // |F| = 4 (both groups of order 4)
    for (long long k : {2, 3, 4}) check(FiniteModule::trivial(cyclic_group(4), {k}));
    for (long long k : {2, 3})
        check(FiniteModule::trivial(direct_product(cyclic_group(2), cyclic_group(2)), {k}));
    // |F| = 5 and |F| = 6
    check(FiniteModule::trivial(cyclic_group(5), {2}));
    check(FiniteModule::trivial(cyclic_group(5), {5}));
    check(FiniteModule::trivial(cyclic_group(6), {2}));
    check(FiniteModule::trivial(symmetric3(), {2}));

    bool ok = cases >= 30 && matched == cases;

    // splitting reports across the surrogate corpus
    int splits = 0, split_ok = 0;
    auto run_split = [&](const ExtensionData& ext, bool expect_found) {
        ++splits;
        auto rep = split_after_quotient(ext);
        if (rep.found != expect_found) return;
        if (expect_found && !(rep.cocycle_in_tm && rep.t_times_fprime_is_e && rep.t_cap_fprime_is_tm))
            return;
        ++split_ok;
    };
    {
        ExtensionData ext = grid_extension_from_semidirect(g_alpha(), 4);
        run_split(ext, true);  // canonical section: already split
        auto em = module_from_extension(ext);
        auto twisted = ext.section;
        twisted[1] = ext.e.mul(em.element_of({1, 0}), ext.section[1]);
        run_split(ExtensionData(ext.e, ext.t_elements, ext.f, ext.pi, twisted), true);
    }
    {
        ExtensionData ext = grid_extension_from_semidirect(g_beta(), 4);
        auto em = module_from_extension(ext);
        auto twisted = ext.section;
        twisted[1] = ext.e.mul(em.element_of({1, 1}), ext.section[1]);
        run_split(ExtensionData(ext.e, ext.t_elements, ext.f, ext.pi, twisted), true);
    }
    {
        FiniteGroup e = direct_product(cyclic_group(8), cyclic_group(2));
        auto idx = [&](int a, int b) {
            return e.index_of(std::to_string(a) + "," + std::to_string(b));
        };
        std::vector<int> t;
        for (int k = 0; k < 8; ++k) t.push_back(idx(k, k % 2));
        std::vector<int> pi(e.size());
        for (int a = 0; a < 8; ++a)
            for (int b = 0; b < 2; ++b) pi[idx(a, b)] = (a + b) % 2;
        run_split(ExtensionData(e, t, cyclic_group(2), pi, {idx(0, 0), idx(1, 0)}), true);
    }
    if (splits != split_ok) ok = false;

    return {ok, std::to_string(matched) + "/" + std::to_string(cases) + " h2 cases, " +
                    std::to_string(split_ok) + "/" + std::to_string(splits) + " splittings"};
}

std::pair<bool, std::string> example_criterion() {
    auto cfg = parse_experiment_config(R"({"experiment":"example-3-1"})");
    auto out = run_experiment(cfg);
    bool ok = out.exit_code == 0 &&
              out.artifacts[0].content.find("\"all_claims_verified\": true") != std::string::npos;
    return {ok, "quotient claims exact, centers (1,2) vs (1,1)"};
}

std::pair<bool, std::string> minimality_criterion() {
    auto r1 = minimality_check(rotation4_rep());
    auto r2 = minimality_check(negation_rep());
    auto r3 = minimality_check(alpha_rep());
    auto r4 = minimality_check(beta_rep());
    bool witnesses_exact = true;
    for (auto* r : {&r3, &r4}) {
        if (!std::holds_alternative<Reducible>(r->irreducibility)) {
            witnesses_exact = false;
            continue;
        }
        // verify the witness invariance exactly against the matching rep
        const auto& rep = r == &r3 ? alpha_rep() : beta_rep();
        const auto& w = std::get<Reducible>(r->irreducibility).witness_rows;
        for (const auto& m : rep.matrices) {
            QMat q = qmat_from_int(m);
            for (const auto& row : w)
                if (!qmat_in_span(w, qmat_apply(q, row))) witnesses_exact = false;
        }
    }
    bool ok = r1.minimal && r2.minimal && !r3.minimal && !r4.minimal && witnesses_exact;
    return {ok, "Z4-rotation and Z2-negation minimal; alpha, beta reducible with exact witnesses"};
}

std::pair<bool, std::string> functor_criterion() {
    int pairs = 0;
    bool ok = true;
    auto check_rt = [&](const GroupHom& f, const SubgroupHandle& l) {
        auto rt = roundtrip_defect(f, l, 0.05);
        if (rt.estimate > rt.error_bound + f.codomain()->group_tolerance()) ok = false;
        ++pairs;
    };
    {
        GroupHom f = GroupHom::torus_projection(2, {0});
        for (int n : {1, 2, 4, 8}) check_rt(f, SubgroupHandle::cyclic_grid(f.codomain(), n));
        check_rt(f, SubgroupHandle::full(f.codomain()));
    }
    {
        QMat gen(2, QVec(1, Rat(0)));
        gen[0][0] = Rat(1, 2);
        gen[1][0] = Rat(1, 2);
        auto lat = RationalLattice::from_generators(2, gen);
        GroupHom f = GroupHom::torus_lattice_quotient(2, lat);
        for (int n : {2, 3}) check_rt(f, SubgroupHandle::cyclic_grid(f.codomain(), n));
        GroupHom fs = GroupHom::semidirect_quotient(g_alpha(), lat);
        for (int n : {2, 4}) check_rt(fs, SubgroupHandle::cyclic_grid(fs.codomain(), n));
    }
    {
        GroupHom f = GroupHom::su2_to_so3();
        for (int n : {2, 3, 6}) {
            std::vector<GroupElement> cn;
            for (const auto& q : cyclic_rotations_z(n))
                cn.push_back(GroupElement::make_rotation(q));
            check_rt(f, SubgroupHandle::explicit_subgroup(f.codomain(), cn, 0, "Cn"));
        }
    }
    if (pairs < 10) ok = false;

    // openness probes on both wired cases
    for (const char* hom : {"T2_to_T1", "SU2_to_SO3"}) {
        std::string cfg_text =
            std::string(R"({"experiment":"functorial-probe","params":{"hom":")") + hom + R"("}})";
        auto out = run_experiment(parse_experiment_config(cfg_text));
        if (out.exit_code != 0) ok = false;
    }
    return {ok, std::to_string(pairs) + " round trips within budget; both probes pass"};
}

std::pair<bool, std::string> turing_criterion() {
    auto rep = turing_gap(0.02, default_turing_candidates(), 0);
    bool ok = rep.min_gap - rep.error_bound > 0;
    char buf[160];
    std::snprintf(buf, sizeof buf, "min gap %.4f - %.4f > 0 at %s (net %zu pts)", rep.min_gap,
                  rep.error_bound, rep.argmin.c_str(), rep.net_points);
    return {ok, buf};
}

std::pair<bool, std::string> oracle_criterion() {
    bool ok = true;
    // Hausdorff estimates vs all-pairs brute force, bit for bit, 100+ cases
    auto t2 = SamplableGroup::torus(2);
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<long long> num(0, 95);
    std::uniform_int_distribution<int> size(1, 10);
    int cases = 0;
    auto brute = [&](const SampleSet& a, const SampleSet& b) {
        double d1 = 0;
        for (const auto& p : a.points) {
            double best = 1e300;
            for (const auto& q : b.points) best = std::min(best, a.group->distance(p, q));
            d1 = std::max(d1, best);
        }
        for (const auto& q : b.points) {
            double best = 1e300;
            for (const auto& p : a.points) best = std::min(best, a.group->distance(p, q));
            d1 = std::max(d1, best);
        }
        return d1;
    };
    for (int trial = 0; trial < 110; ++trial) {
        auto rnd = [&] {
            std::vector<GroupElement> pts;
            int k = size(rng);
            for (int i = 0; i < k; ++i)
                pts.push_back(
                    GroupElement::make_torus(torus_reduce({Rat(num(rng), 96), Rat(num(rng), 96)})));
            return SampleSet(t2, std::move(pts), 0);
        };
        SampleSet a = rnd(), b = rnd();
        if (hausdorff_distance(a, b).estimate != brute(a, b)) ok = false;
        ++cases;
    }

    // irreducibility vs the eigenvector oracle on the m = 2 corpus
    auto eigen_oracle = [](const IntegerRep& rep) {
        for (long long p = -12; p <= 12; ++p)
            for (long long q = 0; q <= 12; ++q) {
                if (p == 0 && q == 0) continue;
                bool inv = true;
                for (const auto& m : rep.matrices) {
                    long long wx = m[0][0] * p + m[0][1] * q;
                    long long wy = m[1][0] * p + m[1][1] * q;
                    if (wx * q != wy * p) inv = false;
                }
                if (inv) return true;
            }
        return false;
    };
    std::vector<IntegerRep> corpus;
    corpus.push_back(alpha_rep());
    corpus.push_back(beta_rep());
    corpus.push_back(rotation4_rep());
    corpus.push_back(IntegerRep(cyclic_group(2), {imat_identity(2), {{-1, 0}, {0, -1}}}));
    corpus.push_back(IntegerRep(cyclic_group(2), {imat_identity(2), {{0, 1}, {1, 0}}}));
    {
        IMat r{{0, -1}, {1, -1}};
        corpus.push_back(IntegerRep(cyclic_group(3), {imat_identity(2), r, imat_mul(r, r)}));
    }
    for (const auto& rep : corpus) {
        bool reducible = std::holds_alternative<Reducible>(rational_irreducible(rep));
        if (reducible != eigen_oracle(rep)) ok = false;
    }

    // conjugacy residual never exceeds the baseline, 50 seeded trials
    auto so3 = corpus_group("SO3");
    std::mt19937_64 outer(77);
    std::uniform_real_distribution<double> u(-0.6, 0.6);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<GroupElement> c4;
        for (const auto& q : cyclic_rotations_z(4)) c4.push_back(GroupElement::make_rotation(q));
        SubgroupHandle k = SubgroupHandle::explicit_subgroup(so3, c4, 0, "C4");
        SubgroupHandle h = conjugate_subgroup(
            k, GroupElement::make_rotation(quat_exp_axis_angle(u(outer), u(outer), u(outer))));
        ConjugacySearchOptions opts;
        opts.seed = static_cast<unsigned>(trial + 1);
        opts.budget = 400;
        opts.restarts = 2;
        auto res = conjugacy_search(h, k, so3, opts);
        if (res.residual > res.baseline + 1e-12) ok = false;
    }
    return {ok, std::to_string(cases) + " Hausdorff oracle cases bit-exact; "
                "irreducibility + 50 search trials consistent"};
}

}  // namespace

int main() {
    std::printf("acceptance suite (%s)\n", grouplab_version());
    criterion("approximation", approximation_criterion);
    criterion("isolation-verdicts", isolation_criterion);
    criterion("myers-bound", myers_criterion);
    criterion("cohomology", cohomology_criterion);
    criterion("worked-example-pair", example_criterion);
    criterion("minimality", minimality_criterion);
    criterion("functor-roundtrip-openness", functor_criterion);
    criterion("turing-gap", turing_criterion);
    criterion("oracle-equivalences", oracle_criterion);
    if (failures) {
        std::printf("%d criterion(s) FAILED\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}

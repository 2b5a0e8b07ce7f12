#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "grouplab/experiments.hpp"
#include "grouplab/isolation.hpp"

using namespace grouplab;

TEST_CASE("isolation verdicts across the corpus") {
    CHECK(isolation_verdict(so3_algebra()).isolated);
    CHECK(isolation_verdict(su2_algebra()).isolated);
    CHECK(isolation_verdict(direct_sum(su2_algebra(), su2_algebra())).isolated);

    auto circle = isolation_verdict(abelian_algebra(1));
    CHECK_FALSE(circle.isolated);
    CHECK(circle.codimension == 1);

    auto u2 = isolation_verdict(u2_algebra());
    CHECK_FALSE(u2.isolated);
    CHECK(u2.codimension == 1);
    CHECK(u2.derived.dim() == 3);

    CHECK_FALSE(isolation_verdict(abelian_algebra(2)).isolated);
    CHECK_FALSE(isolation_verdict(abelian_algebra(3)).isolated);
    CHECK_FALSE(isolation_verdict(direct_sum(so3_algebra(), abelian_algebra(1))).isolated);
}

TEST_CASE("approximation sequences: circle grids at the exact arc values") {
    auto t1 = corpus_group("T1");
    auto handles = approximation_sequence(t1, {2, 4, 8});
    SampleSet full = sample_of(SubgroupHandle::full(t1), 0.004);
    std::vector<double> expected{0.25, 0.125, 0.0625};
    for (size_t i = 0; i < handles.size(); ++i) {
        auto s = sample_of(handles[i], 0.1);
        CHECK(s.mesh == 0.0);
        auto r = hausdorff_distance(s, full);
        CHECK(std::abs(r.estimate - expected[i]) <= r.error_bound + 1e-12);
    }
}

TEST_CASE("n = 1 collapses the grid to the finite part") {
    auto ga = corpus_group("G_alpha");
    auto handles = approximation_sequence(ga, {1});
    auto s = sample_of(handles[0], 0.1);
    CHECK(s.points.size() == 2);  // {0}^2 x F
    CHECK(s.mesh == 0.0);
}

TEST_CASE("grid subgroups are proper: never equal to the full group") {
    for (const char* name : {"T1", "T2", "G_alpha", "G_beta"}) {
        auto g = corpus_group(name);
        SampleSet full = sample_of(SubgroupHandle::full(g), 0.01);
        auto s = sample_of(SubgroupHandle::cyclic_grid(g, 8), 0.1);
        auto r = hausdorff_distance(s, full);
        CHECK(r.estimate - r.error_bound > 0);
    }
}

TEST_CASE("verdict consistency: semidirect corpora are not isolated and the grids approach") {
    for (const char* name : {"G_alpha", "G_beta"}) {
        auto g = corpus_group(name);
        // identity component is the torus: abelian algebra, never perfect
        CHECK_FALSE(isolation_verdict(abelian_algebra(g->torus_dim())).isolated);
        SampleSet full = sample_of(SubgroupHandle::full(g), 0.004);
        double prev = 1e300;
        for (int n : {2, 4, 8, 16}) {
            auto s = sample_of(SubgroupHandle::cyclic_grid(g, n), 0.1);
            auto r = hausdorff_distance(s, full);
            double lower = r.estimate - r.error_bound;
            CHECK(lower < prev);
            prev = lower;
        }
        CHECK(prev < 0.05);
    }
}

TEST_CASE("conjugacy search: construct-then-recover on SO(3)") {
    auto so3 = corpus_group("SO3");
    std::vector<GroupElement> c6;
    for (const auto& q : cyclic_rotations_z(6)) c6.push_back(GroupElement::make_rotation(q));
    SubgroupHandle k = SubgroupHandle::explicit_subgroup(so3, c6, 0, "C6");
    GroupElement g0 = GroupElement::make_rotation(quat_exp_axis_angle(0.35, 0, 0));
    SubgroupHandle h = conjugate_subgroup(k, g0);

    ConjugacySearchOptions opts;
    opts.seed = 3;
    opts.budget = 6000;
    opts.tol = 5e-3;
    auto res = conjugacy_search(h, k, so3, opts);
    CHECK(res.baseline > 0.1);  // genuinely displaced
    CHECK(res.converged);
    CHECK(res.residual <= opts.tol + res.error_bound);
    CHECK(res.residual <= res.baseline);
}

TEST_CASE("conjugacy search: identity case has residual zero") {
    auto so3 = corpus_group("SO3");
    std::vector<GroupElement> c4;
    for (const auto& q : cyclic_rotations_z(4)) c4.push_back(GroupElement::make_rotation(q));
    SubgroupHandle k = SubgroupHandle::explicit_subgroup(so3, c4, 0, "C4");
    ConjugacySearchOptions opts;
    opts.seed = 1;
    opts.budget = 500;
    auto res = conjugacy_search(k, k, so3, opts);
    CHECK(res.baseline == 0.0);
    CHECK(res.residual == 0.0);
    CHECK(res.converged);
}

TEST_CASE("conjugacy search in semidirect coordinates recovers the reflection shift") {
    auto ga = corpus_group("G_alpha");
    // K = {(0,0;e), (0,0;-1)}; H = same conjugated by ((0, 3/10); e)
    std::vector<GroupElement> kelems{
        GroupElement::make_semi(torus_reduce({Rat(0), Rat(0)}), 0),
        GroupElement::make_semi(torus_reduce({Rat(0), Rat(0)}), 1)};
    SubgroupHandle k = SubgroupHandle::explicit_subgroup(ga, kelems, 0, "refl0");
    GroupElement shift = GroupElement::make_semi(torus_reduce({Rat(0), Rat(3, 10)}), 0);
    SubgroupHandle h = conjugate_subgroup(k, shift);

    ConjugacySearchOptions opts;
    opts.seed = 5;
    opts.budget = 9000;
    opts.tol = 5e-3;
    opts.restarts = 10;
    auto res = conjugacy_search(h, k, ga, opts);
    CHECK(res.baseline == doctest::Approx(0.4));  // centered representative of 3/5
    CHECK(res.converged);
    CHECK(res.residual <= res.baseline);
}

TEST_CASE("conjugacy search never exceeds the baseline over seeded trials") {
    auto so3 = corpus_group("SO3");
    std::mt19937_64 outer(99);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<GroupElement> c3;
        for (const auto& q : cyclic_rotations_z(3)) c3.push_back(GroupElement::make_rotation(q));
        SubgroupHandle k = SubgroupHandle::explicit_subgroup(so3, c3, 0, "C3");
        GroupElement g0 =
            GroupElement::make_rotation(quat_exp_axis_angle(u(outer), u(outer), u(outer)));
        SubgroupHandle h = conjugate_subgroup(k, g0);
        ConjugacySearchOptions opts;
        opts.seed = static_cast<unsigned>(trial + 1);
        opts.budget = 600;  // deliberately small: convergence not guaranteed
        opts.restarts = 2;
        auto res = conjugacy_search(h, k, so3, opts);
        CHECK(res.residual <= res.baseline + 1e-12);
    }
}

TEST_CASE("seeded determinism of the search") {
    auto so3 = corpus_group("SO3");
    std::vector<GroupElement> c5;
    for (const auto& q : cyclic_rotations_z(5)) c5.push_back(GroupElement::make_rotation(q));
    SubgroupHandle k = SubgroupHandle::explicit_subgroup(so3, c5, 0, "C5");
    GroupElement g0 = GroupElement::make_rotation(quat_exp_axis_angle(0.2, 0.3, 0));
    SubgroupHandle h = conjugate_subgroup(k, g0);
    ConjugacySearchOptions opts;
    opts.seed = 42;
    opts.budget = 1500;
    auto r1 = conjugacy_search(h, k, so3, opts);
    auto r2 = conjugacy_search(h, k, so3, opts);
    CHECK(r1.residual == r2.residual);
    CHECK(r1.iterations == r2.iterations);
}

TEST_CASE("turing gap at a coarse mesh: headline positive, argmin icosahedral") {
    auto rep = turing_gap(0.15, default_turing_candidates(), 2);
    CHECK(rep.min_gap - rep.error_bound > 0);
    CHECK(rep.argmin == "I");
    // icosahedral covering radius: the deep holes sit at the cell centers of
    // the 600-cell, giving 2 sqrt(3) sin(pi/10) in this metric
    double expected = 2 * std::sqrt(3.0) * std::sin(M_PI / 10);
    CHECK(std::abs(rep.min_gap - expected) <= rep.error_bound + 1e-9);
    // the trivial group row measures the diameter scale
    const TuringGapRow* c1 = nullptr;
    for (const auto& row : rep.rows)
        if (row.name == "C1") c1 = &row;
    REQUIRE(c1 != nullptr);
    CHECK(c1->estimate > 2.7);  // close to the diameter 2 sqrt 2
}

TEST_CASE("turing gap rows dominate their subgroup inclusions") {
    auto rep = turing_gap(0.2, finite_rotation_group_catalog(8, 4), 2);
    auto find = [&](const std::string& name) {
        for (const auto& row : rep.rows)
            if (row.name == name) return row.estimate;
        FAIL("missing row");
        return 0.0;
    };
    // C2 <= C4 <= C8 gives decreasing covering distances
    CHECK(find("C2") >= find("C4") - 1e-9);
    CHECK(find("C4") >= find("C8") - 1e-9);
}

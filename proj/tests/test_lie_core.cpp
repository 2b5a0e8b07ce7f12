#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "grouplab/experiments.hpp"
#include "grouplab/lie_core.hpp"

using namespace grouplab;

TEST_CASE("construction validates antisymmetry, Jacobi and the gram matrix") {
    CHECK_NOTHROW(so3_algebra());
    CHECK_NOTHROW(u2_algebra());
    // break antisymmetry
    auto l = so3_algebra();
    auto bad = l.c;
    bad[0][1][2] = Rat(2);
    CHECK_THROWS(LieAlgebraData(3, bad, l.gram));
    // non-positive-definite gram
    QMat gram = qmat_identity(3);
    gram[2][2] = Rat(-1);
    CHECK_THROWS(LieAlgebraData(3, l.c, gram));
}

TEST_CASE("the 2-dimensional affine algebra has no invariant inner product") {
    // [e1, e2] = e2
    std::vector<std::vector<QVec>> c(2, std::vector<QVec>(2, QVec(2, Rat(0))));
    c[0][1][1] = Rat(1);
    c[1][0][1] = Rat(-1);
    LieAlgebraData aff(2, c, qmat_identity(2));
    CHECK_FALSE(aff.invariant);
    CHECK_THROWS(is_perfect(aff));
}

TEST_CASE("derived subalgebras of the corpus") {
    CHECK(derived_subalgebra(so3_algebra()).dim() == 3);
    CHECK(derived_subalgebra(abelian_algebra(2)).dim() == 0);
    CHECK(derived_subalgebra(u2_algebra()).dim() == 3);
    // the u(2) derived subalgebra never touches the central coordinate
    auto sub = derived_subalgebra(u2_algebra());
    for (const auto& row : sub.basis_rows) CHECK(row[3] == Rat(0));
}

TEST_CASE("perfectness verdicts") {
    CHECK(is_perfect(so3_algebra()));
    CHECK(is_perfect(su2_algebra()));
    CHECK(is_perfect(direct_sum(su2_algebra(), su2_algebra())));
    CHECK_FALSE(is_perfect(u2_algebra()));
    CHECK_FALSE(is_perfect(abelian_algebra(1)));
    CHECK_FALSE(is_perfect(abelian_algebra(3)));
    CHECK_FALSE(is_perfect(direct_sum(so3_algebra(), abelian_algebra(1))));
}

TEST_CASE("ricci_min of so(3) standard is exactly one half") {
    auto r = ricci_min(so3_algebra());
    CHECK(r.exact_pipeline);
    CHECK(r.value == 0.5);
    REQUIRE(!r.form.empty());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(r.form[i][j] == (i == j ? Rat(1, 2) : Rat(0)));
}

TEST_CASE("ricci_min matches a sphere-sampling oracle within 1e-6") {
    // oracle: min over 1e5 random unit vectors of (1/4)|ad x|_HS^2; for the
    // algebras below the gram is the identity and the structure constants are
    // already orthonormal, so ad can be evaluated directly
    std::mt19937_64 rng(41);
    std::normal_distribution<double> gauss(0, 1);
    auto oracle = [&](const LieAlgebraData& l) {
        int n = l.n;
        double best = 1e300;
        for (int trial = 0; trial < 100000; ++trial) {
            std::vector<double> x(n);
            double norm = 0;
            for (auto& v : x) {
                v = gauss(rng);
                norm += v * v;
            }
            norm = std::sqrt(norm);
            double hs = 0;
            for (int i = 0; i < n; ++i)
                for (int k = 0; k < n; ++k) {
                    double acc = 0;
                    for (int a = 0; a < n; ++a) acc += x[a] / norm * l.c[a][i][k].to_double();
                    hs += acc * acc;
                }
            best = std::min(best, hs / 4.0);
        }
        return best;
    };
    auto so3 = so3_algebra();
    CHECK(std::abs(ricci_min(so3).value - oracle(so3)) < 1e-6);
    auto su2n = su2_algebra_neg_half_trace();
    CHECK(std::abs(ricci_min(su2n).value - oracle(su2n)) < 1e-6);
}

TEST_CASE("ricci_min rejects non-semisimple input") {
    CHECK_THROWS(ricci_min(u2_algebra()));
    CHECK_THROWS(ricci_min(abelian_algebra(2)));
    CHECK_THROWS(ricci_min(direct_sum(so3_algebra(), abelian_algebra(1))));
}

TEST_CASE("gram scaling law: gram * t^2 scales ricci by 1/t^2 and the bound by t") {
    auto base = so3_algebra();
    auto scaled = with_gram_scaled(base, Rat(4));  // t = 2
    auto r0 = ricci_min(base), r1 = ricci_min(scaled);
    CHECK(r1.exact_pipeline);
    CHECK(r1.value == doctest::Approx(r0.value / 4.0));
    CHECK(myers_bound(scaled) == doctest::Approx(2.0 * myers_bound(base)));
    // non-square scaling exercises the floating path
    auto odd = with_gram_scaled(base, Rat(3));
    auto r2 = ricci_min(odd);
    CHECK_FALSE(r2.exact_pipeline);
    CHECK(r2.value == doctest::Approx(r0.value / 3.0).epsilon(1e-9));
}

TEST_CASE("su(2) realizations: isometric data matches so(3), the -tr/2 one does not") {
    CHECK(ricci_min(su2_algebra()).value == 0.5);
    CHECK(ricci_min(su2_algebra_neg_half_trace()).value == doctest::Approx(2.0));
}

TEST_CASE("myers bound of so(3) standard is 2 pi") {
    CHECK(myers_bound(so3_algebra()) == doctest::Approx(2 * M_PI));
    CHECK(myers_bound(direct_sum(su2_algebra(), su2_algebra())) ==
          doctest::Approx(M_PI * std::sqrt(5.0 / 0.5)));
}

TEST_CASE("myers bound dominates the sampled diameter") {
    CHECK(myers_bound(so3_algebra()) >= sampled_diameter(SamplableGroup::so3(), 0.35));
    CHECK(myers_bound(su2_algebra()) >= sampled_diameter(SamplableGroup::su2(), 0.5));
}

TEST_CASE("exponential coverage: the three worked cases") {
    auto so3 = SamplableGroup::so3();
    auto l = so3_algebra();
    CoverageOptions opts;
    opts.oracle_mesh = 0.3;

    auto full = exp_coverage_check(so3, l, 2 * M_PI, 0.05, opts);
    CHECK(full.covered);
    CHECK(full.gap <= full.threshold);

    auto partial = exp_coverage_check(so3, l, 1.0, 0.05, opts);
    CHECK_FALSE(partial.covered);
    CHECK(partial.gap > partial.threshold);

    auto su2 = SamplableGroup::su2();
    auto cov2 = exp_coverage_check(su2, su2_algebra(), myers_bound(su2_algebra()), 0.05, opts);
    CHECK(cov2.covered);
}

TEST_CASE("exp coverage rejects unsupported realizations") {
    CHECK_THROWS(exp_coverage_check(SamplableGroup::torus(2), so3_algebra(), 1.0, 0.1));
}

TEST_CASE("JSON round trip") {
    auto l = su2_algebra_neg_half_trace();
    auto text = lie_algebra_to_json(l);
    auto back = lie_algebra_from_json(text);
    CHECK(back.n == l.n);
    CHECK(back.c == l.c);
    CHECK(back.gram == l.gram);
    CHECK(back.invariant);
}

TEST_CASE("basis permutations change nothing structural") {
    auto l = u2_algebra();
    // permute basis (3 0 1 2)
    int n = l.n;
    std::vector<int> perm{3, 0, 1, 2};
    std::vector<std::vector<QVec>> c(n, std::vector<QVec>(n, QVec(n, Rat(0))));
    QMat gram(n, QVec(n, Rat(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            gram[i][j] = l.gram[perm[i]][perm[j]];
            for (int k = 0; k < n; ++k) c[i][j][k] = l.c[perm[i]][perm[j]][perm[k]];
        }
    LieAlgebraData shuffled(n, c, gram);
    CHECK(derived_subalgebra(shuffled).dim() == derived_subalgebra(l).dim());
    CHECK(is_perfect(shuffled) == is_perfect(l));
    auto so3p = so3_algebra();
    // the so(3) case keeps the exact ricci value under permutation
    std::vector<int> p3{2, 0, 1};
    std::vector<std::vector<QVec>> c3(3, std::vector<QVec>(3, QVec(3, Rat(0))));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) c3[i][j][k] = so3p.c[p3[i]][p3[j]][p3[k]];
    LieAlgebraData rotated(3, c3, qmat_identity(3));
    CHECK(ricci_min(rotated).value == 0.5);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "grouplab/finite_group.hpp"

using namespace grouplab;

TEST_CASE("cyclic group basics") {
    FiniteGroup z6 = cyclic_group(6);
    CHECK(z6.size() == 6);
    CHECK(z6.mul(4, 5) == 3);
    CHECK(z6.inv(2) == 4);
    CHECK(z6.order_of(2) == 3);
    CHECK(z6.is_abelian());
}

TEST_CASE("table validation rejects broken tables") {
    // constant table: not a latin square
    CHECK_THROWS(FiniteGroup({"e", "a"}, {{0, 0}, {0, 0}}));
    // identity must be element 0
    CHECK_THROWS(FiniteGroup({"a", "e"}, {{1, 0}, {0, 1}}));
}

TEST_CASE("S3 is nonabelian of order 6 with the right element orders") {
    FiniteGroup s3 = symmetric3();
    CHECK(s3.size() == 6);
    CHECK_FALSE(s3.is_abelian());
    std::multiset<int> orders;
    for (int a = 0; a < 6; ++a) orders.insert(s3.order_of(a));
    CHECK(orders == std::multiset<int>{1, 2, 2, 2, 3, 3});
}

TEST_CASE("closure and normality") {
    FiniteGroup s3 = symmetric3();
    int three = -1;
    for (int a = 0; a < 6; ++a)
        if (s3.order_of(a) == 3) { three = a; break; }
    auto a3 = s3.closure({three});
    CHECK(a3.size() == 3);
    CHECK(s3.is_normal(a3));
    int two = -1;
    for (int a = 0; a < 6; ++a)
        if (s3.order_of(a) == 2) { two = a; break; }
    CHECK_FALSE(s3.is_normal(s3.closure({two})));
}

TEST_CASE("quotient of S3 by A3 is Z2") {
    FiniteGroup s3 = symmetric3();
    int three = -1;
    for (int a = 0; a < 6; ++a)
        if (s3.order_of(a) == 3) three = a;
    auto [q, proj] = s3.quotient(s3.closure({three}));
    CHECK(q.size() == 2);
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) CHECK(proj[s3.mul(a, b)] == q.mul(proj[a], proj[b]));
}

TEST_CASE("automorphism groups have the known orders") {
    CHECK(cyclic_group(2).automorphisms().size() == 1);
    CHECK(cyclic_group(4).automorphisms().size() == 2);
    CHECK(direct_product(cyclic_group(2), cyclic_group(2)).automorphisms().size() == 6);
    CHECK(symmetric3().automorphisms().size() == 6);
}

TEST_CASE("abelian decomposition recovers invariant factors") {
    auto all_of = [](const FiniteGroup& g) {
        std::vector<int> v;
        for (int i = 0; i < g.size(); ++i) v.push_back(i);
        return v;
    };

    FiniteGroup z12 = cyclic_group(12);
    auto d1 = abelian_decomposition(z12, all_of(z12));
    CHECK(d1.factors == std::vector<long long>{12});

    FiniteGroup z2z4 = direct_product(cyclic_group(2), cyclic_group(4));
    auto d2 = abelian_decomposition(z2z4, all_of(z2z4));
    CHECK(d2.factors == std::vector<long long>{4, 2});

    FiniteGroup z2z2 = direct_product(cyclic_group(2), cyclic_group(2));
    auto d3 = abelian_decomposition(z2z2, all_of(z2z2));
    CHECK(d3.factors == std::vector<long long>{2, 2});

    // coordinates reconstruct every element
    for (int a = 0; a < z2z4.size(); ++a) {
        int acc = z2z4.identity();
        for (size_t i = 0; i < d2.generators.size(); ++i)
            for (long long k = 0; k < d2.coords[a][i]; ++k) acc = z2z4.mul(acc, d2.generators[i]);
        CHECK(acc == a);
    }
}

TEST_CASE("abelian decomposition rejects nonabelian input") {
    FiniteGroup s3 = symmetric3();
    std::vector<int> all;
    for (int i = 0; i < 6; ++i) all.push_back(i);
    CHECK_THROWS(abelian_decomposition(s3, all));
}

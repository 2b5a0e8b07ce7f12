#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "grouplab/experiments.hpp"
#include "grouplab/functorial.hpp"

using namespace grouplab;

TEST_CASE("torus projection pushforward: grid to grid") {
    GroupHom f = GroupHom::torus_projection(2, {0});
    SubgroupHandle k = SubgroupHandle::cyclic_grid(f.domain(), 4);
    SubgroupHandle image = pushforward(f, k, 0.05);
    auto s = sample_of(image, 0.05);
    CHECK(s.mesh == 0.0);
    // image is C4 in the circle
    SubgroupHandle c4 = SubgroupHandle::cyclic_grid(f.codomain(), 4);
    auto r = hausdorff_distance(s, sample_of(c4, 0.05));
    CHECK(r.estimate == 0.0);
}

TEST_CASE("identity hom returns the handle unchanged") {
    auto t2 = SamplableGroup::torus(2);
    GroupHom id = GroupHom::identity(t2);
    SubgroupHandle k = SubgroupHandle::cyclic_grid(t2, 3);
    auto s1 = sample_of(k, 0.1);
    auto s2 = sample_of(pushforward(id, k), 0.1);
    auto r = hausdorff_distance(s1, s2);
    CHECK(r.estimate == 0.0);
}

TEST_CASE("double cover pushforward halves the binary dihedral lift") {
    GroupHom f = GroupHom::su2_to_so3();
    // binary lift of the 4-element dihedral rotation group: order 8 in SU(2)
    std::vector<GroupElement> lift;
    for (const auto& q : binary_lift(dihedral_rotations(2))) {
        lift.push_back(GroupElement::make_unitary(q));
    }
    CHECK(lift.size() == 8);
    SubgroupHandle k = SubgroupHandle::explicit_subgroup(f.domain(), lift, 0, "binD2");
    auto image = sample_of(pushforward(f, k), 0.05);
    // distinct rotations in the image: 4 (the dihedral group of order 4)
    size_t distinct = 0;
    auto so3 = f.codomain();
    for (size_t i = 0; i < image.points.size(); ++i) {
        bool dup = false;
        for (size_t j = 0; j < i; ++j)
            if (so3->distance(image.points[i], image.points[j]) < 1e-9) dup = true;
        if (!dup) ++distinct;
    }
    CHECK(distinct == 4);
}

TEST_CASE("preimage lifting: projection fibers fill the kernel torus") {
    GroupHom f = GroupHom::torus_projection(2, {0});
    SubgroupHandle c2 = SubgroupHandle::cyclic_grid(f.codomain(), 2);
    SubgroupHandle lifted = lift_preimage(f, c2, 0.05);
    auto s = sample_of(lifted, 0.05);
    CHECK(s.mesh <= 0.05 + 1e-12);
    // every sampled point projects into {0, 1/2}
    for (const auto& p : s.points) {
        double x = p.torus.coords[0].to_double();
        double d = std::min({std::abs(x), std::abs(x - 0.5), std::abs(x - 1.0)});
        CHECK(d < 1e-12);
    }
    // round trip comes back within the error budget
    auto rt = roundtrip_defect(f, c2, 0.05);
    CHECK(rt.estimate <= rt.error_bound + 1e-12);
}

TEST_CASE("preimage of the trivial subgroup is the kernel") {
    GroupHom f = GroupHom::torus_lattice_quotient(
        2, RationalLattice::from_generators(2, QMat{{Rat(1, 2)}, {Rat(1, 2)}}));
    std::vector<GroupElement> trivial{f.codomain()->identity()};
    SubgroupHandle l = SubgroupHandle::explicit_subgroup(f.codomain(), trivial, 0, "trivial");
    auto s = sample_of(lift_preimage(f, l), 0.05);
    CHECK(s.points.size() == 2);  // Z^2 + Z(1/2,1/2) over Z^2 has index 2
    CHECK(s.mesh == 0.0);
    // both preimages die under the quotient map
    for (const auto& p : s.points) {
        GroupElement img = f.apply(p);
        CHECK(f.codomain()->distance(img, f.codomain()->identity()) < 1e-12);
    }
}

TEST_CASE("double cover preimage doubles the cyclic order") {
    GroupHom f = GroupHom::su2_to_so3();
    std::vector<GroupElement> c3;
    for (const auto& q : cyclic_rotations_z(3)) c3.push_back(GroupElement::make_rotation(q));
    SubgroupHandle l = SubgroupHandle::explicit_subgroup(f.codomain(), c3, 0, "C3");
    auto s = sample_of(lift_preimage(f, l), 0.05);
    CHECK(s.points.size() == 6);
    CHECK(s.mesh == 0.0);
    // closed under multiplication in SU(2): the binary lift is a subgroup
    auto su2 = f.domain();
    for (const auto& a : s.points)
        for (const auto& b : s.points) {
            GroupElement p = su2->multiply(a, b);
            bool found = false;
            for (const auto& c : s.points)
                if (su2->distance(p, c) < 1e-9) found = true;
            CHECK(found);
        }
}

TEST_CASE("semidirect lattice quotient maps the alpha group onto the beta group") {
    QMat gen(2, QVec(1, Rat(0)));
    gen[0][0] = Rat(1, 2);
    gen[1][0] = Rat(1, 2);
    GroupHom f = GroupHom::semidirect_quotient(g_alpha(), RationalLattice::from_generators(2, gen));
    // codomain action is exactly beta
    const auto& cod = f.codomain()->semidirect_group();
    CHECK(imat_eq(cod.action(1), IMat{{1, 1}, {0, -1}}));
    // kernel: preimage of the trivial subgroup has two points per F-element of
    // the identity; round trips stay within budget
    SubgroupHandle grid = SubgroupHandle::cyclic_grid(f.codomain(), 2);
    auto rt = roundtrip_defect(f, grid, 0.05);
    CHECK(rt.estimate <= rt.error_bound + 1e-12);
}

TEST_CASE("functoriality on samples: composing projections") {
    GroupHom f = GroupHom::torus_projection(3, {0, 1});
    GroupHom g = GroupHom::torus_projection(2, {0});
    SubgroupHandle k = SubgroupHandle::cyclic_grid(f.domain(), 4);
    auto one = sample_of(pushforward(g, pushforward(f, k)), 0.05);
    GroupHom direct = GroupHom::torus_projection(3, {0});
    auto two = sample_of(pushforward(direct, k), 0.05);
    auto r = hausdorff_distance(one, two);
    CHECK(r.estimate == 0.0);
}

TEST_CASE("kernel samples are conjugation invariant within tolerance") {
    QMat gen(2, QVec(1, Rat(0)));
    gen[0][0] = Rat(1, 2);
    gen[1][0] = Rat(1, 2);
    GroupHom f = GroupHom::semidirect_quotient(g_alpha(), RationalLattice::from_generators(2, gen));
    std::vector<GroupElement> trivial{f.codomain()->identity()};
    SubgroupHandle l = SubgroupHandle::explicit_subgroup(f.codomain(), trivial, 0, "trivial");
    auto ker = sample_of(lift_preimage(f, l), 0.05);
    auto dom = f.domain();
    // conjugate kernel samples by a few domain elements; set must be preserved
    std::vector<GroupElement> testers{
        GroupElement::make_semi(torus_reduce({Rat(1, 8), Rat(1, 8)}), 0),
        GroupElement::make_semi(torus_reduce({Rat(1, 4), Rat(1, 3)}), 1)};
    for (const auto& g : testers)
        for (const auto& p : ker.points) {
            GroupElement c = dom->conjugate(g, p);
            double best = 1e300;
            for (const auto& q : ker.points) best = std::min(best, dom->distance(c, q));
            CHECK(best < 1e-9);
        }
}

TEST_CASE("surjectivity round trips across the three rule families") {
    int count = 0;
    // family 1: coordinate projections
    {
        GroupHom f = GroupHom::torus_projection(2, {0});
        for (int n : {1, 2, 4, 8}) {
            auto rt = roundtrip_defect(f, SubgroupHandle::cyclic_grid(f.codomain(), n), 0.05);
            CHECK(rt.estimate <= rt.error_bound + 1e-12);
            ++count;
        }
        auto rt = roundtrip_defect(f, SubgroupHandle::full(f.codomain()), 0.05);
        CHECK(rt.estimate <= rt.error_bound + 1e-12);
        ++count;
    }
    // family 2: lattice quotients (torus and semidirect)
    {
        QMat gen(2, QVec(1, Rat(0)));
        gen[0][0] = Rat(1, 2);
        gen[1][0] = Rat(1, 2);
        auto lat = RationalLattice::from_generators(2, gen);
        GroupHom f = GroupHom::torus_lattice_quotient(2, lat);
        for (int n : {2, 3}) {
            auto rt = roundtrip_defect(f, SubgroupHandle::cyclic_grid(f.codomain(), n), 0.05);
            CHECK(rt.estimate <= rt.error_bound + 1e-12);
            ++count;
        }
        GroupHom fs = GroupHom::semidirect_quotient(g_alpha(), lat);
        for (int n : {2, 4}) {
            auto rt = roundtrip_defect(fs, SubgroupHandle::cyclic_grid(fs.codomain(), n), 0.05);
            CHECK(rt.estimate <= rt.error_bound + 1e-12);
            ++count;
        }
    }
    // family 3: the double cover
    {
        GroupHom f = GroupHom::su2_to_so3();
        for (int n : {2, 3, 6}) {
            std::vector<GroupElement> cn;
            for (const auto& q : cyclic_rotations_z(n)) cn.push_back(GroupElement::make_rotation(q));
            auto rt = roundtrip_defect(
                f, SubgroupHandle::explicit_subgroup(f.codomain(), cn, 0, "Cn"), 0.05);
            CHECK(rt.estimate <= rt.error_bound + f.codomain()->group_tolerance());
            ++count;
        }
    }
    CHECK(count >= 10);
}

TEST_CASE("openness probe passes on the projection case") {
    GroupHom f = GroupHom::torus_projection(2, {0});
    SubgroupHandle k = SubgroupHandle::cyclic_grid(f.domain(), 2);
    auto ks = sample_of(k, 0.05);
    VietorisNbhd nbhd;
    for (const auto& p : ks.points) nbhd.u0.balls.push_back({p, 0.45});
    Region r;
    r.balls.push_back({f.domain()->identity(), 0.3});
    nbhd.meets.push_back(r);
    std::vector<std::pair<std::string, SubgroupHandle>> battery;
    battery.push_back({"C2", SubgroupHandle::cyclic_grid(f.codomain(), 2)});
    battery.push_back({"C4", SubgroupHandle::cyclic_grid(f.codomain(), 4)});
    battery.push_back({"image", pushforward(f, k, 0.05)});
    auto rep = openness_probe(f, k, nbhd, battery, 0.05);
    CHECK(rep.all_pass);
    bool some_in = false;
    for (const auto& c : rep.candidates) some_in |= c.in_image_nbhd;
    CHECK(some_in);
    auto js = probe_report_to_json(rep);
    CHECK(js.find("all_pass") != std::string::npos);
}

TEST_CASE("openness probe on the double cover with a conjugated candidate") {
    GroupHom f = GroupHom::su2_to_so3();
    std::vector<GroupElement> lift;
    for (const auto& q : binary_lift(cyclic_rotations_z(3)))
        lift.push_back(GroupElement::make_unitary(q));
    SubgroupHandle k = SubgroupHandle::explicit_subgroup(f.domain(), lift, 0, "binC3");
    auto ks = sample_of(k, 0.05);
    VietorisNbhd nbhd;
    for (const auto& p : ks.points) nbhd.u0.balls.push_back({p, 0.7});
    Region r;
    r.balls.push_back({f.domain()->identity(), 0.5});
    nbhd.meets.push_back(r);
    std::vector<std::pair<std::string, SubgroupHandle>> battery;
    std::vector<GroupElement> c3;
    for (const auto& q : cyclic_rotations_z(3)) c3.push_back(GroupElement::make_rotation(q));
    SubgroupHandle base = SubgroupHandle::explicit_subgroup(f.codomain(), c3, 0, "C3");
    battery.push_back({"C3", base});
    battery.push_back({"C3_tilted", conjugate_subgroup(
                                        base, GroupElement::make_rotation(
                                                  quat_exp_axis_angle(0.03, 0, 0)))});
    auto rep = openness_probe(f, k, nbhd, battery, 0.05);
    CHECK(rep.all_pass);
}

TEST_CASE("the probe requires the neighborhood to contain K") {
    GroupHom f = GroupHom::torus_projection(2, {0});
    SubgroupHandle k = SubgroupHandle::cyclic_grid(f.domain(), 2);
    VietorisNbhd tiny;
    tiny.u0.balls.push_back({f.domain()->identity(), 0.05});
    CHECK_THROWS(openness_probe(f, k, tiny, {}, 0.05));
}

TEST_CASE("pushforward keeps subgroup closure within the inflated tolerance") {
    QMat gen(2, QVec(1, Rat(0)));
    gen[0][0] = Rat(1, 2);
    gen[1][0] = Rat(1, 2);
    GroupHom f = GroupHom::semidirect_quotient(g_alpha(), RationalLattice::from_generators(2, gen));
    SubgroupHandle k = SubgroupHandle::cyclic_grid(f.domain(), 4);
    auto img = sample_of(pushforward(f, k, 0.05), 0.05);
    auto cod = f.codomain();
    double tol = cod->group_tolerance() + img.mesh * (1 + cod->distortion_bound());
    for (const auto& a : img.points)
        for (const auto& b : img.points) {
            GroupElement p = cod->multiply(a, b);
            double best = 1e300;
            for (const auto& c : img.points) best = std::min(best, cod->distance(p, c));
            CHECK(best <= tol);
        }
}

TEST_CASE("homs map identity to identity and respect products on sampled pairs") {
    std::vector<GroupHom> homs;
    homs.push_back(GroupHom::torus_projection(2, {1}));
    QMat gen(2, QVec(1, Rat(0)));
    gen[0][0] = Rat(1, 2);
    gen[1][0] = Rat(1, 2);
    homs.push_back(GroupHom::torus_lattice_quotient(2, RationalLattice::from_generators(2, gen)));
    homs.push_back(GroupHom::semidirect_quotient(g_alpha(), RationalLattice::from_generators(2, gen)));
    homs.push_back(GroupHom::su2_to_so3());
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<long long> num(0, 23);
    std::uniform_real_distribution<double> real(-2, 2);
    for (const auto& f : homs) {
        auto dom = f.domain();
        auto cod = f.codomain();
        GroupElement fid = f.apply(dom->identity());
        CHECK(cod->distance(fid, cod->identity()) <= cod->group_tolerance());
        auto rand_elem = [&]() -> GroupElement {
            switch (dom->kind()) {
                case SamplableGroup::Kind::Torus:
                    return GroupElement::make_torus(
                        torus_reduce({Rat(num(rng), 24), Rat(num(rng), 24)}));
                case SamplableGroup::Kind::Semidirect:
                    return GroupElement::make_semi(
                        torus_reduce({Rat(num(rng), 24), Rat(num(rng), 24)}),
                        static_cast<int>(rng() % 2));
                default:
                    return GroupElement::make_unitary(
                        quat_exp_axis_angle(real(rng), real(rng), real(rng)));
            }
        };
        for (int trial = 0; trial < 25; ++trial) {
            GroupElement a = rand_elem(), b = rand_elem();
            GroupElement lhs = f.apply(dom->multiply(a, b));
            GroupElement rhs = cod->multiply(f.apply(a), f.apply(b));
            CHECK(cod->distance(lhs, rhs) <= cod->group_tolerance());
        }
    }
}

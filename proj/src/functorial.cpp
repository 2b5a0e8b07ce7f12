#include "grouplab/functorial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace grouplab {

namespace {

double frobenius(const QMat& m) {
    double acc = 0;
    for (const auto& row : m)
        for (const auto& v : row) acc += v.to_double() * v.to_double();
    return std::sqrt(acc);
}

/// Coset representatives of Lambda / Z^m inside [0,1)^m, as domain
/// coordinates: all points B k mod 1 for k over the quotient index box.
std::vector<QVec> lattice_coset_reps(const QMat& basis) {
    int m = static_cast<int>(basis.size());
    QMat inv = qmat_inverse(basis);
    // the quotient has |det(inv)| elements; enumerate k in a box of the
    // diagonal of the canonical (triangular) inverse-free way: scan integer
    // vectors k with entries in [0, N) for N = index bound and dedupe mod 1
    long long index = 1;
    Rat det = qmat_det(basis);
    Rat inv_det = Rat(1) / det;
    if (!inv_det.is_integer() || inv_det.num <= 0)
        throw std::invalid_argument("lattice_coset_reps: lattice does not contain Z^m");
    index = inv_det.num;
    std::vector<QVec> reps;
    std::vector<long long> counter(m, 0);
    long long bound = index;  // entries of k beyond the index repeat cosets
    while (true) {
        QVec point(m, Rat(0));
        for (int i = 0; i < m; ++i) {
            Rat acc(0);
            for (int j = 0; j < m; ++j) acc += basis[i][j] * Rat(counter[j]);
            point[i] = mod1(acc);
        }
        bool dup = false;
        for (const auto& r : reps)
            if (r == point) { dup = true; break; }
        if (!dup) reps.push_back(point);
        if (static_cast<long long>(reps.size()) == index) break;
        int i = 0;
        while (i < m) {
            if (++counter[i] < bound) break;
            counter[i] = 0;
            ++i;
        }
        if (i == m) break;
    }
    if (static_cast<long long>(reps.size()) != index)
        throw std::logic_error("lattice_coset_reps: enumeration incomplete");
    return reps;
}

}  // namespace

GroupHom GroupHom::torus_projection(int m, std::vector<int> coords) {
    if (coords.empty() || static_cast<int>(coords.size()) >= m)
        throw std::invalid_argument("torus_projection: need a proper nonempty coordinate subset");
    for (int c : coords)
        if (c < 0 || c >= m) throw std::invalid_argument("torus_projection: coordinate out of range");
    GroupHom h;
    h.rule_ = Rule::TorusProjection;
    h.domain_ = SamplableGroup::torus(m);
    h.codomain_ = SamplableGroup::torus(static_cast<int>(coords.size()));
    h.coords_ = std::move(coords);
    h.lipschitz_ = 1;
    h.inner_ball_factor_ = 1;
    h.section_lipschitz_ = 1;
    return h;
}

GroupHom GroupHom::torus_lattice_quotient(int m, RationalLattice lattice) {
    GroupHom h;
    h.rule_ = Rule::TorusLatticeQuotient;
    h.domain_ = SamplableGroup::torus(m);
    h.codomain_ = SamplableGroup::torus(m);
    h.basis_ = lattice.basis;
    h.basis_inv_ = qmat_inverse(lattice.basis);
    h.kernel_reps_ = lattice_coset_reps(lattice.basis);
    h.lipschitz_ = frobenius(h.basis_inv_);
    h.inner_ball_factor_ = 1.0 / frobenius(h.basis_);
    h.section_lipschitz_ = frobenius(h.basis_);
    return h;
}

GroupHom GroupHom::semidirect_quotient(const SemidirectGroup& g, RationalLattice lattice) {
    GroupHom h;
    h.rule_ = Rule::SemidirectQuotient;
    h.domain_ = SamplableGroup::semidirect(g);
    IntegerRep induced = invariant_lattice_quotient(g.rep(), lattice);
    h.codomain_ = SamplableGroup::semidirect(SemidirectGroup(g.torus_dim(), std::move(induced)));
    h.basis_ = lattice.basis;
    h.basis_inv_ = qmat_inverse(lattice.basis);
    h.kernel_reps_ = lattice_coset_reps(lattice.basis);
    h.lipschitz_ = std::max(1.0, frobenius(h.basis_inv_));
    h.inner_ball_factor_ = std::min(1.0, 1.0 / frobenius(h.basis_));
    h.section_lipschitz_ = std::max(1.0, frobenius(h.basis_));
    return h;
}

GroupHom GroupHom::su2_to_so3() {
    GroupHom h;
    h.rule_ = Rule::Su2ToSo3;
    h.domain_ = SamplableGroup::su2();
    h.codomain_ = SamplableGroup::so3();
    h.lipschitz_ = 2;
    h.inner_ball_factor_ = 1;
    h.section_lipschitz_ = 1;
    return h;
}

GroupHom GroupHom::identity(GroupPtr g) {
    GroupHom h;
    h.identity_ = true;
    h.domain_ = g;
    h.codomain_ = std::move(g);
    return h;
}

GroupElement GroupHom::apply(const GroupElement& x) const {
    if (identity_) return x;
    switch (rule_) {
        case Rule::TorusProjection: {
            QVec out;
            out.reserve(coords_.size());
            for (int c : coords_) out.push_back(x.torus.coords[c]);
            return GroupElement::make_torus(TorusPoint{std::move(out)});
        }
        case Rule::TorusLatticeQuotient:
            return GroupElement::make_torus(torus_reduce(qmat_apply(basis_inv_, x.torus.coords)));
        case Rule::SemidirectQuotient:
            return GroupElement::make_semi(torus_reduce(qmat_apply(basis_inv_, x.torus.coords)),
                                           x.finite);
        case Rule::Su2ToSo3: return GroupElement::make_rotation(x.quat);
    }
    throw std::logic_error("unreachable");
}

std::pair<std::vector<GroupElement>, double> GroupHom::fiber(const GroupElement& y,
                                                             double kernel_mesh) const {
    if (identity_) return {{y}, 0.0};
    switch (rule_) {
        case Rule::TorusProjection: {
            int m = domain_->torus_dim();
            std::vector<int> complement;
            for (int i = 0; i < m; ++i)
                if (std::find(coords_.begin(), coords_.end(), i) == coords_.end())
                    complement.push_back(i);
            // net of the kernel torus
            auto knet = SamplableGroup::torus(static_cast<int>(complement.size()))
                            ->eps_net(kernel_mesh);
            std::vector<GroupElement> out;
            out.reserve(knet.points.size());
            for (const auto& kp : knet.points) {
                QVec coords(m, Rat(0));
                for (size_t i = 0; i < coords_.size(); ++i)
                    coords[coords_[i]] = y.torus.coords[i];
                for (size_t i = 0; i < complement.size(); ++i)
                    coords[complement[i]] = kp.torus.coords[i];
                out.push_back(GroupElement::make_torus(TorusPoint{std::move(coords)}));
            }
            return {out, knet.mesh};
        }
        case Rule::TorusLatticeQuotient: {
            std::vector<GroupElement> out;
            QVec base = qmat_apply(basis_, y.torus.coords);
            for (const auto& rep : kernel_reps_) {
                QVec coords = base;
                for (size_t i = 0; i < coords.size(); ++i) coords[i] = mod1(coords[i] + rep[i]);
                out.push_back(GroupElement::make_torus(TorusPoint{std::move(coords)}));
            }
            return {out, 0.0};
        }
        case Rule::SemidirectQuotient: {
            std::vector<GroupElement> out;
            QVec base = qmat_apply(basis_, y.torus.coords);
            for (const auto& rep : kernel_reps_) {
                QVec coords = base;
                for (size_t i = 0; i < coords.size(); ++i) coords[i] = mod1(coords[i] + rep[i]);
                out.push_back(GroupElement::make_semi(TorusPoint{std::move(coords)}, y.finite));
            }
            return {out, 0.0};
        }
        case Rule::Su2ToSo3: {
            Quat q = y.quat;
            return {{GroupElement::make_unitary(q),
                     GroupElement::make_unitary({-q.w, -q.x, -q.y, -q.z})},
                    0.0};
        }
    }
    throw std::logic_error("unreachable");
}

std::string GroupHom::describe() const {
    if (identity_) return "id";
    switch (rule_) {
        case Rule::TorusProjection: return "torus-projection";
        case Rule::TorusLatticeQuotient: return "lattice-quotient";
        case Rule::SemidirectQuotient: return "semidirect-quotient";
        case Rule::Su2ToSo3: return "double-cover";
    }
    return "?";
}

SubgroupHandle pushforward(const GroupHom& f, const SubgroupHandle& k, double target_mesh) {
    if (k.parent()->kind() != f.domain()->kind())
        throw std::invalid_argument("pushforward: handle not in the domain group");
    if (f.is_identity()) return k;
    auto s = k.sample(target_mesh);
    std::vector<GroupElement> image;
    image.reserve(s.points.size());
    for (const auto& p : s.points) image.push_back(f.apply(p));
    return SubgroupHandle::explicit_subgroup(f.codomain(), std::move(image),
                                             f.lipschitz() * s.mesh,
                                             "pushforward(" + f.describe() + "," + k.origin() + ")");
}

SubgroupHandle lift_preimage(const GroupHom& f, const SubgroupHandle& l, double target_mesh) {
    if (l.parent()->kind() != f.codomain()->kind())
        throw std::invalid_argument("lift_preimage: handle not in the codomain group");
    if (f.is_identity()) return l;
    auto s = l.sample(target_mesh);
    std::vector<GroupElement> points;
    double fiber_mesh = 0;
    for (const auto& y : s.points) {
        auto [fib, fm] = f.fiber(y, target_mesh);
        fiber_mesh = std::max(fiber_mesh, fm);
        for (auto& x : fib) points.push_back(std::move(x));
    }
    double mesh = f.section_lipschitz() * s.mesh + fiber_mesh;
    return SubgroupHandle::explicit_subgroup(f.domain(), std::move(points), mesh,
                                             "preimage(" + f.describe() + "," + l.origin() + ")");
}

HausdorffResult roundtrip_defect(const GroupHom& f, const SubgroupHandle& l, double target_mesh) {
    SubgroupHandle lifted = lift_preimage(f, l, target_mesh);
    SubgroupHandle back = pushforward(f, lifted, target_mesh);
    return hausdorff_distance(sample_of(back, target_mesh), sample_of(l, target_mesh));
}

ProbeReport openness_probe(const GroupHom& f, const SubgroupHandle& k, const VietorisNbhd& nbhd,
                           const std::vector<std::pair<std::string, SubgroupHandle>>& battery,
                           double target_mesh) {
    // the neighborhood must actually contain K
    auto ks = sample_of(k, target_mesh);
    auto kc = vietoris_contains(ks, nbhd);
    if (kc.verdict != VietorisVerdict::Contained)
        throw std::invalid_argument("openness_probe: neighborhood does not contain K");

    ProbeReport rep;
    rep.image_nbhd.u0.balls.clear();
    auto map_region = [&](const Region& r) {
        Region out;
        for (const auto& ball : r.balls)
            out.balls.push_back({f.apply(ball.center), ball.radius * f.inner_ball_factor()});
        return out;
    };
    rep.image_nbhd.u0 = map_region(nbhd.u0);
    for (const auto& r : nbhd.meets) rep.image_nbhd.meets.push_back(map_region(r));

    rep.all_pass = true;
    for (const auto& [name, cand] : battery) {
        ProbeCandidateResult res;
        res.name = name;
        res.undecidable = false;
        auto cs = sample_of(cand, target_mesh);
        auto inv = vietoris_contains(cs, rep.image_nbhd);
        res.in_image_nbhd = inv.verdict == VietorisVerdict::Contained;
        if (inv.verdict == VietorisVerdict::Undecidable) res.undecidable = true;
        res.lift_in_original = false;
        res.lift_mesh = 0;
        if (res.in_image_nbhd) {
            SubgroupHandle lifted = lift_preimage(f, cand, target_mesh);
            auto ls = sample_of(lifted, target_mesh);
            res.lift_mesh = ls.mesh;
            auto lv = vietoris_contains(ls, nbhd);
            res.lift_in_original = lv.verdict == VietorisVerdict::Contained;
            if (lv.verdict == VietorisVerdict::Undecidable) res.undecidable = true;
            res.pass = res.lift_in_original;
        } else {
            res.pass = true;  // not in the image neighborhood: nothing to check
        }
        if (!res.pass) rep.all_pass = false;
        rep.candidates.push_back(res);
    }
    return rep;
}

std::string probe_report_to_json(const ProbeReport& report) {
    nlohmann::json j;
    j["all_pass"] = report.all_pass;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : report.candidates) {
        nlohmann::json cj;
        cj["name"] = c.name;
        cj["in_image_nbhd"] = c.in_image_nbhd;
        cj["lift_in_original"] = c.lift_in_original;
        cj["undecidable"] = c.undecidable;
        cj["lift_mesh"] = c.lift_mesh;
        cj["pass"] = c.pass;
        arr.push_back(cj);
    }
    j["candidates"] = arr;
    return j.dump(2);
}

}  // namespace grouplab

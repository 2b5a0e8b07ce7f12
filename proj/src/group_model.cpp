#include "grouplab/group_model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace grouplab {

// ---------------------------------------------------------------------------
// Torus points
// ---------------------------------------------------------------------------

TorusPoint torus_reduce(QVec raw) {
    for (auto& c : raw) c = mod1(c);
    return TorusPoint{std::move(raw)};
}

TorusPoint torus_add(const TorusPoint& a, const TorusPoint& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("torus_add: dimension mismatch");
    QVec out(a.coords);
    for (int i = 0; i < a.dim(); ++i) out[i] = mod1(out[i] + b.coords[i]);
    return TorusPoint{std::move(out)};
}

TorusPoint torus_neg(const TorusPoint& a) {
    QVec out(a.coords);
    for (auto& c : out) c = mod1(-c);
    return TorusPoint{std::move(out)};
}

TorusPoint torus_apply(const IMat& m, const TorusPoint& a) {
    int n = static_cast<int>(m.size());
    QVec out(n, Rat(0));
    for (int i = 0; i < n; ++i) {
        Rat acc(0);
        for (int j = 0; j < a.dim(); ++j) acc += Rat(m[i][j]) * a.coords[j];
        out[i] = mod1(acc);
    }
    return TorusPoint{std::move(out)};
}

bool torus_eq(const TorusPoint& a, const TorusPoint& b) {
    if (a.dim() != b.dim()) return false;
    for (int i = 0; i < a.dim(); ++i)
        if (a.coords[i] != b.coords[i]) return false;
    return true;
}

double torus_distance(const TorusPoint& a, const TorusPoint& b) {
    // double-precision throughout: coordinates are exact rationals, so the
    // conversion is deterministic and the hot Hausdorff loops stay cheap;
    // |d - round(d)| equals the centered-representative magnitude
    double acc = 0;
    for (int i = 0; i < a.dim(); ++i) {
        double d = a.coords[i].to_double() - b.coords[i].to_double();
        d -= std::round(d);
        acc += d * d;
    }
    return std::sqrt(acc);
}

// ---------------------------------------------------------------------------
// Semidirect products
// ---------------------------------------------------------------------------

SemidirectGroup::SemidirectGroup(int m, IntegerRep rep) : m_(m), rep_(std::move(rep)) {
    if (m <= 0) throw std::invalid_argument("SemidirectGroup: torus dimension must be positive");
    if (rep_.dim() != m)
        throw std::invalid_argument("SemidirectGroup: representation dimension mismatch");
    max_action_norm_ = 1.0;
    for (const auto& mat : rep_.matrices) {
        double fro = 0;
        for (const auto& row : mat)
            for (long long v : row) fro += static_cast<double>(v) * v;
        max_action_norm_ = std::max(max_action_norm_, std::sqrt(fro));
    }
}

SemidirectGroup build_semidirect(int m, const IntegerRep& rep) {
    // IntegerRep construction already verified the homomorphism; rebuilding
    // here re-runs those checks on the provided data.
    return SemidirectGroup(m, IntegerRep(rep.group, rep.matrices));
}

SemidirectGroup::Elem SemidirectGroup::mul(const Elem& a, const Elem& b) const {
    return {torus_add(a.t, torus_apply(action(a.g), b.t)), rep_.group.mul(a.g, b.g)};
}

SemidirectGroup::Elem SemidirectGroup::inv(const Elem& a) const {
    int gi = rep_.group.inv(a.g);
    return {torus_neg(torus_apply(action(gi), a.t)), gi};
}

std::pair<int, long long> center_components(const SemidirectGroup& g) {
    auto faith = is_faithful(g.rep());
    if (!faith.faithful)
        throw std::invalid_argument("center_components: action must be faithful");
    int m = g.torus_dim();
    const auto& f = g.finite_part();
    IMat stacked;
    for (int a = 0; a < f.size(); ++a) {
        if (a == f.identity()) continue;
        const IMat& mat = g.action(a);
        for (int i = 0; i < m; ++i) {
            std::vector<long long> row(m);
            for (int j = 0; j < m; ++j) row[j] = mat[i][j] - (i == j ? 1 : 0);
            stacked.push_back(std::move(row));
        }
    }
    if (stacked.empty()) return {m, 1};
    SmithForm s = smith_normal_form(stacked);
    int dim = 0;
    long long comps = 1;
    for (int j = 0; j < m; ++j) {
        long long d = j < static_cast<int>(s.diag.size()) ? std::llabs(s.diag[j]) : 0;
        if (d == 0)
            ++dim;
        else
            comps *= d;
    }
    return {dim, comps};
}

// ---------------------------------------------------------------------------
// Group elements
// ---------------------------------------------------------------------------

GroupElement GroupElement::make_finite(int idx) {
    GroupElement e;
    e.kind = Kind::Finite;
    e.finite = idx;
    return e;
}
GroupElement GroupElement::make_torus(TorusPoint t) {
    GroupElement e;
    e.kind = Kind::Torus;
    e.torus = std::move(t);
    return e;
}
GroupElement GroupElement::make_semi(TorusPoint t, int g) {
    GroupElement e;
    e.kind = Kind::Semi;
    e.torus = std::move(t);
    e.finite = g;
    return e;
}
GroupElement GroupElement::make_rotation(const Quat& q) {
    GroupElement e;
    e.kind = Kind::Rotation;
    e.quat = q;
    return e;
}
GroupElement GroupElement::make_unitary(const Quat& q) {
    GroupElement e;
    e.kind = Kind::Unitary;
    e.quat = q;
    return e;
}

// ---------------------------------------------------------------------------
// SamplableGroup
// ---------------------------------------------------------------------------

namespace {
struct SamplableGroupAccess : SamplableGroup {};
std::shared_ptr<SamplableGroup> make_group() {
    return std::static_pointer_cast<SamplableGroup>(std::make_shared<SamplableGroupAccess>());
}
}  // namespace

std::shared_ptr<const SamplableGroup> SamplableGroup::finite_explicit(FiniteGroup g) {
    auto out = make_group();
    out->kind_ = Kind::FiniteExplicit;
    out->finite_ = std::make_shared<FiniteGroup>(std::move(g));
    return out;
}
std::shared_ptr<const SamplableGroup> SamplableGroup::torus(int m) {
    if (m <= 0) throw std::invalid_argument("SamplableGroup::torus: m must be positive");
    auto out = make_group();
    out->kind_ = Kind::Torus;
    out->m_ = m;
    return out;
}
std::shared_ptr<const SamplableGroup> SamplableGroup::semidirect(SemidirectGroup g) {
    auto out = make_group();
    out->kind_ = Kind::Semidirect;
    out->m_ = g.torus_dim();
    out->semi_ = std::make_shared<SemidirectGroup>(std::move(g));
    return out;
}
std::shared_ptr<const SamplableGroup> SamplableGroup::so3() {
    auto out = make_group();
    out->kind_ = Kind::SO3;
    return out;
}
std::shared_ptr<const SamplableGroup> SamplableGroup::su2() {
    auto out = make_group();
    out->kind_ = Kind::SU2;
    return out;
}

const FiniteGroup& SamplableGroup::finite_group() const {
    if (!finite_) throw std::logic_error("not a finite-explicit group");
    return *finite_;
}
const SemidirectGroup& SamplableGroup::semidirect_group() const {
    if (!semi_) throw std::logic_error("not a semidirect group");
    return *semi_;
}
int SamplableGroup::torus_dim() const {
    if (kind_ != Kind::Torus && kind_ != Kind::Semidirect)
        throw std::logic_error("torus_dim: not a torus-like group");
    return m_;
}

GroupElement SamplableGroup::identity() const {
    switch (kind_) {
        case Kind::FiniteExplicit: return GroupElement::make_finite(finite_->identity());
        case Kind::Torus: return GroupElement::make_torus(TorusPoint::zero(m_));
        case Kind::Semidirect:
            return GroupElement::make_semi(TorusPoint::zero(m_), semi_->finite_part().identity());
        case Kind::SO3: return GroupElement::make_rotation({1, 0, 0, 0});
        case Kind::SU2: return GroupElement::make_unitary({1, 0, 0, 0});
    }
    throw std::logic_error("unreachable");
}

namespace {
void require_kind(const GroupElement& e, GroupElement::Kind k, const char* what) {
    if (e.kind != k) throw std::invalid_argument(std::string(what) + ": element kind mismatch");
}
}  // namespace

GroupElement SamplableGroup::multiply(const GroupElement& a, const GroupElement& b) const {
    switch (kind_) {
        case Kind::FiniteExplicit:
            require_kind(a, GroupElement::Kind::Finite, "multiply");
            require_kind(b, GroupElement::Kind::Finite, "multiply");
            return GroupElement::make_finite(finite_->mul(a.finite, b.finite));
        case Kind::Torus:
            require_kind(a, GroupElement::Kind::Torus, "multiply");
            require_kind(b, GroupElement::Kind::Torus, "multiply");
            return GroupElement::make_torus(torus_add(a.torus, b.torus));
        case Kind::Semidirect: {
            require_kind(a, GroupElement::Kind::Semi, "multiply");
            require_kind(b, GroupElement::Kind::Semi, "multiply");
            auto r = semi_->mul({a.torus, a.finite}, {b.torus, b.finite});
            return GroupElement::make_semi(std::move(r.t), r.g);
        }
        case Kind::SO3:
            require_kind(a, GroupElement::Kind::Rotation, "multiply");
            require_kind(b, GroupElement::Kind::Rotation, "multiply");
            return GroupElement::make_rotation((a.quat * b.quat).normalized());
        case Kind::SU2:
            require_kind(a, GroupElement::Kind::Unitary, "multiply");
            require_kind(b, GroupElement::Kind::Unitary, "multiply");
            return GroupElement::make_unitary((a.quat * b.quat).normalized());
    }
    throw std::logic_error("unreachable");
}

GroupElement SamplableGroup::inverse(const GroupElement& a) const {
    switch (kind_) {
        case Kind::FiniteExplicit: return GroupElement::make_finite(finite_->inv(a.finite));
        case Kind::Torus: return GroupElement::make_torus(torus_neg(a.torus));
        case Kind::Semidirect: {
            auto r = semi_->inv({a.torus, a.finite});
            return GroupElement::make_semi(std::move(r.t), r.g);
        }
        case Kind::SO3: return GroupElement::make_rotation(a.quat.conj());
        case Kind::SU2: return GroupElement::make_unitary(a.quat.conj());
    }
    throw std::logic_error("unreachable");
}

GroupElement SamplableGroup::conjugate(const GroupElement& g, const GroupElement& h) const {
    return multiply(multiply(g, h), inverse(g));
}

double SamplableGroup::distance(const GroupElement& a, const GroupElement& b) const {
    switch (kind_) {
        case Kind::FiniteExplicit: return a.finite == b.finite ? 0.0 : 1.0;
        case Kind::Torus: return torus_distance(a.torus, b.torus);
        case Kind::Semidirect:
            if (a.finite != b.finite) return 1.0 + std::sqrt(static_cast<double>(m_)) / 2.0;
            return torus_distance(a.torus, b.torus);
        case Kind::SO3: return so3_distance(a.quat, b.quat);
        case Kind::SU2: return su2_distance(a.quat, b.quat);
    }
    throw std::logic_error("unreachable");
}

bool SamplableGroup::approx_equal(const GroupElement& a, const GroupElement& b) const {
    return distance(a, b) <= group_tolerance();
}

double SamplableGroup::group_tolerance() const {
    // the Frobenius metric amplifies unit-quaternion rounding near zero:
    // sqrt(8 * 1e-16) ~ 3e-8, so 1e-7 is the usable floor for doubles
    switch (kind_) {
        case Kind::SO3:
        case Kind::SU2: return 1e-7;
        default: return 0.0;
    }
}

double SamplableGroup::diameter_bound() const {
    switch (kind_) {
        case Kind::FiniteExplicit: return 1.0;
        case Kind::Torus: return std::sqrt(static_cast<double>(m_)) / 2.0;
        case Kind::Semidirect: return 1.0 + std::sqrt(static_cast<double>(m_)) / 2.0;
        case Kind::SO3: return 2.0 * std::sqrt(2.0);
        case Kind::SU2: return 2.0 * std::sqrt(2.0);
    }
    throw std::logic_error("unreachable");
}

double SamplableGroup::distortion_bound() const {
    switch (kind_) {
        case Kind::Semidirect: return semi_->max_action_norm();
        default: return 1.0;
    }
}

// ---------------------------------------------------------------------------
// eps-nets
// ---------------------------------------------------------------------------

namespace {

/// Torus grid size: smallest k with covering radius sqrt(m)/(2k) strictly < eps.
int torus_grid_size(int m, double eps) {
    if (eps <= 0) throw std::invalid_argument("eps_net: eps must be positive");
    double root = std::sqrt(static_cast<double>(m));
    int k = static_cast<int>(std::ceil(root / (2 * eps)));
    if (k < 1) k = 1;
    while (root / (2.0 * k) >= eps) ++k;
    return k;
}

void for_each_torus_grid(int m, int k, const std::function<void(TorusPoint)>& fn) {
    std::vector<int> counter(m, 0);
    while (true) {
        QVec coords(m);
        for (int i = 0; i < m; ++i) coords[i] = Rat(counter[i], k);
        fn(TorusPoint{std::move(coords)});
        int i = 0;
        while (i < m) {
            if (++counter[i] < k) break;
            counter[i] = 0;
            ++i;
        }
        if (i == m) break;
    }
}

struct ExpGrid {
    double h;        // grid step in orthonormal algebra coordinates
    double radius;   // ball radius to cover (pi for SO3 charts, 2 pi for SU2)
    double include;  // include grid points with |u| <= include
    double mesh;     // certified covering radius in the group metric
    long long steps;
};

/// d_F(exp u, exp v) <= sqrt(2) |u - v| on SO(3); grid diagonal sqrt(3)/2 h.
ExpGrid so3_grid(double eps) {
    ExpGrid g;
    g.h = 2.0 * eps / std::sqrt(6.0) * 0.999;
    g.radius = M_PI;
    g.include = g.radius + g.h * std::sqrt(3.0) / 2.0;
    g.mesh = std::sqrt(2.0) * g.h * std::sqrt(3.0) / 2.0;
    g.steps = static_cast<long long>(std::ceil(g.include / g.h));
    return g;
}

/// d_SU2(exp u, exp v) <= |u - v| / sqrt(2); the ball of radius 2 pi covers.
ExpGrid su2_grid(double eps) {
    ExpGrid g;
    g.h = 2.0 * std::sqrt(2.0) * eps / std::sqrt(3.0) * 0.999;
    g.radius = 2.0 * M_PI;
    g.include = g.radius + g.h * std::sqrt(3.0) / 2.0;
    g.mesh = g.h * std::sqrt(3.0) / (2.0 * std::sqrt(2.0));
    g.steps = static_cast<long long>(std::ceil(g.include / g.h));
    return g;
}

void for_each_exp_grid(const ExpGrid& g, const std::function<void(const Quat&)>& fn) {
    for (long long ix = -g.steps; ix <= g.steps; ++ix)
        for (long long iy = -g.steps; iy <= g.steps; ++iy)
            for (long long iz = -g.steps; iz <= g.steps; ++iz) {
                double ux = ix * g.h, uy = iy * g.h, uz = iz * g.h;
                if (ux * ux + uy * uy + uz * uz > g.include * g.include) continue;
                fn(quat_exp_axis_angle(ux, uy, uz));
            }
}

}  // namespace

double SamplableGroup::for_each_net_point(double eps,
                                          const std::function<void(const GroupElement&)>& fn) const {
    switch (kind_) {
        case Kind::FiniteExplicit: {
            for (int i = 0; i < finite_->size(); ++i) fn(GroupElement::make_finite(i));
            return 0.0;
        }
        case Kind::Torus: {
            int k = torus_grid_size(m_, eps);
            for_each_torus_grid(m_, k, [&](TorusPoint p) { fn(GroupElement::make_torus(std::move(p))); });
            return std::sqrt(static_cast<double>(m_)) / (2.0 * k);
        }
        case Kind::Semidirect: {
            int k = torus_grid_size(m_, eps);
            int nf = semi_->finite_part().size();
            for_each_torus_grid(m_, k, [&](TorusPoint p) {
                for (int g = 0; g < nf; ++g) fn(GroupElement::make_semi(p, g));
            });
            return std::sqrt(static_cast<double>(m_)) / (2.0 * k);
        }
        case Kind::SO3: {
            ExpGrid g = so3_grid(eps);
            for_each_exp_grid(g, [&](const Quat& q) { fn(GroupElement::make_rotation(q)); });
            return g.mesh;
        }
        case Kind::SU2: {
            ExpGrid g = su2_grid(eps);
            for_each_exp_grid(g, [&](const Quat& q) { fn(GroupElement::make_unitary(q)); });
            return g.mesh;
        }
    }
    throw std::logic_error("unreachable");
}

SamplableGroup::Net SamplableGroup::eps_net(double eps) const {
    Net out;
    out.mesh = for_each_net_point(eps, [&](const GroupElement& e) { out.points.push_back(e); });
    return out;
}

std::string SamplableGroup::describe() const {
    switch (kind_) {
        case Kind::FiniteExplicit:
            return "finite(" + std::to_string(finite_->size()) + ")";
        case Kind::Torus: return "T^" + std::to_string(m_);
        case Kind::Semidirect:
            return "T^" + std::to_string(m_) + " x| F(" +
                   std::to_string(semi_->finite_part().size()) + ")";
        case Kind::SO3: return "SO(3)";
        case Kind::SU2: return "SU(2)";
    }
    return "?";
}

GroupPtr group_from_json(const std::string& json_text) {
    auto j = nlohmann::json::parse(json_text);
    std::string type = j.at("type").get<std::string>();
    if (type == "torus") return SamplableGroup::torus(j.at("m").get<int>());
    if (type == "so3") return SamplableGroup::so3();
    if (type == "su2") return SamplableGroup::su2();
    if (type == "finite") {
        auto table_json = j.at("table");
        std::vector<std::string> ids;
        for (const auto& id : table_json.at(0)) ids.push_back(id.get<std::string>());
        int n = static_cast<int>(ids.size());
        std::vector<std::vector<int>> table(n, std::vector<int>(n));
        auto index_of = [&](const std::string& s) {
            for (int i = 0; i < n; ++i)
                if (ids[i] == s) return i;
            throw std::invalid_argument("group_from_json: unknown id " + s);
        };
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                table[a][b] = index_of(table_json.at(a).at(b).get<std::string>());
        return SamplableGroup::finite_explicit(FiniteGroup(ids, table));
    }
    if (type == "semidirect") {
        nlohmann::json rj;
        rj["m"] = j.at("m");
        rj["table"] = j.at("table");
        rj["matrices"] = j.at("action");
        IntegerRep rep = integer_rep_from_json(rj.dump());
        return SamplableGroup::semidirect(SemidirectGroup(j.at("m").get<int>(), std::move(rep)));
    }
    throw std::invalid_argument("group_from_json: unknown type '" + type + "'");
}

// ---------------------------------------------------------------------------
// Subgroup handles
// ---------------------------------------------------------------------------

SubgroupHandle SubgroupHandle::full(GroupPtr parent) {
    SubgroupHandle h;
    h.kind_ = Kind::Full;
    h.parent_ = std::move(parent);
    h.origin_ = "full";
    return h;
}

SubgroupHandle SubgroupHandle::explicit_subgroup(GroupPtr parent, std::vector<GroupElement> points,
                                                 double mesh, std::string origin) {
    if (points.empty()) throw std::invalid_argument("explicit_subgroup: empty sample");
    SubgroupHandle h;
    h.kind_ = Kind::Explicit;
    h.parent_ = std::move(parent);
    h.points_ = std::move(points);
    h.mesh_ = mesh;
    h.origin_ = std::move(origin);
    // the identity must be present (witnessed within tolerance + mesh)
    GroupElement e = h.parent_->identity();
    double best = 1e300;
    for (const auto& p : h.points_) best = std::min(best, h.parent_->distance(e, p));
    if (best > h.parent_->group_tolerance() + h.mesh_)
        throw std::invalid_argument("explicit_subgroup: identity not in sample");
    return h;
}

SubgroupHandle SubgroupHandle::cyclic_grid(GroupPtr parent, int n) {
    if (n < 1) throw std::invalid_argument("cyclic_grid: n must be >= 1");
    auto kind = parent->kind();
    if (kind != SamplableGroup::Kind::Torus && kind != SamplableGroup::Kind::Semidirect)
        throw std::invalid_argument("cyclic_grid: parent must be a torus or semidirect group");
    SubgroupHandle h;
    h.kind_ = Kind::CyclicGrid;
    h.parent_ = std::move(parent);
    h.grid_n_ = n;
    h.origin_ = "grid(C_" + std::to_string(n) + ")";
    return h;
}

SubgroupHandle SubgroupHandle::conjugate_of(SubgroupHandle inner, GroupElement by) {
    SubgroupHandle h;
    h.kind_ = Kind::Conjugate;
    h.parent_ = inner.parent_;
    h.by_ = std::move(by);
    h.origin_ = "conj(" + inner.origin_ + ")";
    h.inner_ = std::make_shared<SubgroupHandle>(std::move(inner));
    return h;
}

bool SubgroupHandle::exact() const {
    switch (kind_) {
        case Kind::Full: return false;
        case Kind::Explicit: return mesh_ == 0;
        case Kind::CyclicGrid: return true;
        case Kind::Conjugate: return inner_->exact();
    }
    return false;
}

SubgroupHandle::Sample SubgroupHandle::sample(double target_mesh) const {
    switch (kind_) {
        case Kind::Full: {
            auto net = parent_->eps_net(target_mesh);
            return {std::move(net.points), net.mesh};
        }
        case Kind::Explicit: return {points_, mesh_};
        case Kind::CyclicGrid: {
            Sample out;
            out.mesh = 0;
            int m = parent_->torus_dim();
            bool semi = parent_->kind() == SamplableGroup::Kind::Semidirect;
            int nf = semi ? parent_->semidirect_group().finite_part().size() : 1;
            std::vector<int> counter(m, 0);
            while (true) {
                QVec coords(m);
                for (int i = 0; i < m; ++i) coords[i] = Rat(counter[i], grid_n_);
                TorusPoint p{coords};
                if (semi)
                    for (int g = 0; g < nf; ++g) out.points.push_back(GroupElement::make_semi(p, g));
                else
                    out.points.push_back(GroupElement::make_torus(p));
                int i = 0;
                while (i < m) {
                    if (++counter[i] < grid_n_) break;
                    counter[i] = 0;
                    ++i;
                }
                if (i == m) break;
            }
            return out;
        }
        case Kind::Conjugate: {
            double lip = parent_->distortion_bound();
            Sample in = inner_->sample(lip > 0 ? target_mesh / lip : target_mesh);
            Sample out;
            out.mesh = in.mesh * lip;
            out.points.reserve(in.points.size());
            for (const auto& p : in.points) out.points.push_back(parent_->conjugate(by_, p));
            return out;
        }
    }
    throw std::logic_error("unreachable");
}

SubgroupHandle conjugate_subgroup(const SubgroupHandle& h, const GroupElement& g) {
    // precondition: g must be an element of the parent realization
    GroupElement check = h.parent()->multiply(g, h.parent()->inverse(g));
    if (!h.parent()->approx_equal(check, h.parent()->identity()))
        throw std::invalid_argument("conjugate_subgroup: element not in parent group");
    return SubgroupHandle::conjugate_of(h, g);
}

}  // namespace grouplab

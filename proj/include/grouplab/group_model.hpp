#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "grouplab/exact_linalg.hpp"
#include "grouplab/finite_group.hpp"
#include "grouplab/integer_rep.hpp"
#include "grouplab/quaternion.hpp"
#include "grouplab/rational.hpp"

namespace grouplab {

// ---------------------------------------------------------------------------
// Torus points
// ---------------------------------------------------------------------------

/// Point of the m-torus with exact rational coordinates in [0,1).
struct TorusPoint {
    QVec coords;

    static TorusPoint zero(int m) { return TorusPoint{QVec(m, Rat(0))}; }
    int dim() const { return static_cast<int>(coords.size()); }
};

TorusPoint torus_reduce(QVec raw);                 // coordinate-wise mod 1
TorusPoint torus_add(const TorusPoint& a, const TorusPoint& b);
TorusPoint torus_neg(const TorusPoint& a);
TorusPoint torus_apply(const IMat& m, const TorusPoint& a);
bool torus_eq(const TorusPoint& a, const TorusPoint& b);

/// Euclidean norm of the centered representative of a - b in [-1/2,1/2)^m.
double torus_distance(const TorusPoint& a, const TorusPoint& b);

// ---------------------------------------------------------------------------
// Semidirect products T^m x| F
// ---------------------------------------------------------------------------

/// The group T^m x|_alpha F with exact torus coordinates and an integer
/// matrix action. Group law (t1,g1)(t2,g2) = (t1 + alpha_{g1} t2, g1 g2).
class SemidirectGroup {
public:
    SemidirectGroup(int m, IntegerRep rep);

    int torus_dim() const { return m_; }
    const FiniteGroup& finite_part() const { return rep_.group; }
    const IntegerRep& rep() const { return rep_; }
    const IMat& action(int g) const { return rep_.matrices[g]; }
    double max_action_norm() const { return max_action_norm_; }  // operator-norm bound

    struct Elem {
        TorusPoint t;
        int g;
    };
    Elem identity() const { return {TorusPoint::zero(m_), rep_.group.identity()}; }
    Elem mul(const Elem& a, const Elem& b) const;
    Elem inv(const Elem& a) const;

private:
    int m_;
    IntegerRep rep_;
    double max_action_norm_;
};

/// Construct T^m x|_alpha F after re-validating the representation.
SemidirectGroup build_semidirect(int m, const IntegerRep& rep);

/// Connected structure of the center of a faithful T^m x| F: the fixed-point
/// group Fix(alpha) computed by a Smith normal form of the stacked matrices
/// (alpha_g - I). Returns (dimension, number of connected components).
/// Throws for non-faithful actions.
std::pair<int, long long> center_components(const SemidirectGroup& g);

// ---------------------------------------------------------------------------
// Samplable groups and their elements
// ---------------------------------------------------------------------------

/// Element of any of the concrete group realizations below.
struct GroupElement {
    enum class Kind { Finite, Torus, Semi, Rotation, Unitary };
    Kind kind = Kind::Finite;
    int finite = 0;    // Finite and the F-part of Semi
    TorusPoint torus;  // Torus and the torus part of Semi
    Quat quat;         // Rotation (SO3, sign-free) and Unitary (SU2)

    static GroupElement make_finite(int idx);
    static GroupElement make_torus(TorusPoint t);
    static GroupElement make_semi(TorusPoint t, int g);
    static GroupElement make_rotation(const Quat& q);
    static GroupElement make_unitary(const Quat& q);
};

/// A compact metric group realized through identity / multiply / invert plus
/// a deterministic eps-net generator. This is the common currency for every
/// Hausdorff computation in the project.
class SamplableGroup : public std::enable_shared_from_this<SamplableGroup> {
public:
    enum class Kind { FiniteExplicit, Torus, Semidirect, SO3, SU2 };

    static std::shared_ptr<const SamplableGroup> finite_explicit(FiniteGroup g);
    static std::shared_ptr<const SamplableGroup> torus(int m);
    static std::shared_ptr<const SamplableGroup> semidirect(SemidirectGroup g);
    static std::shared_ptr<const SamplableGroup> so3();
    static std::shared_ptr<const SamplableGroup> su2();

    Kind kind() const { return kind_; }
    const FiniteGroup& finite_group() const;
    const SemidirectGroup& semidirect_group() const;
    int torus_dim() const;  // Torus and Semidirect kinds

    GroupElement identity() const;
    GroupElement multiply(const GroupElement& a, const GroupElement& b) const;
    GroupElement inverse(const GroupElement& a) const;
    GroupElement conjugate(const GroupElement& g, const GroupElement& h) const;  // g h g^-1
    double distance(const GroupElement& a, const GroupElement& b) const;
    bool approx_equal(const GroupElement& a, const GroupElement& b) const;

    /// Representation tolerance: 0 for exact realizations, 1e-9 for floating.
    double group_tolerance() const;

    /// Diameter of the group under its metric (upper bound, used by the
    /// component-separating constant of the semidirect metric).
    double diameter_bound() const;

    /// Left-multiplication distortion bound: d(ab, ac) <= bound * d(b, c).
    double distortion_bound() const;

    /// Deterministic eps-net. The reported mesh is the certified covering
    /// radius (<= eps). Net generation ignores the seed; it exists so callers
    /// can pin determinism contracts explicitly.
    struct Net {
        std::vector<GroupElement> points;
        double mesh;
    };
    Net eps_net(double eps) const;

    /// Streaming variant for the big rotation-group nets: calls fn for every
    /// net point without materializing the list. Returns the certified mesh.
    double for_each_net_point(double eps, const std::function<void(const GroupElement&)>& fn) const;

    std::string describe() const;

protected:
    SamplableGroup() = default;

private:
    Kind kind_ = Kind::Torus;
    int m_ = 1;
    std::shared_ptr<const FiniteGroup> finite_;
    std::shared_ptr<const SemidirectGroup> semi_;
};

using GroupPtr = std::shared_ptr<const SamplableGroup>;

/// JSON group descriptors, e.g.
///   {"type":"semidirect","m":2,"table":[["e","g"],["g","e"]],
///    "action":{"e":[[1,0],[0,1]],"g":[[1,0],[0,-1]]}}
GroupPtr group_from_json(const std::string& json_text);

// ---------------------------------------------------------------------------
// Subgroup handles
// ---------------------------------------------------------------------------

/// A compact subgroup of a samplable parent, realized as one of:
/// the full group, an explicitly sampled subgroup (exact when mesh = 0),
/// the (C_n)^m x| F grid subgroup of a semidirect parent, or a conjugate of
/// another handle. `origin` records how the handle was built.
class SubgroupHandle {
public:
    static SubgroupHandle full(GroupPtr parent);
    static SubgroupHandle explicit_subgroup(GroupPtr parent, std::vector<GroupElement> points,
                                            double mesh, std::string origin = "explicit");
    static SubgroupHandle cyclic_grid(GroupPtr parent, int n);  // Torus or Semidirect parent
    static SubgroupHandle conjugate_of(SubgroupHandle inner, GroupElement by);

    const GroupPtr& parent() const { return parent_; }
    const std::string& origin() const { return origin_; }
    bool exact() const;  // sampled sets are the subgroup itself (mesh 0)

    /// Sample the subgroup. target_mesh guides net generation for handles of
    /// positive-dimensional subgroups; exact handles ignore it.
    struct Sample {
        std::vector<GroupElement> points;
        double mesh;
    };
    Sample sample(double target_mesh) const;

private:
    enum class Kind { Full, Explicit, CyclicGrid, Conjugate };
    Kind kind_ = Kind::Full;
    GroupPtr parent_;
    std::vector<GroupElement> points_;
    double mesh_ = 0;
    int grid_n_ = 1;
    std::shared_ptr<const SubgroupHandle> inner_;
    GroupElement by_;
    std::string origin_;
};

/// Conjugation action on handles; requires `g` to be an element
/// of H's parent realization.
SubgroupHandle conjugate_subgroup(const SubgroupHandle& h, const GroupElement& g);

}  // namespace grouplab

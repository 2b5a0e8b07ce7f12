#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grouplab/hyperspace.hpp"
#include "grouplab/integer_rep.hpp"

namespace grouplab {

/// Concrete continuous epimorphism between samplable groups. Each rule knows
/// how to apply itself, its Lipschitz constant, an inner-ball factor sigma
/// with f(B(c,r)) containing B(f(c), sigma r), and how to sample full fibers.
class GroupHom {
public:
    enum class Rule { TorusProjection, TorusLatticeQuotient, SemidirectQuotient, Su2ToSo3 };

    static GroupHom torus_projection(int m, std::vector<int> coords);
    static GroupHom torus_lattice_quotient(int m, RationalLattice lattice);
    /// Quotient of T^m x| F by the lattice subgroup Lambda/Z^m (F unchanged);
    /// the codomain carries the induced representation.
    static GroupHom semidirect_quotient(const SemidirectGroup& g, RationalLattice lattice);
    static GroupHom su2_to_so3();
    static GroupHom identity(GroupPtr g);

    Rule rule() const { return rule_; }
    const GroupPtr& domain() const { return domain_; }
    const GroupPtr& codomain() const { return codomain_; }
    double lipschitz() const { return lipschitz_; }
    double inner_ball_factor() const { return inner_ball_factor_; }
    double section_lipschitz() const { return section_lipschitz_; }
    bool is_identity() const { return identity_; }

    GroupElement apply(const GroupElement& x) const;

    /// All preimages of y, exact for finite fibers; positive-dimensional
    /// fibers (coordinate projections) are sampled at kernel_mesh.
    /// Returns the fiber points and the mesh contributed by fiber sampling.
    std::pair<std::vector<GroupElement>, double> fiber(const GroupElement& y,
                                                       double kernel_mesh) const;

    std::string describe() const;

private:
    GroupHom() = default;
    Rule rule_ = Rule::TorusProjection;
    bool identity_ = false;
    GroupPtr domain_, codomain_;
    std::vector<int> coords_;
    QMat basis_, basis_inv_;
    std::vector<QVec> kernel_reps_;  // lattice points of Lambda/Z^m, domain coords
    double lipschitz_ = 1, inner_ball_factor_ = 1, section_lipschitz_ = 1;
};

/// Image handle: f(sample(K)) with mesh inflated by the recorded Lipschitz
/// constant.
SubgroupHandle pushforward(const GroupHom& f, const SubgroupHandle& k, double target_mesh = 0.05);

/// Full-preimage handle: fibers over every sample point of L, with mesh
/// section_lipschitz * L.mesh + kernel sampling mesh.
SubgroupHandle lift_preimage(const GroupHom& f, const SubgroupHandle& l,
                             double target_mesh = 0.05);

/// d_H(pushforward(lift_preimage(L)), L) with its error budget.
HausdorffResult roundtrip_defect(const GroupHom& f, const SubgroupHandle& l,
                                 double target_mesh = 0.05);

// ---------------------------------------------------------------------------
// Openness probe
// ---------------------------------------------------------------------------

struct ProbeCandidateResult {
    std::string name;
    bool in_image_nbhd;      // candidate lies in V(V_0..V_n)
    bool lift_in_original;   // preimage lands back in V(U_0..U_n)
    bool undecidable;        // a Vietoris test could not be resolved
    double lift_mesh;
    bool pass;               // in_image_nbhd implies lift_in_original
};

struct ProbeReport {
    std::vector<ProbeCandidateResult> candidates;
    bool all_pass;
    VietorisNbhd image_nbhd;  // the constructed V-regions
};

/// Instantiates the image neighborhood V_i = shrunken images of the U_i balls
/// and tests, for each battery candidate in V(V_0..V_n), that its full
/// preimage lies in V(U_0..U_n). Failures are data, not errors.
ProbeReport openness_probe(const GroupHom& f, const SubgroupHandle& k, const VietorisNbhd& nbhd,
                           const std::vector<std::pair<std::string, SubgroupHandle>>& battery,
                           double target_mesh = 0.05);

std::string probe_report_to_json(const ProbeReport& report);

}  // namespace grouplab

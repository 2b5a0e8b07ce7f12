#pragma once

#include <string>
#include <vector>

#include "grouplab/hyperspace.hpp"
#include "grouplab/lie_core.hpp"

namespace grouplab {

/// Intrinsic verdict: a compact group is isolated up to conjugacy exactly
/// when the identity component is perfect. Only the Lie algebra of the
/// identity component enters; the ambient group is irrelevant.
struct IsolationVerdict {
    bool isolated;
    bool perfect_identity_component;
    Subalgebra derived;     // witness: the derived subalgebra
    int codimension;        // n - dim derived (0 iff isolated)
};

IsolationVerdict isolation_verdict(const LieAlgebraData& identity_component_algebra);

/// Grid subgroups (C_n)^m x| F of a semidirect parent, one per requested n.
/// Each handle is an exact realization (mesh 0) of a proper closed subgroup.
std::vector<SubgroupHandle> approximation_sequence(const GroupPtr& semidirect_parent,
                                                   const std::vector<int>& ns);

// ---------------------------------------------------------------------------
// Conjugacy search
// ---------------------------------------------------------------------------

struct ConjugacySearchResult {
    GroupElement best_g;
    double residual;       // Hausdorff estimate after conjugating H by best_g
    double error_bound;    // sampling error carried by the estimate
    long long iterations;  // objective evaluations spent
    bool converged;        // residual <= tol + error_bound
    double baseline;       // unconjugated Hausdorff estimate
};

struct ConjugacySearchOptions {
    long long budget = 4000;  // total objective evaluations
    double tol = 1e-3;
    unsigned seed = 1;
    int restarts = 8;
};

/// Derivative-free minimization of g -> d_H(g H g^-1, K) over a chart of the
/// ambient group (exponential coordinates for the rotation groups, torus
/// coordinates per finite component for semidirect groups). Random restarts
/// plus Nelder-Mead descent; the identity is always among the starts, so the
/// result never exceeds the unconjugated baseline. Deterministic per seed.
ConjugacySearchResult conjugacy_search(const SubgroupHandle& h, const SubgroupHandle& k,
                                       const GroupPtr& ambient,
                                       const ConjugacySearchOptions& opts = {});

// ---------------------------------------------------------------------------
// Finite-approximation gap of SO(3)
// ---------------------------------------------------------------------------

struct TuringGapRow {
    std::string name;
    size_t order;
    double estimate;     // sampled d_H(candidate, SO(3))
    double error_bound;  // net mesh
};

struct TuringGapReport {
    double min_gap;
    std::string argmin;
    double error_bound;
    double net_mesh;
    size_t net_points;
    std::vector<TuringGapRow> rows;
};

/// Minimum sampled Hausdorff distance from the fixed finite-subgroup catalog
/// to an eps-net of SO(3). The headline quantity min_gap - error_bound must
/// stay strictly positive: no finite subgroup is an eps-net of SO(3) for
/// small eps. Multi-threaded over the net; deterministic.
TuringGapReport turing_gap(double net_mesh,
                           const std::vector<NamedRotationGroup>& candidates,
                           int threads = 0);

/// Catalog used by the acceptance experiment (cyclic and dihedral groups up
/// to order 60 plus the three exceptional groups).
std::vector<NamedRotationGroup> default_turing_candidates();

}  // namespace grouplab

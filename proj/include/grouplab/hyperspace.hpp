#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grouplab/group_model.hpp"

namespace grouplab {

/// Finite sample of a nonempty compact subset, with the certified covering
/// radius of the sample inside the represented set. mesh = 0 means the set is
/// exactly the listed points. Points are always elements of the represented
/// set, so estimates carry one-sided certificates too.
struct SampleSet {
    GroupPtr group;
    std::vector<GroupElement> points;
    double mesh = 0;

    SampleSet() = default;
    SampleSet(GroupPtr g, std::vector<GroupElement> pts, double mesh_);
};

SampleSet sample_of(const SubgroupHandle& h, double target_mesh);

struct HausdorffResult {
    double estimate;     // max of the two directed sampled distances
    double error_bound;  // A.mesh + B.mesh; true distance within estimate +- this
};

/// Sampled Hausdorff distance with certified error accounting. All-pairs,
/// deterministic; O(|A| |B|).
HausdorffResult hausdorff_distance(const SampleSet& a, const SampleSet& b);

// ---------------------------------------------------------------------------
// Vietoris basis neighborhoods
// ---------------------------------------------------------------------------

/// Finite union of open metric balls.
struct Region {
    struct Ball {
        GroupElement center;
        double radius;
    };
    std::vector<Ball> balls;
};

/// Basis neighborhood: K contained in u0, K meets each of the others.
struct VietorisNbhd {
    Region u0;
    std::vector<Region> meets;
};

enum class VietorisVerdict { Contained, NotContained, Undecidable };

struct VietorisCertificate {
    VietorisVerdict verdict;
    /// For Contained: one witness point inside each meets-region.
    /// For NotContained: the offending sample point (outside u0) or the index
    /// of the region with no witness.
    std::vector<GroupElement> witnesses;
    std::optional<GroupElement> escape_witness;
    std::optional<int> empty_meet_index;
    std::string detail;
};

/// Decides membership of the represented set in the basis neighborhood from
/// the sample alone. Near ball boundaries the sample cannot decide; those
/// cases return Undecidable (the caller needs a finer net).
VietorisCertificate vietoris_contains(const SampleSet& k, const VietorisNbhd& nbhd);

// ---------------------------------------------------------------------------
// Convergence reports
// ---------------------------------------------------------------------------

struct ConvergenceRow {
    int index;
    long long label;  // e.g. the grid order n
    double estimate;
    double error_bound;
    bool monotone_violation;  // increase beyond combined error bounds
};

std::vector<ConvergenceRow> converging_sequence_report(
    const std::vector<std::pair<long long, SampleSet>>& sequence, const SampleSet& limit);

/// CSV with columns index,n,estimate,error_bound (plus provenance comments).
std::string convergence_report_csv(const std::vector<ConvergenceRow>& rows);

}  // namespace grouplab

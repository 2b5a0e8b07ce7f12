#include "grouplab/hyperspace.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace grouplab {

SampleSet::SampleSet(GroupPtr g, std::vector<GroupElement> pts, double mesh_)
    : group(std::move(g)), points(std::move(pts)), mesh(mesh_) {
    if (!group) throw std::invalid_argument("SampleSet: null group");
    if (points.empty()) throw std::invalid_argument("SampleSet: empty point list");
    if (mesh < 0) throw std::invalid_argument("SampleSet: negative mesh");
}

SampleSet sample_of(const SubgroupHandle& h, double target_mesh) {
    auto s = h.sample(target_mesh);
    return SampleSet(h.parent(), std::move(s.points), s.mesh);
}

namespace {
double directed(const SampleSet& a, const SampleSet& b) {
    double worst = 0;
    for (const auto& p : a.points) {
        double best = 1e300;
        for (const auto& q : b.points) {
            double d = a.group->distance(p, q);
            if (d < best) best = d;
        }
        if (best > worst) worst = best;
    }
    return worst;
}
}  // namespace

HausdorffResult hausdorff_distance(const SampleSet& a, const SampleSet& b) {
    if (a.group.get() != b.group.get() && a.group->kind() != b.group->kind())
        throw std::invalid_argument("hausdorff_distance: samples from different groups");
    double est = std::max(directed(a, b), directed(b, a));
    return {est, a.mesh + b.mesh};
}

namespace {
double distance_to_ball_center(const SampleSet& k, const GroupElement& p, const Region::Ball& ball) {
    return k.group->distance(p, ball.center);
}
}  // namespace

VietorisCertificate vietoris_contains(const SampleSet& k, const VietorisNbhd& nbhd) {
    VietorisCertificate cert;
    cert.verdict = VietorisVerdict::Contained;
    if (nbhd.u0.balls.empty()) throw std::invalid_argument("vietoris_contains: empty U0");
    for (const auto& r : nbhd.meets)
        if (r.balls.empty()) throw std::invalid_argument("vietoris_contains: empty meets-region");
    for (const auto& ball : nbhd.u0.balls)
        if (ball.radius <= 0) throw std::invalid_argument("vietoris_contains: radius must be > 0");
    for (const auto& r : nbhd.meets)
        for (const auto& ball : r.balls)
            if (ball.radius <= 0)
                throw std::invalid_argument("vietoris_contains: radius must be > 0");

    // containment in U0: every sample point strictly inside some ball with
    // margin mesh (then the whole represented set is inside); a sample point
    // outside every ball is itself a counterexample (samples lie in the set).
    bool undecided = false;
    for (const auto& p : k.points) {
        bool inside_margin = false;
        bool outside_all = true;
        for (const auto& ball : nbhd.u0.balls) {
            double d = distance_to_ball_center(k, p, ball);
            if (d < ball.radius - k.mesh) inside_margin = true;
            if (d < ball.radius) outside_all = false;
        }
        if (!inside_margin) {
            if (outside_all) {
                cert.verdict = VietorisVerdict::NotContained;
                cert.escape_witness = p;
                cert.detail = "sample point escapes U0";
                return cert;
            }
            undecided = true;
        }
    }

    // meets-regions: a sample point strictly inside witnesses the intersection;
    // all sample points at distance >= radius + mesh certifies emptiness.
    for (size_t i = 0; i < nbhd.meets.size(); ++i) {
        std::optional<GroupElement> witness;
        bool certified_empty = true;
        for (const auto& p : k.points) {
            for (const auto& ball : nbhd.meets[i].balls) {
                double d = distance_to_ball_center(k, p, ball);
                if (d < ball.radius && !witness) witness = p;
                if (d < ball.radius + k.mesh) certified_empty = false;
            }
        }
        if (witness) {
            cert.witnesses.push_back(*witness);
        } else if (certified_empty) {
            cert.verdict = VietorisVerdict::NotContained;
            cert.empty_meet_index = static_cast<int>(i);
            cert.detail = "represented set provably misses a region";
            return cert;
        } else {
            undecided = true;
        }
    }

    if (undecided) {
        cert.verdict = VietorisVerdict::Undecidable;
        cert.detail = "sample resolution insufficient near a ball boundary";
    }
    return cert;
}

std::vector<ConvergenceRow> converging_sequence_report(
    const std::vector<std::pair<long long, SampleSet>>& sequence, const SampleSet& limit) {
    std::vector<ConvergenceRow> rows;
    for (size_t i = 0; i < sequence.size(); ++i) {
        auto hd = hausdorff_distance(sequence[i].second, limit);
        ConvergenceRow row{static_cast<int>(i), sequence[i].first, hd.estimate, hd.error_bound,
                           false};
        if (!rows.empty()) {
            const auto& prev = rows.back();
            if (row.estimate > prev.estimate + prev.error_bound + row.error_bound)
                row.monotone_violation = true;
        }
        rows.push_back(row);
    }
    return rows;
}

std::string convergence_report_csv(const std::vector<ConvergenceRow>& rows) {
    std::ostringstream os;
    os << "index,n,estimate,error_bound\n";
    os.precision(17);
    for (const auto& r : rows)
        os << r.index << "," << r.label << "," << r.estimate << "," << r.error_bound << "\n";
    return os.str();
}

}  // namespace grouplab

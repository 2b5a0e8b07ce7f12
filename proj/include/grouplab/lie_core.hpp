#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grouplab/exact_linalg.hpp"
#include "grouplab/group_model.hpp"

namespace grouplab {

/// Lie algebra by structure constants: [e_i, e_j] = sum_k c[i][j][k] e_k,
/// plus a positive-definite Gram matrix of the basis. Antisymmetry, the
/// Jacobi identity and positive definiteness are verified exactly on
/// construction; `invariant` records whether the inner product is
/// ad-invariant (checked on all basis triples).
struct LieAlgebraData {
    int n;
    std::vector<std::vector<QVec>> c;  // c[i][j] is the bracket coordinate vector
    QMat gram;
    bool invariant = false;

    LieAlgebraData(int n_, std::vector<std::vector<QVec>> c_, QMat gram_);
};

// Built-in algebras of the corpus.
LieAlgebraData so3_algebra();                     // c = epsilon_{ijk}, gram I
LieAlgebraData su2_algebra();                     // half-Pauli basis: same data as so3
LieAlgebraData su2_algebra_neg_half_trace();      // basis -i sigma_k: c = 2 epsilon, gram I
LieAlgebraData u2_algebra();                      // su(2) + center
LieAlgebraData abelian_algebra(int m);
LieAlgebraData direct_sum(const LieAlgebraData& a, const LieAlgebraData& b);
LieAlgebraData with_gram_scaled(const LieAlgebraData& l, const Rat& factor);

/// JSON descriptor {"n":3,"c":[[["0","0","0"],...]],"gram":[["1","0",...]]}
/// with entries "p/q" strings (plain integers also accepted).
LieAlgebraData lie_algebra_from_json(const std::string& json_text);
std::string lie_algebra_to_json(const LieAlgebraData& l);

/// Subalgebra spanned by explicit coordinate vectors (rows).
struct Subalgebra {
    QMat basis_rows;
    int dim() const { return static_cast<int>(basis_rows.size()); }
};

/// Exact span of all basis brackets. For compact-type input the result is
/// verified to be an ideal.
Subalgebra derived_subalgebra(const LieAlgebraData& l);

/// dim [g, g] = dim g. Rejects algebras without an invariant inner product
/// (the criterion is justified for compact type only).
bool is_perfect(const LieAlgebraData& l);

struct RicciResult {
    double value;
    bool exact_pipeline;        // rational orthonormalization succeeded
    double condition_estimate;  // max/min Gram-Schmidt norm ratio (float path)
    QMat form;                  // the quadratic form matrix in the
                                // orthonormalized basis (empty on float path)
};

/// Smallest eigenvalue of the quadratic form x -> (1/4) |ad x|_HS^2 over the
/// gram-unit sphere. Requires compact type and a trivial center.
RicciResult ricci_min(const LieAlgebraData& l);

/// pi * sqrt((n - 1) / ricci_min).
double myers_bound(const LieAlgebraData& l);

struct CoverageOptions {
    double oracle_mesh = 0.3;
    unsigned long long seed = 1;  // stream permutation seed
};

struct CoverageReport {
    bool covered;          // every oracle point within threshold of the image
    double threshold;      // 2 * mesh + oracle mesh
    double gap;            // upper bound if covered, exact/lower bound if not
    bool gap_is_lower_bound;
    size_t oracle_points;
    size_t image_points;   // grid points inside the Delta-ball
    std::string detail;
};

/// Checks that exp of the closed Delta-ball (sampled on a grid of the given
/// step in orthonormal coordinates) covers the group: the max-min distance
/// from an oracle net of G to the image set must stay below
/// 2 * mesh + oracle_mesh. Supported for the SO(3) and SU(2) realizations.
CoverageReport exp_coverage_check(const GroupPtr& g, const LieAlgebraData& l, double delta,
                                  double mesh, const CoverageOptions& opts = {});

/// Largest sampled pairwise distance of a net at the given mesh (diameter
/// witness for the Myers-bound property test).
double sampled_diameter(const GroupPtr& g, double mesh);

}  // namespace grouplab

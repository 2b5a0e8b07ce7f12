#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "grouplab/exact_linalg.hpp"
#include "grouplab/finite_group.hpp"

namespace grouplab {

/// A finite group with a homomorphism into GL(m, Z), all checks exact.
struct IntegerRep {
    FiniteGroup group;
    std::vector<IMat> matrices;  // one per group element, same order

    IntegerRep(FiniteGroup g, std::vector<IMat> mats);

    int dim() const { return static_cast<int>(matrices[0].size()); }
    const IMat& matrix(int g) const { return matrices[g]; }
};

/// Full-rank lattice L with Z^m <= L <= (1/N) Z^m, kept in the canonical
/// column-Hermite basis (upper triangular, positive diagonal, reduced rows).
struct RationalLattice {
    QMat basis;                          // columns are the basis vectors
    std::vector<long long> index_data;   // invariant factors of L / Z^m

    static RationalLattice from_generators(int m, const QMat& generator_columns);
    static RationalLattice standard(int m);           // Z^m itself
    static RationalLattice scaled(int m, long long k); // (1/k) Z^m
};

struct FaithfulnessReport {
    bool faithful;
    std::vector<int> kernel;  // element indices with matrix = I
};

FaithfulnessReport is_faithful(const IntegerRep& rep);

struct Reducible {
    QMat witness_rows;  // basis (rows) of a proper nonzero invariant Q-subspace
};
struct Irreducible {
    bool certified;  // true for m <= 2 (complete method); heuristic for m in {3,4}
};
struct Undecided {};

using IrreducibilityVerdict = std::variant<Reducible, Irreducible, Undecided>;

/// Rational irreducibility. Complete for m <= 2 (common rational eigenvector
/// method). For 3 <= m <= 4 uses the generic-element method: random small
/// integer combinations z of the images, rational factorization of the
/// minimal polynomial of z, kernels of factors as candidate subspaces.
/// Reducible witnesses are always verified exactly.
IrreducibilityVerdict rational_irreducible(const IntegerRep& rep, unsigned seed = 1);

bool is_reducible_verdict(const IrreducibilityVerdict& v);

/// Induced representation on the lattice: B^{-1} A(g) B, entries verified
/// integral with |det| = 1. Throws (reporting the violating pair) if the
/// lattice is not invariant.
IntegerRep invariant_lattice_quotient(const IntegerRep& rep, const RationalLattice& lattice);

struct GlzConjugacy {
    IMat p;                  // unimodular with P A(g) P^{-1} = B(sigma(g))
    std::vector<int> sigma;  // group automorphism as a permutation
};

/// Bounded search for a GL(m,Z)-conjugacy between two representations of the
/// same finite group, allowing an automorphism twist. Entries of P range over
/// [-entry_bound, entry_bound]; NotFoundWithinBound is the empty optional.
std::optional<GlzConjugacy> glz_conjugate(const IntegerRep& a, const IntegerRep& b,
                                          long long entry_bound = 3);

struct MinimalityReport {
    bool faithful;
    IrreducibilityVerdict irreducibility;
    bool scale_quotients_self_conjugate;  // (1/k)Z^m quotients, k in {2,3}
    bool minimal;
};

/// Checks the minimal-class criteria: faithful, rationally irreducible, and
/// the characteristic scale quotients reproduce the representation.
MinimalityReport minimality_check(const IntegerRep& rep);

// JSON: {"m":2,"table":[["e","g"],["g","e"]],"matrices":{"e":[[1,0],[0,1]],...}}
IntegerRep integer_rep_from_json(const std::string& json_text);
std::string minimality_report_to_json(const MinimalityReport& report);

}  // namespace grouplab

#pragma once

#include <optional>
#include <vector>

#include "grouplab/rational.hpp"

namespace grouplab {

using IMat = std::vector<std::vector<long long>>;
using QVec = std::vector<Rat>;
using QMat = std::vector<std::vector<Rat>>;

// ---------------------------------------------------------------------------
// Integer matrices
// ---------------------------------------------------------------------------

IMat imat_identity(int n);
IMat imat_mul(const IMat& a, const IMat& b);
IMat imat_neg(const IMat& a);
bool imat_eq(const IMat& a, const IMat& b);
long long imat_det(const IMat& a);  // exact, via fraction-free elimination
bool imat_is_identity(const IMat& a);

/// Inverse of a unimodular (det = +-1) integer matrix, again integer.
IMat imat_unimodular_inverse(const IMat& a);

// ---------------------------------------------------------------------------
// Rational matrices
// ---------------------------------------------------------------------------

QMat qmat_identity(int n);
QMat qmat_from_int(const IMat& a);
QMat qmat_mul(const QMat& a, const QMat& b);
QVec qmat_apply(const QMat& a, const QVec& x);
QMat qmat_inverse(const QMat& a);  // throws if singular
Rat qmat_det(const QMat& a);

/// Row-reduce in place; returns rank. Rows end in echelon form.
int qmat_row_reduce(QMat& rows);

/// Basis of the row span (echelon rows, normalized leading 1).
QMat qmat_row_basis(const QMat& rows);

/// Solve A x = b over the rationals (A given by rows). Empty optional if inconsistent.
std::optional<QVec> qmat_solve(const QMat& a, const QVec& b);

/// True if v lies in the row span of basis (basis need not be echelon).
bool qmat_in_span(const QMat& basis, const QVec& v);

// ---------------------------------------------------------------------------
// Hermite / Smith normal forms
// ---------------------------------------------------------------------------

/// Result of the Smith normal form  U * A * V = D  with U, V unimodular and
/// D diagonal, d_1 | d_2 | ... | d_r, trailing diagonal entries zero.
struct SmithForm {
    IMat u;  // rows x rows
    IMat v;  // cols x cols
    IMat d;  // rows x cols diagonal
    std::vector<long long> diag;  // nonneg, divisibility chain, zeros last
};

SmithForm smith_normal_form(const IMat& a);

/// Basis of the integer kernel {x : A x = 0}, as columns.
std::vector<std::vector<long long>> integer_kernel(const IMat& a);

/// One solution of A x = b over the integers, if any.
std::optional<std::vector<long long>> solve_integer(const IMat& a, const std::vector<long long>& b);

/// Solve A x == b where row r is a congruence mod moduli[r] (modulus 0 means
/// an exact equation over Z). Returns one solution reduced where possible.
std::optional<std::vector<long long>> solve_modular(const IMat& a,
                                                    const std::vector<long long>& b,
                                                    const std::vector<long long>& moduli);

/// Invariant factors (>1) of Z^n / (column lattice of A), A square nonsingular.
std::vector<long long> quotient_invariant_factors(const IMat& a);

// ---------------------------------------------------------------------------
// Rational lattices between Z^m and (1/N) Z^m
// ---------------------------------------------------------------------------

/// Canonical basis (columns, upper triangular, positive diagonal, off-diagonal
/// entries reduced into [0, diag)) of the lattice spanned by the given
/// generator columns together with Z^m.  Throws if generators do not span a
/// full-rank lattice containing Z^m.
QMat lattice_canonical_basis(int m, const QMat& generator_columns);

/// Invariant factors (>1) of lattice / Z^m for a canonical basis B
/// (i.e. of Z^m / B^{-1} Z^m).
std::vector<long long> lattice_quotient_factors(const QMat& basis);

}  // namespace grouplab

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grouplab/exact_linalg.hpp"
#include "grouplab/finite_group.hpp"
#include "grouplab/group_model.hpp"

namespace grouplab {

/// Finite abelian coefficient module M = Z_{k_1} + ... + Z_{k_r} with an
/// integer-matrix action of a finite group F. Matrices act modulo k_i per
/// row; well-definedness (A_ij k_j = 0 mod k_i), action(e) = I and the
/// homomorphism property are verified on construction.
struct FiniteModule {
    FiniteGroup f;
    std::vector<long long> factors;
    std::vector<IMat> action;

    FiniteModule(FiniteGroup f_, std::vector<long long> factors_, std::vector<IMat> action_);

    using Elem = std::vector<long long>;

    int rank() const { return static_cast<int>(factors.size()); }
    long long size() const;

    Elem zero() const { return Elem(factors.size(), 0); }
    Elem reduce(Elem x) const;
    Elem add(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem scale(long long c, const Elem& a) const;
    Elem act(int g, const Elem& a) const;

    /// Trivial-action module.
    static FiniteModule trivial(FiniteGroup f, std::vector<long long> factors);
};

/// Normalized cochain table with values in a FiniteModule: degree 1 maps
/// F -> M with a(e) = 0, degree 2 maps F x F -> M vanishing when either
/// argument is the identity.
struct CochainTable {
    int degree = 2;
    int group_size = 0;
    std::vector<FiniteModule::Elem> values;  // |F| entries or |F|^2 entries

    const FiniteModule::Elem& at(int g) const;
    const FiniteModule::Elem& at(int g, int h) const;
    FiniteModule::Elem& at(int g);
    FiniteModule::Elem& at(int g, int h);

    static CochainTable zero1(const FiniteModule& m);
    static CochainTable zero2(const FiniteModule& m);
};

/// g f(h,k) - f(gh,k) + f(g,hk) - f(g,h) = 0 for all triples.
bool is_two_cocycle(const FiniteModule& m, const CochainTable& f);

/// (delta a)(g,h) = a(g) + g a(h) - a(gh); the output is verified normalized
/// and a 2-cocycle.
CochainTable coboundary(const FiniteModule& m, const CochainTable& a);

/// Invariant factors (>1) of H^2(F; M), via one Smith normal form over Z on
/// the stacked relation matrix with congruence slack columns.
/// Desk-scale guard: |F| <= 12, rank <= 3.
std::vector<long long> h2(const FiniteModule& m);

// ---------------------------------------------------------------------------
// Extensions of finite groups with abelian kernel
// ---------------------------------------------------------------------------

/// 0 -> T -> E -> F -> 0 with a set-theoretic normalized section.
struct ExtensionData {
    FiniteGroup e;
    std::vector<int> t_elements;  // abelian normal subgroup, element ids in E
    FiniteGroup f;
    std::vector<int> pi;       // E -> F
    std::vector<int> section;  // F -> E with pi(section(g)) = g, section(e) = e

    ExtensionData(FiniteGroup e_, std::vector<int> t_, FiniteGroup f_, std::vector<int> pi_,
                  std::vector<int> section_);
};

/// The conjugation module T (as a FiniteModule via its invariant-factor
/// decomposition) plus coordinate maps between T-elements and module vectors.
struct ExtensionModule {
    FiniteModule module;
    std::vector<int> generators;                   // T generators, ids in E
    std::vector<FiniteModule::Elem> coords_of;     // per E-element (T only), module coords
    std::vector<int> element_of_coords;            // flattened coords -> E element id
    long long flat_index(const FiniteModule::Elem& x) const;
    int element_of(const FiniteModule::Elem& x) const;
};

ExtensionModule module_from_extension(const ExtensionData& ext);

/// f_s(g,h) = s(g) s(h) s(gh)^{-1}, with values converted to module
/// coordinates; verified normalized and a 2-cocycle.
CochainTable cocycle_from_section(const ExtensionData& ext, const ExtensionModule& em);

/// Construct (C_n)^m x| F as an explicit finite extension of F with
/// T = (C_n)^m and the canonical section g -> (0, g).
ExtensionData grid_extension_from_semidirect(const SemidirectGroup& g, long long n);

// ---------------------------------------------------------------------------
// Splitting after quotient by the m-torsion
// ---------------------------------------------------------------------------

struct SplittingReport {
    bool found = false;
    std::string reason;         // on failure: why (e.g. the class obstruction)
    long long n_modulus = 0;    // the grid modulus N
    long long m = 0;            // |F|
    CochainTable a;             // 1-cochain with m (f_s + delta a) = 0
    CochainTable a_prime;       // m * a
    std::vector<int> section_prime;  // modified section F -> E
    CochainTable f_sprime;      // cocycle of the modified section
    bool cocycle_in_tm = false; // f_s' takes values in the m-torsion T_m
    long long fprime_order = 0; // |<s'(F) u T_m>|
    bool t_times_fprime_is_e = false;
    bool t_cap_fprime_is_tm = false;
    long long tm_size = 0;
};

/// The constructive splitting step for extensions whose kernel is the full
/// grid T = ((1/N) Z)^d / Z^d with |F| dividing N: finds a 1-cochain a with
/// m(f_s + delta a) = 0, modifies the section, and verifies that the new
/// cocycle lives in T_m, so E is T F' with T n F' = T_m. NoSolution (found =
/// false) signals that N is not m-divisible enough for this extension class.
SplittingReport split_after_quotient(const ExtensionData& ext);

// Extension data JSON: {"E": table, "T": ids, "pi": {...}, "section": {...}}.
ExtensionData extension_from_json(const std::string& json_text);

}  // namespace grouplab

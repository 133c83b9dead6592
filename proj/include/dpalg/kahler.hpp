#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dpalg/beckmod.hpp"
#include "dpalg/envelopes.hpp"

namespace dpalg {

/// Left module over ring with the given generators and relations.
/// Free module ring^g: basis e_r dg_i at index i * ring.dim + r.
struct PresentedModule {
    FinRing ring;
    std::vector<std::string> generators;
    std::vector<Vec> relations;

    std::size_t free_dim() const { return ring.dim * generators.size(); }
    /// x dg_i for a ring element x
    Vec times(const Vec& x, std::size_t i) const;
    /// x . v for a ring element x and a free-module vector v
    Vec act(const Vec& x, const Vec& v) const;
};

/// The quotient as a ring module; classes maps the free module onto it.
struct PresentedQuotient {
    RingModule module;
    Matrix classes;
    Subspace relations;
};
PresentedQuotient quotient(const PresentedModule& P);

/// Coefficient of c^(p-1) dc in d(pi(c)): the inverse of (p-1)! mod p, which is -1.
Fe wilson_coefficient(const Field& F);

/// Omega of a PD algebra over V(A) truncated at f-degree N: Leibniz and d(pi a) = f da - a^(p-1) da.
PresentedModule omega_com(const PdComAlgebra& A, int N);
/// Omega of a restricted Lie algebra over w(L): Leibniz and d(l^[p]) = f dl + l^(p-1) dl.
PresentedModule omega_rlie(const RestrictedLie& L, int N);
/// Kahler differentials without the p-relation, over F + A+ and over U(L)_D.
PresentedModule omega_plain_com(const CommAlgebra& A);
PresentedModule omega_plain_lie(const LieAlgebra& L, int D);

/// F_p-basis of a solution space; each basis element is a matrix (target dim x source dim).
struct DerivationSpace {
    std::vector<Matrix> basis;
    std::size_t dim = 0;
};

/// Beck derivations A -> M: Leibniz on basis pairs, d(pi a) = pi_M(da) - a^(p-1) da on the basis.
DerivationSpace derivations_com(const PdComAlgebra& A, const BeckModuleCom& M);
/// d[l,l'] = l dl' - l' dl, d(l^[p]) = l^(p-1) dl + f(dl).
DerivationSpace derivations_rlie(const RestrictedLie& L, const BeckModuleLie& M);

/// Bimodule over an untwisted ring: left[t] m = e_t m, right[t] m = m e_t.
struct Bimodule {
    std::size_t dim = 0;
    std::vector<Matrix> left;
    std::vector<Matrix> right;
};
std::vector<RelationReport> check_bimodule(const FinRing& R, const Bimodule& M);
/// F with the non-unit basis acting by zero on both sides (augmented rings such as u(L)).
Bimodule trivial_bimodule(const FinRing& R);
Bimodule regular_bimodule(const FinRing& R);
/// d(ab) = a d(b) + d(a) b. Unknowns are the values on ring generators, extended along generator words.
/// Basis matrices have one column per generator of R.
DerivationSpace derivations_assoc(const FinRing& R, const Bimodule& M);
/// The derivation with the given generator values on every basis element (dim M x dim R).
Matrix extend_assoc_derivation(const FinRing& R, const Bimodule& M, const Matrix& on_gens);
/// l.m = lm - ml and f = 0, for R = u(L).
BeckModuleLie commutator_module(const RestrictedLie& L, const FinRing& u, const Bimodule& M);

/// Derivation equations on seeded random (composite) elements; X has one column per basis element.
RelationReport check_derivation_com(const PdComAlgebra& A, const BeckModuleCom& M, const Matrix& X, int trials = 30,
                                    std::uint64_t seed = 1);
RelationReport check_derivation_rlie(const RestrictedLie& L, const BeckModuleLie& M, const Matrix& X,
                                     int trials = 30, std::uint64_t seed = 1);
RelationReport check_derivation_assoc(const FinRing& R, const Bimodule& M, const Matrix& X, int trials = 30,
                                      std::uint64_t seed = 1);

/// Module maps from P: images of the generators (columns) that kill every relation. TruncationMismatch if M is
/// over a different ring.
DerivationSpace hom_module(const PresentedModule& P, const RingModule& M);
/// Module maps X -> Y over R (basis matrices Y.dim x X.dim); enough to commute with the ring generators.
DerivationSpace hom_ring_modules(const FinRing& R, const RingModule& X, const RingModule& Y);

/// In the quotient: the class of d(v) for an element v of the source, d extended linearly.
Vec universal_derivation(const PresentedQuotient& Q, const PresentedModule& P, const Vec& v);

/// Linear map between free modules induced by a ring map theta and generator images.
struct ComparisonMap {
    PresentedModule source;
    PresentedModule target;
    Matrix theta;     // source ring -> target ring
    Matrix free_map;  // target free module x source free module
};
/// Every source relation lands in the target relation submodule.
RelationReport check_well_defined(const ComparisonMap& c);

/// b db' -> f^0 g(b) d g(b'): plain Omega(B) over F + B+ to Omega(A) over V(A). WellDefinednessFailure.
ComparisonMap comparison_omega_com(const CommAlgebra& B, const PdComAlgebra& A, const Matrix& g, int N);
/// l dl' -> f^0 g(l) d g(l'): plain Omega(L) over U(L)_D to Omega(H) over w(H).
ComparisonMap comparison_omega_lie(const LieAlgebra& L, const RestrictedLie& H, const Matrix& g, int D, int N);
/// Base change along a PD (restricted) morphism, and along the underlying plain morphism.
ComparisonMap base_change_com(const PdComAlgebra& B, const PdComAlgebra& A, const Matrix& g, int N);
ComparisonMap base_change_plain_com(const CommAlgebra& B, const CommAlgebra& A, const Matrix& g);
ComparisonMap base_change_rlie(const RestrictedLie& L, const RestrictedLie& H, const Matrix& g, int N);
ComparisonMap base_change_plain_lie(const LieAlgebra& L, const LieAlgebra& H, const Matrix& g, int D);
/// comparison_A o plain base change = base change o comparison_B, on every free basis element.
RelationReport check_naturality_com(const PdComAlgebra& B, const PdComAlgebra& A, const Matrix& g, int N);
RelationReport check_naturality_lie(const RestrictedLie& L, const RestrictedLie& H, const Matrix& g, int D, int N);

/// g_! Omega(B) with the universal derivation B -> g_! Omega(B) (columns = images of the B basis).
struct AbelianizationCom {
    BeckModuleCom module;
    Matrix derivation;
};
struct AbelianizationLie {
    BeckModuleLie module;
    Matrix derivation;
};
AbelianizationCom abelianization_com(const PdComAlgebra& B, const PdComAlgebra& A, const Matrix& g, int N);
AbelianizationLie abelianization_lie(const RestrictedLie& B, const RestrictedLie& A, const Matrix& g, int N);

}  // namespace dpalg

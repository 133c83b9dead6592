#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "dpalg/envelopes.hpp"
#include "dpalg/pdcom.hpp"
#include "dpalg/report.hpp"
#include "dpalg/rlie.hpp"

namespace dpalg {

/// (M, pi_M) over a PD algebra A: action[i] is the matrix of the i-th basis element of A+.
struct BeckModuleCom {
    std::size_t dim = 0;
    std::vector<Matrix> action;
    SemilinearMap pi;
};

/// (M, f) over a restricted Lie algebra.
struct BeckModuleLie {
    RestrictedModule module;  // module.f must be set
};

/// Module law, pi p-semilinear, pi(A+ M) = 0.
std::vector<RelationReport> check_beck_com(const PdComAlgebra& A, const BeckModuleCom& M);
/// Restricted module with f: M -> M^L p-semilinear.
std::vector<RelationReport> check_beck_lie(const RestrictedLie& L, const BeckModuleLie& M, int trials = 20,
                                           std::uint64_t seed = 1);

BeckModuleCom zero_beck_com(const PdComAlgebra& A);
BeckModuleLie zero_beck_lie(const LieAlgebra& L);

/// Split extension with pr: E -> base and section z: base -> E. Basis of E: base basis, then M basis.
template <class Alg>
struct SplitExtension {
    Alg algebra;
    Matrix pr;
    Matrix z;
};

SplitExtension<PdComAlgebra> semidirect_com(const PdComAlgebra& A, const BeckModuleCom& M);
SplitExtension<RestrictedLie> semidirect_lie(const RestrictedLie& L, const BeckModuleLie& M);

/// M = ker(pr) with a.m = z(a) m and pi_M = pi restricted to M. NotSplit, NotSquareZero.
BeckModuleCom kernel_module_com(const PdComAlgebra& A, const PdComAlgebra& B, const Matrix& pr, const Matrix& z);
/// M = ker(pr) with l.m = [z(l), m] and f = p-map restricted to M.
BeckModuleLie kernel_module_lie(const RestrictedLie& L, const RestrictedLie& B, const Matrix& pr, const Matrix& z);

/// Beck modules as modules over V(A) resp. w(L) and back (needs f-degree N >= 1 for the way back).
RingModule to_v_module(const PdComAlgebra& A, const FinRing& V, const BeckModuleCom& M);
BeckModuleCom from_v_module(const PdComAlgebra& A, const FinRing& V, const RingModule& M);
RingModule to_w_module(const RestrictedLie& L, const FinRing& w, const BeckModuleLie& M);
BeckModuleLie from_w_module(const RestrictedLie& L, const FinRing& w, const RingModule& M);

/// Forget pi (resp. f): a module over F + A+ (resp. u(L)).
RingModule restrict_theta_com(const PdComAlgebra& A, const BeckModuleCom& M);
RingModule restrict_theta_lie(const RestrictedLie& L, const FinRing& u, const BeckModuleLie& M);

/// dst (x)_src M along phi: src -> dst, as a dst-module. unit maps m to the class of 1 (x) m.
struct Extension {
    RingModule module;
    Matrix unit;
};
/// How products past the truncation are read.
/// quotient: they vanish, giving the extension modulo the truncation ideal (a module over the truncated dst).
/// exact: relations that need them are skipped; valid when dst is generated over phi(src) in degree 0 on the
/// right, and the classes that survive must lie low enough for the generators to act (else TruncationTooSmall).
enum class TruncationMode { quotient, exact };
Extension extend_scalars(const FinRing& src, const FinRing& dst, const Matrix& phi, const RingModule& M,
                         TruncationMode mode = TruncationMode::quotient);

/// g: B -> A (columns are images of the B basis); computed over V / w truncated at f-degree N >= 1.
/// Com is exact (V(A) is generated over V(B) by F + A+). Lie returns g_!M modulo f^(>N), since g_!M is
/// infinite-dimensional in general.
BeckModuleCom pushforward_com(const PdComAlgebra& B, const PdComAlgebra& A, const Matrix& g, const BeckModuleCom& M,
                              int N);
BeckModuleLie pushforward_lie(const RestrictedLie& B, const RestrictedLie& A, const Matrix& g, const BeckModuleLie& M,
                              int N);
/// Restriction along g.
BeckModuleCom pullback_com(const PdComAlgebra& B, const Matrix& g, const BeckModuleCom& M);
BeckModuleLie pullback_lie(const RestrictedLie& B, const Matrix& g, const BeckModuleLie& M);

/// Unit M -> g* g_! M is a module map: U A_s = R_s Frob^t(U) for every source basis element s.
RelationReport check_unit_is_module_map(const FinRing& src, const RingModule& M, const RingModule& restricted,
                                        const Matrix& unit);

/// Kernel of the fiber product base x_{E base} E -> base, with the action read off the fiber product.
/// Com: returns the action matrices of the basis of A+ (eta: A+ -> base of E).
std::vector<Matrix> fiber_product_action_com(const CommAlgebra& A, const Matrix& eta,
                                             const SplitExtension<PdComAlgebra>& E);
/// Lie: action matrices of the basis of L (eta: L -> base of E, a Lie map).
std::vector<Matrix> fiber_product_action_lie(const LieAlgebra& L, const Matrix& eta,
                                             const SplitExtension<RestrictedLie>& E);

/// The p-envelope of L (x) M (M an L-module via rho, nilpotent) splits as env(L) (x) env(M):
/// dimension additivity, block structure of bracket and p-map, and an explicit isomorphism.
std::vector<RelationReport> check_penvelope_splits(const LieAlgebra& L, const std::vector<Matrix>& rho, int N);

/// Seeded random Beck modules of dimension 1..3 over small bases, for round-trip tests.
struct RandomComCase {
    PdComAlgebra base;
    BeckModuleCom module;
};
struct RandomLieCase {
    RestrictedLie base;
    BeckModuleLie module;
};
RandomComCase random_beck_com(std::mt19937_64& rng);
RandomLieCase random_beck_lie(std::mt19937_64& rng);

}  // namespace dpalg

#pragma once

#include <string>
#include <vector>

#include "dpalg/operad.hpp"
#include "dpalg/pdcom.hpp"
#include "dpalg/report.hpp"
#include "dpalg/rlie.hpp"

namespace dpalg {

/// Finite-dimensional associative ring with a twisted scalar rule:
/// e_i * (c e_j) = c^(p^twist[i]) e_i e_j.
struct FinRing {
    FieldPtr field;
    std::string name;
    std::size_t dim = 0;
    std::vector<std::string> labels;
    std::vector<SparseVec> table;  // e_i e_j at i * dim + j
    std::vector<int> twist;
    std::size_t unit = 0;
    /// grading (PBW weight or f-degree); products with grade sum above max_grade were truncated
    std::vector<int> grade;
    int max_grade = -1;  // -1: not truncated
    /// ring generators (basis indices) and a generator word for every basis element
    std::vector<std::size_t> gens;
    std::vector<std::vector<std::size_t>> words;

    const Field& F() const { return *field; }
    Vec zero() const { return zero_vec(*field, dim); }
    Vec basis(std::size_t i) const { return unit_vec(*field, dim, i); }
    Vec one() const { return basis(unit); }
    Vec mul(const Vec& a, const Vec& b) const;
    bool truncated_pair(std::size_t i, std::size_t j) const {
        return max_grade >= 0 && grade[i] + grade[j] > max_grade;
    }
    std::string describe(const Vec& v) const;
};

/// Unit laws and associativity on all basis triples (OpenMP kernel), or on sampled triples above max_exhaustive.
std::vector<RelationReport> check_ring(const FinRing& R, std::size_t max_exhaustive = 27, int samples = 500,
                                       std::uint64_t seed = 1);

/// Restricted enveloping algebra with restricted PBW basis.
FinRing u_of(const RestrictedLie& L);

/// Positive weights with [e_i, e_j] supported in weights >= w_i + w_j; throws NotNilpotentBasis otherwise.
std::vector<int> lie_weights(const LieAlgebra& L);
/// U(L) modulo PBW monomials of weight > D.
FinRing U_of(const LieAlgebra& L, int D);

/// w(L) truncated at f-degree N; basis f^a (x) m at index a * dim u(L) + m.
FinRing w_of(const RestrictedLie& L, int N);
/// V(A) for the augmented algebra F + A+, truncated at f-degree N; basis a (x) f^k at index k * (1 + dim A) + a.
FinRing v_of(const PdComAlgebra& A, int N);
/// F + A+ as a ring (unit at index 0).
FinRing augmented_ring(const CommAlgebra& A);

/// Unitality and multiplicativity of a linear map (columns = images of source basis), skipping truncated pairs.
std::vector<RelationReport> check_ring_map(const FinRing& src, const FinRing& dst, const Matrix& phi);

/// U(L)_D -> u(L) -> w(L): PBW monomials to their restricted straightening in f-degree 0.
Matrix theta_lie(const FinRing& U, const FinRing& w);
/// F + A+ -> V(A), a -> a (x) f^0.
Matrix theta_com(const FinRing& aug, const FinRing& V);
/// U(L)_D -> u(L)
Matrix U_to_u(const FinRing& U, const FinRing& u);

/// Ring maps induced by algebra maps g (columns = images of source basis).
Matrix u_map(const FinRing& uB, const FinRing& uA, const Matrix& g);
Matrix w_map(const FinRing& wB, const FinRing& wA, const Matrix& g);
Matrix v_map(const FinRing& VB, const FinRing& VA, const Matrix& g);

/// Left module over a FinRing: e_i . m = action[i] * Frob^twist[i](m).
struct RingModule {
    std::size_t dim = 0;
    std::vector<Matrix> action;

    Vec act(const FinRing& R, const Vec& r, const Vec& m) const;
};

/// Unit acts as identity; (e_i e_j) m = e_i (e_j m) for non-truncated pairs.
std::vector<RelationReport> check_ring_module(const FinRing& R, const RingModule& M);
RingModule regular_module(const FinRing& R);
/// Restriction of scalars along phi: src -> dst.
RingModule restrict_module(const FinRing& src, const Matrix& phi, const FinRing& dst, const RingModule& M);

/// Symbols beta_{x,r}(a_1, ..., a_{s-1}, -) from the generating families.
struct OperadicSymbol {
    Vec x;
    Composition r;
    std::vector<Vec> args;  // elements of A+ or L, one per part but the last
};

/// Com symbols land in V(A), Lie symbols in w(L).
Vec operadic_symbol_to_ring(const Operad& op, const FinRing& target, std::size_t base_dim, const OperadicSymbol& s);

}  // namespace dpalg

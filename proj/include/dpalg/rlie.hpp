#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dpalg/linalg.hpp"
#include "dpalg/report.hpp"

namespace dpalg {

/// Lie algebra by structure constants; bracket[i * dim + j] = [e_i, e_j].
struct LieAlgebra {
    FieldPtr field;
    std::size_t dim = 0;
    std::vector<std::string> labels;
    std::vector<Vec> bracket;

    const Field& F() const { return *field; }
    Vec zero() const { return zero_vec(*field, dim); }
    Vec basis(std::size_t i) const { return unit_vec(*field, dim, i); }
    Vec br(const Vec& a, const Vec& b) const;
    /// ad_v(w) = [w, v]
    Matrix ad(const Vec& v) const;
    std::string describe(const Vec& v) const;
};

struct RestrictedLie : LieAlgebra {
    std::vector<Vec> pmap;  // e_i^[p]
};

/// Antisymmetry, alternating and Jacobi on basis elements.
std::vector<RelationReport> check_lie(const LieAlgebra& L);

/// s_i(l, l'): i s_i is the coefficient of lambda^(i-1) in ad^(p-1)_{lambda l + l'}(l).
Vec s_i(const LieAlgebra& L, const Vec& l, const Vec& l2, int i);

/// v^[p] by peeling basis terms in the given order, via (RLeq1) and (RLeq3).
Vec pmap_extend(const RestrictedLie& L, const Vec& v, const std::vector<std::size_t>* order = nullptr);

std::vector<RelationReport> check_rlie(const RestrictedLie& L, int trials = 100, std::uint64_t seed = 1);

/// Basis (e, h, f), [e,f] = h, [h,e] = 2e, [h,f] = -2f, e^[p] = f^[p] = 0, h^[p] = h.
RestrictedLie sl2(FieldPtr f);
/// Basis (x, y, z), [x,y] = z central, zero p-map on the basis.
RestrictedLie heisenberg(FieldPtr f);
/// Abelian of the given dimension; pvals[i] = e_i^[p] (zero when omitted).
RestrictedLie abelian(FieldPtr f, std::size_t dim, std::vector<Vec> pvals = {});

/// Module over a (restricted) Lie algebra: action[i] is the matrix of e_i; f is optional.
struct RestrictedModule {
    std::size_t dim = 0;
    std::vector<Matrix> action;
    std::optional<SemilinearMap> f;

    Matrix act(const LieAlgebra& L, const Vec& l) const;
};

RestrictedModule trivial_module(const LieAlgebra& L, std::size_t dim, std::optional<SemilinearMap> f = std::nullopt);
RestrictedModule adjoint_module(const LieAlgebra& L);

/// Module law, restrictedness, p-semilinearity of f, f(M) inside M^L.
std::vector<RelationReport> check_restricted_module(const RestrictedLie& L, const RestrictedModule& M,
                                                    int trials = 20, std::uint64_t seed = 1);

/// p-envelope of L modulo iterated p-th powers of depth > N.
/// Basis: e_1..e_n, then e_i^(p^k) for k = 1..N (k-major). Needs ad(e_i)^(p^(N+1)) = 0 so that the
/// dropped powers are central; otherwise TruncationTooSmall.
struct PEnvelope {
    RestrictedLie hat;
    Matrix eta;
    /// hat basis index of e_i^(p^k); power_index[k][i]
    std::vector<std::vector<std::size_t>> power_index;
};
PEnvelope p_envelope(const LieAlgebra& L, int N);

}  // namespace dpalg

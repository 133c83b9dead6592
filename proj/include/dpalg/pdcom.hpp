#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dpalg/linalg.hpp"
#include "dpalg/report.hpp"

namespace dpalg {

using SparseVec = std::vector<std::pair<std::uint32_t, Fe>>;

SparseVec to_sparse(const Vec& v);
void axpy_sparse(Vec& y, Fe a, const SparseVec& x);

/// Finite-dimensional commutative non-unital algebra A+ by structure constants.
struct CommAlgebra {
    FieldPtr field;
    std::size_t dim = 0;
    std::vector<std::string> labels;
    std::vector<SparseVec> mult;  // e_i e_j at i * dim + j

    const Field& F() const { return *field; }
    Vec zero() const { return zero_vec(*field, dim); }
    Vec basis(std::size_t i) const { return unit_vec(*field, dim, i); }
    Vec mul(const Vec& a, const Vec& b) const;
    /// a^k for k >= 1
    Vec power(const Vec& a, int k) const;
    Matrix left_mult(const Vec& a) const;
    std::string describe(const Vec& v) const;
};

/// Builds the table from a dense product callback.
CommAlgebra make_comm_algebra(FieldPtr f, std::vector<std::string> labels,
                              const std::function<Vec(std::size_t, std::size_t)>& product);

/// A+ with pi = gamma_p.
struct PdComAlgebra : CommAlgebra {
    std::vector<Vec> pi;  // pi(e_i)
};

/// pi of an arbitrary element by peeling basis terms in the given order (default 0, 1, ...).
Vec pi_extend(const PdComAlgebra& a, const Vec& v, const std::vector<std::size_t>* order = nullptr);

/// Commutativity, associativity, (DPpeq1)-(DPpeq4) and peel-order independence.
std::vector<RelationReport> check_pdcom(const PdComAlgebra& a, int trials = 100, std::uint64_t seed = 1);

/// gamma_n from pi via base-p digits of n.
Vec gamma_from_pi(const PdComAlgebra& a, int n, const Vec& v);

/// Monomials in g variables of total degree 1..D, by degree then lexicographically descending.
std::vector<std::vector<int>> monomials_up_to(int g, int D);
std::string monomial_label(const std::vector<int>& e, bool divided);

/// Truncated free divided power algebra on g generators.
class FreePdCom {
public:
    FreePdCom(FieldPtr f, int g, int D);

    const PdComAlgebra& algebra() const { return alg_; }
    int generators() const { return g_; }
    int D() const { return D_; }
    const std::vector<std::vector<int>>& exponents() const { return exps_; }
    /// Index of x^(e), or nullopt if out of range.
    std::optional<std::size_t> index(const std::vector<int>& e) const;
    Vec generator(int i) const;
    /// gamma_n(x^(e)) = c x^(n e)
    Vec gamma_monomial(int n, std::size_t m) const;
    /// gamma_n of an arbitrary element; n = 0 is rejected (the unit is not in A+).
    Vec gamma(int n, const Vec& v) const;

private:
    int g_;
    int D_;
    std::vector<std::vector<int>> exps_;
    std::map<std::vector<int>, std::size_t> index_;
    PdComAlgebra alg_;
};

/// (PDeq1)-(PDeq5) on basis elements and random elements, for i j <= D.
std::vector<RelationReport> check_pd_axioms(const FreePdCom& a, int random_trials, std::uint64_t seed);

/// Polynomial in g variables as (coefficient, exponents) terms.
using Polynomial = std::vector<std::pair<Fe, std::vector<int>>>;

/// F[x_1..x_g]+ modulo monomial relations and degree > D.
CommAlgebra monomial_algebra(FieldPtr f, int g, const std::vector<std::vector<int>>& relations, int D);

struct PdEnvelope {
    CommAlgebra source;   // A+
    PdComAlgebra algebra; // its PD envelope, truncated
    Matrix eta;           // A+ -> envelope, columns are images of basis monomials
    std::vector<std::vector<int>> source_exponents;
    std::vector<std::vector<int>> envelope_exponents;  // chosen quotient basis, as x^(e)
};

PdEnvelope pd_envelope(FieldPtr f, int g, const std::vector<Polynomial>& relations, int D);

}  // namespace dpalg

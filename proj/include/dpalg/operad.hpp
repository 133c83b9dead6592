#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include "dpalg/combinatorics.hpp"
#include "dpalg/linalg.hpp"
#include "dpalg/report.hpp"

namespace dpalg {

/// A reduced operad at small arity: P(n) for 1 <= n <= max_arity, with the left
/// Sigma_n action (letter relabelling i -> sigma(i)) and partial compositions.
class Operad {
public:
    static std::shared_ptr<const Operad> com(FieldPtr f, int max_arity);
    static std::shared_ptr<const Operad> lie(FieldPtr f, int max_arity);

    const std::string& name() const { return name_; }
    const Field& field() const { return *field_; }
    FieldPtr field_ptr() const { return field_; }
    int max_arity() const { return max_arity_; }
    std::size_t dim(int n) const { return dims_.at(n); }
    const std::vector<std::string>& labels(int n) const { return labels_.at(n); }

    /// Matrix of sigma on P(n); column b is sigma . e_b.
    const Matrix& action(const Perm& sigma) const;
    Vec act(const Perm& sigma, const Vec& x) const { return action(sigma).apply(x); }
    /// x o_i y for x in P(n), y in P(m); i is 1-based.
    Vec compose(int n, int i, int m, const Vec& x, const Vec& y) const;
    /// x(y_1, ..., y_n), inputs of y_1 first.
    Vec compose_full(int n, const Vec& x, const std::vector<std::pair<int, Vec>>& ys) const;
    Vec unit() const;

    Operad(std::string name, FieldPtr f, int max_arity);

private:

    std::string name_;
    FieldPtr field_;
    int max_arity_;
    std::vector<std::size_t> dims_;
    std::vector<std::vector<std::string>> labels_;
    // actions_[n][lehmer rank]
    std::vector<std::vector<Matrix>> actions_;
    // comp_[(n, i, m)][a * dim(m) + b]
    std::map<std::tuple<int, int, int>, std::vector<Vec>> comp_;
};

using OperadPtr = std::shared_ptr<const Operad>;

/// Basis of P(n)^{Sigma_r}: kernel of the stacked (sigma - id) over adjacent
/// transpositions inside the blocks of r.
std::vector<Vec> invariants_subspace(const Operad& op, const Composition& r);

/// Sum of all left-normed brackets [[x1, x_s2], ..., x_sp] over s fixing 1.
Vec lie_fp_element(const Operad& lie, int p);

/// Element of the truncated free Gamma(P)-algebra on V: comp[n] lies in
/// T_n = P(n) (x) V^{(x)n}, indexed b * d^n + word (first tensor factor most significant).
struct GammaElement {
    std::vector<Vec> comp;  // comp[0] unused
};

class FreeGamma {
public:
    FreeGamma(OperadPtr op, int d, int D);

    const Operad& operad() const { return *op_; }
    OperadPtr operad_ptr() const { return op_; }
    const Field& field() const { return op_->field(); }
    int d() const { return d_; }
    int D() const { return D_; }
    std::size_t tensor_dim(int n) const;
    std::size_t word_count(int n) const;

    /// Diagonal action: sigma . (mu (x) v_w1 .. v_wn) = sigma mu (x) v_{w sigma^-1(1)} ...
    Vec act(int n, const Perm& sigma, const Vec& t) const;
    bool is_invariant(int n, const Vec& t) const;
    /// Basis of Gamma_n(P, V) as vectors in T_n.
    const std::vector<Vec>& basis(int n) const { return basis_.at(n); }

    GammaElement zero() const;
    /// The generator v_j placed in degree 1.
    GammaElement generator(int j) const;
    GammaElement add(const GammaElement& a, const GammaElement& b) const;
    GammaElement scale(Fe c, const GammaElement& a) const;
    bool equal(const GammaElement& a, const GammaElement& b) const;
    bool is_invariant(const GammaElement& a) const;
    GammaElement random_element(std::mt19937_64& rng, int max_degree, bool homogeneous) const;
    std::string describe(const GammaElement& a) const;

    /// Coset representatives of Sigma_N over the product of wreath subgroups
    /// Sigma_{m_j} wr Sigma_{r_j} (slots laid out arg by arg, copy by copy).
    const std::vector<Perm>& trace_cosets(const std::vector<std::pair<int, int>>& blocks) const;

private:
    OperadPtr op_;
    int d_;
    int D_;
    std::vector<std::vector<Vec>> basis_;
    mutable std::mutex cache_mutex_;
    mutable std::map<std::vector<std::pair<int, int>>, std::vector<Perm>> coset_cache_;
};

struct BetaOptions {
    bool strict_degree = false;
    bool check_invariance = true;
};

/// beta_{x,r}(args) in the truncated free Gamma(P)-algebra.
GammaElement beta_eval(const FreeGamma& g, const Vec& x, const Composition& r, const std::vector<GammaElement>& args,
                       const BetaOptions& opt = {});

std::vector<RelationReport> check_beta_relations(const FreeGamma& g, int trials, std::uint64_t seed);

/// Trace map v -> sum_sigma sigma.v on T_n (its rank is that of the induced map
/// from coinvariants to invariants).
struct NormMap {
    Matrix matrix;
    std::size_t rank = 0;
};
NormMap norm_map(const FreeGamma& g, int n);

/// Formal rewriting of beta_{x,r} into an operation whose composition has only p-power parts.
struct PPowerTerm {
    Fe coefficient;
    Vec x;
    Composition Q;
    /// Q-slot t is fed argument arg_index[t] of the original call.
    std::vector<int> arg_index;
};
PPowerTerm reduce_to_p_powers(const Operad& op, const Vec& x, const Composition& r);

}  // namespace dpalg

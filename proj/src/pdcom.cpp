#include "dpalg/pdcom.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "dpalg/combinatorics.hpp"
#include "dpalg/kernels.hpp"
#include "dpalg/lucas.hpp"

namespace dpalg {

SparseVec to_sparse(const Vec& v) {
    SparseVec out;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) out.push_back({static_cast<std::uint32_t>(i), v[i]});
    return out;
}

void axpy_sparse(Vec& y, Fe a, const SparseVec& x) {
    for (const auto& [i, c] : x) y[i] += a * c;
}

Vec CommAlgebra::mul(const Vec& a, const Vec& b) const {
    Vec out = zero();
    for (std::size_t i = 0; i < dim; ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < dim; ++j) {
            if (b[j].is_zero()) continue;
            axpy_sparse(out, a[i] * b[j], mult[i * dim + j]);
        }
    }
    return out;
}

Vec CommAlgebra::power(const Vec& a, int k) const {
    if (k < 1) throw Error(ErrorKind::InvalidArgs, "power of a non-unital element needs k >= 1");
    Vec r = a;
    for (int t = 1; t < k; ++t) r = mul(r, a);
    return r;
}

Matrix CommAlgebra::left_mult(const Vec& a) const {
    Matrix m(*field, dim, dim);
    for (std::size_t j = 0; j < dim; ++j) m.set_col(j, mul(a, basis(j)));
    return m;
}

std::string CommAlgebra::describe(const Vec& v) const {
    std::ostringstream os;
    bool any = false;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        if (any) os << " + ";
        if (!v[i].is_one()) os << to_string(v[i]) << "*";
        os << (i < labels.size() ? labels[i] : "e" + std::to_string(i));
        any = true;
    }
    return any ? os.str() : "0";
}

CommAlgebra make_comm_algebra(FieldPtr f, std::vector<std::string> labels,
                              const std::function<Vec(std::size_t, std::size_t)>& product) {
    CommAlgebra a;
    a.field = std::move(f);
    a.dim = labels.size();
    a.labels = std::move(labels);
    a.mult.resize(a.dim * a.dim);
    for (std::size_t i = 0; i < a.dim; ++i)
        for (std::size_t j = 0; j < a.dim; ++j) a.mult[i * a.dim + j] = to_sparse(product(i, j));
    return a;
}

namespace {

// (-1)^k / k for k = 1..p-1
std::vector<Fe> sum_coefficients(const Field& f) {
    std::vector<Fe> c(f.p());
    for (int k = 1; k < f.p(); ++k) c[k] = f.from_int(k % 2 ? -1 : 1) * f.from_int(k).inv();
    return c;
}

// sum_k (-1)^k/k a^k b^(p-k)
Vec pi_correction(const CommAlgebra& A, const Vec& a, const Vec& b, const std::vector<Fe>& coef) {
    const int p = A.F().p();
    Vec out = A.zero();
    if (is_zero(a) || is_zero(b)) return out;
    std::vector<Vec> ap(p), bp(p);
    ap[1] = a;
    bp[1] = b;
    for (int k = 2; k < p; ++k) {
        ap[k] = A.mul(ap[k - 1], a);
        bp[k] = A.mul(bp[k - 1], b);
    }
    for (int k = 1; k < p; ++k) axpy(out, coef[k], A.mul(ap[k], bp[p - k]));
    return out;
}

}  // namespace

Vec pi_extend(const PdComAlgebra& A, const Vec& v, const std::vector<std::size_t>* order) {
    if (v.size() != A.dim) throw Error(ErrorKind::DimensionMismatch, "pi_extend input size");
    std::vector<std::size_t> idx(A.dim);
    std::iota(idx.begin(), idx.end(), 0);
    if (order) idx = *order;
    const auto coef = sum_coefficients(A.F());
    // peel the first term: pi(a + rest) with rest built from the back
    Vec rest = A.zero(), pi_rest = A.zero();
    for (auto it = idx.rbegin(); it != idx.rend(); ++it) {
        const std::size_t i = *it;
        if (v[i].is_zero()) continue;
        Vec a = scale(v[i], A.basis(i));
        Vec pa = scale(v[i].pow(A.F().p()), A.pi[i]);
        pi_rest = add(add(pa, pi_rest), pi_correction(A, a, rest, coef));
        rest = add(a, rest);
    }
    return pi_rest;
}

std::vector<RelationReport> check_pdcom(const PdComAlgebra& A, int trials, std::uint64_t seed) {
    const Field& f = A.F();
    const int p = f.p();
    const std::size_t d = A.dim;
    std::mt19937_64 rng(seed);
    Checker comm("commutative"), assoc("associative"), nil("nilpotent"), e1("DPpeq1"), e2("DPpeq2"), e3("DPpeq3"),
        e4("DPpeq4"), order("pi-order");
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const Vec ij = A.mul(A.basis(i), A.basis(j)), ji = A.mul(A.basis(j), A.basis(i));
            comm.check(ij == ji, [&] { return A.labels[i] + "*" + A.labels[j]; }, !is_zero(ij));
        }
    kernels::SparseTable table;
    table.dim = d;
    for (const auto& s : A.mult) {
        table.entries.emplace_back();
        for (const auto& [k, c] : s) table.entries.back().push_back({k, c.code()});
    }
    const std::size_t defects = kernels::associativity_defects_parallel(table, f);
    assoc.check(defects == 0, [&] { return std::to_string(defects) + " basis triples fail"; });
    {
        // A^k spans shrink to zero
        std::vector<Vec> layer;
        for (std::size_t i = 0; i < d; ++i) layer.push_back(A.basis(i));
        bool vanished = d == 0;
        for (std::size_t step = 0; step <= d && !vanished; ++step) {
            Subspace next(f, d);
            for (const auto& u : layer)
                for (std::size_t j = 0; j < d; ++j) next.add(A.mul(u, A.basis(j)));
            layer = next.rows();
            vanished = layer.empty();
        }
        nil.check(vanished, [] { return std::string("multiplication is not nilpotent"); });
    }
    std::vector<Vec> samples;
    for (std::size_t i = 0; i < d; ++i) samples.push_back(A.basis(i));
    for (int t = 0; t < trials && d > 0; ++t) samples.push_back(random_vec(f, d, rng));
    const auto coef = sum_coefficients(f);
    for (const auto& a : samples) {
        const Vec ap = A.power(a, p);
        e1.check(is_zero(ap), [&] { return "a=" + A.describe(a) + " a^p=" + A.describe(ap); }, !is_zero(a));
        const Fe lam = random_fe(f, rng);
        const Vec l = pi_extend(A, scale(lam, a)), r = scale(lam.pow(p), pi_extend(A, a));
        e4.check(l == r, [&] { return "a=" + A.describe(a) + " lambda=" + to_string(lam); }, !is_zero(l));
        std::vector<std::size_t> perm(d);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        const Vec p0 = pi_extend(A, a), p1 = pi_extend(A, a, &perm);
        order.check(p0 == p1, [&] { return "a=" + A.describe(a); }, !is_zero(p0));
    }
    auto pair_checks = [&](const Vec& a, const Vec& b) {
        const Vec lhs = pi_extend(A, add(a, b));
        const Vec rhs = add(add(pi_extend(A, a), pi_extend(A, b)), pi_correction(A, a, b, coef));
        e2.check(lhs == rhs, [&] { return "a=" + A.describe(a) + " b=" + A.describe(b); }, !is_zero(lhs));
        const Vec ab = pi_extend(A, A.mul(a, b));
        e3.check(is_zero(ab), [&] { return "a=" + A.describe(a) + " b=" + A.describe(b); }, !is_zero(A.mul(a, b)));
    };
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) pair_checks(A.basis(i), A.basis(j));
    for (int t = 0; t < trials && d > 0; ++t) pair_checks(random_vec(f, d, rng), random_vec(f, d, rng));
    return {comm.report(), assoc.report(), nil.report(), e1.report(), e2.report(), e3.report(), e4.report(),
            order.report()};
}

Vec gamma_from_pi(const PdComAlgebra& A, int n, const Vec& v) {
    if (n < 1) throw Error(ErrorKind::InvalidArgs, "gamma_n needs n >= 1");
    const Field& f = A.F();
    const int p = f.p();
    Fe c = f.one();
    Vec result;
    bool have = false;
    Vec iter = v;
    for (int dgt : digits(n, p)) {
        if (dgt > 0) {
            c = c * f.from_int(factorial_mod(dgt, p)).inv();
            const Vec pw = A.power(iter, dgt);
            result = have ? A.mul(result, pw) : pw;
            have = true;
        }
        iter = pi_extend(A, iter);
    }
    return scale(c, result);
}

std::vector<std::vector<int>> monomials_up_to(int g, int D) {
    std::vector<std::vector<int>> out;
    for (int deg = 1; deg <= D; ++deg) {
        std::vector<std::vector<int>> layer;
        std::vector<int> cur;
        std::function<void(int, int)> rec = [&](int var, int left) {
            if (var == g - 1) {
                cur.push_back(left);
                layer.push_back(cur);
                cur.pop_back();
                return;
            }
            for (int a = left; a >= 0; --a) {
                cur.push_back(a);
                rec(var + 1, left - a);
                cur.pop_back();
            }
        };
        if (g > 0) rec(0, deg);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

std::string monomial_label(const std::vector<int>& e, bool divided) {
    std::string s;
    const bool single = e.size() == 1;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        s += single ? "x" : "x" + std::to_string(i + 1);
        if (divided)
            s += "^(" + std::to_string(e[i]) + ")";
        else if (e[i] > 1)
            s += "^" + std::to_string(e[i]);
    }
    return s.empty() ? "1" : s;
}

FreePdCom::FreePdCom(FieldPtr f, int g, int D) : g_(g), D_(D) {
    if (g < 0 || D < 0) throw Error(ErrorKind::InvalidArgs, "negative generator count or degree");
    exps_ = monomials_up_to(g, D);
    if (exps_.size() > 5000) throw Error(ErrorKind::TooLarge, "free divided power algebra too large");
    for (std::size_t i = 0; i < exps_.size(); ++i) index_[exps_[i]] = i;
    std::vector<std::string> labels;
    for (const auto& e : exps_) labels.push_back(monomial_label(e, true));
    const int p = f->p();
    const Field& F = *f;
    static_cast<CommAlgebra&>(alg_) = make_comm_algebra(f, labels, [&](std::size_t i, std::size_t j) {
        Vec out = zero_vec(F, exps_.size());
        std::vector<int> e(g);
        long long c = 1;
        for (int t = 0; t < g; ++t) {
            e[t] = exps_[i][t] + exps_[j][t];
            c = c * lucas_binomial(e[t], exps_[i][t], p) % p;
        }
        auto it = index_.find(e);
        if (c != 0 && it != index_.end()) out[it->second] = F.from_int(c);
        return out;
    });
    for (std::size_t m = 0; m < exps_.size(); ++m) alg_.pi.push_back(gamma_monomial(p, m));
}

std::optional<std::size_t> FreePdCom::index(const std::vector<int>& e) const {
    auto it = index_.find(e);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Vec FreePdCom::generator(int i) const {
    std::vector<int> e(g_, 0);
    e.at(i) = 1;
    auto k = index(e);
    if (!k) return alg_.zero();
    return alg_.basis(*k);
}

Vec FreePdCom::gamma_monomial(int n, std::size_t m) const {
    if (n < 1) throw Error(ErrorKind::InvalidArgs, "gamma_n needs n >= 1");
    const Field& f = alg_.F();
    const int p = f.p();
    const auto& e = exps_.at(m);
    std::vector<int> ne(g_);
    int last = -1;
    for (int i = 0; i < g_; ++i) {
        ne[i] = n * e[i];
        if (e[i] > 0) last = i;
    }
    Vec out = alg_.zero();
    auto k = index(ne);
    if (!k) return out;
    long long c = 1;
    for (int i = 0; i < g_ && c; ++i) {
        if (e[i] == 0) continue;
        for (int t = 1; t <= n && c; ++t)
            c = c * (i == last ? lucas_binomial(t * e[i] - 1, e[i] - 1, p) : lucas_binomial(t * e[i], e[i], p)) % p;
    }
    out[*k] = f.from_int(c);
    return out;
}

Vec FreePdCom::gamma(int n, const Vec& v) const {
    if (n < 1) throw Error(ErrorKind::InvalidArgs, "gamma_n needs n >= 1");
    if (v.size() != alg_.dim) throw Error(ErrorKind::DimensionMismatch, "gamma input size");
    const Field& f = alg_.F();
    // truncated series prod_m sum_j c^j gamma_j(m) t^j; S[k] = (scalar part, A+ part)
    std::vector<Fe> s0(n + 1, f.zero());
    std::vector<Vec> s(n + 1, alg_.zero());
    s0[0] = f.one();
    for (std::size_t m = 0; m < alg_.dim; ++m) {
        if (v[m].is_zero()) continue;
        std::vector<std::pair<std::size_t, Fe>> terms(n + 1, {0, f.zero()});  // c^j gamma_j(m) as one monomial
        for (int j = 1; j <= n; ++j) {
            const Vec gj = gamma_monomial(j, m);
            for (std::size_t k = 0; k < gj.size(); ++k)
                if (!gj[k].is_zero()) terms[j] = {k, gj[k] * v[m].pow(j)};
        }
        for (int k = n; k >= 1; --k) {
            for (int j = 1; j <= k; ++j) {
                const auto [idx, c] = terms[j];
                if (c.is_zero()) continue;
                // S[k-j] * (c e_idx)
                if (!s0[k - j].is_zero()) s[k][idx] += s0[k - j] * c;
                const Vec& a = s[k - j];
                for (std::size_t i = 0; i < alg_.dim; ++i)
                    if (!a[i].is_zero()) axpy_sparse(s[k], a[i] * c, alg_.mult[i * alg_.dim + idx]);
            }
        }
    }
    return s[n];
}

std::vector<RelationReport> check_pd_axioms(const FreePdCom& P, int random_trials, std::uint64_t seed) {
    const PdComAlgebra& A = P.algebra();
    const Field& f = A.F();
    const int D = P.D();
    const int p = f.p();
    std::mt19937_64 rng(seed);
    Checker c1("PDeq1"), c2("PDeq2"), c3("PDeq3"), c4("PDeq4"), c5("PDeq5");
    std::vector<Vec> samples;
    for (std::size_t i = 0; i < A.dim; ++i) samples.push_back(A.basis(i));
    for (int t = 0; t < random_trials; ++t) samples.push_back(random_vec(f, A.dim, rng));
    // gammas[s][n] for n = 1..D; gammas[s][0] unused
    auto all_gammas = [&](const Vec& a) {
        std::vector<Vec> g(D + 1);
        for (int n = 1; n <= D; ++n) g[n] = P.gamma(n, a);
        return g;
    };
    std::vector<std::vector<Vec>> gam;
    for (const auto& a : samples) gam.push_back(all_gammas(a));
    for (std::size_t s = 0; s < samples.size(); ++s) {
        const Vec& a = samples[s];
        const auto& g = gam[s];
        auto who = [&] { return "a=" + A.describe(a); };
        if (D >= 1) c1.check(g[1] == a, who, !is_zero(a));
        for (int i = 1; i <= D; ++i)
            for (int j = 1; i + j <= D; ++j) {
                const Vec lhs = A.mul(g[i], g[j]);
                const Vec rhs = scale(f.from_int(lucas_binomial(i + j, i, p)), g[i + j]);
                c4.check(lhs == rhs, [&] { return who() + " i=" + std::to_string(i) + " j=" + std::to_string(j); },
                         !is_zero(lhs) || !is_zero(rhs));
            }
        for (int i = 1; i <= D; ++i)
            for (int j = 1; i * j <= D; ++j) {
                const Vec lhs = P.gamma(i, g[j]);
                const Vec rhs = scale(f.from_int(gamma_comp_coefficient(i, j, p)), g[i * j]);
                c5.check(lhs == rhs, [&] { return who() + " i=" + std::to_string(i) + " j=" + std::to_string(j); },
                         !is_zero(lhs) || !is_zero(rhs));
            }
    }
    auto pair = [&](std::size_t sa, std::size_t sb) {
        const Vec& a = samples[sa];
        const Vec& b = samples[sb];
        const auto gs = all_gammas(add(a, b));
        const Vec ab = A.mul(a, b);
        const auto gab = all_gammas(ab);
        Vec apow = a;
        for (int i = 1; i <= D; ++i) {
            // corrected form: gamma_i(a) + gamma_i(b) + sum_{0<k<i} gamma_k(a) gamma_{i-k}(b)
            Vec rhs = add(gam[sa][i], gam[sb][i]);
            for (int k = 1; k < i; ++k) rhs = add(rhs, A.mul(gam[sa][k], gam[sb][i - k]));
            c2.check(gs[i] == rhs, [&] { return "a=" + A.describe(a) + " b=" + A.describe(b) + " i=" + std::to_string(i); },
                     !is_zero(rhs));
            const Vec r3 = A.mul(apow, gam[sb][i]);
            c3.check(gab[i] == r3, [&] { return "a=" + A.describe(a) + " b=" + A.describe(b) + " i=" + std::to_string(i); },
                     !is_zero(r3));
            apow = A.mul(apow, a);
        }
    };
    const std::size_t nb = A.dim;
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j) pair(i, j);
    for (int t = 0; t < random_trials; ++t) pair(nb + rng() % random_trials, nb + rng() % random_trials);
    return {c1.report(), c2.report(), c3.report(), c4.report(), c5.report()};
}

CommAlgebra monomial_algebra(FieldPtr f, int g, const std::vector<std::vector<int>>& relations, int D) {
    for (const auto& r : relations)
        if (static_cast<int>(r.size()) != g) throw Error(ErrorKind::ShapeMismatch, "relation exponent length");
    auto divisible = [&](const std::vector<int>& e) {
        for (const auto& r : relations) {
            bool div = true;
            for (int i = 0; i < g; ++i) div = div && e[i] >= r[i];
            if (div) return true;
        }
        return false;
    };
    std::vector<std::vector<int>> exps;
    for (const auto& e : monomials_up_to(g, D))
        if (!divisible(e)) exps.push_back(e);
    std::map<std::vector<int>, std::size_t> index;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < exps.size(); ++i) {
        index[exps[i]] = i;
        labels.push_back(monomial_label(exps[i], false));
    }
    const Field& F = *f;
    return make_comm_algebra(f, labels, [&](std::size_t i, std::size_t j) {
        Vec out = zero_vec(F, exps.size());
        std::vector<int> e(g);
        for (int t = 0; t < g; ++t) e[t] = exps[i][t] + exps[j][t];
        auto it = index.find(e);
        if (it != index.end()) out[it->second] = F.one();
        return out;
    });
}

PdEnvelope pd_envelope(FieldPtr f, int g, const std::vector<Polynomial>& relations, int D) {
    const Field& F = *f;
    const int p = F.p();
    std::vector<std::vector<int>> rel_exps;
    for (const auto& poly : relations) {
        std::vector<const std::pair<Fe, std::vector<int>>*> live;
        for (const auto& term : poly)
            if (!term.first.is_zero()) live.push_back(&term);
        if (live.size() > 1) throw Error(ErrorKind::UnsupportedPresentation, "only monomial relations are supported");
        if (live.empty()) continue;
        if (static_cast<int>(live[0]->second.size()) != g)
            throw Error(ErrorKind::ShapeMismatch, "relation exponent length");
        rel_exps.push_back(live[0]->second);
    }
    FreePdCom free(f, g, D);
    const auto& A = free.algebra();
    auto ordinary = [&](const std::vector<int>& e) {
        // x^e = prod e_i! x^(e)
        Vec v = A.zero();
        auto k = free.index(e);
        if (!k) return v;
        long long c = 1;
        for (int t : e) c = c * factorial_mod(t, p) % p;
        v[*k] = F.from_int(c);
        return v;
    };
    Subspace J(F, A.dim);
    std::vector<Vec> queue;
    for (const auto& e : rel_exps) {
        const Vec r = ordinary(e);
        if (is_zero(r)) continue;
        for (int n = 1; n <= D; ++n) queue.push_back(free.gamma(n, r));
    }
    while (!queue.empty()) {
        Vec v = std::move(queue.back());
        queue.pop_back();
        if (is_zero(v) || !J.add(v)) continue;
        for (std::size_t m = 0; m < A.dim; ++m) queue.push_back(A.mul(v, A.basis(m)));
        for (int n = 2; n <= D; ++n) queue.push_back(free.gamma(n, v));
    }
    const auto keep = J.complement();
    auto project = [&](const Vec& v) {
        const Vec r = J.reduce(v);
        Vec out = zero_vec(F, keep.size());
        for (std::size_t k = 0; k < keep.size(); ++k) out[k] = r[keep[k]];
        return out;
    };
    PdEnvelope env;
    std::vector<std::string> labels;
    for (auto k : keep) {
        labels.push_back(A.labels[k]);
        env.envelope_exponents.push_back(free.exponents()[k]);
    }
    static_cast<CommAlgebra&>(env.algebra) = make_comm_algebra(
        f, labels, [&](std::size_t i, std::size_t j) { return project(A.mul(A.basis(keep[i]), A.basis(keep[j]))); });
    for (auto k : keep) env.algebra.pi.push_back(project(A.pi[k]));
    env.source = monomial_algebra(f, g, rel_exps, D);
    for (const auto& e : monomials_up_to(g, D)) {
        bool div = false;
        for (const auto& r : rel_exps) {
            bool d = true;
            for (int i = 0; i < g; ++i) d = d && e[i] >= r[i];
            div = div || d;
        }
        if (!div) env.source_exponents.push_back(e);
    }
    env.eta = Matrix(F, keep.size(), env.source.dim);
    for (std::size_t j = 0; j < env.source.dim; ++j) env.eta.set_col(j, project(ordinary(env.source_exponents[j])));
    return env;
}

}  // namespace dpalg

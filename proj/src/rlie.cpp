#include "dpalg/rlie.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace dpalg {

Vec LieAlgebra::br(const Vec& a, const Vec& b) const {
    Vec out = zero();
    for (std::size_t i = 0; i < dim; ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < dim; ++j)
            if (!b[j].is_zero()) axpy(out, a[i] * b[j], bracket[i * dim + j]);
    }
    return out;
}

Matrix LieAlgebra::ad(const Vec& v) const {
    Matrix m(*field, dim, dim);
    for (std::size_t j = 0; j < dim; ++j) m.set_col(j, br(basis(j), v));
    return m;
}

std::string LieAlgebra::describe(const Vec& v) const {
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

std::vector<RelationReport> check_lie(const LieAlgebra& L) {
    Checker alt("alternating"), anti("antisymmetric"), jac("Jacobi");
    const std::size_t d = L.dim;
    for (std::size_t i = 0; i < d; ++i) {
        alt.check(is_zero(L.bracket[i * d + i]), [&] { return "[" + L.labels[i] + "," + L.labels[i] + "]"; });
        for (std::size_t j = 0; j < d; ++j)
            anti.check(add(L.bracket[i * d + j], L.bracket[j * d + i]) == L.zero(),
                       [&] { return L.labels[i] + "," + L.labels[j]; }, !is_zero(L.bracket[i * d + j]));
    }
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) {
                const Vec a = L.basis(i), b = L.basis(j), c = L.basis(k);
                const Vec s = add(add(L.br(a, L.br(b, c)), L.br(b, L.br(c, a))), L.br(c, L.br(a, b)));
                jac.check(is_zero(s), [&] { return L.labels[i] + "," + L.labels[j] + "," + L.labels[k]; },
                          !is_zero(L.br(a, L.br(b, c))));
            }
    return {alt.report(), anti.report(), jac.report()};
}

Vec s_i(const LieAlgebra& L, const Vec& l, const Vec& l2, int i) {
    const int p = L.F().p();
    if (i < 1 || i > p - 1) throw Error(ErrorKind::InvalidArgs, "s_i needs 1 <= i <= p-1");
    // poly[k] is the coefficient of lambda^k
    std::vector<Vec> poly{l};
    for (int step = 0; step < p - 1; ++step) {
        std::vector<Vec> next(poly.size() + 1, L.zero());
        for (std::size_t k = 0; k < poly.size(); ++k) {
            next[k] = add(next[k], L.br(poly[k], l2));
            next[k + 1] = add(next[k + 1], L.br(poly[k], l));
        }
        poly = std::move(next);
    }
    return scale(L.F().from_int(i).inv(), poly[i - 1]);
}

Vec pmap_extend(const RestrictedLie& L, const Vec& v, const std::vector<std::size_t>* order) {
    if (v.size() != L.dim) throw Error(ErrorKind::DimensionMismatch, "pmap_extend input size");
    const int p = L.F().p();
    std::vector<std::size_t> idx(L.dim);
    std::iota(idx.begin(), idx.end(), 0);
    if (order) idx = *order;
    Vec rest = L.zero(), p_rest = L.zero();
    for (auto it = idx.rbegin(); it != idx.rend(); ++it) {
        const std::size_t i = *it;
        if (v[i].is_zero()) continue;
        const Vec a = scale(v[i], L.basis(i));
        Vec next = add(scale(v[i].pow(p), L.pmap[i]), p_rest);
        if (!is_zero(rest))
            for (int k = 1; k < p; ++k) next = add(next, s_i(L, a, rest, k));
        p_rest = std::move(next);
        rest = add(a, rest);
    }
    return p_rest;
}

namespace {

Matrix mat_pow(const Matrix& m, int e) {
    Matrix r = Matrix::identity(*m.field, m.rows);
    for (int t = 0; t < e; ++t) r = r * m;
    return r;
}

}  // namespace

std::vector<RelationReport> check_rlie(const RestrictedLie& L, int trials, std::uint64_t seed) {
    const Field& f = L.F();
    const int p = f.p();
    const std::size_t d = L.dim;
    std::mt19937_64 rng(seed);
    auto reps = check_lie(L);
    Checker r1("RLeq1"), r2("RLeq2"), r2r("RLeq2-random"), r3("RLeq3"), ord("pmap-order");
    for (std::size_t i = 0; i < d; ++i) {
        const Matrix lhs = L.ad(L.pmap[i]), rhs = mat_pow(L.ad(L.basis(i)), p);
        r2.check(lhs == rhs, [&] { return "basis " + L.labels[i]; }, !rhs.is_zero());
    }
    std::vector<Vec> samples;
    for (std::size_t i = 0; i < d; ++i) samples.push_back(L.basis(i));
    for (int t = 0; t < trials && d > 0; ++t) samples.push_back(random_vec(f, d, rng));
    for (std::size_t s = 0; s < samples.size(); ++s) {
        const Vec& v = samples[s];
        const Fe lam = random_fe(f, rng);
        const Vec lhs = pmap_extend(L, scale(lam, v)), rhs = scale(lam.pow(p), pmap_extend(L, v));
        r1.check(lhs == rhs, [&] { return L.describe(v) + " lambda=" + to_string(lam); }, !is_zero(rhs));
        if (s >= d && s < d + 20) {
            const Matrix a = L.ad(pmap_extend(L, v)), b = mat_pow(L.ad(v), p);
            r2r.check(a == b, [&] { return L.describe(v); }, !b.is_zero());
        }
        std::vector<std::size_t> perm(d);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        const Vec p0 = pmap_extend(L, v), p1 = pmap_extend(L, v, &perm);
        ord.check(p0 == p1, [&] { return L.describe(v); }, !is_zero(p0));
    }
    auto pair = [&](const Vec& a, const Vec& b) {
        Vec rhs = add(pmap_extend(L, a), pmap_extend(L, b));
        for (int i = 1; i < p; ++i) rhs = add(rhs, s_i(L, a, b, i));
        const Vec lhs = pmap_extend(L, add(a, b));
        r3.check(lhs == rhs, [&] { return "l=" + L.describe(a) + " l'=" + L.describe(b); }, !is_zero(lhs));
    };
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) pair(L.basis(i), L.basis(j));
    for (int t = 0; t < trials && d > 0; ++t) pair(random_vec(f, d, rng), random_vec(f, d, rng));
    for (const auto& c : {r1, r2, r2r, r3, ord}) reps.push_back(c.report());
    return reps;
}

namespace {

RestrictedLie make_lie(FieldPtr f, std::vector<std::string> labels) {
    RestrictedLie L;
    L.field = f;
    L.dim = labels.size();
    L.labels = std::move(labels);
    L.bracket.assign(L.dim * L.dim, zero_vec(*f, L.dim));
    L.pmap.assign(L.dim, zero_vec(*f, L.dim));
    return L;
}

void set_bracket(RestrictedLie& L, std::size_t i, std::size_t j, const Vec& v) {
    L.bracket[i * L.dim + j] = v;
    L.bracket[j * L.dim + i] = scale(L.F().from_int(-1), v);
}

}  // namespace

RestrictedLie sl2(FieldPtr f) {
    if (f->p() < 3) throw Error(ErrorKind::BadCharacteristic, "sl2 needs p >= 3");
    auto L = make_lie(f, {"e", "h", "f"});
    const Field& F = *f;
    set_bracket(L, 0, 2, L.basis(1));
    set_bracket(L, 1, 0, scale(F.from_int(2), L.basis(0)));
    set_bracket(L, 1, 2, scale(F.from_int(-2), L.basis(2)));
    L.pmap[1] = L.basis(1);
    return L;
}

RestrictedLie heisenberg(FieldPtr f) {
    auto L = make_lie(f, {"x", "y", "z"});
    set_bracket(L, 0, 1, L.basis(2));
    return L;
}

RestrictedLie abelian(FieldPtr f, std::size_t dim, std::vector<Vec> pvals) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < dim; ++i) labels.push_back(dim == 1 ? "e" : "e" + std::to_string(i + 1));
    auto L = make_lie(f, labels);
    if (pvals.size() > dim) throw Error(ErrorKind::ShapeMismatch, "too many p-map values");
    for (std::size_t i = 0; i < pvals.size(); ++i) {
        if (pvals[i].size() != dim) throw Error(ErrorKind::DimensionMismatch, "p-map value size");
        L.pmap[i] = pvals[i];
    }
    return L;
}

Matrix RestrictedModule::act(const LieAlgebra& L, const Vec& l) const {
    Matrix m(L.F(), dim, dim);
    for (std::size_t i = 0; i < L.dim; ++i)
        if (!l[i].is_zero()) m = m + action[i].scaled(l[i]);
    return m;
}

RestrictedModule trivial_module(const LieAlgebra& L, std::size_t dim, std::optional<SemilinearMap> f) {
    RestrictedModule M;
    M.dim = dim;
    M.action.assign(L.dim, Matrix(L.F(), dim, dim));
    M.f = std::move(f);
    return M;
}

RestrictedModule adjoint_module(const LieAlgebra& L) {
    // l . m = [l, m]
    RestrictedModule M;
    M.dim = L.dim;
    for (std::size_t i = 0; i < L.dim; ++i) {
        Matrix a(L.F(), L.dim, L.dim);
        for (std::size_t j = 0; j < L.dim; ++j) a.set_col(j, L.br(L.basis(i), L.basis(j)));
        M.action.push_back(std::move(a));
    }
    return M;
}

std::vector<RelationReport> check_restricted_module(const RestrictedLie& L, const RestrictedModule& M, int trials,
                                                    std::uint64_t seed) {
    const Field& F = L.F();
    const int p = F.p();
    std::mt19937_64 rng(seed);
    Checker law("module-law"), restricted("restricted"), semi("f-semilinear"), inv("f-invariant");
    if (M.action.size() != L.dim) throw Error(ErrorKind::ShapeMismatch, "one action matrix per basis element");
    for (std::size_t i = 0; i < L.dim; ++i)
        for (std::size_t j = 0; j < L.dim; ++j) {
            const Matrix lhs = M.act(L, L.bracket[i * L.dim + j]);
            const Matrix rhs = M.action[i] * M.action[j] - M.action[j] * M.action[i];
            law.check(lhs == rhs, [&] { return L.labels[i] + "," + L.labels[j]; }, !rhs.is_zero());
        }
    std::vector<Vec> samples;
    for (std::size_t i = 0; i < L.dim; ++i) samples.push_back(L.basis(i));
    for (int t = 0; t < trials && L.dim > 0; ++t) samples.push_back(random_vec(F, L.dim, rng));
    for (const auto& v : samples) {
        const Matrix lhs = M.act(L, pmap_extend(L, v)), rhs = mat_pow(M.act(L, v), p);
        restricted.check(lhs == rhs, [&] { return L.describe(v); }, !rhs.is_zero());
    }
    if (M.f) {
        const SemilinearMap& f = *M.f;
        semi.check(f.frobenius_power == 1 && f.matrix.rows == M.dim && f.matrix.cols == M.dim,
                   [] { return std::string("f must be a square matrix with Frobenius power 1"); });
        for (int t = 0; t < trials && M.dim > 0; ++t) {
            const Vec m = random_vec(F, M.dim, rng);
            const Fe lam = random_fe(F, rng);
            semi.check(f.apply(scale(lam, m)) == scale(lam.pow(p), f.apply(m)), [&] { return to_string(m); });
        }
        for (std::size_t i = 0; i < L.dim; ++i) {
            const Matrix composite = M.action[i] * f.matrix;
            inv.check(composite.is_zero(), [&] { return L.labels[i] + " does not kill the image of f"; },
                      !f.matrix.is_zero());
        }
    }
    return {law.report(), restricted.report(), semi.report(), inv.report()};
}

}  // namespace dpalg

namespace dpalg {

PEnvelope p_envelope(const LieAlgebra& L, int N) {
    if (N < 1) throw Error(ErrorKind::TruncationTooSmall, "p-envelope needs N >= 1");
    const Field& F = L.F();
    const int p = F.p();
    const std::size_t n = L.dim;
    if (n * static_cast<std::size_t>(N + 1) > 2000) throw Error(ErrorKind::TooLarge, "p-envelope above 2000 dimensions");
    // left adjoint x -> [e_i, x], and its p^k-th powers for k <= N + 1
    std::vector<std::vector<Matrix>> adpow(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Matrix a = L.ad(L.basis(i)).scaled(F.from_int(-1));
        adpow[i].push_back(a);
        for (int k = 1; k <= N + 1; ++k) adpow[i].push_back(mat_pow(adpow[i].back(), p));
        if (!adpow[i][N + 1].is_zero())
            throw Error(ErrorKind::TruncationTooSmall,
                        "ad(" + L.labels[i] + ")^(p^(N+1)) != 0; dropped p-powers would not be central");
    }
    PEnvelope out;
    RestrictedLie& H = out.hat;
    H.field = L.field;
    H.dim = n * (N + 1);
    out.power_index.assign(N + 1, std::vector<std::size_t>(n));
    for (int k = 0; k <= N; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            out.power_index[k][i] = k * n + i;
            int e = 1;
            for (int t = 0; t < k; ++t) e *= p;
            H.labels.push_back(k == 0 ? L.labels[i] : L.labels[i] + "^" + std::to_string(e));
        }
    auto embed = [&](const Vec& v) {
        Vec w = zero_vec(F, H.dim);
        for (std::size_t i = 0; i < n; ++i) w[i] = v[i];
        return w;
    };
    // [a^(p^k), b^(p^l)] = ad(b)^(p^l - 1) (ad(a)^(p^k) b), always inside L
    H.bracket.assign(H.dim * H.dim, zero_vec(F, H.dim));
    for (int k = 0; k <= N; ++k)
        for (int l = 0; l <= N; ++l)
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) {
                    Vec v = adpow[a][k].apply(L.basis(b));
                    if (l > 0) {
                        int e = 1;
                        for (int t = 0; t < l; ++t) e *= p;
                        v = mat_pow(adpow[b][0], e - 1).apply(v);
                    }
                    H.bracket[(k * n + a) * H.dim + (l * n + b)] = embed(v);
                }
    for (int k = 0; k <= N; ++k)
        for (std::size_t i = 0; i < n; ++i)
            H.pmap.push_back(k < N ? unit_vec(F, H.dim, (k + 1) * n + i) : zero_vec(F, H.dim));
    out.eta = Matrix(F, H.dim, n);
    for (std::size_t i = 0; i < n; ++i) out.eta(i, i) = F.one();
    return out;
}

}  // namespace dpalg

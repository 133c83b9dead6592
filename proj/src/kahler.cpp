#include "dpalg/kahler.hpp"

#include <map>

#include "dpalg/error.hpp"

namespace dpalg {

namespace {

// r x n matrix with a in the columns of slot i (slots of the given width)
Matrix place(const Matrix& a, std::size_t slot, std::size_t n) {
    Matrix m(*a.field, a.rows, n);
    for (std::size_t r = 0; r < a.rows; ++r)
        for (std::size_t c = 0; c < a.cols; ++c) m(r, slot * a.cols + c) = a(r, c);
    return m;
}

// X -> X v for X stored column by column (width = rows of X)
Matrix combo(const Field& F, const Vec& v, std::size_t width, std::size_t n) {
    Matrix m(F, width, n);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero())
            for (std::size_t r = 0; r < width; ++r) m(r, i * width + r) = v[i];
    return m;
}

Matrix element_action(const Field& F, std::size_t dim, const std::vector<Matrix>& action, const Vec& x) {
    Matrix m(F, dim, dim);
    for (std::size_t k = 0; k < x.size(); ++k)
        if (!x[k].is_zero()) m = m + action[k].scaled(x[k]);
    return m;
}

Matrix mat_pow(const Matrix& a, int e) {
    Matrix m = Matrix::identity(*a.field, a.rows);
    for (int i = 0; i < e; ++i) m = m * a;
    return m;
}

DerivationSpace solve(const Field& F, const std::vector<SemilinearEquation>& eqs, std::size_t width, std::size_t n) {
    DerivationSpace out;
    if (n == 0) return out;
    std::vector<SemilinearEquation> all = eqs;
    if (all.empty()) all.push_back({{SemilinearMap{Matrix(F, 1, n), 0}}});
    const FpKernel k = semilinear_kernel(all, n, F);
    out.dim = k.dim;
    for (const auto& v : k.basis) {
        Matrix m(F, width, n / width);
        for (std::size_t c = 0; c < n / width; ++c)
            for (std::size_t r = 0; r < width; ++r) m(r, c) = v[c * width + r];
        out.basis.push_back(std::move(m));
    }
    return out;
}

Vec power_in(const CommAlgebra& A, const Vec& a, int e) { return e == 1 ? a : A.power(a, e); }

Vec ring_power(const FinRing& R, const Vec& x, int e) {
    Vec out = R.one();
    for (int i = 0; i < e; ++i) out = R.mul(out, x);
    return out;
}

// element of A+ inside V(A) or F + A+ (f-degree 0)
Vec aug_el(const FinRing& R, const Vec& a) {
    Vec v = R.zero();
    for (std::size_t k = 0; k < a.size(); ++k) v[1 + k] = a[k];
    return v;
}

// element of L inside a ring whose first dim L generators are the basis of L
Vec lie_el(const FinRing& R, const Vec& l) {
    Vec v = R.zero();
    for (std::size_t k = 0; k < l.size(); ++k) v[R.gens[k]] += l[k];
    return v;
}

// d(v) = sum v_k dg_k in the free module
Vec d_of(const PresentedModule& P, const Vec& v) {
    Vec out = zero_vec(P.ring.F(), P.free_dim());
    for (std::size_t k = 0; k < v.size(); ++k) out[k * P.ring.dim + P.ring.unit] = v[k];
    return out;
}

void push_nonzero(std::vector<Vec>& rels, Vec v) {
    if (!is_zero(v)) rels.push_back(std::move(v));
}

Subspace relation_span(const PresentedModule& P) {
    Subspace rel(P.ring.F(), P.free_dim());
    for (const auto& r : P.relations)
        for (std::size_t t = 0; t < P.ring.dim; ++t) rel.add(P.act(P.ring.basis(t), r));
    return rel;
}

}  // namespace

Vec PresentedModule::times(const Vec& x, std::size_t i) const {
    Vec v = zero_vec(ring.F(), free_dim());
    for (std::size_t r = 0; r < ring.dim; ++r) v[i * ring.dim + r] = x[r];
    return v;
}

Vec PresentedModule::act(const Vec& x, const Vec& v) const {
    const Field& F = ring.F();
    Vec out = zero_vec(F, free_dim());
    for (std::size_t r = 0; r < ring.dim; ++r) {
        if (x[r].is_zero()) continue;
        for (std::size_t i = 0; i < generators.size(); ++i)
            for (std::size_t s = 0; s < ring.dim; ++s) {
                const Fe c = v[i * ring.dim + s];
                if (c.is_zero()) continue;
                const Fe coeff = x[r] * c.frob(ring.twist[r]);
                for (const auto& [k, e] : ring.table[r * ring.dim + s]) out[i * ring.dim + k] += coeff * e;
            }
    }
    return out;
}

PresentedQuotient quotient(const PresentedModule& P) {
    const Field& F = P.ring.F();
    Subspace rel = relation_span(P);
    const auto q = rel.complement();
    auto coords = [&](const Vec& v) {
        const Vec red = rel.reduce(v);
        Vec c = zero_vec(F, q.size());
        for (std::size_t i = 0; i < q.size(); ++i) c[i] = red[q[i]];
        return c;
    };
    PresentedQuotient out{RingModule{}, Matrix(F, q.size(), P.free_dim()), rel};
    out.module.dim = q.size();
    for (std::size_t j = 0; j < P.free_dim(); ++j) out.classes.set_col(j, coords(unit_vec(F, P.free_dim(), j)));
    for (std::size_t t = 0; t < P.ring.dim; ++t) {
        Matrix act(F, q.size(), q.size());
        for (std::size_t c = 0; c < q.size(); ++c)
            act.set_col(c, coords(P.act(P.ring.basis(t), unit_vec(F, P.free_dim(), q[c]))));
        out.module.action.push_back(std::move(act));
    }
    return out;
}

Fe wilson_coefficient(const Field& F) { return F.from_int(-1); }

PresentedModule omega_com(const PdComAlgebra& A, int N) {
    PresentedModule P;
    P.ring = v_of(A, N);
    for (const auto& l : A.labels) P.generators.push_back("d" + l);
    const Field& F = A.F();
    const int p = F.p();
    for (std::size_t i = 0; i < A.dim; ++i)
        for (std::size_t j = i; j < A.dim; ++j) {
            Vec r = d_of(P, A.mul(A.basis(i), A.basis(j)));
            r = sub(r, P.times(aug_el(P.ring, A.basis(i)), j));
            r = sub(r, P.times(aug_el(P.ring, A.basis(j)), i));
            push_nonzero(P.relations, r);
        }
    if (N >= 1) {
        const Vec f = P.ring.basis(P.ring.gens.at(A.dim));
        const Fe kappa = wilson_coefficient(F);
        for (std::size_t i = 0; i < A.dim; ++i) {
            Vec r = d_of(P, A.pi[i]);
            r = sub(r, P.times(f, i));
            r = sub(r, scale(kappa, P.times(aug_el(P.ring, power_in(A, A.basis(i), p - 1)), i)));
            push_nonzero(P.relations, r);
        }
    }
    return P;
}

PresentedModule omega_rlie(const RestrictedLie& L, int N) {
    PresentedModule P;
    P.ring = w_of(L, N);
    for (const auto& l : L.labels) P.generators.push_back("d" + l);
    const int p = L.F().p();
    for (std::size_t i = 0; i < L.dim; ++i)
        for (std::size_t j = i + 1; j < L.dim; ++j) {
            Vec r = d_of(P, L.bracket[i * L.dim + j]);
            r = sub(r, P.times(lie_el(P.ring, L.basis(i)), j));
            r = add(r, P.times(lie_el(P.ring, L.basis(j)), i));
            push_nonzero(P.relations, r);
        }
    if (N >= 1) {
        const Vec f = P.ring.basis(P.ring.gens.at(L.dim));
        for (std::size_t i = 0; i < L.dim; ++i) {
            Vec r = d_of(P, L.pmap[i]);
            r = sub(r, P.times(f, i));
            r = sub(r, P.times(ring_power(P.ring, lie_el(P.ring, L.basis(i)), p - 1), i));
            push_nonzero(P.relations, r);
        }
    }
    return P;
}

PresentedModule omega_plain_com(const CommAlgebra& A) {
    PresentedModule P;
    P.ring = augmented_ring(A);
    for (const auto& l : A.labels) P.generators.push_back("d" + l);
    for (std::size_t i = 0; i < A.dim; ++i)
        for (std::size_t j = i; j < A.dim; ++j) {
            Vec r = d_of(P, A.mul(A.basis(i), A.basis(j)));
            r = sub(r, P.times(aug_el(P.ring, A.basis(i)), j));
            r = sub(r, P.times(aug_el(P.ring, A.basis(j)), i));
            push_nonzero(P.relations, r);
        }
    return P;
}

PresentedModule omega_plain_lie(const LieAlgebra& L, int D) {
    PresentedModule P;
    P.ring = U_of(L, D);
    for (const auto& l : L.labels) P.generators.push_back("d" + l);
    for (std::size_t i = 0; i < L.dim; ++i)
        for (std::size_t j = i + 1; j < L.dim; ++j) {
            Vec r = d_of(P, L.bracket[i * L.dim + j]);
            r = sub(r, P.times(lie_el(P.ring, L.basis(i)), j));
            r = add(r, P.times(lie_el(P.ring, L.basis(j)), i));
            push_nonzero(P.relations, r);
        }
    return P;
}

DerivationSpace derivations_com(const PdComAlgebra& A, const BeckModuleCom& M) {
    const Field& F = A.F();
    const std::size_t dm = M.dim, n = dm * A.dim;
    const int p = F.p();
    std::vector<SemilinearEquation> eqs;
    for (std::size_t i = 0; i < A.dim; ++i)
        for (std::size_t j = i; j < A.dim; ++j) {
            // X(e_i e_j) - A_i X e_j - A_j X e_i
            const Matrix lin = combo(F, A.mul(A.basis(i), A.basis(j)), dm, n) - place(M.action[i], j, n) -
                               place(M.action[j], i, n);
            eqs.push_back({{SemilinearMap{lin, 0}}});
        }
    const Fe kappa = wilson_coefficient(F);
    for (std::size_t i = 0; i < A.dim; ++i) {
        // X pi(e_i) - kappa e_i^(p-1) X e_i - P Frob(X e_i)
        const Matrix power = element_action(F, dm, M.action, power_in(A, A.basis(i), p - 1));
        const Matrix lin = combo(F, A.pi[i], dm, n) - place(power.scaled(kappa), i, n);
        const Matrix semi = place(M.pi.matrix.scaled(F.from_int(-1)), i, n);
        eqs.push_back({{SemilinearMap{lin, 0}, SemilinearMap{semi, M.pi.frobenius_power}}});
    }
    return solve(F, eqs, dm, n);
}

DerivationSpace derivations_rlie(const RestrictedLie& L, const BeckModuleLie& M) {
    if (!M.module.f) throw Error(ErrorKind::InvalidArgs, "Beck module needs f");
    const Field& F = L.F();
    const std::size_t dm = M.module.dim, n = dm * L.dim;
    const int p = F.p();
    const auto& rho = M.module.action;
    std::vector<SemilinearEquation> eqs;
    for (std::size_t i = 0; i < L.dim; ++i)
        for (std::size_t j = i + 1; j < L.dim; ++j) {
            const Matrix lin =
                combo(F, L.bracket[i * L.dim + j], dm, n) - place(rho[i], j, n) + place(rho[j], i, n);
            eqs.push_back({{SemilinearMap{lin, 0}}});
        }
    for (std::size_t i = 0; i < L.dim; ++i) {
        const Matrix lin = combo(F, L.pmap[i], dm, n) - place(mat_pow(rho[i], p - 1), i, n);
        const Matrix semi = place(M.module.f->matrix.scaled(F.from_int(-1)), i, n);
        eqs.push_back({{SemilinearMap{lin, 0}, SemilinearMap{semi, M.module.f->frobenius_power}}});
    }
    return solve(F, eqs, dm, n);
}

std::vector<RelationReport> check_bimodule(const FinRing& R, const Bimodule& M) {
    const Field& F = R.F();
    Checker unit("unit"), left("left-module"), right("right-module"), commute("sides-commute");
    const Matrix I = Matrix::identity(F, M.dim);
    unit.check(M.left[R.unit] == I && M.right[R.unit] == I, [] { return std::string("unit does not act as 1"); });
    for (std::size_t a = 0; a < R.dim; ++a)
        for (std::size_t b = 0; b < R.dim; ++b) {
            const Vec ab = R.mul(R.basis(a), R.basis(b));
            const Matrix l = element_action(F, M.dim, M.left, ab), r = element_action(F, M.dim, M.right, ab);
            left.check(l == M.left[a] * M.left[b], [&] { return R.labels[a] + " * " + R.labels[b]; }, !l.is_zero());
            right.check(r == M.right[b] * M.right[a], [&] { return R.labels[a] + " * " + R.labels[b]; },
                        !r.is_zero());
            commute.check(M.left[a] * M.right[b] == M.right[b] * M.left[a],
                          [&] { return R.labels[a] + ", " + R.labels[b]; });
        }
    return {unit.report(), left.report(), right.report(), commute.report()};
}

Bimodule trivial_bimodule(const FinRing& R) {
    Bimodule M;
    M.dim = 1;
    for (std::size_t t = 0; t < R.dim; ++t) {
        Matrix m(R.F(), 1, 1);
        if (t == R.unit) m(0, 0) = R.F().one();
        M.left.push_back(m);
        M.right.push_back(m);
    }
    return M;
}

Bimodule regular_bimodule(const FinRing& R) {
    Bimodule M;
    M.dim = R.dim;
    for (std::size_t t = 0; t < R.dim; ++t) {
        Matrix l(R.F(), R.dim, R.dim), r(R.F(), R.dim, R.dim);
        for (std::size_t s = 0; s < R.dim; ++s) {
            l.set_col(s, R.mul(R.basis(t), R.basis(s)));
            r.set_col(s, R.mul(R.basis(s), R.basis(t)));
        }
        M.left.push_back(l);
        M.right.push_back(r);
    }
    return M;
}

namespace {

// d(e_t) as a linear function of the generator values: sum over word positions of prefix . d(g) . suffix
std::vector<Matrix> word_derivation_maps(const FinRing& R, const Bimodule& M) {
    for (auto t : R.twist)
        if (t != 0) throw Error(ErrorKind::InvalidArgs, "associative derivations need an untwisted ring");
    const Field& F = R.F();
    const std::size_t dm = M.dim, n = dm * R.gens.size();
    std::vector<Matrix> W;
    for (std::size_t t = 0; t < R.dim; ++t) {
        const auto& word = R.words[t];
        Matrix w(F, dm, n);
        for (std::size_t pos = 0; pos < word.size(); ++pos) {
            Matrix pre = Matrix::identity(F, dm), suf = Matrix::identity(F, dm);
            for (std::size_t q = 0; q < pos; ++q) pre = pre * M.left[R.gens[word[q]]];
            for (std::size_t q = pos + 1; q < word.size(); ++q) suf = M.right[R.gens[word[q]]] * suf;
            w = w + place(pre * suf, word[pos], n);
        }
        W.push_back(std::move(w));
    }
    return W;
}

}  // namespace

DerivationSpace derivations_assoc(const FinRing& R, const Bimodule& M) {
    const Field& F = R.F();
    const std::size_t dm = M.dim, n = dm * R.gens.size();
    const auto W = word_derivation_maps(R, M);
    std::vector<SemilinearEquation> eqs;
    for (std::size_t a = 0; a < R.dim; ++a)
        for (std::size_t b = 0; b < R.dim; ++b) {
            Matrix lin(F, dm, n);
            for (const auto& [k, c] : R.table[a * R.dim + b]) lin = lin + W[k].scaled(c);
            lin = lin - M.left[a] * W[b] - M.right[b] * W[a];
            if (!lin.is_zero()) eqs.push_back({{SemilinearMap{lin, 0}}});
        }
    return solve(F, eqs, dm, n);
}

Matrix extend_assoc_derivation(const FinRing& R, const Bimodule& M, const Matrix& on_gens) {
    const auto W = word_derivation_maps(R, M);
    Vec u;
    for (std::size_t c = 0; c < on_gens.cols; ++c)
        for (std::size_t r = 0; r < on_gens.rows; ++r) u.push_back(on_gens(r, c));
    Matrix X(R.F(), M.dim, R.dim);
    for (std::size_t t = 0; t < R.dim; ++t) X.set_col(t, W[t].apply(u));
    return X;
}

BeckModuleLie commutator_module(const RestrictedLie& L, const FinRing& u, const Bimodule& M) {
    RestrictedModule out;
    out.dim = M.dim;
    for (std::size_t i = 0; i < L.dim; ++i) out.action.push_back(M.left[u.gens[i]] - M.right[u.gens[i]]);
    out.f = SemilinearMap{Matrix(L.F(), M.dim, M.dim), 1};
    return BeckModuleLie{std::move(out)};
}

RelationReport check_derivation_com(const PdComAlgebra& A, const BeckModuleCom& M, const Matrix& X, int trials,
                                    std::uint64_t seed) {
    const Field& F = A.F();
    std::mt19937_64 rng(seed);
    Checker c("derivation-com");
    auto act = [&](const Vec& a) { return element_action(F, M.dim, M.action, a); };
    for (int t = 0; t < trials; ++t) {
        const Vec a = random_vec(F, A.dim, rng), b = random_vec(F, A.dim, rng);
        const Vec lhs = X.apply(A.mul(a, b));
        const Vec rhs = add(act(a).apply(X.apply(b)), act(b).apply(X.apply(a)));
        c.check(lhs == rhs, [&] { return "Leibniz fails at a = " + A.describe(a) + ", b = " + A.describe(b); },
                !is_zero(lhs));
        const Vec xa = X.apply(a);
        const Vec pl = X.apply(pi_extend(A, a));
        const Vec pr = add(M.pi.apply(xa),
                           scale(wilson_coefficient(F), act(power_in(A, a, F.p() - 1)).apply(xa)));
        c.check(pl == pr, [&] { return "pi equation fails at " + A.describe(a); }, !is_zero(pl));
    }
    return c.report();
}

RelationReport check_derivation_rlie(const RestrictedLie& L, const BeckModuleLie& M, const Matrix& X, int trials,
                                     std::uint64_t seed) {
    const Field& F = L.F();
    std::mt19937_64 rng(seed);
    Checker c("derivation-rlie");
    for (int t = 0; t < trials; ++t) {
        const Vec a = random_vec(F, L.dim, rng), b = random_vec(F, L.dim, rng);
        const Matrix ra = M.module.act(L, a), rb = M.module.act(L, b);
        const Vec lhs = X.apply(L.br(a, b));
        const Vec rhs = sub(ra.apply(X.apply(b)), rb.apply(X.apply(a)));
        c.check(lhs == rhs, [&] { return "Leibniz fails at " + L.describe(a) + ", " + L.describe(b); },
                !is_zero(lhs));
        const Vec xa = X.apply(a);
        const Vec pl = X.apply(pmap_extend(L, a));
        const Vec pr = add(mat_pow(ra, F.p() - 1).apply(xa), M.module.f->apply(xa));
        c.check(pl == pr, [&] { return "p-map equation fails at " + L.describe(a); }, !is_zero(pl));
    }
    return c.report();
}

RelationReport check_derivation_assoc(const FinRing& R, const Bimodule& M, const Matrix& X, int trials,
                                      std::uint64_t seed) {
    const Field& F = R.F();
    std::mt19937_64 rng(seed);
    Checker c("derivation-assoc");
    for (int t = 0; t < trials; ++t) {
        const Vec a = random_vec(F, R.dim, rng), b = random_vec(F, R.dim, rng);
        const Vec lhs = X.apply(R.mul(a, b));
        const Vec rhs = add(element_action(F, M.dim, M.left, a).apply(X.apply(b)),
                            element_action(F, M.dim, M.right, b).apply(X.apply(a)));
        c.check(lhs == rhs, [&] { return "Leibniz fails at " + R.describe(a) + ", " + R.describe(b); },
                !is_zero(lhs));
    }
    return c.report();
}

DerivationSpace hom_module(const PresentedModule& P, const RingModule& M) {
    const Field& F = P.ring.F();
    if (M.action.size() != P.ring.dim)
        throw Error(ErrorKind::TruncationMismatch, "module is over a ring of dimension " +
                                                       std::to_string(M.action.size()) + ", presentation over " +
                                                       std::to_string(P.ring.dim));
    const std::size_t dm = M.dim, g = P.generators.size(), n = dm * g;
    std::vector<SemilinearEquation> eqs;
    for (const auto& rel : P.relations) {
        std::map<int, Matrix> terms;
        for (std::size_t i = 0; i < g; ++i)
            for (std::size_t r = 0; r < P.ring.dim; ++r) {
                const Fe c = rel[i * P.ring.dim + r];
                if (c.is_zero()) continue;
                auto it = terms.try_emplace(P.ring.twist[r], F, dm, n).first;
                it->second = it->second + place(M.action[r].scaled(c), i, n);
            }
        SemilinearEquation eq;
        for (auto& [tw, m] : terms) eq.terms.push_back(SemilinearMap{m, tw});
        if (!eq.terms.empty()) eqs.push_back(std::move(eq));
    }
    return solve(F, eqs, dm, n);
}

DerivationSpace hom_ring_modules(const FinRing& R, const RingModule& X, const RingModule& Y) {
    const Field& F = R.F();
    const std::size_t dx = X.dim, dy = Y.dim, n = dx * dy;
    std::vector<SemilinearEquation> eqs;
    for (auto g : R.gens) {
        // T X_g - Y_g Frob^t(T), T stored column by column
        Matrix lin(F, n, n), semi(F, n, n);
        for (std::size_t j = 0; j < dx; ++j)
            for (std::size_t l = 0; l < dx; ++l) {
                const Fe c = X.action[g](l, j);
                if (c.is_zero()) continue;
                for (std::size_t r = 0; r < dy; ++r) lin(j * dy + r, l * dy + r) += c;
            }
        for (std::size_t j = 0; j < dx; ++j)
            for (std::size_t r = 0; r < dy; ++r)
                for (std::size_t s = 0; s < dy; ++s) semi(j * dy + r, j * dy + s) = F.from_int(-1) * Y.action[g](r, s);
        if (R.twist[g] == 0)
            eqs.push_back({{SemilinearMap{lin + semi, 0}}});
        else
            eqs.push_back({{SemilinearMap{lin, 0}, SemilinearMap{semi, R.twist[g]}}});
    }
    return solve(F, eqs, dy, n);
}

Vec universal_derivation(const PresentedQuotient& Q, const PresentedModule& P, const Vec& v) {
    return Q.classes.apply(d_of(P, v));
}

namespace {

Matrix free_map(const PresentedModule& src, const PresentedModule& tgt, const Matrix& theta, const Matrix& gens) {
    const Field& F = src.ring.F();
    Matrix m(F, tgt.free_dim(), src.free_dim());
    for (std::size_t i = 0; i < src.generators.size(); ++i)
        for (std::size_t r = 0; r < src.ring.dim; ++r) {
            // theta(e_r) g(dg_i)
            Vec col = zero_vec(F, tgt.free_dim());
            const Vec th = theta.col(r);
            for (std::size_t k = 0; k < tgt.generators.size(); ++k) {
                const Fe c = gens(k, i);
                if (c.is_zero()) continue;
                for (std::size_t s = 0; s < tgt.ring.dim; ++s)
                    if (!th[s].is_zero()) col[k * tgt.ring.dim + s] += th[s] * c.frob(tgt.ring.twist[s]);
            }
            m.set_col(i * src.ring.dim + r, col);
        }
    return m;
}

Matrix aug_theta(const FinRing& aug, const FinRing& target, const Matrix& g) {
    Matrix m(aug.F(), target.dim, aug.dim);
    m(target.unit, aug.unit) = aug.F().one();
    for (std::size_t i = 0; i < g.cols; ++i)
        for (std::size_t k = 0; k < g.rows; ++k) m(1 + k, 1 + i) = g(k, i);
    return m;
}

// ring map out of U(L)_D: images of the L basis multiplied along PBW words
Matrix word_theta(const FinRing& U, const FinRing& target, const LieAlgebra& L, const Matrix& g) {
    std::vector<Vec> gen_images;
    for (std::size_t i = 0; i < L.dim; ++i) gen_images.push_back(lie_el(target, g.col(i)));
    Matrix m(U.F(), target.dim, U.dim);
    for (std::size_t t = 0; t < U.dim; ++t) {
        Vec v = target.one();
        for (auto w : U.words[t]) v = target.mul(v, gen_images.at(w));
        m.set_col(t, v);
    }
    return m;
}

ComparisonMap make_map(PresentedModule src, PresentedModule tgt, Matrix theta, const Matrix& g) {
    ComparisonMap c{std::move(src), std::move(tgt), std::move(theta), Matrix()};
    c.free_map = free_map(c.source, c.target, c.theta, g);
    return c;
}

void require_well_defined(const ComparisonMap& c) {
    const auto rep = check_well_defined(c);
    if (!rep.ok()) throw Error(ErrorKind::WellDefinednessFailure, rep.witness);
}

}  // namespace

RelationReport check_well_defined(const ComparisonMap& c) {
    Checker ch("well-defined");
    const Subspace rel = relation_span(c.target);
    for (std::size_t k = 0; k < c.source.relations.size(); ++k) {
        const Vec img = c.free_map.apply(c.source.relations[k]);
        ch.check(rel.contains(img), [&] { return "source relation " + std::to_string(k) + " maps outside the relations"; },
                 !is_zero(img));
    }
    return ch.report();
}

ComparisonMap comparison_omega_com(const CommAlgebra& B, const PdComAlgebra& A, const Matrix& g, int N) {
    auto src = omega_plain_com(B);
    auto tgt = omega_com(A, N);
    Matrix theta = aug_theta(src.ring, tgt.ring, g);
    auto c = make_map(std::move(src), std::move(tgt), std::move(theta), g);
    require_well_defined(c);
    return c;
}

ComparisonMap comparison_omega_lie(const LieAlgebra& L, const RestrictedLie& H, const Matrix& g, int D, int N) {
    auto src = omega_plain_lie(L, D);
    auto tgt = omega_rlie(H, N);
    Matrix theta = word_theta(src.ring, tgt.ring, L, g);
    auto c = make_map(std::move(src), std::move(tgt), std::move(theta), g);
    require_well_defined(c);
    return c;
}

ComparisonMap base_change_com(const PdComAlgebra& B, const PdComAlgebra& A, const Matrix& g, int N) {
    auto src = omega_com(B, N);
    auto tgt = omega_com(A, N);
    Matrix theta = v_map(src.ring, tgt.ring, g);
    return make_map(std::move(src), std::move(tgt), std::move(theta), g);
}

ComparisonMap base_change_plain_com(const CommAlgebra& B, const CommAlgebra& A, const Matrix& g) {
    auto src = omega_plain_com(B);
    auto tgt = omega_plain_com(A);
    Matrix theta = aug_theta(src.ring, tgt.ring, g);
    return make_map(std::move(src), std::move(tgt), std::move(theta), g);
}

ComparisonMap base_change_rlie(const RestrictedLie& L, const RestrictedLie& H, const Matrix& g, int N) {
    auto src = omega_rlie(L, N);
    auto tgt = omega_rlie(H, N);
    Matrix theta = w_map(src.ring, tgt.ring, g);
    return make_map(std::move(src), std::move(tgt), std::move(theta), g);
}

ComparisonMap base_change_plain_lie(const LieAlgebra& L, const LieAlgebra& H, const Matrix& g, int D) {
    auto src = omega_plain_lie(L, D);
    auto tgt = omega_plain_lie(H, D);
    Matrix theta = word_theta(src.ring, tgt.ring, L, g);
    return make_map(std::move(src), std::move(tgt), std::move(theta), g);
}

namespace {

RelationReport compare_squares(const ComparisonMap& down_then_across, const ComparisonMap& across_b,
                               const ComparisonMap& down_plain, const ComparisonMap& across_a) {
    // across_a o down_plain == down_then_across o across_b
    Checker c("naturality");
    const Matrix lhs = across_a.free_map * down_plain.free_map;
    const Matrix rhs = down_then_across.free_map * across_b.free_map;
    const Subspace rel = relation_span(across_a.target);
    for (std::size_t j = 0; j < lhs.cols; ++j) {
        const Vec l = lhs.col(j), r = rhs.col(j);
        c.check(l == r || rel.contains(sub(l, r)),
                [&] {
                    const std::size_t dim = down_plain.source.ring.dim;
                    return down_plain.source.ring.labels[j % dim] + " " + down_plain.source.generators[j / dim];
                },
                !is_zero(l));
    }
    return c.report();
}

}  // namespace

RelationReport check_naturality_com(const PdComAlgebra& B, const PdComAlgebra& A, const Matrix& g, int N) {
    const auto cB = comparison_omega_com(B, B, Matrix::identity(B.F(), B.dim), N);
    const auto cA = comparison_omega_com(A, A, Matrix::identity(A.F(), A.dim), N);
    return compare_squares(base_change_com(B, A, g, N), cB, base_change_plain_com(B, A, g), cA);
}

RelationReport check_naturality_lie(const RestrictedLie& L, const RestrictedLie& H, const Matrix& g, int D, int N) {
    const auto cL = comparison_omega_lie(L, L, Matrix::identity(L.F(), L.dim), D, N);
    const auto cH = comparison_omega_lie(H, H, Matrix::identity(H.F(), H.dim), D, N);
    return compare_squares(base_change_rlie(L, H, g, N), cL, base_change_plain_lie(L, H, g, D), cH);
}

AbelianizationCom abelianization_com(const PdComAlgebra& B, const PdComAlgebra& A, const Matrix& g, int N) {
    if (N < 1) throw Error(ErrorKind::TruncationTooSmall, "abelianization needs f-degree N >= 1");
    const auto P = omega_com(B, N);
    const auto Q = quotient(P);
    const FinRing VA = v_of(A, N);
    const auto E = extend_scalars(P.ring, VA, v_map(P.ring, VA, g), Q.module, TruncationMode::exact);
    Matrix univ(B.F(), Q.module.dim, B.dim);
    for (std::size_t k = 0; k < B.dim; ++k) univ.set_col(k, universal_derivation(Q, P, B.basis(k)));
    return {from_v_module(A, VA, E.module), E.unit * univ};
}

AbelianizationLie abelianization_lie(const RestrictedLie& B, const RestrictedLie& A, const Matrix& g, int N) {
    if (N < 1) throw Error(ErrorKind::TruncationTooSmall, "abelianization needs f-degree N >= 1");
    const auto P = omega_rlie(B, N);
    const auto Q = quotient(P);
    const FinRing wA = w_of(A, N);
    const auto E = extend_scalars(P.ring, wA, w_map(P.ring, wA, g), Q.module);
    Matrix univ(B.F(), Q.module.dim, B.dim);
    for (std::size_t k = 0; k < B.dim; ++k) univ.set_col(k, universal_derivation(Q, P, B.basis(k)));
    return {from_w_module(A, wA, E.module), E.unit * univ};
}

}  // namespace dpalg

#include "dpalg/beckmod.hpp"

#include <algorithm>

#include "dpalg/error.hpp"

namespace dpalg {

namespace {

Matrix sum_action(const Field& F, std::size_t dim, const std::vector<Matrix>& action, const Vec& coeffs) {
    Matrix m(F, dim, dim);
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        if (!coeffs[k].is_zero()) m = m + action[k].scaled(coeffs[k]);
    return m;
}

// F_k = P Frob(P) ... Frob^(k-1)(P), so that pi^k = F_k Frob^k
Matrix iterate_semilinear(const SemilinearMap& P, std::size_t dim, int k, const Field& F) {
    Matrix m = Matrix::identity(F, dim);
    for (int t = 0; t < k; ++t) m = m * P.matrix.frob(t);
    return m;
}

Matrix inverse(const Matrix& a) {
    std::vector<Vec> cols;
    for (std::size_t j = 0; j < a.cols; ++j) cols.push_back(solve_linear(a, unit_vec(*a.field, a.rows, j)).solution);
    return Matrix::from_columns(*a.field, cols, a.rows);
}

Matrix columns_matrix(const Field& F, const std::vector<Vec>& cols, std::size_t rows) {
    return Matrix::from_columns(F, cols, rows);
}

// coordinates of v in the span of the columns of basis; throws NoSolution outside it
Vec coords_in(const Matrix& basis, const Vec& v) { return solve_linear(basis, v).solution; }

}  // namespace

std::vector<RelationReport> check_beck_com(const PdComAlgebra& A, const BeckModuleCom& M) {
    const Field& F = A.F();
    Checker shape("shape"), law("module-law"), comm("actions-commute"), semi("pi-semilinear"), kill("pi-kills-A+M");
    shape.check(M.action.size() == A.dim && M.pi.frobenius_power == 1 && M.pi.matrix.rows == M.dim &&
                    M.pi.matrix.cols == M.dim,
                [] { return std::string("one action per basis element of A+ and a square pi of Frobenius power 1"); });
    if (!shape.report().ok()) return {shape.report()};
    for (const auto& a : M.action)
        shape.check(a.rows == M.dim && a.cols == M.dim, [] { return std::string("action matrix shape"); });
    for (std::size_t i = 0; i < A.dim; ++i)
        for (std::size_t j = 0; j < A.dim; ++j) {
            Vec c = A.zero();
            axpy_sparse(c, F.one(), A.mult[i * A.dim + j]);
            const Matrix lhs = sum_action(F, M.dim, M.action, c);
            const Matrix rhs = M.action[i] * M.action[j];
            law.check(lhs == rhs, [&] { return A.labels[i] + " * " + A.labels[j]; }, !rhs.is_zero());
            comm.check(rhs == M.action[j] * M.action[i], [&] { return A.labels[i] + ", " + A.labels[j]; },
                       !rhs.is_zero());
        }
    semi.check(M.pi.frobenius_power == 1, [] { return std::string("pi must be p-semilinear"); });
    for (std::size_t i = 0; i < A.dim; ++i) {
        // pi(a m) = P Frob(A_a) Frob(m)
        const Matrix composite = M.pi.matrix * M.action[i].frob(1);
        kill.check(composite.is_zero(), [&] { return "pi(" + A.labels[i] + " m) != 0"; },
                   !M.action[i].is_zero() && !M.pi.matrix.is_zero());
    }
    return {shape.report(), law.report(), comm.report(), semi.report(), kill.report()};
}

std::vector<RelationReport> check_beck_lie(const RestrictedLie& L, const BeckModuleLie& M, int trials,
                                           std::uint64_t seed) {
    Checker has_f("f-present");
    has_f.check(M.module.f.has_value(), [] { return std::string("Beck module over a restricted Lie algebra needs f"); });
    auto reps = check_restricted_module(L, M.module, trials, seed);
    reps.insert(reps.begin(), has_f.report());
    return reps;
}

BeckModuleCom zero_beck_com(const PdComAlgebra& A) {
    BeckModuleCom M;
    M.action.assign(A.dim, Matrix(A.F(), 0, 0));
    M.pi = SemilinearMap{Matrix(A.F(), 0, 0), 1};
    return M;
}

BeckModuleLie zero_beck_lie(const LieAlgebra& L) {
    return BeckModuleLie{trivial_module(L, 0, SemilinearMap{Matrix(L.F(), 0, 0), 1})};
}

SplitExtension<PdComAlgebra> semidirect_com(const PdComAlgebra& A, const BeckModuleCom& M) {
    const Field& F = A.F();
    const std::size_t a = A.dim, d = M.dim, n = a + d;
    std::vector<std::string> labels = A.labels;
    for (std::size_t j = 0; j < d; ++j) labels.push_back("m" + std::to_string(j + 1));
    SplitExtension<PdComAlgebra> out;
    static_cast<CommAlgebra&>(out.algebra) = make_comm_algebra(A.field, labels, [&](std::size_t i, std::size_t j) {
        Vec v = zero_vec(F, n);
        if (i < a && j < a) {
            axpy_sparse(v, F.one(), A.mult[i * a + j]);
        } else if (i < a || j < a) {
            const std::size_t x = i < a ? i : j, m = i < a ? j - a : i - a;
            const Vec col = M.action[x].col(m);
            for (std::size_t k = 0; k < d; ++k) v[a + k] = col[k];
        }
        return v;
    });
    // pi(a, m) = (pi(a), pi_M(m) - a^(p-1) m); on basis elements the correction vanishes
    for (std::size_t i = 0; i < a; ++i) {
        Vec v = zero_vec(F, n);
        for (std::size_t k = 0; k < a; ++k) v[k] = A.pi[i][k];
        out.algebra.pi.push_back(v);
    }
    for (std::size_t j = 0; j < d; ++j) {
        Vec v = zero_vec(F, n);
        const Vec col = M.pi.matrix.col(j);
        for (std::size_t k = 0; k < d; ++k) v[a + k] = col[k];
        out.algebra.pi.push_back(v);
    }
    out.pr = Matrix(F, a, n);
    out.z = Matrix(F, n, a);
    for (std::size_t i = 0; i < a; ++i) out.pr(i, i) = out.z(i, i) = F.one();
    return out;
}

SplitExtension<RestrictedLie> semidirect_lie(const RestrictedLie& L, const BeckModuleLie& M) {
    if (!M.module.f) throw Error(ErrorKind::InvalidArgs, "Beck module needs f");
    const Field& F = L.F();
    const std::size_t a = L.dim, d = M.module.dim, n = a + d;
    SplitExtension<RestrictedLie> out;
    RestrictedLie& E = out.algebra;
    E.field = L.field;
    E.dim = n;
    E.labels = L.labels;
    for (std::size_t j = 0; j < d; ++j) E.labels.push_back("m" + std::to_string(j + 1));
    E.bracket.assign(n * n, zero_vec(F, n));
    const Fe minus = F.from_int(-1);
    for (std::size_t i = 0; i < a; ++i) {
        for (std::size_t j = 0; j < a; ++j)
            for (std::size_t k = 0; k < a; ++k) E.bracket[i * n + j][k] = L.bracket[i * a + j][k];
        // [(h, 0), (0, m)] = (0, h m)
        for (std::size_t j = 0; j < d; ++j) {
            const Vec col = M.module.action[i].col(j);
            for (std::size_t k = 0; k < d; ++k) {
                E.bracket[i * n + a + j][a + k] = col[k];
                E.bracket[(a + j) * n + i][a + k] = minus * col[k];
            }
        }
    }
    // (h, m)^[p] = (h^[p], h^(p-1) m + f(m)); on basis elements one side vanishes
    for (std::size_t i = 0; i < a; ++i) {
        Vec v = zero_vec(F, n);
        for (std::size_t k = 0; k < a; ++k) v[k] = L.pmap[i][k];
        E.pmap.push_back(v);
    }
    for (std::size_t j = 0; j < d; ++j) {
        Vec v = zero_vec(F, n);
        const Vec col = M.module.f->matrix.col(j);
        for (std::size_t k = 0; k < d; ++k) v[a + k] = col[k];
        E.pmap.push_back(v);
    }
    out.pr = Matrix(F, a, n);
    out.z = Matrix(F, n, a);
    for (std::size_t i = 0; i < a; ++i) out.pr(i, i) = out.z(i, i) = F.one();
    return out;
}

namespace {

template <class Alg, class Product>
Matrix split_kernel(const Alg& base, const Alg& B, const Matrix& pr, const Matrix& z, Product product) {
    const Field& F = B.F();
    if (pr.rows != base.dim || pr.cols != B.dim || z.rows != B.dim || z.cols != base.dim)
        throw Error(ErrorKind::DimensionMismatch, "pr: B -> A and z: A -> B have the wrong shapes");
    if (!((pr * z) == Matrix::identity(F, base.dim))) throw Error(ErrorKind::NotSplit, "pr o z is not the identity");
    const auto ker = kernel_basis(pr);
    for (std::size_t i = 0; i < ker.size(); ++i)
        for (std::size_t j = 0; j < ker.size(); ++j) {
            const Vec prod = product(ker[i], ker[j]);
            if (!is_zero(prod))
                throw Error(ErrorKind::NotSquareZero,
                            "kernel is not square-zero: " + B.describe(ker[i]) + " * " + B.describe(ker[j]) + " = " +
                                B.describe(prod));
        }
    return columns_matrix(F, ker, B.dim);
}

}  // namespace

BeckModuleCom kernel_module_com(const PdComAlgebra& A, const PdComAlgebra& B, const Matrix& pr, const Matrix& z) {
    const Field& F = B.F();
    const Matrix K = split_kernel(A, B, pr, z, [&](const Vec& x, const Vec& y) { return B.mul(x, y); });
    const std::size_t d = K.cols;
    BeckModuleCom M;
    M.dim = d;
    try {
        for (std::size_t i = 0; i < A.dim; ++i) {
            Matrix act(F, d, d);
            for (std::size_t j = 0; j < d; ++j) act.set_col(j, coords_in(K, B.mul(z.col(i), K.col(j))));
            M.action.push_back(std::move(act));
        }
        Matrix pim(F, d, d);
        for (std::size_t j = 0; j < d; ++j) pim.set_col(j, coords_in(K, pi_extend(B, K.col(j))));
        M.pi = SemilinearMap{pim, 1};
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NoSolution) throw;
        throw Error(ErrorKind::NotSplit, "pr is not a morphism of PD algebras: the kernel is not stable");
    }
    return M;
}

BeckModuleLie kernel_module_lie(const RestrictedLie& L, const RestrictedLie& B, const Matrix& pr, const Matrix& z) {
    const Field& F = B.F();
    const Matrix K = split_kernel(L, B, pr, z, [&](const Vec& x, const Vec& y) { return B.br(x, y); });
    const std::size_t d = K.cols;
    RestrictedModule M;
    M.dim = d;
    try {
        for (std::size_t i = 0; i < L.dim; ++i) {
            Matrix act(F, d, d);
            for (std::size_t j = 0; j < d; ++j) act.set_col(j, coords_in(K, B.br(z.col(i), K.col(j))));
            M.action.push_back(std::move(act));
        }
        Matrix fm(F, d, d);
        for (std::size_t j = 0; j < d; ++j) fm.set_col(j, coords_in(K, pmap_extend(B, K.col(j))));
        M.f = SemilinearMap{fm, 1};
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NoSolution) throw;
        throw Error(ErrorKind::NotSplit, "pr is not a restricted morphism: the kernel is not stable");
    }
    return BeckModuleLie{std::move(M)};
}

RingModule to_v_module(const PdComAlgebra& A, const FinRing& V, const BeckModuleCom& M) {
    const Field& F = A.F();
    const std::size_t da = A.dim + 1;
    if (V.dim % da != 0) throw Error(ErrorKind::DimensionMismatch, "ring is not V(A) for this A");
    const int N = static_cast<int>(V.dim / da) - 1;
    RingModule R;
    R.dim = M.dim;
    for (int k = 0; k <= N; ++k) {
        const Matrix Mk = iterate_semilinear(M.pi, M.dim, k, F);
        R.action.push_back(Mk);
        for (std::size_t i = 0; i < A.dim; ++i) R.action.push_back(M.action[i] * Mk);
    }
    return R;
}

BeckModuleCom from_v_module(const PdComAlgebra& A, const FinRing& V, const RingModule& R) {
    const std::size_t da = A.dim + 1;
    if (V.dim < 2 * da) throw Error(ErrorKind::TruncationTooSmall, "reading pi off a V(A)-module needs N >= 1");
    BeckModuleCom M;
    M.dim = R.dim;
    for (std::size_t i = 0; i < A.dim; ++i) M.action.push_back(R.action[1 + i]);
    M.pi = SemilinearMap{R.action[da], 1};
    return M;
}

namespace {

Matrix word_action(const Field& F, std::size_t dim, const std::vector<Matrix>& gens,
                   const std::vector<std::size_t>& word) {
    Matrix m = Matrix::identity(F, dim);
    for (auto g : word) m = m * gens.at(g);
    return m;
}

}  // namespace

RingModule to_w_module(const RestrictedLie& L, const FinRing& w, const BeckModuleLie& M) {
    if (!M.module.f) throw Error(ErrorKind::InvalidArgs, "Beck module needs f");
    const Field& F = L.F();
    const int N = w.max_grade;
    const std::size_t du = w.dim / static_cast<std::size_t>(N + 1);
    RingModule R;
    R.dim = M.module.dim;
    for (int a = 0; a <= N; ++a) {
        const Matrix Fa = iterate_semilinear(*M.module.f, R.dim, a, F);
        for (std::size_t m = 0; m < du; ++m)
            R.action.push_back(Fa * word_action(F, R.dim, M.module.action, w.words[m]).frob(a));
    }
    return R;
}

BeckModuleLie from_w_module(const RestrictedLie& L, const FinRing& w, const RingModule& R) {
    if (w.gens.size() <= L.dim) throw Error(ErrorKind::TruncationTooSmall, "reading f off a w(L)-module needs N >= 1");
    RestrictedModule M;
    M.dim = R.dim;
    for (std::size_t i = 0; i < L.dim; ++i) M.action.push_back(R.action[w.gens[i]]);
    M.f = SemilinearMap{R.action[w.gens[L.dim]], 1};
    return BeckModuleLie{std::move(M)};
}

RingModule restrict_theta_com(const PdComAlgebra& A, const BeckModuleCom& M) {
    RingModule R;
    R.dim = M.dim;
    R.action.push_back(Matrix::identity(A.F(), M.dim));
    for (const auto& a : M.action) R.action.push_back(a);
    return R;
}

RingModule restrict_theta_lie(const RestrictedLie& L, const FinRing& u, const BeckModuleLie& M) {
    RingModule R;
    R.dim = M.module.dim;
    for (std::size_t m = 0; m < u.dim; ++m) R.action.push_back(word_action(L.F(), R.dim, M.module.action, u.words[m]));
    return R;
}

Extension extend_scalars(const FinRing& src, const FinRing& dst, const Matrix& phi, const RingModule& M,
                         TruncationMode mode) {
    const Field& F = dst.F();
    const std::size_t dd = dst.dim, dm = M.dim, n = dd * dm;
    if (phi.rows != dd || phi.cols != src.dim) throw Error(ErrorKind::DimensionMismatch, "ring map shape");
    if (n > 20000) throw Error(ErrorKind::TooLarge, "dst (x) M above 20000 dimensions");
    const bool graded = dst.max_grade >= 0 && mode == TruncationMode::exact;
    // highest grade first, so that the surviving (non-pivot) generators sit in the lowest grades
    std::vector<std::size_t> order(dd), slot(dd);
    for (std::size_t r = 0; r < dd; ++r) order[r] = r;
    if (graded)
        std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return dst.grade[x] > dst.grade[y]; });
    for (std::size_t i = 0; i < dd; ++i) slot[order[i]] = i;
    auto pos = [&](std::size_t r, std::size_t j) { return slot[r] * dm + j; };

    Subspace rel(F, n);
    for (std::size_t r = 0; r < dd; ++r) {
        const Vec er = dst.basis(r);
        for (std::size_t s = 0; s < src.dim; ++s) {
            if (graded && src.max_grade >= 0 && dst.grade[r] + src.grade[s] > dst.max_grade) continue;
            const Vec prod = dst.mul(er, phi.col(s));
            for (std::size_t j = 0; j < dm; ++j) {
                // e_r phi(e_s) (x) m_j - e_r (x) e_s m_j
                Vec v = zero_vec(F, n);
                for (std::size_t k = 0; k < dd; ++k) v[pos(k, j)] += prod[k];
                const Vec col = M.action[s].col(j);
                for (std::size_t l = 0; l < dm; ++l) v[pos(r, l)] -= col[l].frob(dst.twist[r]);
                rel.add(v);
            }
        }
    }
    const auto q = rel.complement();
    auto coords = [&](const Vec& v) {
        const Vec red = rel.reduce(v);
        Vec c = zero_vec(F, q.size());
        for (std::size_t i = 0; i < q.size(); ++i) c[i] = red[q[i]];
        return c;
    };
    Extension out;
    out.module.dim = q.size();
    // generators act on the surviving classes directly; everything else through generator words
    std::vector<Matrix> gen_action(dd);
    for (auto g : dst.gens) {
        Matrix act(F, q.size(), q.size());
        for (std::size_t c = 0; c < q.size(); ++c) {
            const std::size_t r = order[q[c] / dm], j = q[c] % dm;
            if (graded && dst.truncated_pair(g, r))
                throw Error(ErrorKind::TruncationTooSmall,
                            "extension of scalars needs a larger truncation: " + dst.labels[g] + " * " + dst.labels[r]);
            const Vec prod = dst.mul(dst.basis(g), dst.basis(r));
            Vec v = zero_vec(F, n);
            for (std::size_t k = 0; k < dd; ++k) v[pos(k, j)] = prod[k];
            act.set_col(c, coords(v));
        }
        gen_action[g] = std::move(act);
    }
    for (std::size_t t = 0; t < dd; ++t) {
        Matrix act = Matrix::identity(F, q.size());
        int tw = 0;
        for (auto w : dst.words[t]) {
            const std::size_t g = dst.gens[w];
            act = act * gen_action[g].frob(tw);
            tw += dst.twist[g];
        }
        out.module.action.push_back(std::move(act));
    }
    out.unit = Matrix(F, q.size(), dm);
    for (std::size_t j = 0; j < dm; ++j) out.unit.set_col(j, coords(unit_vec(F, n, pos(dst.unit, j))));
    return out;
}

BeckModuleCom pushforward_com(const PdComAlgebra& B, const PdComAlgebra& A, const Matrix& g, const BeckModuleCom& M,
                              int N) {
    if (N < 1) throw Error(ErrorKind::TruncationTooSmall, "pushforward needs f-degree N >= 1");
    const FinRing VB = v_of(B, N), VA = v_of(A, N);
    const Extension E = extend_scalars(VB, VA, v_map(VB, VA, g), to_v_module(B, VB, M), TruncationMode::exact);
    return from_v_module(A, VA, E.module);
}

BeckModuleLie pushforward_lie(const RestrictedLie& B, const RestrictedLie& A, const Matrix& g, const BeckModuleLie& M,
                              int N) {
    if (N < 1) throw Error(ErrorKind::TruncationTooSmall, "pushforward needs f-degree N >= 1");
    const FinRing wB = w_of(B, N), wA = w_of(A, N);
    const Extension E = extend_scalars(wB, wA, w_map(wB, wA, g), to_w_module(B, wB, M));
    return from_w_module(A, wA, E.module);
}

BeckModuleCom pullback_com(const PdComAlgebra& B, const Matrix& g, const BeckModuleCom& M) {
    BeckModuleCom out;
    out.dim = M.dim;
    out.pi = M.pi;
    for (std::size_t i = 0; i < B.dim; ++i) out.action.push_back(sum_action(B.F(), M.dim, M.action, g.col(i)));
    return out;
}

BeckModuleLie pullback_lie(const RestrictedLie& B, const Matrix& g, const BeckModuleLie& M) {
    RestrictedModule out;
    out.dim = M.module.dim;
    out.f = M.module.f;
    for (std::size_t i = 0; i < B.dim; ++i)
        out.action.push_back(sum_action(B.F(), out.dim, M.module.action, g.col(i)));
    return BeckModuleLie{std::move(out)};
}

RelationReport check_unit_is_module_map(const FinRing& src, const RingModule& M, const RingModule& restricted,
                                        const Matrix& unit) {
    Checker c("unit-module-map");
    for (std::size_t s = 0; s < src.dim; ++s) {
        const Matrix lhs = unit * M.action[s];
        const Matrix rhs = restricted.action[s] * unit.frob(src.twist[s]);
        c.check(lhs == rhs, [&] { return "fails for " + src.labels[s]; }, !lhs.is_zero());
    }
    return c.report();
}

namespace {

// Fiber product {(a, x) : eta(a) = pr(x)} of base_dim-dim X and E; returns, for each X basis element, a lift x
template <class Alg>
std::vector<Vec> lifts_through_fiber_product(const Field& F, std::size_t xdim, const Matrix& eta,
                                             const SplitExtension<Alg>& E) {
    const std::size_t b = E.algebra.dim, base = E.pr.rows;
    Matrix sys(F, base, xdim + b);
    for (std::size_t r = 0; r < base; ++r) {
        for (std::size_t c = 0; c < xdim; ++c) sys(r, c) = eta(r, c);
        for (std::size_t c = 0; c < b; ++c) sys(r, xdim + c) = F.from_int(-1) * E.pr(r, c);
    }
    const auto P = kernel_basis(sys);
    // first-component projection of the fiber product basis
    Matrix proj(F, xdim, P.size());
    for (std::size_t j = 0; j < P.size(); ++j)
        for (std::size_t i = 0; i < xdim; ++i) proj(i, j) = P[j][i];
    std::vector<Vec> lifts;
    for (std::size_t i = 0; i < xdim; ++i) {
        const Vec c = solve_linear(proj, unit_vec(F, xdim, i)).solution;
        Vec x = zero_vec(F, b);
        for (std::size_t j = 0; j < P.size(); ++j)
            for (std::size_t k = 0; k < b; ++k) x[k] += c[j] * P[j][xdim + k];
        lifts.push_back(x);
    }
    return lifts;
}

}  // namespace

std::vector<Matrix> fiber_product_action_com(const CommAlgebra& A, const Matrix& eta,
                                             const SplitExtension<PdComAlgebra>& E) {
    const Field& F = A.F();
    const auto lifts = lifts_through_fiber_product(F, A.dim, eta, E);
    const Matrix K = columns_matrix(F, kernel_basis(E.pr), E.algebra.dim);
    std::vector<Matrix> out;
    for (const auto& x : lifts) {
        Matrix act(F, K.cols, K.cols);
        for (std::size_t j = 0; j < K.cols; ++j) act.set_col(j, coords_in(K, E.algebra.mul(x, K.col(j))));
        out.push_back(std::move(act));
    }
    return out;
}

std::vector<Matrix> fiber_product_action_lie(const LieAlgebra& L, const Matrix& eta,
                                             const SplitExtension<RestrictedLie>& E) {
    const Field& F = L.F();
    const auto lifts = lifts_through_fiber_product(F, L.dim, eta, E);
    const Matrix K = columns_matrix(F, kernel_basis(E.pr), E.algebra.dim);
    std::vector<Matrix> out;
    for (const auto& x : lifts) {
        Matrix act(F, K.cols, K.cols);
        for (std::size_t j = 0; j < K.cols; ++j) act.set_col(j, coords_in(K, E.algebra.br(x, K.col(j))));
        out.push_back(std::move(act));
    }
    return out;
}

std::vector<RelationReport> check_penvelope_splits(const LieAlgebra& L, const std::vector<Matrix>& rho, int N) {
    const Field& F = L.F();
    const int p = F.p();
    const std::size_t n = L.dim, d = rho.empty() ? 0 : rho[0].rows;
    if (rho.size() != n) throw Error(ErrorKind::ShapeMismatch, "one action matrix per basis element of L");
    // L (x) M as a plain Lie algebra
    LieAlgebra SD;
    SD.field = L.field;
    SD.dim = n + d;
    SD.labels = L.labels;
    for (std::size_t j = 0; j < d; ++j) SD.labels.push_back("m" + std::to_string(j + 1));
    SD.bracket.assign(SD.dim * SD.dim, zero_vec(F, SD.dim));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) SD.bracket[i * SD.dim + j][k] = L.bracket[i * n + j][k];
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) {
                SD.bracket[i * SD.dim + n + j][n + k] = rho[i](k, j);
                SD.bracket[(n + j) * SD.dim + i][n + k] = F.from_int(-1) * rho[i](k, j);
            }
    }
    LieAlgebra Mab;
    Mab.field = L.field;
    Mab.dim = d;
    for (std::size_t j = 0; j < d; ++j) Mab.labels.push_back("m" + std::to_string(j + 1));
    Mab.bracket.assign(d * d, zero_vec(F, d));

    const PEnvelope big = p_envelope(SD, N), FL = p_envelope(L, N), FM = p_envelope(Mab, N);
    Checker dims("dimension-additive"), module("module"), bracket("bracket-blocks"), pmap("pmap-blocks");
    dims.check(big.hat.dim == FL.hat.dim + FM.hat.dim, [&] {
        return std::to_string(big.hat.dim) + " != " + std::to_string(FL.hat.dim) + " + " + std::to_string(FM.hat.dim);
    });
    if (!dims.report().ok()) return {dims.report()};

    // env(M) as a restricted env(L)-module: e_i^(p^k) acts on layer 0 by rho_i^(p^k), kills higher layers
    RestrictedModule FMmod;
    FMmod.dim = FM.hat.dim;
    for (int k = 0; k <= N; ++k) {
        int e = 1;
        for (int t = 0; t < k; ++t) e *= p;
        for (std::size_t i = 0; i < n; ++i) {
            Matrix r = Matrix::identity(F, d);
            for (int t = 0; t < e; ++t) r = r * rho[i];
            Matrix act(F, FMmod.dim, FMmod.dim);
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t b = 0; b < d; ++b) act(a, b) = r(a, b);
            FMmod.action.push_back(std::move(act));
        }
    }
    Matrix fm(F, FMmod.dim, FMmod.dim);
    for (std::size_t j = 0; j < FMmod.dim; ++j) fm.set_col(j, FM.hat.pmap[j]);
    FMmod.f = SemilinearMap{fm, 1};
    const BeckModuleLie beck{FMmod};
    for (const auto& r : check_beck_lie(FL.hat, beck, 10)) module.check(r.ok(), [&] { return r.name + ": " + r.witness; });
    const auto S = semidirect_lie(FL.hat, beck);

    // env(L) (x) env(M) -> env(L (x) M), layer by layer
    const std::size_t sdim = S.algebra.dim;
    Matrix phi(F, big.hat.dim, sdim);
    for (int k = 0; k <= N; ++k) {
        for (std::size_t i = 0; i < n; ++i) phi(big.power_index[k][i], FL.power_index[k][i]) = F.one();
        for (std::size_t j = 0; j < d; ++j) phi(big.power_index[k][n + j], FL.hat.dim + FM.power_index[k][j]) = F.one();
    }
    for (std::size_t a = 0; a < sdim; ++a) {
        for (std::size_t b = 0; b < sdim; ++b) {
            const Vec lhs = phi.apply(S.algebra.bracket[a * sdim + b]);
            const Vec rhs = big.hat.br(phi.col(a), phi.col(b));
            bracket.check(lhs == rhs, [&] { return S.algebra.labels[a] + ", " + S.algebra.labels[b]; }, !is_zero(lhs));
        }
        const Vec lhs = phi.apply(S.algebra.pmap[a]);
        const Vec rhs = pmap_extend(big.hat, phi.col(a));
        pmap.check(lhs == rhs, [&] { return S.algebra.labels[a]; }, !is_zero(lhs));
    }
    return {dims.report(), module.report(), bracket.report(), pmap.report()};
}

namespace {

FieldPtr random_field(std::mt19937_64& rng) {
    switch (rng() % 3) {
        case 0: return Field::make(2);
        case 1: return Field::make(3);
        default: return Field::make(2, 2);
    }
}

Matrix random_invertible(const Field& F, std::size_t d, std::mt19937_64& rng) {
    while (true) {
        Matrix m(F, d, d);
        for (auto& x : m.data) x = random_fe(F, rng);
        if (rank(m) == d) return m;
    }
}

// S N S^-1 with N supported on rows [0, k) x columns [k, d): these all multiply to zero
struct SquareZeroFamily {
    Matrix S, Sinv;
    std::size_t k;
    Matrix sample(const Field& F, std::mt19937_64& rng) const {
        const std::size_t d = S.rows;
        Matrix N(F, d, d);
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = k; c < d; ++c) N(r, c) = random_fe(F, rng);
        return S * N * Sinv;
    }
};

SquareZeroFamily square_zero_family(const Field& F, std::size_t d, std::mt19937_64& rng) {
    SquareZeroFamily fam;
    fam.S = random_invertible(F, d, rng);
    fam.Sinv = inverse(fam.S);
    fam.k = rng() % (d + 1);
    return fam;
}

// p-semilinear f with image inside the common kernel of the given matrices
SemilinearMap semilinear_into_kernel(const Field& F, std::size_t d, const std::vector<Matrix>& acts,
                                     std::mt19937_64& rng) {
    std::vector<Matrix> blocks(acts.begin(), acts.end());
    std::vector<Vec> ker = blocks.empty() ? std::vector<Vec>{} : kernel_basis(vstack(blocks));
    if (blocks.empty())
        for (std::size_t j = 0; j < d; ++j) ker.push_back(unit_vec(F, d, j));
    Matrix m(F, d, d);
    for (std::size_t c = 0; c < d; ++c) {
        Vec col = zero_vec(F, d);
        for (const auto& k : ker) axpy(col, random_fe(F, rng), k);
        m.set_col(c, col);
    }
    return SemilinearMap{m, 1};
}

}  // namespace

RandomComCase random_beck_com(std::mt19937_64& rng) {
    const FieldPtr f = random_field(rng);
    const Field& F = *f;
    RandomComCase out;
    switch (rng() % 3) {
        case 0: {
            static_cast<CommAlgebra&>(out.base) =
                make_comm_algebra(f, {"x"}, [&](std::size_t, std::size_t) { return zero_vec(F, 1); });
            out.base.pi = {zero_vec(F, 1)};
            break;
        }
        case 1: {
            // zero multiplication with pi(a) = b, pi(b) = 0
            static_cast<CommAlgebra&>(out.base) =
                make_comm_algebra(f, {"a", "b"}, [&](std::size_t, std::size_t) { return zero_vec(F, 2); });
            out.base.pi = {unit_vec(F, 2, 1), zero_vec(F, 2)};
            break;
        }
        default:
            out.base = FreePdCom(f, 1, 2).algebra();
            break;
    }
    const std::size_t d = 1 + rng() % 3;
    const auto fam = square_zero_family(F, d, rng);
    BeckModuleCom& M = out.module;
    M.dim = d;
    for (std::size_t i = 0; i < out.base.dim; ++i) {
        // decomposable basis elements act as their (zero) products do
        bool decomposable = false;
        for (const auto& s : out.base.mult)
            for (const auto& [k, c] : s)
                if (k == i && !c.is_zero()) decomposable = true;
        M.action.push_back(decomposable ? Matrix(F, d, d) : fam.sample(F, rng));
    }
    // pi_M vanishes on Frob(S) span(e_0..e_{k-1}), which contains every Frob(A_i m)
    Matrix Q(F, d, d);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = fam.k; c < d; ++c) Q(r, c) = random_fe(F, rng);
    M.pi = SemilinearMap{Q * fam.Sinv.frob(1), 1};
    return out;
}

RandomLieCase random_beck_lie(std::mt19937_64& rng) {
    const FieldPtr f = random_field(rng);
    const Field& F = *f;
    RandomLieCase out;
    const std::size_t d = 1 + rng() % 3;
    RestrictedModule M;
    M.dim = d;
    switch (rng() % 3) {
        case 0: {
            out.base = abelian(f, 1);
            M.action.push_back(square_zero_family(F, d, rng).sample(F, rng));
            break;
        }
        case 1: {
            // e^[p] = e acts semisimply with eigenvalues in F_p
            out.base = abelian(f, 1, {unit_vec(F, 1, 0)});
            const Matrix S = random_invertible(F, d, rng);
            Matrix D(F, d, d);
            for (std::size_t i = 0; i < d; ++i) D(i, i) = F.from_int(static_cast<int>(rng() % F.p()));
            M.action.push_back(S * D * inverse(S));
            break;
        }
        default: {
            out.base = heisenberg(f);
            const auto fam = square_zero_family(F, d, rng);
            M.action.push_back(fam.sample(F, rng));
            M.action.push_back(fam.sample(F, rng));
            M.action.push_back(Matrix(F, d, d));
            break;
        }
    }
    M.f = semilinear_into_kernel(F, d, M.action, rng);
    out.module = BeckModuleLie{std::move(M)};
    return out;
}

}  // namespace dpalg

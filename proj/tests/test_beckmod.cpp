#include <gtest/gtest.h>

#include <random>

#include "dpalg/beckmod.hpp"
#include "dpalg/error.hpp"

using namespace dpalg;

namespace {

void expect_all(const std::vector<RelationReport>& reps) {
    for (const auto& r : reps) EXPECT_TRUE(r.ok()) << r.name << ": " << r.witness;
}

PdComAlgebra square_zero_line(FieldPtr f) {
    PdComAlgebra a;
    static_cast<CommAlgebra&>(a) = make_comm_algebra(f, {"t"}, [&](std::size_t, std::size_t) { return zero_vec(*f, 1); });
    a.pi = {zero_vec(*f, 1)};
    return a;
}

PdComAlgebra zero_algebra(FieldPtr f) {
    PdComAlgebra a;
    static_cast<CommAlgebra&>(a) = make_comm_algebra(f, {}, [&](std::size_t, std::size_t) { return Vec{}; });
    return a;
}

Matrix elementary(const Field& F, std::size_t n, std::size_t r, std::size_t c) {
    Matrix m(F, n, n);
    m(r, c) = F.one();
    return m;
}

// (F, pi = Frobenius) over any A, with A+ acting by zero
BeckModuleCom line_module(const PdComAlgebra& A) {
    BeckModuleCom M;
    M.dim = 1;
    M.action.assign(A.dim, Matrix(A.F(), 1, 1));
    M.pi = SemilinearMap{Matrix::identity(A.F(), 1), 1};
    return M;
}

bool same_com(const BeckModuleCom& a, const BeckModuleCom& b) {
    return a.dim == b.dim && a.action == b.action && a.pi.matrix == b.pi.matrix &&
           a.pi.frobenius_power == b.pi.frobenius_power;
}

bool same_lie(const BeckModuleLie& a, const BeckModuleLie& b) {
    return a.module.dim == b.module.dim && a.module.action == b.module.action && a.module.f && b.module.f &&
           a.module.f->matrix == b.module.f->matrix;
}

// U with U A_i U^-1 = B_i for all i, given U invertible
bool conjugate(const Matrix& U, const std::vector<Matrix>& a, const std::vector<Matrix>& b, int twist = 0) {
    if (rank(U) != U.rows || U.rows != U.cols) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!(U * a[i] == b[i] * U.frob(twist))) return false;
    return true;
}

}  // namespace

TEST(Semidirect, ComExample) {
    auto f = Field::make(2);
    const auto A = square_zero_line(f);
    const auto E = semidirect_com(A, line_module(A));
    expect_all(check_pdcom(E.algebra));
    // pi(t, m) = (0, m)
    EXPECT_EQ(pi_extend(E.algebra, Vec{f->one(), f->one()}), (Vec{f->zero(), f->one()}));
}

TEST(Semidirect, ComCorrectionTerm) {
    // A = F t with t^2 = 0 acting on F^2 by E12, pi_M = 0: pi(t, m) picks up -t^(p-1) m
    auto f = Field::make(2);
    const auto A = square_zero_line(f);
    BeckModuleCom M;
    M.dim = 2;
    M.action = {elementary(*f, 2, 0, 1)};
    M.pi = SemilinearMap{Matrix(*f, 2, 2), 1};
    expect_all(check_beck_com(A, M));
    const auto E = semidirect_com(A, M);
    expect_all(check_pdcom(E.algebra));
    const Vec x{f->one(), f->zero(), f->one()};
    EXPECT_EQ(pi_extend(E.algebra, x), (Vec{f->zero(), f->one(), f->zero()}));
}

TEST(Semidirect, LieExample) {
    auto f = Field::make(2);
    const auto L = abelian(f, 1);
    const BeckModuleLie M{trivial_module(L, 1, SemilinearMap{Matrix::identity(*f, 1), 1})};
    expect_all(check_beck_lie(L, M));
    const auto E = semidirect_lie(L, M);
    expect_all(check_rlie(E.algebra));
    // (e, m)^[2] = (0, m)
    EXPECT_EQ(pmap_extend(E.algebra, Vec{f->one(), f->one()}), (Vec{f->zero(), f->one()}));
}

TEST(Semidirect, ZeroBaseIsAbelian) {
    auto f = Field::make(3);
    const auto A = zero_algebra(f);
    BeckModuleCom M;
    M.dim = 2;
    M.pi = SemilinearMap{elementary(*f, 2, 1, 0), 1};
    expect_all(check_beck_com(A, M));
    const auto E = semidirect_com(A, M);
    for (const auto& s : E.algebra.mult) EXPECT_TRUE(s.empty() || std::all_of(s.begin(), s.end(), [](auto& t) {
        return t.second.is_zero();
    }));
    for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(E.algebra.pi[j], M.pi.matrix.col(j));
    EXPECT_TRUE(same_com(kernel_module_com(A, E.algebra, E.pr, E.z), M));
}

TEST(Semidirect, BadModulesAreCaught) {
    auto f = Field::make(2);
    const auto A = square_zero_line(f);
    BeckModuleCom M;
    M.dim = 2;
    M.action = {elementary(*f, 2, 0, 1)};
    // pi(t m2) = pi(m1) = m2 != 0
    M.pi = SemilinearMap{elementary(*f, 2, 1, 0), 1};
    EXPECT_FALSE(all_ok(check_beck_com(A, M)));
    M.pi = SemilinearMap{Matrix(*f, 2, 2), 1};
    M.action = {Matrix::identity(*f, 2)};
    EXPECT_FALSE(all_ok(check_beck_com(A, M)));
}

TEST(RoundTrip, RandomComModules) {
    std::mt19937_64 rng(7);
    int nontrivial = 0;
    for (int t = 0; t < 20; ++t) {
        const auto c = random_beck_com(rng);
        SCOPED_TRACE("case " + std::to_string(t) + " over F_" + std::to_string(c.base.F().order()));
        expect_all(check_pdcom(c.base, 20));
        expect_all(check_beck_com(c.base, c.module));
        const auto E = semidirect_com(c.base, c.module);
        expect_all(check_pdcom(E.algebra, 30));
        EXPECT_TRUE(same_com(kernel_module_com(c.base, E.algebra, E.pr, E.z), c.module));
        for (int N : {1, 2}) {
            const auto V = v_of(c.base, N);
            const auto R = to_v_module(c.base, V, c.module);
            expect_all(check_ring_module(V, R));
            EXPECT_TRUE(same_com(from_v_module(c.base, V, R), c.module));
        }
        for (const auto& a : c.module.action) nontrivial += !a.is_zero();
    }
    EXPECT_GT(nontrivial, 5);
}

TEST(RoundTrip, RandomLieModules) {
    std::mt19937_64 rng(11);
    int nontrivial = 0;
    for (int t = 0; t < 20; ++t) {
        const auto c = random_beck_lie(rng);
        SCOPED_TRACE("case " + std::to_string(t));
        expect_all(check_beck_lie(c.base, c.module));
        const auto E = semidirect_lie(c.base, c.module);
        expect_all(check_rlie(E.algebra, 30));
        EXPECT_TRUE(same_lie(kernel_module_lie(c.base, E.algebra, E.pr, E.z), c.module));
        for (int N : {1, 2}) {
            const auto w = w_of(c.base, N);
            const auto R = to_w_module(c.base, w, c.module);
            expect_all(check_ring_module(w, R));
            EXPECT_TRUE(same_lie(from_w_module(c.base, w, R), c.module));
        }
        const auto u = u_of(c.base);
        expect_all(check_ring_module(u, restrict_theta_lie(c.base, u, c.module)));
        for (const auto& a : c.module.module.action) nontrivial += !a.is_zero();
    }
    EXPECT_GT(nontrivial, 5);
}

TEST(KernelModule, Errors) {
    auto f = Field::make(2);
    const auto A = square_zero_line(f);
    const auto E = semidirect_com(A, line_module(A));
    EXPECT_THROW(
        {
            try {
                kernel_module_com(A, E.algebra, E.pr, Matrix(*f, 2, 1));
            } catch (const Error& e) {
                EXPECT_EQ(e.kind(), ErrorKind::NotSplit);
                throw;
            }
        },
        Error);
}

TEST(KernelModule, DividedPowerEnvelopeIsNotSquareZero) {
    // the PD envelope of F_2[x]/x^2 is Gamma(x): x x^(2) = x^(3) != 0
    auto f = Field::make(2);
    const auto env = pd_envelope(f, 1, {{{f->one(), {2}}}}, 4);
    ASSERT_EQ(env.algebra.dim, 4u);
    const auto base = zero_algebra(f);
    try {
        kernel_module_com(base, env.algebra, Matrix(*f, 0, 4), Matrix(*f, 4, 0));
        ADD_FAILURE() << "expected NotSquareZero";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotSquareZero);
    }
}

TEST(KernelModule, LieNotAbelian) {
    auto f = Field::make(2);
    const auto H = heisenberg(f);
    const auto base = abelian(f, 0);
    try {
        kernel_module_lie(base, H, Matrix(*f, 0, 3), Matrix(*f, 3, 0));
        ADD_FAILURE() << "expected NotSquareZero";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotSquareZero);
    }
}

TEST(Pushforward, IdentityPreservesModule) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 6; ++t) {
        const auto c = random_beck_com(rng);
        const Matrix id = Matrix::identity(c.base.F(), c.base.dim);
        const auto P = pushforward_com(c.base, c.base, id, c.module, 2);
        ASSERT_EQ(P.dim, c.module.dim);
        const auto V = v_of(c.base, 2);
        const auto E =
            extend_scalars(V, V, v_map(V, V, id), to_v_module(c.base, V, c.module), TruncationMode::exact);
        EXPECT_TRUE(conjugate(E.unit, to_v_module(c.base, V, c.module).action, E.module.action));
        EXPECT_TRUE(same_com(pullback_com(c.base, id, c.module), c.module));
    }
    for (int t = 0; t < 6; ++t) {
        const auto c = random_beck_lie(rng);
        const Matrix id = Matrix::identity(c.base.F(), c.base.dim);
        // modulo f^(>2): M / f^3 M
        const auto& fm = *c.module.module.f;
        const Matrix f3 = fm.matrix * fm.matrix.frob(1) * fm.matrix.frob(2);
        EXPECT_EQ(pushforward_lie(c.base, c.base, id, c.module, 2).module.dim, c.module.module.dim - rank(f3));
        EXPECT_TRUE(same_lie(pullback_lie(c.base, id, c.module), c.module));
    }
}

TEST(Pushforward, FromZeroAlgebra) {
    auto f = Field::make(3);
    const auto A = FreePdCom(f, 1, 3).algebra();
    const auto zero = zero_algebra(f);
    const Matrix g(*f, A.dim, 0);
    const int N = 2;
    // F with pi = 0: F + A+ (x) F, free of rank one in f-degree 0
    BeckModuleCom trivial;
    trivial.dim = 1;
    trivial.pi = SemilinearMap{Matrix(*f, 1, 1), 1};
    EXPECT_EQ(pushforward_com(zero, A, g, trivial, N).dim, 1 + A.dim);
    // F[f]/f^(N+1), the regular module of V(0): free of rank one over V(A)
    const auto V0 = v_of(zero, N), VA = v_of(A, N);
    const auto regular = from_v_module(zero, V0, regular_module(V0));
    EXPECT_EQ(regular.dim, static_cast<std::size_t>(N + 1));
    const auto E = extend_scalars(V0, VA, v_map(V0, VA, g), regular_module(V0));
    EXPECT_EQ(E.module.dim, VA.dim);
    const auto reg = regular_module(VA);
    // the class of 1 (x) 1 generates and the module is isomorphic to the regular one
    Matrix gen(*f, VA.dim, VA.dim);
    const Vec one = E.unit.col(0);
    for (std::size_t s = 0; s < VA.dim; ++s) gen.set_col(s, E.module.act(VA, VA.basis(s), one));
    EXPECT_EQ(rank(gen), VA.dim);
}

TEST(Pushforward, UnitIsModuleMap) {
    auto f = Field::make(2);
    const auto B = square_zero_line(f);
    const auto A = FreePdCom(f, 1, 3).algebra();
    Matrix g(*f, A.dim, 1);
    g(0, 0) = f->one();  // t -> x
    BeckModuleCom M;
    M.dim = 2;
    M.action = {elementary(*f, 2, 0, 1)};
    M.pi = SemilinearMap{elementary(*f, 2, 0, 1), 1};
    expect_all(check_beck_com(B, M));
    const int N = 2;
    const auto VB = v_of(B, N), VA = v_of(A, N);
    const Matrix phi = v_map(VB, VA, g);
    expect_all(check_ring_map(VB, VA, phi));
    const auto MB = to_v_module(B, VB, M);
    const auto E = extend_scalars(VB, VA, phi, MB, TruncationMode::exact);
    expect_all(check_ring_module(VA, E.module));
    const auto restricted = restrict_module(VB, phi, VA, E.module);
    EXPECT_TRUE(check_unit_is_module_map(VB, MB, restricted, E.unit).ok());
    // the pushed-forward Beck module is a Beck module, and pulling it back receives M
    const auto P = from_v_module(A, VA, E.module);
    expect_all(check_beck_com(A, P));
    const auto back = to_v_module(B, VB, pullback_com(B, g, P));
    EXPECT_TRUE(check_unit_is_module_map(VB, MB, back, E.unit).ok());
}

TEST(FiberProduct, ComMatchesRestriction) {
    auto f = Field::make(2);
    const auto env = pd_envelope(f, 1, {{{f->one(), {2}}}}, 4);
    const auto& Ahat = env.algebra;
    BeckModuleCom M;
    M.dim = 2;
    M.action.assign(Ahat.dim, Matrix(*f, 2, 2));
    M.action[0] = elementary(*f, 2, 0, 1);
    M.pi = SemilinearMap{elementary(*f, 2, 0, 1), 1};
    expect_all(check_beck_com(Ahat, M));
    const auto E = semidirect_com(Ahat, M);
    const auto fp = fiber_product_action_com(env.source, env.eta, E);
    // restriction along F + A+ -> F + Ahat+ -> V(Ahat)
    const auto V = v_of(Ahat, 2);
    const auto aug = augmented_ring(env.source);
    Matrix phi(*f, V.dim, aug.dim);
    phi(V.unit, 0) = f->one();
    for (std::size_t i = 0; i < env.source.dim; ++i)
        for (std::size_t k = 0; k < Ahat.dim; ++k) phi(1 + k, 1 + i) = env.eta(k, i);
    expect_all(check_ring_map(aug, V, phi));
    const auto R = restrict_module(aug, phi, V, to_v_module(Ahat, V, M));
    ASSERT_EQ(fp.size(), env.source.dim);
    for (std::size_t i = 0; i < fp.size(); ++i) EXPECT_EQ(fp[i], R.action[1 + i]);
    EXPECT_FALSE(fp[0].is_zero());
}

TEST(FiberProduct, LieMatchesRestriction) {
    auto f = Field::make(3);
    const LieAlgebra L = abelian(f, 2);
    const auto env = p_envelope(L, 1);
    const auto& Lhat = env.hat;
    ASSERT_EQ(Lhat.dim, 4u);
    // x -> E12 + E23 (x^3 acts by zero), y -> E13, the p-th powers by the p-th powers
    RestrictedModule M;
    M.dim = 3;
    M.action.assign(Lhat.dim, Matrix(*f, 3, 3));
    M.action[0] = elementary(*f, 3, 0, 1) + elementary(*f, 3, 1, 2);
    M.action[1] = elementary(*f, 3, 0, 2);
    M.f = SemilinearMap{elementary(*f, 3, 0, 2), 1};
    const BeckModuleLie beck{M};
    expect_all(check_beck_lie(Lhat, beck));
    const auto E = semidirect_lie(Lhat, beck);
    const auto fp = fiber_product_action_lie(L, env.eta, E);
    const auto w = w_of(Lhat, 1);
    const auto R = to_w_module(Lhat, w, beck);
    expect_all(check_ring_module(w, R));
    ASSERT_EQ(fp.size(), L.dim);
    for (std::size_t i = 0; i < L.dim; ++i) {
        Matrix direct(*f, 3, 3);
        for (std::size_t k = 0; k < Lhat.dim; ++k)
            if (!env.eta(k, i).is_zero()) direct = direct + R.action[w.gens[k]].scaled(env.eta(k, i));
        EXPECT_EQ(fp[i], direct);
    }
    EXPECT_FALSE((fp[0] * fp[0]).is_zero());
    // a U(L)-module: the actions commute
    EXPECT_EQ(fp[0] * fp[1], fp[1] * fp[0]);
}

TEST(PEnvelopeSplits, SemidirectProducts) {
    {
        auto f = Field::make(2);
        LieAlgebra L = abelian(f, 1);
        expect_all(check_penvelope_splits(L, {elementary(*f, 2, 0, 1)}, 2));
    }
    {
        auto f = Field::make(3);
        LieAlgebra L = heisenberg(f);
        expect_all(check_penvelope_splits(
            L, {elementary(*f, 3, 0, 1), elementary(*f, 3, 1, 2), elementary(*f, 3, 0, 2)}, 1));
    }
    {
        auto f = Field::make(2);
        LieAlgebra L = heisenberg(f);
        expect_all(check_penvelope_splits(L, {Matrix(*f, 2, 2), Matrix(*f, 2, 2), Matrix(*f, 2, 2)}, 2));
    }
}

TEST(Pushforward, StableInTruncationAndBeck) {
    auto f = Field::make(2);
    const auto B = square_zero_line(f);
    const auto A = FreePdCom(f, 1, 3).algebra();
    Matrix g(*f, A.dim, 1);
    g(0, 0) = f->one();
    BeckModuleCom M;
    M.dim = 2;
    M.action = {elementary(*f, 2, 0, 1)};
    // pi is not nilpotent
    M.pi = SemilinearMap{elementary(*f, 2, 0, 1) + elementary(*f, 2, 1, 1), 1};
    expect_all(check_beck_com(B, M));
    const auto P1 = pushforward_com(B, A, g, M, 1);
    expect_all(check_beck_com(A, P1));
    for (int N : {2, 3}) EXPECT_EQ(pushforward_com(B, A, g, M, N).dim, P1.dim);

    std::mt19937_64 rng(5);
    int seen = 0;
    for (int t = 0; t < 40 && seen < 5; ++t) {
        const auto c = random_beck_lie(rng);
        if (c.base.dim != 1 || !is_zero(c.base.pmap[0])) continue;
        ++seen;
        const auto H = heisenberg(c.base.field);
        Matrix gl(c.base.F(), 3, 1);
        gl(0, 0) = c.base.F().one();
        for (int N : {1, 2}) {
            const auto wB = w_of(c.base, N), wH = w_of(H, N);
            const Matrix phi = w_map(wB, wH, gl);
            expect_all(check_ring_map(wB, wH, phi));
            const auto MB = to_w_module(c.base, wB, c.module);
            const auto E = extend_scalars(wB, wH, phi, MB);
            expect_all(check_ring_module(wH, E.module));
            const auto P = from_w_module(H, wH, E.module);
            expect_all(check_beck_lie(H, P));
            const auto back = to_w_module(c.base, wB, pullback_lie(c.base, gl, P));
            EXPECT_TRUE(check_unit_is_module_map(wB, MB, back, E.unit).ok());
        }
    }
    EXPECT_GT(seen, 0);
}

#include <gtest/gtest.h>

#include <random>

#include "dpalg/envelopes.hpp"
#include "dpalg/error.hpp"

using namespace dpalg;

namespace {

void expect_all(const std::vector<RelationReport>& reps) {
    for (const auto& r : reps) EXPECT_TRUE(r.ok()) << r.name << ": " << r.witness;
}

std::size_t index_of(const FinRing& R, const std::string& label) {
    for (std::size_t i = 0; i < R.dim; ++i)
        if (R.labels[i] == label) return i;
    ADD_FAILURE() << "no basis element " << label;
    return 0;
}

Vec el(const FinRing& R, const std::string& label) { return R.basis(index_of(R, label)); }

PdComAlgebra xyz_algebra() {
    auto f = Field::make(2);
    PdComAlgebra a;
    static_cast<CommAlgebra&>(a) = make_comm_algebra(f, {"x", "y", "z"}, [&](std::size_t i, std::size_t j) {
        Vec v = zero_vec(*f, 3);
        if ((i == 0 && j == 1) || (i == 1 && j == 0)) v[2] = f->one();
        return v;
    });
    a.pi.assign(3, zero_vec(*f, 3));
    return a;
}

PdComAlgebra square_zero_line(FieldPtr f) {
    PdComAlgebra a;
    static_cast<CommAlgebra&>(a) = make_comm_algebra(f, {"t"}, [&](std::size_t, std::size_t) { return zero_vec(*f, 1); });
    a.pi = {zero_vec(*f, 1)};
    return a;
}

}  // namespace

TEST(RestrictedEnvelope, DimensionIsPToTheDim) {
    for (int p : {2, 3}) {
        auto u = u_of(heisenberg(Field::make(p)));
        EXPECT_EQ(u.dim, static_cast<std::size_t>(p * p * p));
        expect_all(check_ring(u, 27));
    }
    auto u = u_of(sl2(Field::make(3)));
    EXPECT_EQ(u.dim, 27u);
    expect_all(check_ring(u, 27));
}

TEST(RestrictedEnvelope, PthPowersFollowThePmap) {
    auto f = Field::make(3);
    auto u = u_of(sl2(f));
    const Vec h = el(u, "h");
    EXPECT_EQ(u.mul(h, u.mul(h, h)), h);
    const Vec e = el(u, "e");
    EXPECT_TRUE(is_zero(u.mul(e, u.mul(e, e))));
    // f e = e f - h
    EXPECT_EQ(u.mul(el(u, "f"), e), sub(el(u, "e*f"), h));
}

TEST(UniversalEnvelope, HeisenbergStraightening) {
    auto L = heisenberg(Field::make(5));
    EXPECT_EQ(lie_weights(L), (std::vector<int>{1, 1, 2}));
    auto U = U_of(L, 3);
    EXPECT_EQ(U.mul(el(U, "y"), el(U, "x")), sub(el(U, "x*y"), el(U, "z")));
    expect_all(check_ring(U, 40));
    expect_all(check_ring(U_of(heisenberg(Field::make(3)), 6), 0, 800));
}

TEST(UniversalEnvelope, TruncationIsAnIdeal) {
    auto U = U_of(abelian(Field::make(3), 1), 4);
    EXPECT_EQ(U.dim, 5u);
    EXPECT_TRUE(is_zero(U.mul(el(U, "e^2"), el(U, "e^3"))));
    EXPECT_EQ(U.mul(el(U, "e^2"), el(U, "e^2")), el(U, "e^4"));
}

TEST(UniversalEnvelope, NonNilpotentBasisRejected) {
    try {
        lie_weights(sl2(Field::make(3)));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotNilpotentBasis);
    }
}

TEST(TwistedRings, WProducts) {
    auto f4 = Field::make(2, 2);
    auto w = w_of(abelian(f4, 1), 2);
    const Vec e = el(w, "e"), fe = el(w, "f");
    EXPECT_TRUE(is_zero(w.mul(e, fe)));
    EXPECT_EQ(w.mul(fe, e), el(w, "f*e"));
    const Fe om = f4->element(2);
    EXPECT_EQ(w.mul(fe, scale(om, w.one())), scale(om * om, fe));
    EXPECT_EQ(w.mul(fe, fe), el(w, "f^2"));
    EXPECT_TRUE(is_zero(w.mul(el(w, "f^2"), fe)));
    expect_all(check_ring(w, 27));
    expect_all(check_ring(w_of(heisenberg(Field::make(2)), 2), 30));
}

TEST(TwistedRings, VProducts) {
    auto A = xyz_algebra();
    auto V = v_of(A, 2);
    EXPECT_EQ(V.dim, 12u);
    EXPECT_TRUE(is_zero(V.mul(el(V, "f"), el(V, "x"))));
    EXPECT_EQ(V.mul(el(V, "x"), el(V, "f")), el(V, "x*f"));
    EXPECT_EQ(V.mul(el(V, "x"), el(V, "y*f")), el(V, "z*f"));
    expect_all(check_ring(V, 12));
    auto f4 = Field::make(2, 2);
    auto V4 = v_of(square_zero_line(f4), 3);
    const Fe om = f4->element(2);
    EXPECT_EQ(V4.mul(el(V4, "f^2"), scale(om, V4.one())), scale(om * om * om * om, el(V4, "f^2")));
    expect_all(check_ring(V4, 27));
}

TEST(RingMaps, ThetaMaps) {
    auto L = heisenberg(Field::make(2));
    auto U = U_of(L, 4);
    expect_all(check_ring_map(U, w_of(L, 1), theta_lie(U, w_of(L, 1))));
    expect_all(check_ring_map(U, u_of(L), U_to_u(U, u_of(L))));
    auto A = xyz_algebra();
    auto aug = augmented_ring(A);
    expect_all(check_ring(aug));
    expect_all(check_ring_map(aug, v_of(A, 2), theta_com(aug, v_of(A, 2))));
}

TEST(RingMaps, FunctorialMaps) {
    auto f = Field::make(2);
    auto B = abelian(f, 1), A = heisenberg(f);
    Matrix g(*f, 3, 1);
    g(2, 0) = f->one();  // e -> z
    expect_all(check_ring_map(u_of(B), u_of(A), u_map(u_of(B), u_of(A), g)));
    expect_all(check_ring_map(w_of(B, 2), w_of(A, 2), w_map(w_of(B, 2), w_of(A, 2), g)));
    auto B2 = abelian(f, 2);
    Matrix h(*f, 3, 2);
    h(0, 0) = f->one();
    h(1, 1) = f->one();  // abelian -> Heisenberg is not a Lie map
    auto rep = check_ring_map(u_of(B2), u_of(A), u_map(u_of(B2), u_of(A), h));
    EXPECT_FALSE(all_ok(rep));

    auto P = square_zero_line(f), X = xyz_algebra();
    Matrix k(*f, 3, 1);
    k(2, 0) = f->one();  // t -> z
    expect_all(check_ring_map(v_of(P, 2), v_of(X, 2), v_map(v_of(P, 2), v_of(X, 2), k)));
}

TEST(RingModules, RegularAndRestricted) {
    auto L = heisenberg(Field::make(2));
    auto w = w_of(L, 2);
    expect_all(check_ring_module(w, regular_module(w)));
    auto U = U_of(L, 3);
    auto R = restrict_module(U, theta_lie(U, w), w, regular_module(w));
    expect_all(check_ring_module(U, R));
    auto f4 = Field::make(2, 2);
    auto V = v_of(square_zero_line(f4), 2);
    expect_all(check_ring_module(V, regular_module(V)));
    RingModule broken = regular_module(V);
    broken.action[index_of(V, "f")] = Matrix::identity(*f4, V.dim);
    EXPECT_FALSE(all_ok(check_ring_module(V, broken)));
}

TEST(Symbols, GeneratingFamilies) {
    auto f = Field::make(2);
    auto com = Operad::com(f, 2);
    auto A = xyz_algebra();
    auto V = v_of(A, 1);
    const Fe one = f->one();
    EXPECT_EQ(operadic_symbol_to_ring(*com, V, 3, {{one}, {1}, {}}), V.one());
    EXPECT_EQ(operadic_symbol_to_ring(*com, V, 3, {{one}, {1, 1}, {unit_vec(*f, 3, 1)}}), el(V, "y"));
    EXPECT_EQ(operadic_symbol_to_ring(*com, V, 3, {{one}, {2}, {}}), el(V, "f"));

    auto lie = Operad::lie(f, 2);
    auto L = heisenberg(f);
    auto w = w_of(L, 1);
    EXPECT_EQ(operadic_symbol_to_ring(*lie, w, 3, {{one}, {1, 1}, {unit_vec(*f, 3, 0)}}), el(w, "x"));
    EXPECT_EQ(operadic_symbol_to_ring(*lie, w, 3, {lie_fp_element(*lie, 2), {2}, {}}), el(w, "f"));
    try {
        operadic_symbol_to_ring(*lie, w, 3, {{one}, {1, 1, 1}, {}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::UnsupportedSymbol);
    }
}

TEST(PEnvelopeTest, AbelianLine) {
    auto f = Field::make(2);
    auto E = p_envelope(abelian(f, 1), 2);
    EXPECT_EQ(E.hat.dim, 3u);
    EXPECT_EQ(E.hat.labels, (std::vector<std::string>{"e", "e^2", "e^4"}));
    EXPECT_EQ(E.hat.pmap[0], E.hat.basis(1));
    EXPECT_TRUE(is_zero(E.hat.pmap[2]));
    for (const auto& r : check_rlie(E.hat, 20)) EXPECT_TRUE(r.ok()) << r.name;
}

namespace {

// hat basis element e_i^(p^k) as an element of U(L)
Vec power_in_u(const FinRing& U, std::size_t i, int e) {
    Vec v = U.one();
    for (int t = 0; t < e; ++t) v = U.mul(v, U.basis(U.gens[i]));
    return v;
}

void expect_matches_u(const LieAlgebra& L, int N, int D) {
    const auto E = p_envelope(L, N);
    const auto U = U_of(L, D);
    const int p = L.F().p();
    std::vector<Vec> img;
    for (int k = 0, e = 1; k <= N; ++k, e *= p)
        for (std::size_t i = 0; i < L.dim; ++i) img.push_back(power_in_u(U, i, e));
    auto to_u = [&](const Vec& h) {
        Vec v = U.zero();
        for (std::size_t b = 0; b < h.size(); ++b) axpy(v, h[b], img[b]);
        return v;
    };
    for (std::size_t a = 0; a < E.hat.dim; ++a)
        for (std::size_t b = 0; b < E.hat.dim; ++b) {
            const Vec comm = sub(U.mul(img[a], img[b]), U.mul(img[b], img[a]));
            EXPECT_EQ(to_u(E.hat.bracket[a * E.hat.dim + b]), comm) << E.hat.labels[a] << "," << E.hat.labels[b];
        }
    // below the top layer the p-map is the associative p-th power
    for (std::size_t a = 0; a < L.dim * N; ++a) {
        Vec pw = U.one();
        for (int t = 0; t < p; ++t) pw = U.mul(pw, img[a]);
        EXPECT_EQ(to_u(E.hat.pmap[a]), pw) << E.hat.labels[a];
    }
}

}  // namespace

TEST(PEnvelopeTest, Heisenberg) {
    auto L = heisenberg(Field::make(2));
    auto E = p_envelope(L, 1);
    EXPECT_EQ(E.hat.dim, 6u);
    for (const auto& r : check_rlie(E.hat, 20)) EXPECT_TRUE(r.ok()) << r.name;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            EXPECT_EQ(E.eta.apply(L.br(L.basis(i), L.basis(j))), E.hat.br(E.eta.col(i), E.eta.col(j)));
    EXPECT_EQ(rank(E.eta), 3u);
    auto E3 = p_envelope(heisenberg(Field::make(3)), 2);
    EXPECT_EQ(E3.hat.dim, 9u);
    for (const auto& r : check_rlie(E3.hat, 10)) EXPECT_TRUE(r.ok()) << r.name;
}

TEST(PEnvelopeTest, AgreesWithCommutatorsInU) {
    expect_matches_u(heisenberg(Field::make(2)), 1, 8);
    expect_matches_u(heisenberg(Field::make(3)), 1, 12);
    expect_matches_u(abelian(Field::make(2), 2), 2, 16);
}

TEST(PEnvelopeTest, TruncationTooSmall) {
    try {
        p_envelope(abelian(Field::make(2), 1), 0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::TruncationTooSmall);
    }
    try {
        p_envelope(sl2(Field::make(3)), 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::TruncationTooSmall);
    }
}

TEST(RestrictedEnvelope, SpecExamples) {
    auto f = Field::make(2);
    auto u = u_of(abelian(f, 1, {unit_vec(*f, 1, 0)}));
    EXPECT_EQ(u.dim, 2u);
    EXPECT_EQ(u.mul(el(u, "e"), el(u, "e")), el(u, "e"));
    auto L = abelian(f, 1);
    auto U = U_of(L, 3);
    auto w = w_of(L, 1);
    EXPECT_TRUE(is_zero(theta_lie(U, w).col(index_of(U, "e^2"))));
    auto H = heisenberg(f);
    auto UH = U_of(H, 2);
    auto wH = w_of(H, 1);
    EXPECT_EQ(theta_lie(UH, wH).col(index_of(UH, "z")), el(wH, "z"));
}

TEST(TwistedRings, FKillsAugmentationIdeal) {
    auto f4 = Field::make(2, 2);
    auto L = heisenberg(f4);
    auto w = w_of(L, 2);
    const std::size_t du = w.dim / 3;
    std::mt19937_64 rng(5);
    for (int t = 0; t < 100; ++t) {
        Vec a = w.zero();
        for (std::size_t m = 0; m < du; ++m)
            if (m != w.unit) a[m] = random_fe(*f4, rng);
        const int b = 1 + static_cast<int>(rng() % 2);
        Vec v = w.zero();
        for (std::size_t m = 0; m < du; ++m) v[b * du + m] = random_fe(*f4, rng);
        EXPECT_TRUE(is_zero(w.mul(a, v)));
        // right scalar rule: f^b * lambda = lambda^(p^b) f^b
        const Fe lam = random_fe(*f4, rng);
        const Vec fb = w.basis(b * du + w.unit);
        EXPECT_EQ(w.mul(fb, scale(lam, w.one())), scale(lam.pow(b == 1 ? 2 : 4), fb));
    }
}

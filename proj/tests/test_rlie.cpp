#include <gtest/gtest.h>

#include "dpalg/error.hpp"
#include "dpalg/rlie.hpp"

using namespace dpalg;

namespace {

bool passes(const std::vector<RelationReport>& reps, const std::string& name) {
    for (const auto& r : reps)
        if (r.name == name) return r.ok();
    ADD_FAILURE() << "missing relation " << name;
    return false;
}

void expect_all(const std::vector<RelationReport>& reps) {
    for (const auto& r : reps) EXPECT_TRUE(r.ok()) << r.name << ": " << r.witness;
}

}  // namespace

TEST(Rlie, SOneInCharTwoIsBracket) {
    auto L = heisenberg(Field::make(2));
    const Vec x = L.basis(0), y = L.basis(1);
    EXPECT_EQ(s_i(L, x, y, 1), L.br(x, y));
    EXPECT_EQ(pmap_extend(L, add(x, y)), L.basis(2));
}

TEST(Rlie, SOneMatchesAdPower) {
    // p = 3: ad_{lam x + y}^2(x) = [[x,y],y] + lam [[x,y],x], so s_1 = [[x,y],y]
    auto L = sl2(Field::make(3));
    const Vec e = L.basis(0), f = L.basis(2);
    EXPECT_EQ(s_i(L, e, f, 1), L.br(L.br(e, f), f));
    EXPECT_EQ(s_i(L, e, f, 2), scale(L.F().from_int(2).inv(), L.br(L.br(e, f), e)));
}

TEST(Rlie, StandardExamplesAreRestricted) {
    expect_all(check_rlie(sl2(Field::make(3)), 40));
    expect_all(check_rlie(sl2(Field::make(5)), 20));
    expect_all(check_rlie(heisenberg(Field::make(2)), 40));
    expect_all(check_rlie(heisenberg(Field::make(3)), 40));
    auto f4 = Field::make(2, 2);
    expect_all(check_rlie(heisenberg(f4), 40));
    expect_all(check_rlie(abelian(f4, 2, {unit_vec(*f4, 2, 1), zero_vec(*f4, 2)}), 40));
}

TEST(Rlie, WrongPmapIsCaught) {
    auto L = sl2(Field::make(3));
    L.pmap[0] = L.basis(0);  // ad(e)^3 = 0 but ad(e) != 0
    EXPECT_FALSE(passes(check_rlie(L, 10), "RLeq2"));
    auto H = heisenberg(Field::make(3));
    H.pmap[2] = H.basis(0);  // z central but ad(x) nonzero
    EXPECT_FALSE(passes(check_rlie(H, 10), "RLeq2"));
}

TEST(Rlie, Sl2NeedsOddCharacteristic) {
    try {
        sl2(Field::make(2));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::BadCharacteristic);
    }
}

TEST(Rlie, PmapIsFrobeniusSemilinearOverF4) {
    auto f4 = Field::make(2, 2);
    auto L = abelian(f4, 1, {unit_vec(*f4, 1, 0)});
    const Fe w = f4->element(2);
    EXPECT_EQ(pmap_extend(L, {w}), Vec{w * w});
}

TEST(Rlie, Modules) {
    auto f = Field::make(3);
    auto L = sl2(f);
    expect_all(check_restricted_module(L, adjoint_module(L)));
    SemilinearMap fm{Matrix::identity(*f, 2), 1};
    expect_all(check_restricted_module(L, trivial_module(L, 2, fm)));

    auto H = heisenberg(f);
    // x acts nontrivially on a 2-dim module, so f landing everywhere is not invariant
    RestrictedModule M = trivial_module(H, 2, fm);
    M.action[0](0, 1) = f->one();
    EXPECT_TRUE(passes(check_restricted_module(H, M), "module-law"));
    EXPECT_TRUE(passes(check_restricted_module(H, M), "restricted"));
    EXPECT_FALSE(passes(check_restricted_module(H, M), "f-invariant"));

    RestrictedModule bad = trivial_module(H, 2);
    bad.action[0](0, 1) = f->one();
    bad.action[1](1, 0) = f->one();
    EXPECT_FALSE(passes(check_restricted_module(H, bad), "module-law"));
}

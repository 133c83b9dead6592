#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "dpalg/combinatorics.hpp"
#include "dpalg/error.hpp"
#include "dpalg/lucas.hpp"

using namespace dpalg;

TEST(Compositions, Split) {
    EXPECT_EQ(compose_split({3, 1}, 1, 2, 1), (Composition{2, 1, 1}));
    EXPECT_EQ(compose_split({2}, 1, 0, 2), (Composition{0, 2}));
    EXPECT_EQ(compose_split({1, 1}, 2, 1, 0), (Composition{1, 1, 0}));
    EXPECT_THROW(compose_split({3, 1}, 1, 1, 1), Error);
}

TEST(Compositions, Refine) {
    EXPECT_EQ(refine({2, 1}, {1, 1, 1}), (Composition{2, 1}));
    EXPECT_EQ(refine({3}, {1, 2, 3}), (Composition{6}));
    EXPECT_EQ(refine({1, 1}, {2, 2}), (Composition{2, 2}));
    EXPECT_THROW(refine({2}, {1, 1, 1}), Error);
    std::mt19937 rng(1);
    for (int t = 0; t < 50; ++t) {
        Composition r(1 + rng() % 5);
        for (auto& x : r) x = static_cast<int>(rng() % 4);
        EXPECT_EQ(refine(Composition(r.size(), 1), r), r);
    }
}

TEST(Compositions, Diamond) {
    EXPECT_EQ(diamond({2}, {{1, 1}}), (Composition{2, 2}));
    EXPECT_EQ(diamond({1, 1}, {{1}, {1}}), (Composition{1, 1}));
    EXPECT_EQ(diamond({1}, {{2}}), (Composition{2}));
    EXPECT_THROW(diamond({1, 1}, {{2}}), Error);
}

TEST(Permutations, BlockPermutation) {
    EXPECT_EQ(block_permutation({1, 0}, {2, 1}), (Perm{1, 2, 0}));
    EXPECT_EQ(block_permutation({0, 1, 2}, {2, 0, 3}), identity_perm(5));
    EXPECT_EQ(block_permutation({1, 0}, {1, 1}), (Perm{1, 0}));
    EXPECT_THROW(block_permutation({1, 0}, {1, 1, 1}), Error);
}

TEST(Permutations, BlockPermutationIsHomomorphism) {
    std::mt19937 rng(2);
    for (int s = 1; s <= 4; ++s) {
        auto group = all_perms(s);
        for (int t = 0; t < 30; ++t) {
            Composition r(s);
            for (auto& x : r) x = static_cast<int>(rng() % 3);
            const auto& rho = group[rng() % group.size()];
            const auto& sigma = group[rng() % group.size()];
            auto lhs = block_permutation(compose(rho, sigma), r);
            auto rhs = compose(block_permutation(rho, permute_parts(r, sigma)), block_permutation(sigma, r));
            EXPECT_EQ(lhs, rhs);
        }
    }
}

TEST(Permutations, Shuffles) {
    EXPECT_EQ(shuffles({1, 1}), (std::vector<Perm>{{0, 1}, {1, 0}}));
    EXPECT_EQ(shuffles({2, 1}).size(), 3u);
    EXPECT_EQ(shuffles({2, 2}).size(), 6u);
}

// every shuffle is increasing on blocks, all distinct, count = multinomial
TEST(Permutations, ShuffleCountsMatchMultinomial) {
    std::mt19937 rng(4);
    for (int t = 0; t < 60; ++t) {
        Composition r(1 + rng() % 4);
        for (auto& x : r) x = static_cast<int>(rng() % 3);
        if (total(r) > 8) continue;
        auto sh = shuffles(r);
        std::set<Perm> distinct(sh.begin(), sh.end());
        EXPECT_EQ(distinct.size(), sh.size());
        EXPECT_TRUE(std::is_sorted(sh.begin(), sh.end()));
        // exact multinomial by integer arithmetic
        std::uint64_t m = factorial(total(r));
        for (int x : r) m /= factorial(x);
        EXPECT_EQ(sh.size(), m);
        for (const auto& p : sh) {
            int start = 0;
            for (int x : r) {
                for (int i = 1; i < x; ++i) EXPECT_LT(p[start + i - 1], p[start + i]);
                start += x;
            }
        }
    }
}

namespace {

bool same_left_coset(const Perm& a, const Perm& b, const std::vector<Perm>& h) {
    auto x = compose(inverse(a), b);
    return std::binary_search(h.begin(), h.end(), x);
}

}  // namespace

TEST(Cosets, Examples) {
    auto s2 = all_perms(2);
    EXPECT_EQ(coset_reps(s2, s2).size(), 1u);
    for (int p : {2, 3, 5}) EXPECT_EQ(coset_reps(all_perms(p), young_subgroup(Composition(p, 1))).size(), factorial(p));
    EXPECT_EQ(coset_reps(young_subgroup({2}), young_subgroup({1, 1})).size(), 2u);
}

TEST(Cosets, CompleteAndDuplicateFree) {
    std::mt19937 rng(6);
    for (int t = 0; t < 40; ++t) {
        int n = 1 + static_cast<int>(rng() % 7);
        Composition r;
        for (int left = n; left > 0;) {
            int x = 1 + static_cast<int>(rng() % left);
            r.push_back(x);
            left -= x;
        }
        auto big = all_perms(n);
        auto small = young_subgroup(r);
        auto reps = coset_reps(big, small);
        EXPECT_EQ(reps.size() * small.size(), big.size());
        for (std::size_t i = 0; i < reps.size(); ++i)
            for (std::size_t j = i + 1; j < reps.size(); ++j) EXPECT_FALSE(same_left_coset(reps[i], reps[j], small));
        // lexicographic minimum of its coset
        for (const auto& g : reps)
            for (const auto& h : small) EXPECT_LE(g, compose(g, h));
    }
}

TEST(Cosets, ClosureMatchesYoungSubgroup) {
    // Sigma_(2,2) generated by two transpositions
    auto g = group_closure({{1, 0, 2, 3}, {0, 1, 3, 2}}, 4);
    EXPECT_EQ(g, young_subgroup({2, 2}));
    EXPECT_THROW(coset_reps(all_perms(3), {{1, 0, 2}, {0, 2, 1}, {0, 1, 2}}), Error);
}

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dpalg {

using Composition = std::vector<int>;
/// One-line notation, 0-based: perm[i] is the image of i. Printed 1-based.
using Perm = std::vector<int>;

int total(const Composition& r);
std::string to_string(const Composition& r);
std::string perm_to_string(const Perm& p);

Perm identity_perm(int n);
/// (a b)(x) = a(b(x))
Perm compose(const Perm& a, const Perm& b);
Perm inverse(const Perm& a);
bool is_permutation(const Perm& a);
/// Rank of a among all permutations of its size in lexicographic order.
std::uint64_t lehmer_rank(const Perm& a);
std::uint64_t factorial(int n);
std::vector<Perm> all_perms(int n);

/// r o_i (l, l'): part i (1-based) replaced by (l, l').
Composition compose_split(const Composition& r, int i, int l, int l2);
/// q |> r: sums consecutive groups of r of sizes q_1, q_2, ...
Composition refine(const Composition& q, const Composition& r);
/// r <> (q_1..q_s): lists r_i * q_{i,t} for each i, t.
Composition diamond(const Composition& r, const std::vector<Composition>& qs);
/// Moves block i (size r_i) to slot rho(i), keeping order inside blocks.
Perm block_permutation(const Perm& rho, const Composition& r);
/// r^sigma with (r^sigma)_j = r_{sigma^{-1}(j)}
Composition permute_parts(const Composition& r, const Perm& sigma);
/// Permutations increasing on each block of r, lexicographic.
std::vector<Perm> shuffles(const Composition& r);

/// Elements of the Young subgroup Sigma_r (block-preserving permutations).
std::vector<Perm> young_subgroup(const Composition& r);
/// Subgroup generated by gens inside Sigma_n (n <= 10).
std::vector<Perm> group_closure(const std::vector<Perm>& gens, int n);
/// Left coset representatives of small inside big, lexicographic minimum per coset.
/// Both are explicit element lists; small must be a subgroup of big.
std::vector<Perm> coset_reps(const std::vector<Perm>& big, const std::vector<Perm>& small,
                             std::uint64_t max_index = 1000000);

}  // namespace dpalg

#pragma once

#include <vector>

namespace dpalg {

/// C(n, k) mod p by Lucas: product of digitwise binomials in base p.
int lucas_binomial(long long n, long long k, int p);
/// n! / prod(parts_i!) mod p, as a product of iterated binomials.
int lucas_multinomial(long long n, const std::vector<long long>& parts, int p);
/// Base-p digits of n, least significant first.
std::vector<int> digits(long long n, int p);
/// n! mod p (zero once n >= p).
int factorial_mod(long long n, int p);
/// (kn)! / (k! (n!)^k) mod p = prod_{t=1..k} C(tn - 1, n - 1); the coefficient of gamma_k(gamma_n).
int gamma_comp_coefficient(long long k, long long n, int p);

}  // namespace dpalg

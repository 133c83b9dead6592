#include "dpalg/lucas.hpp"

#include "dpalg/error.hpp"

namespace dpalg {

namespace {

int small_binomial(int n, int k, int p) {
    if (k < 0 || k > n) return 0;
    // n < p here, so n! is invertible mod p
    long long num = 1, den = 1;
    for (int i = 0; i < k; ++i) {
        num = num * (n - i) % p;
        den = den * (i + 1) % p;
    }
    long long inv = 1, b = den, e = p - 2;
    while (e > 0) {
        if (e & 1) inv = inv * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return static_cast<int>(num * inv % p);
}

}  // namespace

std::vector<int> digits(long long n, int p) {
    std::vector<int> d;
    while (n > 0) {
        d.push_back(static_cast<int>(n % p));
        n /= p;
    }
    return d;
}

int lucas_binomial(long long n, long long k, int p) {
    if (p < 2) throw Error(ErrorKind::InvalidArgs, "modulus must be prime");
    if (n < 0 || k < 0 || k > n) throw Error(ErrorKind::InvalidArgs, "binomial needs 0 <= k <= n");
    long long r = 1;
    while (n > 0 || k > 0) {
        const int nd = static_cast<int>(n % p), kd = static_cast<int>(k % p);
        if (kd > nd) return 0;
        r = r * small_binomial(nd, kd, p) % p;
        n /= p;
        k /= p;
    }
    return static_cast<int>(r);
}

int lucas_multinomial(long long n, const std::vector<long long>& parts, int p) {
    long long total = 0;
    for (auto x : parts) {
        if (x < 0) throw Error(ErrorKind::InvalidArgs, "negative multinomial part");
        total += x;
    }
    if (total != n) throw Error(ErrorKind::InvalidArgs, "multinomial parts must sum to n");
    long long r = 1, acc = 0;
    for (auto x : parts) {
        acc += x;
        r = r * lucas_binomial(acc, x, p) % p;
        if (r == 0) return 0;
    }
    return static_cast<int>(r);
}

int factorial_mod(long long n, int p) {
    if (n >= p) return 0;
    long long r = 1;
    for (long long i = 2; i <= n; ++i) r = r * i % p;
    return static_cast<int>(r);
}

int gamma_comp_coefficient(long long k, long long n, int p) {
    if (k == 0) return 1;
    if (n == 0) return 1;
    long long r = 1;
    for (long long t = 1; t <= k; ++t) {
        r = r * lucas_binomial(t * n - 1, n - 1, p) % p;
        if (r == 0) return 0;
    }
    return static_cast<int>(r);
}

}  // namespace dpalg

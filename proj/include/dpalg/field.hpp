#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "dpalg/error.hpp"

namespace dpalg {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Element of F_{p^k}. Encoded as the base-p integer of its power-basis
/// coordinates (low-to-high); carries a non-owning pointer to its field.
class Fe {
public:
    Fe() = default;
    Fe(const Field* field, std::uint32_t code) : field_(field), code_(code) {}

    const Field* field() const { return field_; }
    std::uint32_t code() const { return code_; }
    bool is_zero() const { return code_ == 0; }
    bool is_one() const;

    Fe operator+(Fe rhs) const;
    Fe operator-(Fe rhs) const;
    Fe operator*(Fe rhs) const;
    Fe operator/(Fe rhs) const;
    Fe operator-() const;
    Fe& operator+=(Fe rhs) { return *this = *this + rhs; }
    Fe& operator-=(Fe rhs) { return *this = *this - rhs; }
    Fe& operator*=(Fe rhs) { return *this = *this * rhs; }

    Fe inv() const;
    Fe pow(std::uint64_t e) const;
    /// a^(p^e)
    Fe frob(int e = 1) const;
    std::vector<int> coeffs() const;

    friend bool operator==(Fe a, Fe b) { return a.code_ == b.code_; }
    friend bool operator!=(Fe a, Fe b) { return a.code_ != b.code_; }

private:
    const Field* field_ = nullptr;
    std::uint32_t code_ = 0;
};

/// F_{p^k} presented as F_p[t]/(modulus). Immutable once built.
class Field {
public:
    /// modulus: k+1 coefficients low-to-high, monic. Empty selects a default
    /// irreducible polynomial for k <= 4 (p-dependent search, deterministic).
    static FieldPtr make(int p, int k = 1, std::vector<int> modulus = {});

    int p() const { return p_; }
    int k() const { return k_; }
    std::uint32_t order() const { return q_; }
    const std::vector<int>& modulus() const { return modulus_; }
    bool same_as(const Field& other) const;
    std::string describe() const;

    Fe zero() const { return Fe(this, 0); }
    Fe one() const { return Fe(this, 1); }
    Fe from_int(long long n) const;
    Fe from_coeffs(std::span<const int> coeffs) const;
    Fe element(std::uint32_t code) const;
    /// The class of t in F_p[t]/(modulus) (ω for F_4).
    Fe gen() const;

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        if (k_ == 1) {
            std::uint32_t s = a + b;
            return s >= static_cast<std::uint32_t>(p_) ? s - p_ : s;
        }
        return add_[a * q_ + b];
    }
    std::uint32_t neg(std::uint32_t a) const {
        if (k_ == 1) return a == 0 ? 0 : p_ - a;
        return neg_[a];
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        if (k_ == 1) return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p_);
        return mul_[a * q_ + b];
    }
    std::uint32_t inv(std::uint32_t a) const;
    std::uint32_t frob(std::uint32_t a, int e) const;

    /// Matrix (k x k, row-major) of x -> c*x on F_p-coordinates.
    std::vector<int> mul_matrix(Fe c) const;
    /// Matrix (k x k) of x -> x^(p^e) on F_p-coordinates.
    std::vector<int> frob_matrix(int e) const;

    Field(int p, int k, std::vector<int> modulus);

private:
    std::uint32_t poly_mul(std::uint32_t a, std::uint32_t b) const;

    int p_;
    int k_;
    std::uint32_t q_;
    std::vector<int> modulus_;
    std::vector<std::uint32_t> add_;
    std::vector<std::uint32_t> mul_;
    std::vector<std::uint32_t> inv_;
    std::vector<std::uint32_t> neg_;
    std::vector<std::uint32_t> frob_;
};

bool is_prime(long long n);
/// Irreducibility over F_p by exhaustive search for monic factors of degree <= deg/2.
bool is_irreducible(int p, const std::vector<int>& monic_low_to_high);

enum class FieldOp { add, sub, mul, inv, pow };

/// Checked arithmetic; b is ignored for inv, and exponent is used only for pow.
Fe field_arith(Fe a, Fe b, FieldOp op, std::uint64_t exponent = 0);
Fe frobenius(Fe a, int e);

using Vec = std::vector<Fe>;

Vec zero_vec(const Field& f, std::size_t n);
Vec unit_vec(const Field& f, std::size_t n, std::size_t i);
bool is_zero(const Vec& v);
void axpy(Vec& y, Fe a, const Vec& x);  // y += a*x
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(Fe a, const Vec& x);
Vec frob_vec(const Vec& v, int e);
Fe random_fe(const Field& f, std::mt19937_64& rng);
Vec random_vec(const Field& f, std::size_t n, std::mt19937_64& rng);
std::string to_string(Fe a);
std::string to_string(const Vec& v);

}  // namespace dpalg

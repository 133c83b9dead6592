#include "dpalg/field.hpp"

#include <sstream>

namespace dpalg {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DivisionByZero: return "DivisionByZero";
        case ErrorKind::FieldMismatch: return "FieldMismatch";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::NoSolution: return "NoSolution";
        case ErrorKind::InvalidArgs: return "InvalidArgs";
        case ErrorKind::BadSplit: return "BadSplit";
        case ErrorKind::ShapeMismatch: return "ShapeMismatch";
        case ErrorKind::TooLarge: return "TooLarge";
        case ErrorKind::ArityTooLarge: return "ArityTooLarge";
        case ErrorKind::DegreeOverflow: return "DegreeOverflow";
        case ErrorKind::UnsupportedPresentation: return "UnsupportedPresentation";
        case ErrorKind::BadCharacteristic: return "BadCharacteristic";
        case ErrorKind::TruncationTooSmall: return "TruncationTooSmall";
        case ErrorKind::NotSquareZero: return "NotSquareZero";
        case ErrorKind::NotSplit: return "NotSplit";
        case ErrorKind::UnsupportedSymbol: return "UnsupportedSymbol";
        case ErrorKind::TruncationMismatch: return "TruncationMismatch";
        case ErrorKind::WellDefinednessFailure: return "WellDefinednessFailure";
        case ErrorKind::NotNilpotentBasis: return "NotNilpotentBasis";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::ValidationError: return "ValidationError";
        case ErrorKind::TaskError: return "TaskError";
    }
    return "Error";
}

bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

// Remainder of a modulo b over F_p; both low-to-high, b monic.
std::vector<int> poly_rem(std::vector<int> a, const std::vector<int>& b, int p) {
    const std::size_t db = b.size() - 1;
    while (a.size() > db) {
        const int lead = a.back();
        if (lead != 0) {
            const std::size_t shift = a.size() - 1 - db;
            for (std::size_t i = 0; i <= db; ++i)
                a[shift + i] = ((a[shift + i] - lead * b[i]) % p + p) % p;
        }
        a.pop_back();
    }
    return a;
}

}  // namespace

bool is_irreducible(int p, const std::vector<int>& f) {
    const int deg = static_cast<int>(f.size()) - 1;
    if (deg < 1) return false;
    if (deg == 1) return true;
    // every monic g of degree d in [1, deg/2]
    for (int d = 1; 2 * d <= deg; ++d) {
        long long count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (long long idx = 0; idx < count; ++idx) {
            std::vector<int> g(d + 1, 0);
            long long t = idx;
            for (int i = 0; i < d; ++i) {
                g[i] = static_cast<int>(t % p);
                t /= p;
            }
            g[d] = 1;
            auto r = poly_rem(f, g, p);
            bool zero = true;
            for (int c : r) zero = zero && c == 0;
            if (zero) return false;
        }
    }
    return true;
}

FieldPtr Field::make(int p, int k, std::vector<int> modulus) {
    if (!is_prime(p)) throw Error(ErrorKind::InvalidArgs, "p = " + std::to_string(p) + " is not prime");
    if (k < 1) throw Error(ErrorKind::InvalidArgs, "extension degree must be >= 1");
    if (modulus.empty()) {
        if (k == 1) {
            modulus = {0, 1};
        } else {
            // first irreducible monic polynomial in base-p enumeration order
            long long count = 1;
            for (int i = 0; i < k; ++i) count *= p;
            for (long long idx = 0; idx < count && modulus.empty(); ++idx) {
                std::vector<int> f(k + 1, 0);
                long long t = idx;
                for (int i = 0; i < k; ++i) {
                    f[i] = static_cast<int>(t % p);
                    t /= p;
                }
                f[k] = 1;
                if (is_irreducible(p, f)) modulus = f;
            }
        }
    }
    if (static_cast<int>(modulus.size()) != k + 1)
        throw Error(ErrorKind::InvalidArgs, "modulus must have k+1 coefficients");
    for (int& c : modulus) {
        if (c < 0 || c >= p) throw Error(ErrorKind::InvalidArgs, "modulus coefficient out of range");
    }
    if (modulus.back() != 1) throw Error(ErrorKind::InvalidArgs, "modulus must be monic");
    if (!is_irreducible(p, modulus)) throw Error(ErrorKind::InvalidArgs, "modulus is not irreducible");
    return std::make_shared<const Field>(p, k, std::move(modulus));
}

Field::Field(int p, int k, std::vector<int> modulus) : p_(p), k_(k), q_(1), modulus_(std::move(modulus)) {
    for (int i = 0; i < k; ++i) q_ *= static_cast<std::uint32_t>(p);
    if (k > 1) {
        if (q_ > 1024) throw Error(ErrorKind::TooLarge, "extension fields limited to q <= 1024");
        add_.resize(q_ * q_);
        mul_.resize(q_ * q_);
        for (std::uint32_t a = 0; a < q_; ++a) {
            for (std::uint32_t b = 0; b < q_; ++b) {
                std::uint32_t s = 0, pw = 1, x = a, y = b;
                for (int i = 0; i < k; ++i) {
                    s += ((x % p + y % p) % p) * pw;
                    x /= p;
                    y /= p;
                    pw *= p;
                }
                add_[a * q_ + b] = s;
                mul_[a * q_ + b] = poly_mul(a, b);
            }
        }
        inv_.assign(q_, 0);
        for (std::uint32_t a = 1; a < q_; ++a)
            for (std::uint32_t b = 1; b < q_; ++b)
                if (mul_[a * q_ + b] == 1) inv_[a] = b;
        neg_.resize(q_);
        for (std::uint32_t a = 0; a < q_; ++a) {
            std::uint32_t r = 0, pw = 1, x = a;
            for (int i = 0; i < k; ++i) {
                std::uint32_t d = x % p;
                x /= p;
                r += (d == 0 ? 0 : p - d) * pw;
                pw *= p;
            }
            neg_[a] = r;
        }
        frob_.resize(q_);
        for (std::uint32_t a = 0; a < q_; ++a) {
            std::uint32_t r = 1;
            for (int i = 0; i < p; ++i) r = mul_[r * q_ + a];
            frob_[a] = r;
        }
    } else {
        if (p > 46340) throw Error(ErrorKind::TooLarge, "prime too large");
    }
}

std::uint32_t Field::poly_mul(std::uint32_t a, std::uint32_t b) const {
    std::vector<int> x(k_), y(k_);
    for (int i = 0; i < k_; ++i) {
        x[i] = static_cast<int>(a % p_);
        a /= p_;
        y[i] = static_cast<int>(b % p_);
        b /= p_;
    }
    std::vector<int> prod(2 * k_ - 1, 0);
    for (int i = 0; i < k_; ++i)
        for (int j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p_;
    auto r = poly_rem(prod, modulus_, p_);
    std::uint32_t code = 0, pw = 1;
    for (int i = 0; i < k_; ++i) {
        code += (i < static_cast<int>(r.size()) ? static_cast<std::uint32_t>(r[i]) : 0u) * pw;
        pw *= p_;
    }
    return code;
}

bool Field::same_as(const Field& o) const { return this == &o || (p_ == o.p_ && k_ == o.k_ && modulus_ == o.modulus_); }

std::string Field::describe() const {
    std::ostringstream os;
    os << "F_" << q_;
    if (k_ > 1) {
        os << " = F_" << p_ << "[t]/(";
        bool first = true;
        for (int i = k_; i >= 0; --i) {
            if (modulus_[i] == 0) continue;
            if (!first) os << " + ";
            first = false;
            if (i == 0 || modulus_[i] != 1) os << modulus_[i];
            if (i >= 1) os << "t";
            if (i > 1) os << "^" << i;
        }
        os << ")";
    }
    return os.str();
}

Fe Field::from_int(long long n) const {
    long long r = n % p_;
    if (r < 0) r += p_;
    return Fe(this, static_cast<std::uint32_t>(r));
}

Fe Field::from_coeffs(std::span<const int> coeffs) const {
    if (static_cast<int>(coeffs.size()) > k_) throw Error(ErrorKind::InvalidArgs, "too many coordinates for field element");
    std::uint32_t code = 0, pw = 1;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        int c = ((coeffs[i] % p_) + p_) % p_;
        code += static_cast<std::uint32_t>(c) * pw;
        pw *= p_;
    }
    return Fe(this, code);
}

Fe Field::element(std::uint32_t code) const {
    if (code >= q_) throw Error(ErrorKind::InvalidArgs, "field element code out of range");
    return Fe(this, code);
}

Fe Field::gen() const { return k_ == 1 ? Fe(this, 0) : Fe(this, static_cast<std::uint32_t>(p_)); }

std::uint32_t Field::inv(std::uint32_t a) const {
    if (a == 0) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
    if (k_ == 1) {
        // a^(p-2)
        std::uint64_t r = 1, b = a, e = static_cast<std::uint64_t>(p_) - 2;
        while (e) {
            if (e & 1) r = r * b % p_;
            b = b * b % p_;
            e >>= 1;
        }
        return static_cast<std::uint32_t>(r);
    }
    return inv_[a];
}

std::uint32_t Field::frob(std::uint32_t a, int e) const {
    if (k_ == 1) return a;
    e %= k_;
    for (int i = 0; i < e; ++i) a = frob_[a];
    return a;
}

std::vector<int> Field::mul_matrix(Fe c) const {
    std::vector<int> m(static_cast<std::size_t>(k_) * k_);
    std::uint32_t basis = 1;
    for (int j = 0; j < k_; ++j) {
        auto coords = Fe(this, mul(c.code(), basis)).coeffs();
        for (int i = 0; i < k_; ++i) m[i * k_ + j] = coords[i];
        basis *= p_;
    }
    return m;
}

std::vector<int> Field::frob_matrix(int e) const {
    std::vector<int> m(static_cast<std::size_t>(k_) * k_);
    std::uint32_t basis = 1;
    for (int j = 0; j < k_; ++j) {
        auto coords = Fe(this, frob(basis, e)).coeffs();
        for (int i = 0; i < k_; ++i) m[i * k_ + j] = coords[i];
        basis *= p_;
    }
    return m;
}

namespace {

const Field* common(const Field* a, const Field* b) {
    if (a == b) return a;
    if (!a) return b;
    if (!b) return a;
    if (!a->same_as(*b)) throw Error(ErrorKind::FieldMismatch, a->describe() + " vs " + b->describe());
    return a;
}

}  // namespace

bool Fe::is_one() const { return code_ == 1; }

Fe Fe::operator+(Fe rhs) const {
    const Field* f = common(field_, rhs.field_);
    if (!f) return {};
    return Fe(f, f->add(code_, rhs.code_));
}

Fe Fe::operator-(Fe rhs) const {
    const Field* f = common(field_, rhs.field_);
    if (!f) return {};
    return Fe(f, f->sub(code_, rhs.code_));
}

Fe Fe::operator*(Fe rhs) const {
    const Field* f = common(field_, rhs.field_);
    if (!f) return {};
    return Fe(f, f->mul(code_, rhs.code_));
}

Fe Fe::operator/(Fe rhs) const { return *this * rhs.inv(); }

Fe Fe::operator-() const { return field_ ? Fe(field_, field_->neg(code_)) : *this; }

Fe Fe::inv() const {
    if (code_ == 0) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
    return Fe(field_, field_->inv(code_));
}

Fe Fe::pow(std::uint64_t e) const {
    Fe r = field_->one(), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

Fe Fe::frob(int e) const { return field_ ? Fe(field_, field_->frob(code_, e)) : *this; }

std::vector<int> Fe::coeffs() const {
    const int k = field_ ? field_->k() : 1;
    const int p = field_ ? field_->p() : 2;
    std::vector<int> c(k);
    std::uint32_t x = code_;
    for (int i = 0; i < k; ++i) {
        c[i] = static_cast<int>(x % p);
        x /= p;
    }
    return c;
}

Fe field_arith(Fe a, Fe b, FieldOp op, std::uint64_t exponent) {
    switch (op) {
        case FieldOp::add: return a + b;
        case FieldOp::sub: return a - b;
        case FieldOp::mul: return a * b;
        case FieldOp::inv: return a.inv();
        case FieldOp::pow: return a.pow(exponent);
    }
    throw Error(ErrorKind::InvalidArgs, "unknown field op");
}

Fe frobenius(Fe a, int e) {
    if (e < 0) throw Error(ErrorKind::InvalidArgs, "negative Frobenius power");
    return a.frob(e);
}

Vec zero_vec(const Field& f, std::size_t n) { return Vec(n, f.zero()); }

Vec unit_vec(const Field& f, std::size_t n, std::size_t i) {
    Vec v(n, f.zero());
    v.at(i) = f.one();
    return v;
}

bool is_zero(const Vec& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

void axpy(Vec& y, Fe a, const Vec& x) {
    if (a.is_zero()) return;
    if (y.size() != x.size()) throw Error(ErrorKind::DimensionMismatch, "axpy length mismatch");
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!x[i].is_zero()) y[i] += a * x[i];
}

Vec add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "vector add length mismatch");
    Vec r(a);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += b[i];
    return r;
}

Vec sub(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "vector sub length mismatch");
    Vec r(a);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] -= b[i];
    return r;
}

Vec scale(Fe a, const Vec& x) {
    Vec r(x);
    for (auto& v : r) v = a * v;
    return r;
}

Vec frob_vec(const Vec& v, int e) {
    Vec r(v);
    for (auto& x : r) x = x.frob(e);
    return r;
}

std::string to_string(Fe a) {
    if (!a.field() || a.field()->k() == 1) return std::to_string(a.code());
    std::ostringstream os;
    os << "[";
    auto c = a.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
    os << "]";
    return os.str();
}

std::string to_string(const Vec& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << to_string(v[i]);
    os << ")";
    return os.str();
}

Fe random_fe(const Field& f, std::mt19937_64& rng) {
    return f.element(static_cast<std::uint32_t>(rng() % f.order()));
}

Vec random_vec(const Field& f, std::size_t n, std::mt19937_64& rng) {
    Vec v(n);
    for (auto& x : v) x = random_fe(f, rng);
    return v;
}

}  // namespace dpalg

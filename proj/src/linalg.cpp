#include "dpalg/linalg.hpp"

#include <sstream>

#include "dpalg/kernels.hpp"

namespace dpalg {

Matrix Matrix::identity(const Field& f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
    return m;
}

Matrix Matrix::from_rows(const Field& f, const std::vector<Vec>& rows, std::size_t cols) {
    Matrix m(f, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw Error(ErrorKind::DimensionMismatch, "row length mismatch");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Matrix Matrix::from_columns(const Field& f, const std::vector<Vec>& cols, std::size_t rows) {
    Matrix m(f, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) m.set_col(j, cols[j]);
    return m;
}

Vec Matrix::row(std::size_t i) const { return Vec(data.begin() + i * cols, data.begin() + (i + 1) * cols); }

Vec Matrix::col(std::size_t j) const {
    Vec v(rows);
    for (std::size_t i = 0; i < rows; ++i) v[i] = (*this)(i, j);
    return v;
}

void Matrix::set_col(std::size_t j, const Vec& v) {
    if (v.size() != rows) throw Error(ErrorKind::DimensionMismatch, "column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) (*this)(i, j) = v[i];
}

Vec Matrix::apply(const Vec& v) const {
    if (v.size() != cols) throw Error(ErrorKind::DimensionMismatch, "matrix-vector size mismatch");
    Vec r(rows, field->zero());
    for (std::size_t j = 0; j < cols; ++j) {
        if (v[j].is_zero()) continue;
        const std::uint32_t c = v[j].code();
        for (std::size_t i = 0; i < rows; ++i) {
            const std::uint32_t a = data[i * cols + j].code();
            if (a) r[i] = Fe(field, field->add(r[i].code(), field->mul(a, c)));
        }
    }
    return r;
}

Matrix Matrix::transpose() const {
    Matrix t(*field, cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::frob(int e) const {
    Matrix r(*this);
    for (auto& x : r.data) x = x.frob(e);
    return r;
}

bool Matrix::is_zero() const {
    for (const auto& x : data)
        if (!x.is_zero()) return false;
    return true;
}

bool Matrix::is_identity() const {
    if (rows != cols) return false;
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if ((*this)(i, j).code() != (i == j ? 1u : 0u)) return false;
    return true;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols != o.rows) throw Error(ErrorKind::DimensionMismatch, "matrix product size mismatch");
    const Field& f = field ? *field : *o.field;
    Matrix r(f, rows, o.cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < cols; ++k) {
            const std::uint32_t a = data[i * cols + k].code();
            if (!a) continue;
            for (std::size_t j = 0; j < o.cols; ++j) {
                const std::uint32_t b = o.data[k * o.cols + j].code();
                if (b) r.data[i * o.cols + j] = Fe(&f, f.add(r.data[i * o.cols + j].code(), f.mul(a, b)));
            }
        }
    return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
    if (rows != o.rows || cols != o.cols) throw Error(ErrorKind::DimensionMismatch, "matrix sum size mismatch");
    Matrix r(*this);
    for (std::size_t i = 0; i < data.size(); ++i) r.data[i] += o.data[i];
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
    if (rows != o.rows || cols != o.cols) throw Error(ErrorKind::DimensionMismatch, "matrix difference size mismatch");
    Matrix r(*this);
    for (std::size_t i = 0; i < data.size(); ++i) r.data[i] -= o.data[i];
    return r;
}

Matrix Matrix::scaled(Fe c) const {
    Matrix r(*this);
    for (auto& x : r.data) x = c * x;
    return r;
}

Matrix vstack(const std::vector<Matrix>& blocks) {
    if (blocks.empty()) return {};
    std::size_t rows = 0;
    for (const auto& b : blocks) {
        if (b.cols != blocks[0].cols) throw Error(ErrorKind::DimensionMismatch, "vstack column mismatch");
        rows += b.rows;
    }
    Matrix m(*blocks[0].field, rows, blocks[0].cols);
    std::size_t at = 0;
    for (const auto& b : blocks) {
        std::copy(b.data.begin(), b.data.end(), m.data.begin() + at * m.cols);
        at += b.rows;
    }
    return m;
}

std::string to_string(const Matrix& m) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < m.rows; ++i) os << (i ? "," : "") << to_string(m.row(i));
    os << "]";
    return os.str();
}

namespace {

kernels::RawMatrix to_raw(const Matrix& a) {
    kernels::RawMatrix r{a.rows, a.cols, std::vector<std::uint32_t>(a.rows * a.cols)};
    for (std::size_t i = 0; i < a.data.size(); ++i) r.a[i] = a.data[i].code();
    return r;
}

std::vector<Vec> raw_kernel(const kernels::RawMatrix& m, const std::vector<std::size_t>& pivots, const Field& f) {
    std::vector<bool> is_pivot(m.cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t free = 0; free < m.cols; ++free) {
        if (is_pivot[free]) continue;
        Vec v(m.cols, f.zero());
        v[free] = f.one();
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            const std::uint32_t x = m.row(r)[free];
            if (x) v[pivots[r]] = Fe(&f, f.neg(x));
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace

Echelon rref(const Matrix& a, bool parallel) {
    Echelon e;
    if (!a.field) return e;
    auto raw = to_raw(a);
    e.pivots = parallel ? kernels::rref_parallel(raw, *a.field) : kernels::rref_serial(raw, *a.field);
    e.reduced = Matrix(*a.field, a.rows, a.cols);
    for (std::size_t i = 0; i < raw.a.size(); ++i) e.reduced.data[i] = Fe(a.field, raw.a[i]);
    return e;
}

std::size_t rank(const Matrix& a) { return rref(a).rank(); }

std::vector<Vec> kernel_basis(const Matrix& a) {
    if (!a.field) return {};
    auto raw = to_raw(a);
    auto piv = kernels::rref_serial(raw, *a.field);
    return raw_kernel(raw, piv, *a.field);
}

LinearSolution solve_linear(const Matrix& a, const Vec& b) {
    if (b.size() != a.rows) throw Error(ErrorKind::DimensionMismatch, "right-hand side length mismatch");
    const Field& f = *a.field;
    kernels::RawMatrix aug{a.rows, a.cols + 1, std::vector<std::uint32_t>(a.rows * (a.cols + 1))};
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t j = 0; j < a.cols; ++j) aug.row(i)[j] = a(i, j).code();
        aug.row(i)[a.cols] = b[i].code();
    }
    auto piv = kernels::rref_serial(aug, f);
    if (!piv.empty() && piv.back() == a.cols) throw Error(ErrorKind::NoSolution, "inconsistent linear system");
    LinearSolution s;
    s.solution = zero_vec(f, a.cols);
    for (std::size_t r = 0; r < piv.size(); ++r) s.solution[piv[r]] = Fe(&f, aug.row(r)[a.cols]);
    kernels::RawMatrix coef{a.rows, a.cols, std::vector<std::uint32_t>(a.rows * a.cols)};
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) coef.row(i)[j] = aug.row(i)[j];
    s.kernel = raw_kernel(coef, piv, f);
    return s;
}

bool Subspace::add(const Vec& v) {
    Vec r = reduce(v);
    std::size_t piv = n_;
    for (std::size_t j = 0; j < n_; ++j)
        if (!r[j].is_zero()) {
            piv = j;
            break;
        }
    if (piv == n_) return false;
    r = scale(r[piv].inv(), r);
    for (auto& row : rows_) {
        if (!row[piv].is_zero()) axpy(row, -row[piv], r);
    }
    // keep rows ordered by pivot
    std::size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < piv) ++pos;
    rows_.insert(rows_.begin() + static_cast<long>(pos), std::move(r));
    pivots_.insert(pivots_.begin() + static_cast<long>(pos), piv);
    return true;
}

Vec Subspace::reduce(const Vec& v) const {
    if (v.size() != n_) throw Error(ErrorKind::DimensionMismatch, "subspace ambient dimension mismatch");
    Vec r(v);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Fe c = r[pivots_[i]];
        if (!c.is_zero()) axpy(r, -c, rows_[i]);
    }
    return r;
}

std::vector<std::size_t> Subspace::complement() const {
    std::vector<bool> is_pivot(n_, false);
    for (auto c : pivots_) is_pivot[c] = true;
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < n_; ++j)
        if (!is_pivot[j]) out.push_back(j);
    return out;
}

Vec SemilinearMap::apply(const Vec& v) const { return matrix.apply(frob_vec(v, frobenius_power)); }

SemilinearMap SemilinearMap::compose(const SemilinearMap& o) const {
    // A Frob^e (B Frob^d v) = A Frob^e(B) Frob^(e+d) v
    return {matrix * o.matrix.frob(frobenius_power), frobenius_power + o.frobenius_power};
}

FpKernel semilinear_kernel(const std::vector<SemilinearEquation>& eqs, std::size_t n, const Field& f, bool parallel) {
    const int k = f.k();
    std::size_t rows = 0;
    for (const auto& eq : eqs) {
        if (eq.terms.empty()) continue;
        const std::size_t r = eq.terms[0].matrix.rows;
        for (const auto& t : eq.terms) {
            if (t.matrix.field && !t.matrix.field->same_as(f))
                throw Error(ErrorKind::FieldMismatch, "equation over a different field");
            if (t.matrix.rows != r || t.matrix.cols != n)
                throw Error(ErrorKind::DimensionMismatch, "equation term shape mismatch");
            if (t.frobenius_power < 0) throw Error(ErrorKind::InvalidArgs, "negative Frobenius power");
        }
        rows += r;
    }
    Field prime(f.p(), 1, {0, 1});
    const std::size_t kk = static_cast<std::size_t>(k);
    kernels::RawMatrix m{rows * kk, n * kk, std::vector<std::uint32_t>(rows * kk * n * kk, 0)};
    std::vector<std::vector<int>> frobs(kk);
    for (int e = 0; e < k; ++e) frobs[e] = f.frob_matrix(e);
    std::size_t at = 0;
    for (const auto& eq : eqs) {
        if (eq.terms.empty()) continue;
        const std::size_t r = eq.terms[0].matrix.rows;
        for (const auto& t : eq.terms) {
            const auto& fr = frobs[static_cast<std::size_t>(t.frobenius_power % k)];
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    const Fe c = t.matrix(i, j);
                    if (c.is_zero()) continue;
                    if (k == 1) {
                        auto& cell = m.row(at + i)[j];
                        cell = prime.add(cell, c.code());
                        continue;
                    }
                    auto mm = f.mul_matrix(c);
                    for (std::size_t a = 0; a < kk; ++a)
                        for (std::size_t b = 0; b < kk; ++b) {
                            long long s = 0;
                            for (std::size_t c2 = 0; c2 < kk; ++c2) s += mm[a * kk + c2] * fr[c2 * kk + b];
                            auto& cell = m.row((at + i) * kk + a)[j * kk + b];
                            cell = prime.add(cell, static_cast<std::uint32_t>(s % f.p()));
                        }
                }
        }
        at += r;
    }
    auto piv = parallel ? kernels::rref_parallel(m, prime) : kernels::rref_serial(m, prime);
    auto raw = raw_kernel(m, piv, prime);
    FpKernel out;
    out.dim = raw.size();
    for (const auto& v : raw) {
        Vec w(n, f.zero());
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<int> c(kk);
            for (std::size_t a = 0; a < kk; ++a) c[a] = static_cast<int>(v[j * kk + a].code());
            w[j] = f.from_coeffs(c);
        }
        out.basis.push_back(std::move(w));
    }
    return out;
}

FpKernel semilinear_kernel(const std::vector<SemilinearMap>& maps) {
    if (maps.empty()) throw Error(ErrorKind::InvalidArgs, "no equations");
    const Field& f = *maps[0].matrix.field;
    std::vector<SemilinearEquation> eqs;
    for (const auto& m : maps) eqs.push_back({{m}});
    return semilinear_kernel(eqs, maps[0].matrix.cols, f);
}

}  // namespace dpalg

#pragma once

#include <cstddef>
#include <vector>

#include "dpalg/field.hpp"

namespace dpalg {

/// Dense row-major matrix over F_{p^k}.
struct Matrix {
    const Field* field = nullptr;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Fe> data;

    Matrix() = default;
    Matrix(const Field& f, std::size_t r, std::size_t c) : field(&f), rows(r), cols(c), data(r * c, f.zero()) {}

    static Matrix identity(const Field& f, std::size_t n);
    static Matrix from_rows(const Field& f, const std::vector<Vec>& rows, std::size_t cols);
    static Matrix from_columns(const Field& f, const std::vector<Vec>& cols, std::size_t rows);

    Fe& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    Fe operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    Vec row(std::size_t i) const;
    Vec col(std::size_t j) const;
    void set_col(std::size_t j, const Vec& v);
    Vec apply(const Vec& v) const;
    Matrix transpose() const;
    Matrix frob(int e) const;
    bool is_zero() const;
    bool is_identity() const;

    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix scaled(Fe c) const;
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows == b.rows && a.cols == b.cols && a.data == b.data;
    }
};

/// Vertical concatenation; all blocks must share cols.
Matrix vstack(const std::vector<Matrix>& blocks);
std::string to_string(const Matrix& m);

struct Echelon {
    Matrix reduced;
    std::vector<std::size_t> pivots;
    std::size_t rank() const { return pivots.size(); }
};

Echelon rref(const Matrix& a, bool parallel = false);
std::size_t rank(const Matrix& a);
std::vector<Vec> kernel_basis(const Matrix& a);

struct LinearSolution {
    Vec solution;
    std::vector<Vec> kernel;
};

LinearSolution solve_linear(const Matrix& a, const Vec& b);

/// Incrementally maintained reduced row-echelon basis of a subspace of F^n.
class Subspace {
public:
    Subspace(const Field& f, std::size_t n) : field_(&f), n_(n) {}
    /// Adds v; returns false if it was already in the span.
    bool add(const Vec& v);
    Vec reduce(const Vec& v) const;
    bool contains(const Vec& v) const { return is_zero(reduce(v)); }
    std::size_t dim() const { return rows_.size(); }
    std::size_t ambient() const { return n_; }
    const std::vector<Vec>& rows() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }
    /// Ambient coordinates that are not pivots; they index a basis of the quotient.
    std::vector<std::size_t> complement() const;

private:
    const Field* field_;
    std::size_t n_;
    std::vector<Vec> rows_;
    std::vector<std::size_t> pivots_;
};

/// v -> matrix * Frob^e(v).
struct SemilinearMap {
    Matrix matrix;
    int frobenius_power = 0;

    Vec apply(const Vec& v) const;
    /// (this o other): composite semilinear map.
    SemilinearMap compose(const SemilinearMap& other) const;
};

/// The homogeneous equation sum_t terms[t](u) = 0 in the unknown u.
struct SemilinearEquation {
    std::vector<SemilinearMap> terms;
};

struct FpKernel {
    std::size_t dim = 0;      // over F_p
    std::vector<Vec> basis;   // F_p-basis, as vectors over the field
};

FpKernel semilinear_kernel(const std::vector<SemilinearEquation>& eqs, std::size_t unknowns, const Field& f,
                           bool parallel = true);
/// Each map is one equation with a single term.
FpKernel semilinear_kernel(const std::vector<SemilinearMap>& maps);

}  // namespace dpalg

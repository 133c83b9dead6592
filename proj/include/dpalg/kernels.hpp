#pragma once

#include <cstdint>
#include <vector>

#include "dpalg/field.hpp"

namespace dpalg::kernels {

/// Row-major matrix of raw field codes.
struct RawMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::uint32_t> a;

    std::uint32_t* row(std::size_t i) { return a.data() + i * cols; }
    const std::uint32_t* row(std::size_t i) const { return a.data() + i * cols; }
};

/// In-place reduced row echelon form; rows beyond the rank end up zero.
/// Pivot choice: first nonzero entry scanning rows in order within each column.
std::vector<std::size_t> rref_serial(RawMatrix& m, const Field& f);
/// Same result as rref_serial; the elimination sweep for each pivot runs under OpenMP.
std::vector<std::size_t> rref_parallel(RawMatrix& m, const Field& f);

/// Associativity defect count of a structure-constant table over basis triples.
/// table[i*dim+j] is the sparse product e_i e_j as (index, code) pairs; twist[i] is the
/// Frobenius power applied to right-hand coefficients when multiplying by e_i on the left.
struct SparseTable {
    std::size_t dim = 0;
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> entries;
    std::vector<int> twist;
};

std::size_t associativity_defects_serial(const SparseTable& t, const Field& f);
std::size_t associativity_defects_parallel(const SparseTable& t, const Field& f);

}  // namespace dpalg::kernels

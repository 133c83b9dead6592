#include "dpalg/kernels.hpp"

#include <algorithm>

namespace dpalg::kernels {

namespace {

void normalize_row(std::uint32_t* r, std::size_t from, std::size_t cols, const Field& f, std::uint32_t inv) {
    for (std::size_t j = from; j < cols; ++j)
        if (r[j]) r[j] = f.mul(r[j], inv);
}

void eliminate(std::uint32_t* r, const std::uint32_t* piv, std::size_t from, std::size_t cols, const Field& f) {
    const std::uint32_t factor = r[from];
    if (!factor) return;
    const std::uint32_t neg = f.neg(factor);
    for (std::size_t j = from; j < cols; ++j)
        if (piv[j]) r[j] = f.add(r[j], f.mul(neg, piv[j]));
}

template <bool Parallel>
std::vector<std::size_t> rref_impl(RawMatrix& m, const Field& f) {
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
    const long long rows = static_cast<long long>(m.rows);
    for (std::size_t c = 0; c < m.cols && rank < m.rows; ++c) {
        std::size_t found = m.rows;
        for (std::size_t i = rank; i < m.rows; ++i) {
            if (m.row(i)[c]) {
                found = i;
                break;
            }
        }
        if (found == m.rows) continue;
        if (found != rank) std::swap_ranges(m.row(found), m.row(found) + m.cols, m.row(rank));
        std::uint32_t* pr = m.row(rank);
        normalize_row(pr, c, m.cols, f, f.inv(pr[c]));
        if constexpr (Parallel) {
            const bool big = m.rows * (m.cols - c) > (1u << 15);
#pragma omp parallel for schedule(static) if (big)
            for (long long i = 0; i < rows; ++i) {
                if (static_cast<std::size_t>(i) == rank) continue;
                eliminate(m.row(static_cast<std::size_t>(i)), pr, c, m.cols, f);
            }
        } else {
            for (long long i = 0; i < rows; ++i) {
                if (static_cast<std::size_t>(i) == rank) continue;
                eliminate(m.row(static_cast<std::size_t>(i)), pr, c, m.cols, f);
            }
        }
        pivots.push_back(c);
        ++rank;
    }
    return pivots;
}

bool triple_ok(const SparseTable& t, const Field& f, std::size_t i, std::size_t j, std::size_t k,
               std::vector<std::uint32_t>& lhs, std::vector<std::uint32_t>& rhs) {
    std::fill(lhs.begin(), lhs.end(), 0u);
    std::fill(rhs.begin(), rhs.end(), 0u);
    const std::size_t d = t.dim;
    for (const auto& [a, c] : t.entries[i * d + j])
        for (const auto& [b, e] : t.entries[a * d + k]) lhs[b] = f.add(lhs[b], f.mul(c, e));
    const int tw = t.twist.empty() ? 0 : t.twist[i];
    for (const auto& [a, c] : t.entries[j * d + k]) {
        const std::uint32_t cc = f.frob(c, tw);
        for (const auto& [b, e] : t.entries[i * d + a]) rhs[b] = f.add(rhs[b], f.mul(cc, e));
    }
    return lhs == rhs;
}

}  // namespace

std::vector<std::size_t> rref_serial(RawMatrix& m, const Field& f) { return rref_impl<false>(m, f); }

std::vector<std::size_t> rref_parallel(RawMatrix& m, const Field& f) { return rref_impl<true>(m, f); }

std::size_t associativity_defects_serial(const SparseTable& t, const Field& f) {
    std::vector<std::uint32_t> lhs(t.dim), rhs(t.dim);
    std::size_t bad = 0;
    for (std::size_t i = 0; i < t.dim; ++i)
        for (std::size_t j = 0; j < t.dim; ++j)
            for (std::size_t k = 0; k < t.dim; ++k)
                if (!triple_ok(t, f, i, j, k, lhs, rhs)) ++bad;
    return bad;
}

std::size_t associativity_defects_parallel(const SparseTable& t, const Field& f) {
    std::size_t bad = 0;
    const long long d = static_cast<long long>(t.dim);
#pragma omp parallel reduction(+ : bad)
    {
        std::vector<std::uint32_t> lhs(t.dim), rhs(t.dim);
#pragma omp for schedule(dynamic)
        for (long long i = 0; i < d; ++i)
            for (std::size_t j = 0; j < t.dim; ++j)
                for (std::size_t k = 0; k < t.dim; ++k)
                    if (!triple_ok(t, f, static_cast<std::size_t>(i), j, k, lhs, rhs)) ++bad;
    }
    return bad;
}

}  // namespace dpalg::kernels

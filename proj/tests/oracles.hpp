#pragma once

// Test-only oracles, independent of the library's computation paths.

#include <vector>

#include "njcalc/rational.hpp"
#include "njcalc/sparse_matrix.hpp"

namespace njcalc::oracles {

/// Dense textbook Gaussian elimination; first nonzero pivot, no pivot
/// selection tricks. Used to cross-check the sparse elimination.
inline std::size_t dense_rank(const SparseMatrix& m) {
    std::vector<std::vector<Rational>> a(m.rows(), std::vector<Rational>(m.cols(), Rational(0)));
    for (const auto& [rc, v] : m.entries()) a[rc.first][rc.second] = v;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
        std::size_t pivot = rank;
        while (pivot < m.rows() && a[pivot][col].is_zero()) ++pivot;
        if (pivot == m.rows()) continue;
        std::swap(a[rank], a[pivot]);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == rank || a[r][col].is_zero()) continue;
            Rational f = a[r][col] / a[rank][col];
            for (std::size_t c = col; c < m.cols(); ++c) a[r][c] -= f * a[rank][c];
        }
        ++rank;
    }
    return rank;
}

}  // namespace njcalc::oracles

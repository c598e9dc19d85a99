#pragma once

#include <cstddef>
#include <vector>

#include "residua/rational.hpp"

namespace residua {

using gq_matrix = std::vector<std::vector<gaussian_rational>>;

/// Exact rank over Q(i) by Gaussian elimination.
inline std::size_t exact_rank(gq_matrix m) {
    std::size_t rows = m.size();
    std::size_t cols = rows ? m[0].size() : 0;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows && m[pivot][c].is_zero()) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[pivot], m[rank]);
        gaussian_rational inv = m[rank][c].inv();
        for (std::size_t r = rank + 1; r < rows; ++r) {
            if (m[r][c].is_zero()) continue;
            gaussian_rational f = m[r][c] * inv;
            for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
        }
        ++rank;
    }
    return rank;
}

/// Exact determinant over Q(i); elimination with row-swap sign tracking.
inline gaussian_rational exact_det(gq_matrix m) {
    std::size_t n = m.size();
    if (n == 0) return gaussian_rational(1);
    gaussian_rational det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = c;
        while (pivot < n && m[pivot][c].is_zero()) ++pivot;
        if (pivot == n) return gaussian_rational(0);
        if (pivot != c) {
            std::swap(m[pivot], m[c]);
            det = -det;
        }
        det *= m[c][c];
        gaussian_rational inv = m[c][c].inv();
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m[r][c].is_zero()) continue;
            gaussian_rational f = m[r][c] * inv;
            for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

} // namespace residua

#pragma once

// Shared test utilities: seeded generators and brute-force oracles that stay
// independent of the library's elimination code.

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "kfour/kgmod.hpp"
#include "kfour/matrix.hpp"

namespace kfour::test {

inline Matrix random_matrix(const Field& f, size_t rows, size_t cols, std::mt19937& rng) {
    Matrix m(f, rows, cols);
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j)
            m.at(i, j) = static_cast<uint8_t>(rng() % f.size());
    return m;
}

inline Matrix random_invertible(const Field& f, size_t n, std::mt19937& rng) {
    for (int tries = 0; tries < 1000; ++tries) {
        Matrix m = random_matrix(f, n, n, rng);
        if (is_invertible(m)) return m;
    }
    throw std::runtime_error("failed to draw an invertible matrix");
}

/// Conjugate a module by a random change of basis: X -> C^{-1} X C.
inline KGModule random_conjugate(const KGModule& m, std::mt19937& rng) {
    if (m.dim() == 0) return m;
    Matrix c = random_invertible(m.field(), m.dim(), rng);
    Matrix ci = *inverse(c);
    return KGModule(ci * m.X() * c, ci * m.Y() * c);
}

/// Brute-force rank over GF(2): the row span of a matrix with rank r has
/// exactly 2^r elements. Enumerates all row combinations; rows <= 20 or so.
inline size_t brute_rank_gf2(const Matrix& m) {
    std::set<std::vector<uint8_t>> span;
    const size_t r = m.rows();
    for (uint64_t mask = 0; mask < (1ull << r); ++mask) {
        std::vector<uint8_t> v(m.cols(), 0);
        for (size_t i = 0; i < r; ++i)
            if (mask & (1ull << i))
                for (size_t j = 0; j < m.cols(); ++j) v[j] ^= m.at(i, j);
        span.insert(v);
    }
    size_t rank = 0;
    while ((1ull << rank) < span.size()) ++rank;
    return rank;
}

/// All 2^d vectors of GF(2)^d as column matrices, for exhaustive checks.
inline std::vector<Matrix> all_gf2_columns(const Field& f, size_t d) {
    std::vector<Matrix> out;
    for (uint64_t mask = 0; mask < (1ull << d); ++mask) {
        Matrix v(f, d, 1);
        for (size_t i = 0; i < d; ++i) v.at(i, 0) = (mask >> i) & 1;
        out.push_back(v);
    }
    return out;
}

} // namespace kfour::test

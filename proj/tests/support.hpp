#pragma once

// Shared helpers for the test binaries: seeded generators and small
// independent oracles that avoid the library's sparse elimination.

#include <random>
#include <string>
#include <vector>

#include "hopfbraid/tensor.hpp"

namespace testsupport {

using hopfbraid::Field;
using hopfbraid::Scalar;
using hopfbraid::SparseMatrix;

inline Field q() { return Field::rationals(); }
inline Field f5() { return Field::prime(5); }

inline Scalar num(const Field& f, long n) { return f.from_int(n); }
inline Scalar frac(long a, long b) { return q().parse(std::to_string(a) + "/" + std::to_string(b)); }

inline SparseMatrix dense(const Field& f, const std::vector<std::vector<long>>& rows) {
    std::vector<std::vector<Scalar>> s;
    for (const auto& r : rows) {
        s.emplace_back();
        for (long v : r) s.back().push_back(f.from_int(v));
    }
    return SparseMatrix::from_dense(f, s);
}

inline Scalar random_scalar(const Field& f, std::mt19937_64& rng, long lo = -3, long hi = 3) {
    if (f.is_prime()) {
        std::uniform_int_distribution<long> d(0, static_cast<long>(f.characteristic()) - 1);
        return f.from_int(d(rng));
    }
    std::uniform_int_distribution<long> d(lo, hi);
    return f.from_int(d(rng));
}

inline SparseMatrix random_matrix(const Field& f, std::size_t r, std::size_t c, std::mt19937_64& rng) {
    SparseMatrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, random_scalar(f, rng));
    return m;
}

inline SparseMatrix random_invertible(const Field& f, std::size_t n, std::mt19937_64& rng) {
    for (;;) {
        SparseMatrix m = random_matrix(f, n, n, rng);
        if (hopfbraid::inverse(m)) return m;
    }
}

// Dense Gaussian elimination on a copy, column by column.
inline std::size_t dense_rank(const SparseMatrix& m) {
    auto a = m.to_dense();
    std::size_t rows = m.rows(), cols = m.cols(), r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            Scalar factor = a[i][c] / a[r][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= factor * a[r][j];
        }
        ++r;
    }
    return r;
}

// Entry of a map on basis tuples.
inline Scalar entry(const hopfbraid::LinMap& f, const std::vector<std::size_t>& out,
                    const std::vector<std::size_t>& in) {
    return f.matrix().at(hopfbraid::join_index(f.codomain(), out), hopfbraid::join_index(f.domain(), in));
}

}  // namespace testsupport

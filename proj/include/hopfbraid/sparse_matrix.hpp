#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hopfbraid/scalar.hpp"

namespace hopfbraid {

class DimensionMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SparseEntry {
    std::size_t col;
    Scalar value;
};

// Sorted by column, no explicit zeros.
using SparseRow = std::vector<SparseEntry>;

// Row-major sparse matrix over an exact field. Only nonzero entries are stored.
class SparseMatrix {
public:
    SparseMatrix(Field field, std::size_t rows, std::size_t cols);

    static SparseMatrix identity(Field field, std::size_t n);
    static SparseMatrix from_dense(Field field, const std::vector<std::vector<Scalar>>& rows);

    const Field& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nonzeros() const;

    Scalar at(std::size_t r, std::size_t c) const;
    // Overwrites; setting zero erases.
    void set(std::size_t r, std::size_t c, const Scalar& v);
    void add_to(std::size_t r, std::size_t c, const Scalar& v);

    const SparseRow& row(std::size_t r) const { return data_[r]; }
    void set_row(std::size_t r, SparseRow row);

    bool is_zero() const;
    std::vector<std::vector<Scalar>> to_dense() const;

    SparseMatrix transpose() const;
    SparseMatrix operator*(const SparseMatrix& rhs) const;
    SparseMatrix operator+(const SparseMatrix& rhs) const;
    SparseMatrix operator-(const SparseMatrix& rhs) const;
    SparseMatrix scaled(const Scalar& s) const;
    std::vector<Scalar> apply(std::span<const Scalar> v) const;

    // Copies `block` into this matrix with its top-left corner at (r0, c0),
    // adding to what is already there.
    void add_block(std::size_t r0, std::size_t c0, const SparseMatrix& block);
    SparseMatrix block(std::size_t r0, std::size_t c0, std::size_t nrows, std::size_t ncols) const;

    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);

    // First (row, col) in row-major order where the two matrices differ.
    static std::optional<std::pair<std::size_t, std::size_t>> first_difference(const SparseMatrix& a,
                                                                               const SparseMatrix& b);

private:
    Field field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<SparseRow> data_;
};

// (a (x) b)[i*rb + k, j*cb + l] = a[i,j] * b[k,l]
SparseMatrix kronecker(const SparseMatrix& a, const SparseMatrix& b);

struct RrefResult {
    SparseMatrix reduced;             // same shape as input
    std::vector<std::size_t> pivots;  // pivot column of row 0, 1, ...
    std::size_t rank() const { return pivots.size(); }
};

RrefResult rref(const SparseMatrix& m);
std::size_t rank(const SparseMatrix& m);

// Columns form a basis of the right kernel; cols() == 0 when the kernel is trivial.
SparseMatrix kernel_basis(const SparseMatrix& m);

// Some x with a x = b, or nullopt when inconsistent. b may have several columns.
std::optional<SparseMatrix> solve_linear(const SparseMatrix& a, const SparseMatrix& b);

std::optional<SparseMatrix> inverse(const SparseMatrix& m);

}  // namespace hopfbraid

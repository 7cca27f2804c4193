#include "hopfbraid/sparse_matrix.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace hopfbraid {

namespace {

std::string shape(std::size_t r, std::size_t c) { return std::to_string(r) + "x" + std::to_string(c); }

// a + s*b on sorted sparse rows
SparseRow axpy(const SparseRow& a, const Scalar& s, const SparseRow& b) {
    SparseRow out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].col < b[j].col)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].col < a[i].col) {
            out.push_back({b[j].col, s * b[j].value});
            ++j;
        } else {
            Scalar v = a[i].value + s * b[j].value;
            if (!v.is_zero()) out.push_back({a[i].col, std::move(v)});
            ++i;
            ++j;
        }
    }
    return out;
}

const Scalar* find_in_row(const SparseRow& row, std::size_t c) {
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const SparseEntry& e, std::size_t x) { return e.col < x; });
    if (it != row.end() && it->col == c) return &it->value;
    return nullptr;
}

}  // namespace

SparseMatrix::SparseMatrix(Field field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows) {}

SparseMatrix SparseMatrix::identity(Field field, std::size_t n) {
    SparseMatrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i].push_back({i, field.one()});
    return m;
}

SparseMatrix SparseMatrix::from_dense(Field field, const std::vector<std::vector<Scalar>>& rows) {
    std::size_t nc = rows.empty() ? 0 : rows.front().size();
    SparseMatrix m(field, rows.size(), nc);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != nc) throw DimensionMismatch("ragged dense matrix");
        for (std::size_t c = 0; c < nc; ++c)
            if (!rows[r][c].is_zero()) m.data_[r].push_back({c, rows[r][c]});
    }
    return m;
}

std::size_t SparseMatrix::nonzeros() const {
    std::size_t n = 0;
    for (const auto& r : data_) n += r.size();
    return n;
}

Scalar SparseMatrix::at(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index out of range");
    if (const Scalar* v = find_in_row(data_[r], c)) return *v;
    return field_.zero();
}

void SparseMatrix::set(std::size_t r, std::size_t c, const Scalar& v) {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index out of range");
    auto& row = data_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const SparseEntry& e, std::size_t x) { return e.col < x; });
    bool present = it != row.end() && it->col == c;
    if (v.is_zero()) {
        if (present) row.erase(it);
    } else if (present) {
        it->value = v;
    } else {
        row.insert(it, {c, v});
    }
}

void SparseMatrix::add_to(std::size_t r, std::size_t c, const Scalar& v) {
    if (v.is_zero()) return;
    set(r, c, at(r, c) + v);
}

void SparseMatrix::set_row(std::size_t r, SparseRow row) { data_.at(r) = std::move(row); }

bool SparseMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const SparseRow& r) { return r.empty(); });
}

std::vector<std::vector<Scalar>> SparseMatrix::to_dense() const {
    std::vector<std::vector<Scalar>> out(rows_, std::vector<Scalar>(cols_, field_.zero()));
    for (std::size_t r = 0; r < rows_; ++r)
        for (const auto& e : data_[r]) out[r][e.col] = e.value;
    return out;
}

SparseMatrix SparseMatrix::transpose() const {
    SparseMatrix t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (const auto& e : data_[r]) t.data_[e.col].push_back({r, e.value});
    return t;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& rhs) const {
    if (cols_ != rhs.rows_)
        throw DimensionMismatch("matrix product " + shape(rows_, cols_) + " * " + shape(rhs.rows_, rhs.cols_));
    if (!(field_ == rhs.field_)) throw FieldMismatch("matrix product over different fields");
    SparseMatrix out(field_, rows_, rhs.cols_);
    std::vector<Scalar> acc(rhs.cols_, field_.zero());
    std::vector<char> touched(rhs.cols_, 0);
    std::vector<std::size_t> cols;
    for (std::size_t r = 0; r < rows_; ++r) {
        cols.clear();
        for (const auto& a : data_[r]) {
            for (const auto& b : rhs.data_[a.col]) {
                if (!touched[b.col]) {
                    touched[b.col] = 1;
                    cols.push_back(b.col);
                    acc[b.col] = a.value * b.value;
                } else {
                    acc[b.col] += a.value * b.value;
                }
            }
        }
        std::sort(cols.begin(), cols.end());
        for (std::size_t c : cols) {
            if (!acc[c].is_zero()) out.data_[r].push_back({c, acc[c]});
            touched[c] = 0;
        }
    }
    return out;
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw DimensionMismatch("matrix sum " + shape(rows_, cols_) + " + " + shape(rhs.rows_, rhs.cols_));
    SparseMatrix out(field_, rows_, cols_);
    Scalar one = field_.one();
    for (std::size_t r = 0; r < rows_; ++r) out.data_[r] = axpy(data_[r], one, rhs.data_[r]);
    return out;
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw DimensionMismatch("matrix difference " + shape(rows_, cols_) + " - " + shape(rhs.rows_, rhs.cols_));
    SparseMatrix out(field_, rows_, cols_);
    Scalar minus_one = -field_.one();
    for (std::size_t r = 0; r < rows_; ++r) out.data_[r] = axpy(data_[r], minus_one, rhs.data_[r]);
    return out;
}

SparseMatrix SparseMatrix::scaled(const Scalar& s) const {
    SparseMatrix out(field_, rows_, cols_);
    if (s.is_zero()) return out;
    for (std::size_t r = 0; r < rows_; ++r) {
        out.data_[r].reserve(data_[r].size());
        for (const auto& e : data_[r]) out.data_[r].push_back({e.col, e.value * s});
    }
    return out;
}

std::vector<Scalar> SparseMatrix::apply(std::span<const Scalar> v) const {
    if (v.size() != cols_) throw DimensionMismatch("vector length does not match matrix columns");
    std::vector<Scalar> out(rows_, field_.zero());
    for (std::size_t r = 0; r < rows_; ++r)
        for (const auto& e : data_[r]) out[r] += e.value * v[e.col];
    return out;
}

void SparseMatrix::add_block(std::size_t r0, std::size_t c0, const SparseMatrix& block) {
    if (r0 + block.rows_ > rows_ || c0 + block.cols_ > cols_) throw DimensionMismatch("block exceeds matrix bounds");
    for (std::size_t r = 0; r < block.rows_; ++r) {
        if (block.data_[r].empty()) continue;
        SparseRow shifted;
        shifted.reserve(block.data_[r].size());
        for (const auto& e : block.data_[r]) shifted.push_back({e.col + c0, e.value});
        data_[r0 + r] = axpy(data_[r0 + r], field_.one(), shifted);
    }
}

SparseMatrix SparseMatrix::block(std::size_t r0, std::size_t c0, std::size_t nrows, std::size_t ncols) const {
    if (r0 + nrows > rows_ || c0 + ncols > cols_) throw DimensionMismatch("block exceeds matrix bounds");
    SparseMatrix out(field_, nrows, ncols);
    for (std::size_t r = 0; r < nrows; ++r)
        for (const auto& e : data_[r0 + r])
            if (e.col >= c0 && e.col < c0 + ncols) out.data_[r].push_back({e.col - c0, e.value});
    return out;
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || !(a.field_ == b.field_)) return false;
    for (std::size_t r = 0; r < a.rows_; ++r) {
        const auto& x = a.data_[r];
        const auto& y = b.data_[r];
        if (x.size() != y.size()) return false;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i].col != y[i].col || !(x[i].value == y[i].value)) return false;
    }
    return true;
}

std::optional<std::pair<std::size_t, std::size_t>> SparseMatrix::first_difference(const SparseMatrix& a,
                                                                                  const SparseMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("comparing matrices of different shapes");
    for (std::size_t r = 0; r < a.rows_; ++r) {
        const auto& x = a.data_[r];
        const auto& y = b.data_[r];
        std::size_t i = 0, j = 0;
        while (i < x.size() || j < y.size()) {
            if (j == y.size() || (i < x.size() && x[i].col < y[j].col)) return std::pair{r, x[i].col};
            if (i == x.size() || y[j].col < x[i].col) return std::pair{r, y[j].col};
            if (!(x[i].value == y[j].value)) return std::pair{r, x[i].col};
            ++i;
            ++j;
        }
    }
    return std::nullopt;
}

SparseMatrix kronecker(const SparseMatrix& a, const SparseMatrix& b) {
    if (!(a.field() == b.field())) throw FieldMismatch("kronecker product over different fields");
    SparseMatrix out(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (a.row(i).empty()) continue;
        for (std::size_t k = 0; k < b.rows(); ++k) {
            SparseRow row;
            row.reserve(a.row(i).size() * b.row(k).size());
            for (const auto& x : a.row(i))
                for (const auto& y : b.row(k)) row.push_back({x.col * b.cols() + y.col, x.value * y.value});
            out.set_row(i * b.rows() + k, std::move(row));
        }
    }
    return out;
}

RrefResult rref(const SparseMatrix& m) {
    // Forward pass: reduce each row against the pivot rows found so far.
    std::map<std::size_t, SparseRow> pivot_rows;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        SparseRow v = m.row(r);
        while (!v.empty()) {
            auto it = pivot_rows.find(v.front().col);
            if (it == pivot_rows.end()) {
                Scalar lead_inv = v.front().value.inverse();
                for (auto& e : v) e.value *= lead_inv;
                pivot_rows.emplace(v.front().col, std::move(v));
                break;
            }
            v = axpy(v, -v.front().value, it->second);
        }
    }
    // Backward pass: clear entries above each pivot, rightmost pivot first.
    for (auto it = pivot_rows.rbegin(); it != pivot_rows.rend(); ++it) {
        std::size_t pc = it->first;
        for (auto jt = pivot_rows.begin(); jt->first < pc; ++jt) {
            if (const Scalar* v = find_in_row(jt->second, pc)) {
                Scalar s = -*v;
                jt->second = axpy(jt->second, s, it->second);
            }
        }
    }
    RrefResult res{SparseMatrix(m.field(), m.rows(), m.cols()), {}};
    std::size_t r = 0;
    for (auto& [col, row] : pivot_rows) {
        res.pivots.push_back(col);
        res.reduced.set_row(r++, std::move(row));
    }
    return res;
}

std::size_t rank(const SparseMatrix& m) {
    // Row rank of the shorter side is cheaper to eliminate.
    if (m.cols() < m.rows()) return rref(m.transpose()).rank();
    return rref(m).rank();
}

SparseMatrix kernel_basis(const SparseMatrix& m) {
    RrefResult rr = rref(m);
    std::vector<char> is_pivot(m.cols(), 0);
    for (std::size_t c : rr.pivots) is_pivot[c] = 1;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    SparseMatrix basis(m.field(), m.cols(), free_cols.size());
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        std::size_t f = free_cols[k];
        basis.set(f, k, m.field().one());
        for (std::size_t r = 0; r < rr.pivots.size(); ++r)
            if (const Scalar* v = find_in_row(rr.reduced.row(r), f)) basis.set(rr.pivots[r], k, -*v);
    }
    return basis;
}

std::optional<SparseMatrix> solve_linear(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows() != b.rows()) throw DimensionMismatch("solve_linear: right-hand side has wrong row count");
    std::size_t n = a.cols();
    SparseMatrix aug(a.field(), a.rows(), n + b.cols());
    aug.add_block(0, 0, a);
    aug.add_block(0, n, b);
    RrefResult rr = rref(aug);
    SparseMatrix x(a.field(), n, b.cols());
    for (std::size_t r = 0; r < rr.pivots.size(); ++r) {
        if (rr.pivots[r] >= n) return std::nullopt;
        for (const auto& e : rr.reduced.row(r))
            if (e.col >= n) x.set(rr.pivots[r], e.col - n, e.value);
    }
    return x;
}

std::optional<SparseMatrix> inverse(const SparseMatrix& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    if (rank(m) != m.rows()) return std::nullopt;
    return solve_linear(m, SparseMatrix::identity(m.field(), m.rows()));
}

}  // namespace hopfbraid

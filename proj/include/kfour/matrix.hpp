#pragma once

// Exact dense linear algebra over GF(2^e): the substrate for Hom-spaces,
// kernels, covers and splitness certificates. Dense uint8 storage with a
// bit-packed elimination fast path for GF(2); semantics of both paths are
// identical (the reduced row-echelon form is unique).

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kfour/field.hpp"

namespace kfour {

class Matrix {
    Field field_;
    size_t rows_ = 0, cols_ = 0;
    std::vector<uint8_t> e_;  // row-major

public:
    Matrix(Field f, size_t rows, size_t cols)
        : field_(std::move(f)), rows_(rows), cols_(cols), e_(rows * cols, 0) {}

    static Matrix identity(const Field& f, size_t n) {
        Matrix m(f, n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static Matrix from_rows(const Field& f, const std::vector<std::vector<uint8_t>>& rows) {
        const size_t r = rows.size();
        const size_t c = r ? rows[0].size() : 0;
        Matrix m(f, r, c);
        for (size_t i = 0; i < r; ++i) {
            if (rows[i].size() != c) throw std::invalid_argument("ragged row data");
            for (size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    const Field& field() const { return field_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    uint8_t& at(size_t r, size_t c) { return e_[r * cols_ + c]; }
    uint8_t at(size_t r, size_t c) const { return e_[r * cols_ + c]; }
    Scalar get(size_t r, size_t c) const { return Scalar(field_, at(r, c)); }

    bool is_zero() const {
        for (uint8_t v : e_) if (v) return false;
        return true;
    }

    bool operator==(const Matrix& o) const {
        return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix operator+(const Matrix& o) const {
        field_.check_same(o.field_);
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix shape mismatch in add");
        Matrix r = *this;
        for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = field_.add(r.e_[i], o.e_[i]);
        return r;
    }

    Matrix operator*(const Matrix& o) const {
        field_.check_same(o.field_);
        if (cols_ != o.rows_)
            throw std::invalid_argument("matrix shape mismatch in multiply: " + std::to_string(cols_) +
                                        " vs " + std::to_string(o.rows_));
        Matrix r(field_, rows_, o.cols_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t k = 0; k < cols_; ++k) {
                const uint8_t a = at(i, k);
                if (!a) continue;
                if (a == 1) {
                    for (size_t j = 0; j < o.cols_; ++j)
                        r.e_[i * o.cols_ + j] ^= o.e_[k * o.cols_ + j];
                } else {
                    for (size_t j = 0; j < o.cols_; ++j)
                        r.e_[i * o.cols_ + j] =
                            field_.add(r.e_[i * o.cols_ + j], field_.mul(a, o.e_[k * o.cols_ + j]));
                }
            }
        return r;
    }

    Matrix scaled(uint8_t s) const {
        Matrix r = *this;
        for (auto& v : r.e_) v = field_.mul(v, s);
        return r;
    }

    Matrix transpose() const {
        Matrix r(field_, cols_, rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    Matrix hstack(const Matrix& o) const {
        field_.check_same(o.field_);
        if (rows_ != o.rows_) throw std::invalid_argument("hstack row mismatch");
        Matrix r(field_, rows_, cols_ + o.cols_);
        for (size_t i = 0; i < rows_; ++i) {
            for (size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
            for (size_t j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
        }
        return r;
    }

    Matrix vstack(const Matrix& o) const {
        field_.check_same(o.field_);
        if (cols_ != o.cols_) throw std::invalid_argument("vstack col mismatch");
        Matrix r(field_, rows_ + o.rows_, cols_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
        for (size_t i = 0; i < o.rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) r.at(rows_ + i, j) = o.at(i, j);
        return r;
    }

    Matrix block(size_t r0, size_t c0, size_t nr, size_t nc) const {
        if (r0 + nr > rows_ || c0 + nc > cols_) throw std::invalid_argument("block out of range");
        Matrix r(field_, nr, nc);
        for (size_t i = 0; i < nr; ++i)
            for (size_t j = 0; j < nc; ++j) r.at(i, j) = at(r0 + i, c0 + j);
        return r;
    }

    /// Kronecker product, row-major index (i1*rows2 + i2, j1*cols2 + j2).
    Matrix kron(const Matrix& o) const {
        field_.check_same(o.field_);
        Matrix r(field_, rows_ * o.rows_, cols_ * o.cols_);
        for (size_t i1 = 0; i1 < rows_; ++i1)
            for (size_t j1 = 0; j1 < cols_; ++j1) {
                const uint8_t a = at(i1, j1);
                if (!a) continue;
                for (size_t i2 = 0; i2 < o.rows_; ++i2)
                    for (size_t j2 = 0; j2 < o.cols_; ++j2)
                        r.at(i1 * o.rows_ + i2, j1 * o.cols_ + j2) = field_.mul(a, o.at(i2, j2));
            }
        return r;
    }

    /// Column-major flattening to a 1 x (rows*cols) row vector. This
    /// convention is part of the serialization contract for Hom-spaces.
    Matrix vec() const {
        Matrix r(field_, 1, rows_ * cols_);
        for (size_t j = 0; j < cols_; ++j)
            for (size_t i = 0; i < rows_; ++i) r.at(0, j * rows_ + i) = at(i, j);
        return r;
    }

    static Matrix unvec(const Field& f, const std::vector<uint8_t>& v, size_t rows, size_t cols) {
        if (v.size() != rows * cols) throw std::invalid_argument("unvec size mismatch");
        Matrix r(f, rows, cols);
        for (size_t j = 0; j < cols; ++j)
            for (size_t i = 0; i < rows; ++i) r.at(i, j) = v[j * rows + i];
        return r;
    }

    std::vector<uint8_t> row(size_t i) const {
        return std::vector<uint8_t>(e_.begin() + static_cast<long>(i * cols_),
                                    e_.begin() + static_cast<long>((i + 1) * cols_));
    }
};

struct Echelon {
    Matrix rref;
    std::vector<size_t> pivots;
};

namespace detail {

// Packed GF(2) reduced row echelon. Returns pivot columns; data is modified
// in place, one row = `words` uint64 little-endian words.
inline std::vector<size_t> rref_gf2(std::vector<uint64_t>& data, size_t rows, size_t cols) {
    const size_t words = (cols + 63) / 64;
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        const size_t w = c >> 6;
        const uint64_t bit = 1ull << (c & 63);
        size_t pr = rows;
        for (size_t i = r; i < rows; ++i)
            if (data[i * words + w] & bit) { pr = i; break; }
        if (pr == rows) continue;
        if (pr != r)
            for (size_t k = 0; k < words; ++k) std::swap(data[r * words + k], data[pr * words + k]);
        for (size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            if (data[i * words + w] & bit) {
                uint64_t* dst = &data[i * words];
                const uint64_t* src = &data[r * words];
                for (size_t k = w; k < words; ++k) dst[k] ^= src[k];
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

} // namespace detail

/// Unique reduced row-echelon form and pivot columns.
inline Echelon reduced_echelon(const Matrix& m) {
    const Field& f = m.field();
    const size_t rows = m.rows(), cols = m.cols();
    if (f.degree() == 1) {
        const size_t words = (cols + 63) / 64;
        std::vector<uint64_t> data(rows * words, 0);
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j)
                if (m.at(i, j)) data[i * words + (j >> 6)] |= 1ull << (j & 63);
        auto pivots = detail::rref_gf2(data, rows, cols);
        Matrix r(f, rows, cols);
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j)
                r.at(i, j) = (data[i * words + (j >> 6)] >> (j & 63)) & 1;
        return {std::move(r), std::move(pivots)};
    }
    Matrix a = m;
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t pr = rows;
        for (size_t i = r; i < rows; ++i)
            if (a.at(i, c)) { pr = i; break; }
        if (pr == rows) continue;
        if (pr != r)
            for (size_t j = 0; j < cols; ++j) std::swap(a.at(r, j), a.at(pr, j));
        const uint8_t s = f.inv(a.at(r, c));
        if (s != 1)
            for (size_t j = c; j < cols; ++j) a.at(r, j) = f.mul(a.at(r, j), s);
        for (size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            const uint8_t v = a.at(i, c);
            if (!v) continue;
            for (size_t j = c; j < cols; ++j)
                a.at(i, j) = f.add(a.at(i, j), f.mul(v, a.at(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(a), std::move(pivots)};
}

inline size_t rank(const Matrix& m) { return reduced_echelon(m).pivots.size(); }

inline std::pair<size_t, Matrix> rank_and_rref(const Matrix& m) {
    Echelon e = reduced_echelon(m);
    return {e.pivots.size(), std::move(e.rref)};
}

/// A subspace of k^n, canonically represented: basis rows in reduced
/// row-echelon form, so subspace equality is matrix equality.
class Subspace {
    size_t ambient_;
    Matrix basis_;  // dim x ambient, rref, full row rank

public:
    Subspace(size_t ambient, Matrix basis_rref) : ambient_(ambient), basis_(std::move(basis_rref)) {
        if (basis_.cols() != ambient_) throw std::invalid_argument("subspace basis width mismatch");
    }

    static Subspace zero(const Field& f, size_t ambient) { return Subspace(ambient, Matrix(f, 0, ambient)); }

    static Subspace full(const Field& f, size_t ambient) {
        return Subspace(ambient, Matrix::identity(f, ambient));
    }

    /// Canonicalize a spanning set given as rows.
    static Subspace from_span(const Matrix& rows) {
        Echelon e = reduced_echelon(rows);
        const size_t d = e.pivots.size();
        return Subspace(rows.cols(), e.rref.block(0, 0, d, rows.cols()));
    }

    const Field& field() const { return basis_.field(); }
    size_t ambient_dim() const { return ambient_; }
    size_t dim() const { return basis_.rows(); }
    const Matrix& basis() const { return basis_; }
    /// Basis vectors as matrix columns (ambient x dim).
    Matrix basis_cols() const { return basis_.transpose(); }

    bool contains(const Matrix& row_vector) const {
        if (row_vector.rows() != 1 || row_vector.cols() != ambient_)
            throw std::invalid_argument("contains: expected 1 x ambient row vector");
        Echelon e = reduced_echelon(basis_.vstack(row_vector));
        return e.pivots.size() == dim();
    }

    bool contains(const Subspace& o) const {
        if (o.ambient_dim() != ambient_) throw std::invalid_argument("ambient mismatch");
        Echelon e = reduced_echelon(basis_.vstack(o.basis_));
        return e.pivots.size() == dim();
    }

    bool operator==(const Subspace& o) const { return ambient_ == o.ambient_ && basis_ == o.basis_; }
    bool operator!=(const Subspace& o) const { return !(*this == o); }
};

/// Full solution space of m v = 0 (column vectors), canonical basis.
inline Subspace kernel_basis(const Matrix& m) {
    const Field& f = m.field();
    const size_t cols = m.cols();
    Echelon e = reduced_echelon(m);
    std::vector<bool> is_pivot(cols, false);
    for (size_t p : e.pivots) is_pivot[p] = true;
    std::vector<std::vector<uint8_t>> rows;
    for (size_t c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<uint8_t> v(cols, 0);
        v[c] = 1;
        for (size_t i = 0; i < e.pivots.size(); ++i)
            v[e.pivots[i]] = e.rref.at(i, c);  // -x = x in characteristic 2
        rows.push_back(std::move(v));
    }
    if (rows.empty()) return Subspace::zero(f, cols);
    return Subspace::from_span(Matrix::from_rows(f, rows));
}

/// Any particular solution s of m s = rhs (free variables zero), or nullopt
/// when the system is inconsistent. Shape mismatch is an error, distinct
/// from "no solution".
inline std::optional<Matrix> solve_linear(const Matrix& m, const Matrix& rhs) {
    m.field().check_same(rhs.field());
    if (m.rows() != rhs.rows())
        throw std::invalid_argument("solve_linear: lhs has " + std::to_string(m.rows()) +
                                    " rows, rhs has " + std::to_string(rhs.rows()));
    Echelon e = reduced_echelon(m.hstack(rhs));
    const size_t n = m.cols();
    for (size_t p : e.pivots)
        if (p >= n) return std::nullopt;
    Matrix s(m.field(), n, rhs.cols());
    for (size_t i = 0; i < e.pivots.size(); ++i)
        for (size_t j = 0; j < rhs.cols(); ++j) s.at(e.pivots[i], j) = e.rref.at(i, n + j);
    return s;
}

inline std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
    auto s = solve_linear(m, Matrix::identity(m.field(), m.rows()));
    if (!s) return std::nullopt;
    if (rank(m) != m.rows()) return std::nullopt;
    return s;
}

inline bool is_invertible(const Matrix& m) {
    return m.rows() == m.cols() && rank(m) == m.rows();
}

enum class CombineMode { Sum, Intersection };

inline Subspace subspace_combine(const Subspace& a, const Subspace& b, CombineMode mode) {
    if (a.ambient_dim() != b.ambient_dim())
        throw std::invalid_argument("subspace_combine: ambient dimension mismatch");
    a.field().check_same(b.field());
    if (mode == CombineMode::Sum)
        return Subspace::from_span(a.basis().vstack(b.basis()));
    // Intersection via the kernel construction on stacked bases: solutions of
    // A^T u = B^T v, read off as A^T u.
    const size_t da = a.dim(), db = b.dim();
    if (da == 0 || db == 0) return Subspace::zero(a.field(), a.ambient_dim());
    Matrix stacked = a.basis_cols().hstack(b.basis_cols());  // ambient x (da+db)
    Subspace ker = kernel_basis(stacked);
    if (ker.dim() == 0) return Subspace::zero(a.field(), a.ambient_dim());
    Matrix u = ker.basis().block(0, 0, ker.dim(), da);           // coefficients on a-basis
    Matrix vectors = u * a.basis();                              // rows in ambient space
    return Subspace::from_span(vectors);
}

} // namespace kfour

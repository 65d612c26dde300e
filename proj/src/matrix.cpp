#include "fogus/matrix.hpp"

#include "fogus/errors.hpp"

#include <stdexcept>
#include <utility>

namespace fogus {

Matrix::Matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw DimensionMismatch("ragged matrix literal");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::diagonal(std::span<const Rational> d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

Matrix Matrix::column(std::span<const Rational> v) {
    Matrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Rational>>& rows, std::size_t cols_if_empty) {
    const std::size_t c = rows.empty() ? cols_if_empty : rows.front().size();
    Matrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c) throw DimensionMismatch("ragged matrix rows");
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

std::vector<Rational> Matrix::col(std::size_t j) const {
    std::vector<Rational> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

std::vector<Rational> Matrix::row(std::size_t i) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionMismatch("block out of range");
    Matrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
}

Matrix Matrix::col_block(std::size_t first, std::size_t count) const { return block(0, first, rows_, count); }
Matrix Matrix::row_block(std::size_t first, std::size_t count) const { return block(first, 0, count, cols_); }

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw DimensionMismatch("set_block out of range");
    for (std::size_t i = 0; i < b.rows_; ++i)
        for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

Matrix Matrix::select_rows(std::span<const std::size_t> idx) const {
    Matrix m(idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(idx[i], j);
    return m;
}

Matrix Matrix::select_cols(std::span<const std::size_t> idx) const {
    Matrix m(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool Matrix::is_zero() const {
    for (const auto& x : data_)
        if (!x.is_zero()) return false;
    return true;
}

Matrix Matrix::vec() const {
    Matrix v(rows_ * cols_, 1);
    for (std::size_t k = 0; k < data_.size(); ++k) v(k, 0) = data_[k];
    return v;
}

Matrix Matrix::unvec(const Matrix& v, std::size_t rows, std::size_t cols) {
    if (v.cols() != 1 || v.rows() != rows * cols) throw DimensionMismatch("unvec: wrong length");
    Matrix m(rows, cols);
    for (std::size_t k = 0; k < rows * cols; ++k) m.data_[k] = v(k, 0);
    return m;
}

Matrix& Matrix::operator+=(const Matrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix sum shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix difference shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
}

Matrix& Matrix::operator*=(const Rational& s) {
    for (auto& x : data_) x *= s;
    return *this;
}

Matrix Matrix::operator-() const {
    Matrix m = *this;
    for (auto& x : m.data_) x = -x;
    return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Rational& aik = a(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                if (!b(k, j).is_zero()) c(i, j) += aik * b(k, j);
        }
    return c;
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows_; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? ", " : "") << m(i, j);
        os << ']';
    }
    return os << ']';
}

Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw DimensionMismatch("hstack row mismatch");
    Matrix m(a.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(0, a.cols(), b);
    return m;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) throw DimensionMismatch("vstack column mismatch");
    Matrix m(a.rows() + b.rows(), a.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), 0, b);
    return m;
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
    Matrix m(a.rows() + b.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), a.cols(), b);
    return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix m(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j).is_zero()) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
    return m;
}

RrefResult rref(const Matrix& a) {
    Matrix r = a;
    Matrix t = Matrix::identity(a.rows());
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < r.cols() && row < r.rows(); ++c) {
        std::size_t sel = row;
        while (sel < r.rows() && r(sel, c).is_zero()) ++sel;
        if (sel == r.rows()) continue;
        if (sel != row) {
            for (std::size_t j = 0; j < r.cols(); ++j) std::swap(r(sel, j), r(row, j));
            for (std::size_t j = 0; j < t.cols(); ++j) std::swap(t(sel, j), t(row, j));
        }
        const Rational inv = Rational(1) / r(row, c);
        for (std::size_t j = 0; j < r.cols(); ++j) r(row, j) *= inv;
        for (std::size_t j = 0; j < t.cols(); ++j) t(row, j) *= inv;
        for (std::size_t i = 0; i < r.rows(); ++i) {
            if (i == row || r(i, c).is_zero()) continue;
            const Rational f = r(i, c);
            for (std::size_t j = 0; j < r.cols(); ++j)
                if (!r(row, j).is_zero()) r(i, j) -= f * r(row, j);
            for (std::size_t j = 0; j < t.cols(); ++j)
                if (!t(row, j).is_zero()) t(i, j) -= f * t(row, j);
        }
        pivots.push_back(c);
        ++row;
    }
    return {std::move(r), std::move(pivots), std::move(t)};
}

std::size_t rank(const Matrix& a) { return rref(a).pivots.size(); }

Matrix nullspace(const Matrix& a) {
    const auto rr = rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : rr.pivots) is_pivot[p] = true;
    Matrix basis(a.cols(), a.cols() - rr.pivots.size());
    std::size_t k = 0;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (is_pivot[f]) continue;
        basis(f, k) = 1;
        for (std::size_t r = 0; r < rr.pivots.size(); ++r) basis(rr.pivots[r], k) = -rr.reduced(r, f);
        ++k;
    }
    return basis;
}

std::optional<Solution> solve(const Matrix& a, const Matrix& b) {
    if (b.cols() != 1 || b.rows() != a.rows()) throw DimensionMismatch("solve: right-hand side shape");
    const auto rr = rref(hstack(a, b));
    // inconsistent iff the augmented column is a pivot
    if (!rr.pivots.empty() && rr.pivots.back() == a.cols()) return std::nullopt;
    Matrix x(a.cols(), 1);
    for (std::size_t r = 0; r < rr.pivots.size(); ++r) x(rr.pivots[r], 0) = rr.reduced(r, a.cols());
    return Solution{std::move(x), nullspace(a)};
}

std::optional<Matrix> solve_matrix(const Matrix& a, const Matrix& b) {
    if (b.rows() != a.rows()) throw DimensionMismatch("solve_matrix: row mismatch");
    const auto rr = rref(hstack(a, b));
    Matrix x(a.cols(), b.cols());
    for (std::size_t r = 0; r < rr.pivots.size(); ++r) {
        if (rr.pivots[r] >= a.cols()) return std::nullopt;
        for (std::size_t j = 0; j < b.cols(); ++j) x(rr.pivots[r], j) = rr.reduced(r, a.cols() + j);
    }
    return x;
}

Rational determinant(const Matrix& a) {
    if (!a.is_square()) throw DimensionMismatch("determinant of a non-square matrix");
    Matrix m = a;
    Rational det = 1;
    const std::size_t n = m.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t sel = c;
        while (sel < n && m(sel, c).is_zero()) ++sel;
        if (sel == n) return 0;
        if (sel != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(sel, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        const Rational inv = Rational(1) / m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m(i, c).is_zero()) continue;
            const Rational f = m(i, c) * inv;
            for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

std::optional<Matrix> try_inverse(const Matrix& a) {
    if (!a.is_square()) throw DimensionMismatch("inverse of a non-square matrix");
    auto rr = rref(a);
    if (rr.pivots.size() != a.rows()) return std::nullopt;
    return std::move(rr.transform);
}

Matrix inverse(const Matrix& a) {
    auto inv = try_inverse(a);
    if (!inv) throw std::domain_error("matrix is singular");
    return std::move(*inv);
}

}  // namespace fogus

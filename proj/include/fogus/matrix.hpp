#pragma once

// Dense matrices over Q and the exact linear algebra used throughout the
// library.  Storage is row-major.

#include "fogus/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

namespace fogus {

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<Rational>> rows);

    static Matrix identity(std::size_t n);
    static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
    static Matrix diagonal(std::span<const Rational> d);
    static Matrix column(std::span<const Rational> v);
    /// Rows given as nested vectors; all rows must have equal length.
    static Matrix from_rows(const std::vector<std::vector<Rational>>& rows, std::size_t cols_if_empty = 0);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<Rational> col(std::size_t j) const;
    std::vector<Rational> row(std::size_t i) const;
    Matrix col_block(std::size_t first, std::size_t count) const;
    Matrix row_block(std::size_t first, std::size_t count) const;
    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
    Matrix select_rows(std::span<const std::size_t> idx) const;
    Matrix select_cols(std::span<const std::size_t> idx) const;

    Matrix transpose() const;
    bool is_zero() const;

    /// Row-major flattening of a matrix into a column vector.
    Matrix vec() const;
    /// Inverse of vec().
    static Matrix unvec(const Matrix& v, std::size_t rows, std::size_t cols);

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(const Rational& s);
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const Rational& s) { return a *= s; }
    friend Matrix operator*(const Rational& s, Matrix a) { return a *= s; }
    Matrix operator-() const;
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b) = default;

    friend std::ostream& operator<<(std::ostream& os, const Matrix& m);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
Matrix block_diag(const Matrix& a, const Matrix& b);
/// Kronecker product; vec(A X B) = kron(A, B^T) vec(X) for row-major vec.
Matrix kron(const Matrix& a, const Matrix& b);

struct RrefResult {
    Matrix reduced;                   ///< R = T * A in reduced row-echelon form
    std::vector<std::size_t> pivots;  ///< pivot column of each nonzero row
    Matrix transform;                 ///< invertible T
};

RrefResult rref(const Matrix& a);
std::size_t rank(const Matrix& a);
/// Basis of {x : A x = 0} as columns, one per free column (leftmost pivots).
Matrix nullspace(const Matrix& a);

struct Solution {
    Matrix particular;  ///< column vector (free variables set to zero)
    Matrix kernel;      ///< columns spanning {x : A x = 0}
};

/// Solves A x = b for a column b; nullopt iff b is not in the column space.
std::optional<Solution> solve(const Matrix& a, const Matrix& b);
/// Solves A X = B column by column; nullopt if any column is inconsistent.
std::optional<Matrix> solve_matrix(const Matrix& a, const Matrix& b);

Rational determinant(const Matrix& a);
std::optional<Matrix> try_inverse(const Matrix& a);
/// Inverse of a square matrix; throws DimensionMismatch / std::domain_error.
Matrix inverse(const Matrix& a);

}  // namespace fogus

#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "tdpair/field.hpp"

namespace tdpair {

using Vector = std::vector<Scalar>;

// Dense row-major matrix over a single field.
class Matrix {
public:
    Matrix(const Field& f, std::size_t rows, std::size_t cols);

    static Matrix identity(const Field& f, std::size_t n);
    static Matrix diagonal(const Field& f, const std::vector<Scalar>& entries);
    static Matrix from_rows(const Field& f, const std::vector<Vector>& rows);
    static Matrix from_ints(const Field& f, std::initializer_list<std::initializer_list<long long>> rows);
    // Columns of the result are the given vectors.
    static Matrix from_columns(const Field& f, std::size_t n, const std::vector<Vector>& cols);

    const Field& field() const noexcept { return *field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vector row(std::size_t r) const;
    Vector column(std::size_t c) const;
    // All entries, row-major; used to treat matrices as vectors of length rows*cols.
    const std::vector<Scalar>& entries() const noexcept { return data_; }

    bool is_zero() const;
    bool operator==(const Matrix& o) const;

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(const Scalar& s);
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const Scalar& s) { return a *= s; }
    friend Matrix operator*(const Scalar& s, Matrix a) { return a *= s; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    Matrix operator-() const;

    Vector apply(const Vector& v) const;
    Matrix transpose() const;
    Matrix pow(unsigned e) const;
    // Adds s to each diagonal entry.
    Matrix plus_identity(const Scalar& s) const;

    std::string to_string() const;

private:
    void require_compatible(const Matrix& o, const char* what) const;

    const Field* field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Scalar> data_;
};

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

// Product of a left-to-right list of factors.
Matrix product(const std::vector<const Matrix*>& factors);

Vector zero_vector(const Field& f, std::size_t n);
bool is_zero(const Vector& v);
Vector operator+(const Vector& a, const Vector& b);
Vector scale(const Vector& v, const Scalar& s);

}  // namespace tdpair

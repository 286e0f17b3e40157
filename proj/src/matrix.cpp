#include "tdpair/matrix.hpp"

#include <sstream>

#include "tdpair/errors.hpp"

namespace tdpair {

Matrix::Matrix(const Field& f, std::size_t rows, std::size_t cols)
    : field_(&f), rows_(rows), cols_(cols), data_(rows * cols, f.zero()) {}

Matrix Matrix::identity(const Field& f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
    return m;
}

Matrix Matrix::diagonal(const Field& f, const std::vector<Scalar>& entries) {
    Matrix m(f, entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
}

Matrix Matrix::from_rows(const Field& f, const std::vector<Vector>& rows) {
    std::size_t nc = rows.empty() ? 0 : rows.front().size();
    Matrix m(f, rows.size(), nc);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != nc) throw InvalidArgument("ragged rows");
        for (std::size_t c = 0; c < nc; ++c) {
            if (rows[r][c].field() != f) throw InvalidArgument("entry outside " + f.describe());
            m(r, c) = rows[r][c];
        }
    }
    return m;
}

Matrix Matrix::from_ints(const Field& f, std::initializer_list<std::initializer_list<long long>> rows) {
    std::vector<Vector> rs;
    for (const auto& r : rows) {
        Vector v;
        for (long long x : r) v.push_back(f.from_int(x));
        rs.push_back(std::move(v));
    }
    return from_rows(f, rs);
}

Matrix Matrix::from_columns(const Field& f, std::size_t n, const std::vector<Vector>& cols) {
    Matrix m(f, n, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].size() != n) throw InvalidArgument("column length mismatch");
        for (std::size_t r = 0; r < n; ++r) m(r, c) = cols[c][r];
    }
    return m;
}

Vector Matrix::row(std::size_t r) const {
    return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector Matrix::column(std::size_t c) const {
    Vector v;
    v.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v.push_back((*this)(r, c));
    return v;
}

bool Matrix::is_zero() const {
    for (const auto& x : data_)
        if (!x.is_zero()) return false;
    return true;
}

bool Matrix::operator==(const Matrix& o) const {
    if (field_ != o.field_ || rows_ != o.rows_ || cols_ != o.cols_) return false;
    return data_ == o.data_;
}

void Matrix::require_compatible(const Matrix& o, const char* what) const {
    if (field_ != o.field_) throw InvalidArgument(std::string(what) + ": field mismatch");
    if (rows_ != o.rows_ || cols_ != o.cols_) throw InvalidArgument(std::string(what) + ": shape mismatch");
}

Matrix& Matrix::operator+=(const Matrix& o) {
    require_compatible(o, "matrix addition");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    require_compatible(o, "matrix subtraction");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

Matrix& Matrix::operator*=(const Scalar& s) {
    for (auto& x : data_) x *= s;
    return *this;
}

Matrix Matrix::operator-() const {
    Matrix m = *this;
    for (auto& x : m.data_) x = -x;
    return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.field_ != b.field_) throw InvalidArgument("matrix product: field mismatch");
    if (a.cols_ != b.rows_) throw InvalidArgument("matrix product: inner dimension mismatch");
    Matrix m(*a.field_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Scalar& aik = a(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                const Scalar& bkj = b(k, j);
                if (!bkj.is_zero()) m(i, j) += aik * bkj;
            }
        }
    }
    return m;
}

Vector Matrix::apply(const Vector& v) const {
    if (v.size() != cols_) throw InvalidArgument("matrix-vector product: size mismatch");
    Vector out(rows_, field_->zero());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (!v[j].is_zero() && !(*this)(i, j).is_zero()) out[i] += (*this)(i, j) * v[j];
    return out;
}

Matrix Matrix::transpose() const {
    Matrix m(*field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

Matrix Matrix::pow(unsigned e) const {
    if (!is_square()) throw InvalidArgument("matrix power of a non-square matrix");
    Matrix r = identity(*field_, rows_);
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
}

Matrix Matrix::plus_identity(const Scalar& s) const {
    if (!is_square()) throw InvalidArgument("plus_identity of a non-square matrix");
    Matrix m = *this;
    for (std::size_t i = 0; i < rows_; ++i) m(i, i) += s;
    return m;
}

std::string Matrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j);
        os << "]";
    }
    os << "]";
    return os.str();
}

Matrix product(const std::vector<const Matrix*>& factors) {
    if (factors.empty()) throw InvalidArgument("empty product");
    Matrix r = *factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) r = r * *factors[i];
    return r;
}

Vector zero_vector(const Field& f, std::size_t n) { return Vector(n, f.zero()); }

bool is_zero(const Vector& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

Vector operator+(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw InvalidArgument("vector sum: size mismatch");
    Vector r = a;
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += b[i];
    return r;
}

Vector scale(const Vector& v, const Scalar& s) {
    Vector r = v;
    for (auto& x : r) x *= s;
    return r;
}

}  // namespace tdpair

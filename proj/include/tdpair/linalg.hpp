#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "tdpair/matrix.hpp"
#include "tdpair/polynomial.hpp"

namespace tdpair {

struct RrefResult {
    Matrix matrix;
    std::vector<std::size_t> pivots;
    std::size_t rank;
};

RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);
// Basis of {x : m x = 0}, one vector per free column.
std::vector<Vector> kernel(const Matrix& m);
// Throws InvalidArgument if m is singular or not square.
Matrix inverse(const Matrix& m);
std::optional<Matrix> try_inverse(const Matrix& m);
// Some x with m x = b, or nullopt.
std::optional<Vector> solve(const Matrix& m, const Vector& b);

// Subspace of F^n stored as an RREF basis with no zero rows, so equal
// subspaces have identical representations.
class Subspace {
public:
    static Subspace zero(const Field& f, std::size_t n);
    static Subspace full(const Field& f, std::size_t n);
    static Subspace span(const Field& f, std::size_t n, const std::vector<Vector>& vectors);
    // Row space of m.
    static Subspace row_space(const Matrix& m);
    // Column space of m.
    static Subspace image(const Matrix& m);
    static Subspace kernel_of(const Matrix& m);

    const Field& field() const noexcept { return basis_.field(); }
    std::size_t ambient_dim() const noexcept { return basis_.cols(); }
    std::size_t dim() const noexcept { return basis_.rows(); }
    const Matrix& basis() const noexcept { return basis_; }
    std::vector<Vector> vectors() const;
    bool is_zero() const noexcept { return dim() == 0; }
    bool is_full() const noexcept { return dim() == ambient_dim(); }

    bool contains(const Vector& v) const;
    bool contains(const Subspace& o) const;
    // Image under a square matrix acting on column vectors.
    Subspace mapped_by(const Matrix& m) const;

    bool operator==(const Subspace& o) const { return basis_ == o.basis_; }

private:
    explicit Subspace(Matrix basis) : basis_(std::move(basis)) {}
    Matrix basis_;
};

Subspace subspace_sum(const Subspace& u, const Subspace& w);
Subspace subspace_intersect(const Subspace& u, const Subspace& w);

// Incrementally maintained echelon basis; used for closure computations where
// the same set grows one vector at a time.
class EchelonBasis {
public:
    EchelonBasis(const Field& f, std::size_t n) : field_(&f), n_(n) {}
    // Returns true if v was independent of the current span and got added.
    bool insert(Vector v);
    bool contains(Vector v) const;
    std::size_t size() const noexcept { return rows_.size(); }
    std::size_t ambient_dim() const noexcept { return n_; }
    // The vectors as originally inserted (only the independent ones).
    const std::vector<Vector>& originals() const noexcept { return originals_; }

private:
    void reduce(Vector& v) const;

    const Field* field_;
    std::size_t n_;
    std::vector<Vector> rows_;
    std::vector<std::size_t> pivots_;
    std::vector<Vector> originals_;
};

// det(xI - m), monic of degree n.
Polynomial char_poly(const Matrix& m);

struct RootsResult {
    std::vector<std::pair<Scalar, unsigned>> roots;  // ascending by the field's order
    bool fully_split;
    // What is left after removing all linear factors (monic, degree >= 0).
    Polynomial cofactor;
};

RootsResult roots_in_field(const Polynomial& p);

}  // namespace tdpair

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tdpair {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad caller input: mismatched fields or shapes, zero scale factors, guards.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Text that does not parse as a field element, matrix document, or token.
class ParseError : public Error {
public:
    using Error::Error;
};

// The characteristic polynomial has no full set of roots in the field. The
// cofactor is what remains after removing every linear factor; it has no
// roots in the field but need not be irreducible.
class NotSplit : public Error {
public:
    NotSplit(std::string charpoly, std::size_t cofactor_degree)
        : Error("characteristic polynomial " + charpoly +
                " does not split over the field (root-free cofactor of degree " +
                std::to_string(cofactor_degree) + ")"),
          charpoly_(std::move(charpoly)),
          cofactor_degree_(cofactor_degree) {}

    const std::string& charpoly() const noexcept { return charpoly_; }
    std::size_t cofactor_degree() const noexcept { return cofactor_degree_; }

private:
    std::string charpoly_;
    std::size_t cofactor_degree_;
};

class NotDiagonalizable : public Error {
public:
    using Error::Error;
};

// A randomized or partial decision procedure could not settle the question.
class Inconclusive : public Error {
public:
    using Error::Error;
};

class Unsupported : public Error {
public:
    using Error::Error;
};

// An identity that must always hold failed; indicates a bug or corrupted input.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace tdpair

#include <doctest.h>

#include <algorithm>

#include "support.hpp"
#include "tdpair/errors.hpp"

using namespace testsupport;

TEST_CASE("diagonal matrix gives coordinate idempotents") {
    Matrix a = Matrix::diagonal(Q(), {q(3), q(1), q(2)});
    auto sd = diagonalize(a);
    REQUIRE(sd.eigens.size() == 3);
    // ascending eigenvalues 1, 2, 3 sit at coordinates 1, 2, 0
    const std::size_t coord[3] = {1, 2, 0};
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(sd.eigens[i].eigenvalue == q(long(i) + 1));
        Matrix e(Q(), 3, 3);
        e(coord[i], coord[i]) = q(1);
        CHECK(sd.eigens[i].idempotent == e);
        CHECK(sd.eigens[i].algebraic_multiplicity == 1);
        CHECK(sd.eigens[i].eigenspace.dim() == 1);
    }
    CHECK(verify_idempotent_identities(sd));
}

TEST_CASE("repeated eigenvalue") {
    Matrix a = Matrix::diagonal(Q(), {q(2), q(5), q(2)});
    auto sd = diagonalize(a);
    REQUIRE(sd.eigens.size() == 2);
    CHECK(sd.eigens[0].eigenspace.dim() == 2);
    CHECK(sd.eigens[0].algebraic_multiplicity == 2);
}

TEST_CASE("failures") {
    CHECK_THROWS_AS(diagonalize(Matrix::from_ints(Q(), {{2, 1}, {0, 2}})), NotDiagonalizable);
    CHECK_THROWS_AS(diagonalize(Matrix::from_ints(Q(), {{0, -1}, {1, 0}})), NotSplit);
    // x^2 + 1 splits over GF(5)
    auto sd = diagonalize(Matrix::from_ints(Field::prime(5), {{0, -1}, {1, 0}}));
    CHECK(sd.eigens.size() == 2);
    CHECK(verify_idempotent_identities(sd));
    CHECK_THROWS_AS(diagonalize(Matrix(Q(), 0, 0)), InvalidArgument);
}

TEST_CASE("1x1") {
    auto sd = diagonalize(Matrix::from_ints(Q(), {{7}}));
    REQUIRE(sd.eigens.size() == 1);
    CHECK(sd.eigens[0].idempotent == Matrix::identity(Q(), 1));
}

// Independent oracle: for A = P D P^-1 the idempotent of a block is P J P^-1
// with J the 0/1 diagonal selecting that block.
static void random_diagonalizable_check(const Field& f, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> nd(1, 8);
    std::size_t n = nd(rng);
    Matrix p = random_invertible(f, n, rng);
    Matrix pinv = inverse(p);
    std::uniform_int_distribution<int> ev(-4, 4);
    std::vector<Scalar> diag;
    for (std::size_t i = 0; i < n; ++i) diag.push_back(f.from_int(ev(rng)));
    Matrix a = p * Matrix::diagonal(f, diag) * pinv;
    auto sd = diagonalize(a);
    auto distinct = diag;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    REQUIRE(sd.eigens.size() == distinct.size());
    Matrix sum(f, n, n);
    for (std::size_t i = 0; i < distinct.size(); ++i) {
        CHECK(sd.eigens[i].eigenvalue == distinct[i]);
        Matrix j(f, n, n);
        for (std::size_t k = 0; k < n; ++k)
            if (diag[k] == distinct[i]) j(k, k) = f.one();
        Matrix e = p * j * pinv;
        CHECK(sd.eigens[i].idempotent == e);
        CHECK(a * e == e * distinct[i]);
        for (std::size_t k = 0; k < distinct.size(); ++k)
            CHECK((e * sd.eigens[k].idempotent == (i == k ? e : Matrix(f, n, n))));
        sum += e;
    }
    CHECK(sum == Matrix::identity(f, n));
    CHECK(verify_idempotent_identities(sd));
}

TEST_CASE("random diagonalizable matrices over Q and GF(p)") {
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 100; ++t) random_diagonalizable_check(Q(), rng);
    for (int t = 0; t < 100; ++t) random_diagonalizable_check(Field::prime(t % 2 ? 101 : 13), rng);
}

TEST_CASE("eigenspace_sum clamps") {
    auto sd = diagonalize(Matrix::diagonal(Q(), {q(1), q(2), q(3)}));
    CHECK(eigenspace_sum(sd.eigens, -1, -1, 3).is_zero());
    CHECK(eigenspace_sum(sd.eigens, 0, 5, 3).is_full());
    CHECK(eigenspace_sum(sd.eigens, 1, 2, 3).dim() == 2);
}

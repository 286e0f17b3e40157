#include "doctest.h"

#include <random>

#include "tdpair/errors.hpp"
#include "tdpair/field.hpp"

using namespace tdpair;

TEST_CASE("rational arithmetic is exact and canonical") {
    const Field& q = Field::rational();
    Scalar a = Scalar::parse(q, "6/4");
    CHECK(a.to_string() == "3/2");
    CHECK((a + Scalar::parse(q, "-1/2")).is_one());
    CHECK((a * a.inverse()).is_one());
    CHECK(Scalar::parse(q, "-0").is_zero());
    CHECK_THROWS_AS(Scalar::parse(q, "1/0"), ParseError);
    CHECK_THROWS_AS(Scalar::parse(q, "abc"), ParseError);
    CHECK_THROWS_AS(q.zero().inverse(), InvalidArgument);
}

TEST_CASE("prime field arithmetic matches integer arithmetic mod p") {
    const Field& f = Field::prime(101);
    CHECK(&f == &Field::prime(101));
    std::mt19937_64 rng(7);
    for (int t = 0; t < 200; ++t) {
        long long x = static_cast<long long>(rng() % 101), y = static_cast<long long>(rng() % 101);
        CHECK((f.from_int(x) * f.from_int(y)).residue() == static_cast<std::uint64_t>((x * y) % 101));
        CHECK((f.from_int(x) - f.from_int(y)).residue() == static_cast<std::uint64_t>(((x - y) % 101 + 101) % 101));
        if (x != 0) CHECK((f.from_int(x) * f.from_int(x).inverse()).is_one());
    }
    CHECK_THROWS_AS(Field::prime(100), InvalidArgument);
    CHECK_THROWS_AS(Scalar::parse(f, "101"), ParseError);
    CHECK(Scalar::parse(f, "-1", false).residue() == 100);
}

TEST_CASE("square roots and multiplicative orders") {
    const Field& f = Field::prime(13);
    for (std::uint64_t a = 0; a < 13; ++a) {
        Scalar s = f.from_int(static_cast<long long>(a));
        bool is_square = false;
        for (std::uint64_t b = 0; b < 13; ++b)
            if ((b * b) % 13 == a) is_square = true;
        auto r = s.sqrt();
        CHECK(r.has_value() == is_square);
        if (r) CHECK(*r * *r == s);
    }
    CHECK(f.from_int(2).multiplicative_order() == 12u);
    CHECK(f.from_int(3).multiplicative_order() == 3u);
    CHECK(Field::rational().from_int(-1).multiplicative_order() == 2u);
    CHECK(!Field::rational().from_int(2).multiplicative_order().has_value());
    CHECK(Scalar::parse(Field::rational(), "9/4").sqrt()->to_string() == "3/2");
}

TEST_CASE("quadratic extensions") {
    const Field& q = Field::rational();
    const Field& k = Field::quadratic(q, q.from_int(5));
    Scalar s = *k.from_int(5).sqrt();
    CHECK(s * s == k.from_int(5));
    CHECK((s + k.one()) * (s - k.one()) == k.from_int(4));
    CHECK(((s + k.one()).inverse() * (s + k.one())).is_one());
    CHECK_THROWS_AS(Field::quadratic(q, q.from_int(4)), InvalidArgument);

    const Field& g = Field::quadratic(Field::prime(7), Field::prime(7).from_int(3));
    CHECK(g.order() == 49);
    // Every nonzero element of GF(49) has order dividing 48.
    Scalar x = Scalar::from_coords(g, std::uint64_t{2}, std::uint64_t{5});
    CHECK(x.pow(48).is_one());
    CHECK(48 % *x.multiplicative_order() == 0);
}

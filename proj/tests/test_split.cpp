#include <doctest.h>

#include "support.hpp"
#include "tdpair/errors.hpp"

using namespace testsupport;

TEST_CASE("sl2 d=1 split") {
    TDSystem phi = system_of(Matrix::from_ints(Q(), {{1, 0}, {0, -1}}), Matrix::from_ints(Q(), {{0, 1}, {1, 0}}));
    auto sp = build_split(phi);
    REQUIRE(sp.u.size() == 2);
    CHECK(sp.u[0] == phi.dual_eigens[0].eigenspace);
    CHECK(sp.u[1].dim() == 1);
    CHECK(subspace_intersect(sp.u[0], sp.u[1]).is_zero());
    CHECK(sp.f[0] + sp.f[1] == Matrix::identity(Q(), 2));
    CHECK((sp.f[0] * sp.f[1]).is_zero());
    CHECK(shape(sp) == std::vector<std::size_t>{1, 1});
}

TEST_CASE("d = 0") {
    TDSystem phi = system_of(Matrix::from_ints(Q(), {{2}}), Matrix::from_ints(Q(), {{5}}));
    auto sp = build_split(phi);
    CHECK(sp.u[0].is_full());
    CHECK(sp.f[0] == Matrix::identity(Q(), 1));
    CHECK(shape(sp) == std::vector<std::size_t>{1});
}

TEST_CASE("sl2 split identities") {
    for (std::size_t d = 1; d <= 4; ++d) {
        for (std::size_t k = 0; k < 4; ++k) {
            TDSystem phi = sl2_system(d, k);
            auto sp = build_split(phi);
            CHECK(shape(sp) == std::vector<std::size_t>(d + 1, 1));
            CHECK(is_direct_sum(sp.u));
            CHECK(check_split_action(phi, sp.u));
            CHECK(check_split_telescoping(phi, sp.u));
            CHECK(check_projection_identities(sp));
            CHECK(check_triangularity(sp));
            CHECK(check_sandwich_identities(sp));
            CHECK(check_eigen_split_bijections(sp));
            VijLattice lat(phi);
            CHECK(lat.vanishes_below_diagonal());
            CHECK(lat.check_inclusions(phi));
            CHECK(lat.at(long(d), 0).is_full());
            CHECK(lat.at(0, 1).is_zero());
            for (std::size_t i = 0; i <= d; ++i) {
                CHECK(lat.at(long(i), long(i)) == sp.u[i]);
                CHECK(lat.at(long(i), 0) == eigenspace_sum(phi.dual_eigens, 0, long(i), phi.dim()));
                CHECK(lat.at(long(d), long(i)) == eigenspace_sum(phi.eigens, long(i), long(d), phi.dim()));
            }
        }
    }
}

TEST_CASE("F_i is the identity on U_i and kills the other summands") {
    TDSystem phi = sl2_system(3);
    auto sp = build_split(phi);
    for (std::size_t i = 0; i <= 3; ++i)
        for (std::size_t j = 0; j <= 3; ++j)
            for (const auto& v : sp.u[j].vectors()) CHECK(sp.f[i].apply(v) == (i == j ? v : zero_vector(Q(), 4)));
}

TEST_CASE("perturbing a summand breaks the split conditions") {
    std::mt19937_64 rng(5);
    for (std::size_t d = 2; d <= 4; ++d) {
        TDSystem phi = sl2_system(d);
        auto u = split_subspaces(phi);
        for (std::size_t i = 0; i <= d; ++i) {
            auto bad = u;
            // Replace U_i by a line through a vector outside U_i.
            Vector v = u[i].vectors().front();
            Vector w = u[(i + 1) % (d + 1)].vectors().front();
            bad[i] = Subspace::span(Q(), phi.dim(), {v + w});
            bool ok = is_direct_sum(bad) && check_split_action(phi, bad) && check_split_telescoping(phi, bad);
            CHECK_FALSE(ok);
        }
    }
}

TEST_CASE("symmetric unimodal") {
    CHECK(is_symmetric_unimodal({1, 2, 2, 1}));
    CHECK(is_symmetric_unimodal({1}));
    CHECK_FALSE(is_symmetric_unimodal({1, 2}));
    CHECK_FALSE(is_symmetric_unimodal({2, 1, 2}));
}

TEST_CASE("split is basis independent up to conjugation") {
    std::mt19937_64 rng(17);
    auto [a, as] = sl2_module(Sl2Spec(3));
    for (int t = 0; t < 5; ++t) {
        Matrix p = random_invertible(Q(), 4, rng);
        auto [pa, pas] = conjugate_pair(a, as, p);
        auto sp0 = build_split(system_of(a, as));
        auto sp1 = build_split(system_of(pa, pas));
        Matrix pinv = inverse(p);
        for (std::size_t i = 0; i <= 3; ++i) CHECK(sp1.f[i] == p * sp0.f[i] * pinv);
    }
}

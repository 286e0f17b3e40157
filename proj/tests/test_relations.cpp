#include <doctest.h>

#include "support.hpp"
#include "tdpair/errors.hpp"

using namespace testsupport;

TEST_CASE("sl2 d=3 relations") {
    auto [a, as] = sl2_module(Sl2Spec(3));
    ParameterSet p{q(2), q(0), q(0), q(4), q(4), true};
    auto [x, y] = check_tridiagonal_relations(a, as, p);
    CHECK(x);
    CHECK(y);
    p.varrho = q(5);
    CHECK_FALSE(check_tridiagonal_relations(a, as, p).first);
}

TEST_CASE("commuting operators make the evaluator vanish") {
    Matrix d = Matrix::diagonal(Q(), {q(1), q(2)});
    CHECK(relation_commutator(d, d, q(7), q(-3), q(11)).is_zero());
}

TEST_CASE("relation commutator against a literal expansion") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        Matrix a = random_matrix(Q(), 3, 3, rng), b = random_matrix(Q(), 3, 3, rng);
        Scalar be = q(t - 5), ga = q(2 * t + 1, 3), va = q(-t);
        // [A, A^2B - be ABA + BA^2 - ga(AB + BA) - va B] expanded term by term
        Matrix lhs = a * a * a * b - a * a * b * a * be + a * b * a * a - (a * a * b + a * b * a) * ga - a * b * va;
        Matrix rhs = a * a * b * a - a * b * a * a * be + b * a * a * a - (a * b * a + b * a * a) * ga - b * a * va;
        CHECK(relation_commutator(a, b, be, ga, va) == lhs - rhs);
    }
}

TEST_CASE("sl2 family specializes to Dolan-Grady") {
    for (std::size_t d = 1; d <= 6; ++d) {
        auto rep = solve_parameters_and_verify(sl2_system(d));
        CHECK(rep.specialization == Specialization::DolanGrady);
        REQUIRE(rep.b);
        CHECK(*rep.b == q(2));
        REQUIRE(rep.b_star);
        CHECK(*rep.b_star == q(2));
        CHECK(rep.params.varrho == *rep.b * *rep.b);
    }
    // Scaling A by 2 keeps Dolan-Grady with varrho multiplied by 4.
    Sl2Spec s(3);
    s.a_scale = q(2);
    auto [a, as] = sl2_module(s);
    auto rep = solve_parameters_and_verify(system_of(a, as));
    CHECK(rep.specialization == Specialization::DolanGrady);
    CHECK(rep.params.varrho == q(16));
}

TEST_CASE("q-form instance is quantum Serre; shifted dual is General") {
    auto pair = find_split_qform(7, 3, 3);
    REQUIRE(pair);
    auto phi = system_of(pair->first, pair->second);
    auto rep = solve_parameters_and_verify(phi);
    CHECK(rep.specialization == Specialization::QuantumSerre);
    REQUIRE(rep.q);
    const Field& f = Field::prime(7);
    CHECK(*rep.q + rep.q->inverse() == f.one());
    auto shifted = find_split_qform(7, 3, 3, 0, 1, 2, 1);
    REQUIRE(shifted);
    auto rep2 = solve_parameters_and_verify(system_of(shifted->first, shifted->second));
    CHECK_FALSE(rep2.params.gamma_star.is_zero());
    CHECK(rep2.specialization == Specialization::General);
}

TEST_CASE("relation iff recurrence, both directions") {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> dist(-3, 3);
    for (std::size_t d = 1; d <= 4; ++d) {
        TDSystem phi = sl2_system(d, 1);
        auto p = derive_parameters(phi);
        auto th = phi.theta();
        for (int t = 0; t < 10; ++t) {
            Scalar b = t == 0 ? p.beta : p.beta + q(dist(rng));
            Scalar g = t == 0 ? p.gamma : p.gamma + q(dist(rng));
            Scalar v = t == 0 ? p.varrho : p.varrho + q(dist(rng));
            bool rel = relation_commutator(phi.a, phi.a_star, b, g, v).is_zero();
            CHECK(rel == is_beta_gamma_varrho_recurrent(th, b, g, v));
        }
    }
}

TEST_CASE("generalized TD pairs") {
    for (std::size_t d = 3; d <= 5; ++d) {
        auto [a, as] = sl2_module(Sl2Spec(d));
        auto g = is_generalized_td_pair(a, as);
        CHECK(g.is_generalized);
        CHECK(g.solution_dim == 0);
        REQUIRE(g.witness);
        auto p = derive_parameters(system_of(a, as));
        CHECK(g.witness->beta == p.beta);
        CHECK(g.witness->gamma == p.gamma);
        CHECK(g.witness->varrho == p.varrho);
        CHECK(g.witness->varrho_star == p.varrho_star);
    }
    auto [a, as] = sl2_module(Sl2Spec(2));
    auto g = is_generalized_td_pair(a, as);
    CHECK(g.is_generalized);
    CHECK(g.solution_dim > 0);
    CHECK(g.witness->beta == q(2));
    Matrix d = Matrix::diagonal(Q(), {q(1), q(2)});
    CHECK_FALSE(is_generalized_td_pair(d, d).is_generalized);
}

TEST_CASE("commutator span identity") {
    for (std::size_t d = 1; d <= 4; ++d)
        for (std::size_t k = 0; k < 4; ++k) CHECK(check_commutator_span_identity(sl2_system(d, k)));
}

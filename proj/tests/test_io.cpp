#include <doctest.h>

#include "support.hpp"
#include "tdpair/errors.hpp"
#include "tdpair/io.hpp"

using namespace testsupport;

namespace {

Json doc(const std::string& text) { return Json::parse(text); }

}  // namespace

TEST_CASE("matrix document round trip") {
    std::mt19937_64 rng(7);
    for (const Field* f : {&Q(), &Field::prime(2), &Field::prime(101), &Field::prime(1000003)}) {
        for (int t = 0; t < 40; ++t) {
            std::size_t r = 1 + t % 5, c = 1 + (t / 5) % 5;
            Matrix m = random_matrix(*f, r, c, rng, -50, 50);
            if (f->kind() == FieldKind::Rational) m = m * f->from_rational(mpq_class(1, 1 + t % 7));
            Json j = matrix_to_json(m);
            Matrix back = matrix_from_json(j);
            CHECK(back == m);
            CHECK(matrix_to_json(back).dump() == j.dump());
            // Through text as well.
            CHECK(matrix_from_json(Json::parse(j.dump())) == m);
        }
    }
}

TEST_CASE("matrix document serialization format") {
    Matrix m = Matrix::from_rows(Q(), {{q(1), q(-2, 3)}, {q(0), q(5, 10)}});
    CHECK(matrix_to_json(m).dump() ==
          R"({"field":{"type":"rational"},"rows":[["1","-2/3"],["0","1/2"]]})");
    const Field& f = Field::prime(7);
    Matrix g = Matrix::from_rows(f, {{f.from_int(-1), f.from_int(10)}});
    CHECK(matrix_to_json(g).dump() == R"({"field":{"type":"gfp","p":7},"rows":[["6","3"]]})");
}

TEST_CASE("matrix document errors") {
    CHECK_THROWS_AS(matrix_from_json(doc(R"({"field":{"type":"rational"},"rows":[["1","1/0"]]})")), ParseError);
    CHECK_THROWS_AS(matrix_from_json(doc(R"({"field":{"type":"rational"},"rows":[["1","2"],["3"]]})")), ParseError);
    CHECK_THROWS_AS(matrix_from_json(doc(R"({"field":{"type":"rational"},"rows":[]})")), ParseError);
    CHECK_THROWS_AS(matrix_from_json(doc(R"({"field":{"type":"rational"},"rows":[[1]]})")), ParseError);
    CHECK_THROWS_AS(matrix_from_json(doc(R"({"field":{"type":"gfp","p":8},"rows":[["1"]]})")), ParseError);
    CHECK_THROWS_AS(matrix_from_json(doc(R"({"field":{"type":"gfp","p":7},"rows":[["7"]]})")), ParseError);
    CHECK_THROWS_AS(matrix_from_json(doc(R"({"field":{"type":"real"},"rows":[["1"]]})")), ParseError);
    CHECK_THROWS_AS(matrix_from_json(doc(R"({"rows":[["1"]]})")), ParseError);
    try {
        matrix_from_json(doc(R"({"field":{"type":"rational"},"rows":[["1","2"],["3","x"]]})"));
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("(1, 1)") != std::string::npos);
    }
}

TEST_CASE("field specs and scalar lists") {
    CHECK(&field_from_spec("rational") == &Q());
    CHECK(&field_from_spec("gfp:7") == &Field::prime(7));
    CHECK_THROWS_AS(field_from_spec("gfp:9"), ParseError);
    CHECK_THROWS_AS(field_from_spec("gfp:"), ParseError);
    CHECK_THROWS_AS(field_from_spec("reals"), ParseError);
    auto xs = parse_scalar_list(Q(), "1, -2/4 ,3");
    REQUIRE(xs.size() == 3);
    CHECK(xs[1] == q(-1, 2));
    CHECK_THROWS_AS(parse_scalar_list(Q(), "1,,2"), ParseError);
}

TEST_CASE("analysis json separates basis dependent data") {
    auto phi = sl2_system(3);
    auto an = analyze_ordering(phi, 0);
    Json j = analysis_to_json(an);
    CHECK(j["parameters"]["beta"] == "2");
    CHECK(j["relations"]["specialization"] == "DolanGrady");
    CHECK(j["shape"] == Json::array({1, 1, 1, 1}));
    CHECK(j["all_checks_pass"] == true);
    CHECK(j.contains("basis_dependent"));
    CHECK(j["basis_dependent"]["split_bases"].size() == 4);
    for (const auto& [k, v] : j["checks"].items()) CHECK_MESSAGE(v != "fail", k);
    // No floating point anywhere.
    std::function<void(const Json&)> walk = [&](const Json& x) {
        CHECK(!x.is_number_float());
        if (x.is_structured())
            for (const auto& c : x) walk(c);
    };
    walk(j);
}

TEST_CASE("scan ndjson layout") {
    ScanConfig cfg;
    cfg.p = 5;
    cfg.n = 2;
    cfg.trials = 200;
    cfg.seed = 3;
    auto res = scan(cfg);
    std::string out = scan_to_ndjson(res);
    std::vector<Json> lines;
    std::size_t pos = 0;
    while (pos < out.size()) {
        auto nl = out.find('\n', pos);
        REQUIRE(nl != std::string::npos);
        lines.push_back(Json::parse(out.substr(pos, nl - pos)));
        pos = nl + 1;
    }
    REQUIRE(lines.size() == res.accepted.size() + res.generalized.size() + 1);
    CHECK(lines.back()["type"] == "summary");
    CHECK(lines.back()["accepted"] == res.summary.accepted);
    std::uint64_t last = 0;
    for (std::size_t i = 0; i < res.accepted.size(); ++i) {
        CHECK(lines[i]["type"] == "instance");
        std::uint64_t t = lines[i]["trial"];
        if (i) CHECK(t > last);
        last = t;
        // Stored matrices reproduce the instance.
        CHECK(matrix_from_json(lines[i]["a"]) == res.accepted[i].a);
        CHECK(verify_td_pair(matrix_from_json(lines[i]["a"]), matrix_from_json(lines[i]["a_star"])).is_td_pair);
    }
}

// Drives the tdpair executable; TDPAIR_CLI is its path.

#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tdpair/io.hpp"

namespace fs = std::filesystem;
using tdpair::Json;

namespace {

struct Run {
    int code;
    std::string out;
};

struct WorkDir {
    fs::path path = fs::temp_directory_path() / ("tdpair_cli_" + std::to_string(::getpid()));
    WorkDir() { fs::create_directories(path); }
    ~WorkDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

const fs::path& workdir() {
    static WorkDir dir;
    return dir.path;
}

std::string path(const std::string& name) { return (workdir() / name).string(); }

std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write(const std::string& name, const std::string& text) { std::ofstream(path(name)) << text; }

Run run(const std::string& args, const std::string& env = "") {
    std::string out = path("stdout.txt");
    std::string cmd = env + " " + TDPAIR_CLI + " " + args + " > " + out + " 2> " + path("stderr.txt");
    int st = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(st));
    return {WEXITSTATUS(st), slurp(out)};
}

Json strip_basis(Json j) {
    for (auto& o : j["orderings"]) o.erase("basis_dependent");
    return j;
}

}  // namespace

TEST_CASE("generate sl2 then verify") {
    for (int d : {1, 2, 3, 5}) {
        auto g = run("generate sl2 --d " + std::to_string(d) + " --coeffs 1,1,0 --out-a " + path("a.json") +
                     " --out-astar " + path("as.json"));
        REQUIRE(g.code == 0);
        auto v = run("verify " + path("a.json") + " " + path("as.json"));
        CHECK(v.code == 0);
        auto j = Json::parse(v.out);
        CHECK(j["verification"]["is_td_pair"] == true);
        CHECK(j["verification"]["d"] == d);
    }
    CHECK(run("generate sl2 --d 2 --coeffs 0,1,0").code == 2);
    CHECK(run("generate sl2 --d 2 --coeffs 1,1").code == 2);
    CHECK(run("generate sl2 --d 2 --scale 0").code == 2);
}

TEST_CASE("verify: non TD pair and malformed input") {
    write("diag.json", R"({"field":{"type":"rational"},"rows":[["1","0"],["0","-1"]]})");
    auto v = run("verify " + path("diag.json") + " " + path("diag.json"));
    CHECK(v.code == 1);
    CHECK(Json::parse(v.out)["verification"]["failure_reason"] == "Reducible");

    write("bad.json", R"({"field":{"type":"rational"},"rows":[["1","1/0"],["0","1"]]})");
    CHECK(run("verify " + path("bad.json") + " " + path("diag.json")).code == 2);
    CHECK(slurp(path("stderr.txt")).find("(0, 1)") != std::string::npos);

    write("gf.json", R"({"field":{"type":"gfp","p":5},"rows":[["1","0"],["0","4"]]})");
    CHECK(run("verify " + path("gf.json") + " " + path("diag.json")).code == 2);
    write("big.json", R"({"field":{"type":"rational"},"rows":[["1","0","0"],["0","2","0"],["0","0","3"]]})");
    CHECK(run("verify " + path("big.json") + " " + path("diag.json")).code == 2);
    CHECK(run("verify " + path("missing.json") + " " + path("diag.json")).code == 2);
    CHECK(run("verify " + path("diag.json")).code == 2);
}

TEST_CASE("TDPAIR_MAX_DIM caps input size") {
    REQUIRE(run("generate sl2 --d 3 --out-a " + path("a3.json") + " --out-astar " + path("as3.json")).code == 0);
    CHECK(run("verify " + path("a3.json") + " " + path("as3.json"), "TDPAIR_MAX_DIM=4").code == 0);
    CHECK(run("verify " + path("a3.json") + " " + path("as3.json"), "TDPAIR_MAX_DIM=3").code == 2);
}

TEST_CASE("analyze sl2 d=3") {
    REQUIRE(run("generate sl2 --d 3 --out-a " + path("a3.json") + " --out-astar " + path("as3.json")).code == 0);
    auto r = run("analyze " + path("a3.json") + " " + path("as3.json") + " --json");
    REQUIRE(r.code == 0);
    auto j = Json::parse(r.out);
    REQUIRE(j["orderings"].size() == 4);
    auto o0 = j["orderings"][0];
    CHECK(o0["parameters"]["beta"] == "2");
    CHECK(o0["relations"]["specialization"] == "DolanGrady");
    CHECK(o0["shape"] == Json::array({1, 1, 1, 1}));
    CHECK(o0["conjectures"]["all_hold"] == true);
    CHECK(o0["all_checks_pass"] == true);

    auto r1 = run("analyze " + path("a3.json") + " " + path("as3.json") + " --ordering 1");
    REQUIRE(r1.code == 0);
    auto j1 = Json::parse(r1.out);
    REQUIRE(j1["orderings"].size() == 1);
    auto o1 = j1["orderings"][0];
    CHECK(o1["ordering"] == 1);
    CHECK(o1["parameters"]["beta"] == o0["parameters"]["beta"]);
    Json rev = o0["theta"];
    std::reverse(rev.begin(), rev.end());
    CHECK(o1["theta"] == rev);
    CHECK(o1["theta_star"] == o0["theta_star"]);
    CHECK(o1 == j["orderings"][1]);

    CHECK(run("analyze " + path("a3.json") + " " + path("as3.json") + " --ordering 4").code == 2);
    CHECK(run("analyze " + path("a3.json") + " " + path("as3.json") + " --json --text").code == 2);
    auto t = run("analyze " + path("a3.json") + " " + path("as3.json") + " --text");
    CHECK(t.code == 0);
    CHECK(t.out.find("DolanGrady") != std::string::npos);
}

TEST_CASE("analyze: non TD input gives the verification payload") {
    write("diag.json", R"({"field":{"type":"rational"},"rows":[["1","0"],["0","-1"]]})");
    auto r = run("analyze " + path("diag.json") + " " + path("diag.json"));
    CHECK(r.code == 1);
    auto j = Json::parse(r.out);
    CHECK(j.contains("verification"));
    CHECK(!j.contains("orderings"));
}

TEST_CASE("analyze is invariant under conjugation except for basis data") {
    REQUIRE(run("generate sl2 --d 3 -o " + path("plain.json")).code == 0);
    auto plain = Json::parse(slurp(path("plain.json")));
    write("pa.json", plain["a"].dump());
    write("pas.json", plain["a_star"].dump());
    auto base = strip_basis(Json::parse(run("analyze " + path("pa.json") + " " + path("pas.json")).out));
    for (int seed : {1, 2, 3}) {
        REQUIRE(run("generate sl2 --d 3 --conjugate " + std::to_string(seed) + " --out-a " + path("ca.json") +
                    " --out-astar " + path("cas.json"))
                    .code == 0);
        CHECK(slurp(path("ca.json")) != slurp(path("pa.json")));
        auto r = run("analyze " + path("ca.json") + " " + path("cas.json"));
        REQUIRE(r.code == 0);
        auto j = strip_basis(Json::parse(r.out));
        j["verification"].erase("irreducibility_certificate");
        auto b = base;
        b["verification"].erase("irreducibility_certificate");
        CHECK(j == b);
    }
}

TEST_CASE("generate qform") {
    auto r = run("generate qform --p 7 --d 3 --q 3");
    REQUIRE(r.code == 0);
    auto j = Json::parse(r.out);
    CHECK(j["a"]["field"]["p"] == 7);
    CHECK(j["a"]["rows"].size() == 4);
    CHECK(run("generate qform --p 7 --d 3 --q 2").code == 2);
    CHECK(run("generate qform --p 8 --d 1 --q 3").code == 2);
    CHECK(run("generate qform --p 7 --d 3 --q 3 --b 0").code == 2);
}

TEST_CASE("recurrence") {
    auto r = run("recurrence --seq 1,2,4,8");
    REQUIRE(r.code == 0);
    auto j = Json::parse(r.out);
    CHECK(j["classification"]["beta"]["value"] == "5/2");
    CHECK(j["classification"]["gamma"]["value"] == "0");
    CHECK(j["classification"]["varrho"]["value"] == "0");
    CHECK(j["fit"]["case"] == "QGeneric");
    CHECK(j["fit"]["q"] == "2");

    auto s = Json::parse(run("recurrence --seq 3,1,-1,-3").out);
    CHECK(s["classification"]["beta"]["value"] == "2");
    CHECK(s["classification"]["varrho"]["value"] == "4");
    CHECK(s["fit"]["case"] == "Beta2");

    auto g = run("recurrence --seq 1,2,4,8 --field gfp:7");
    CHECK(g.code == 0);
    CHECK(Json::parse(g.out)["sequence"][3] == "1");

    auto nr = run("recurrence --seq 0,1,0,1,1");
    CHECK(nr.code == 1);
    CHECK(Json::parse(nr.out)["classification"]["is_recurrent"] == false);

    CHECK(run("recurrence --seq 1,x").code == 2);
    CHECK(run("recurrence --seq 1,2 --field gfp:4").code == 2);
}

TEST_CASE("rewrite") {
    auto r = run("rewrite --word A,A*,A --r 2 --s 1 --d 3 --text");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("RLR + (θ_2θ*_2 + θ_1θ*_1)·R", 0) == 0);
    auto a = Json::parse(run("rewrite --word A --r 2 --s 2 --d 3").out);
    CHECK(a["expression"] == "θ_2");
    auto z = Json::parse(run("rewrite --word A* --r 3 --s 1 --d 3").out);
    CHECK(z["expression"] == "0");
    auto n = Json::parse(run("rewrite --word A,A*,A --r 2 --s 1 --d 3 --theta 1,2,3,4 --theta-star 0,1,0,1").out);
    CHECK(n["numeric"]["RLR"] == "1");
    CHECK(n["numeric"]["R"] == "2");  // 3*0 + 2*1
    CHECK(run("rewrite --word A,B --r 0 --s 0 --d 1").code == 2);
    CHECK(run("rewrite --word A --r 3 --s 0 --d 2").code == 2);
    CHECK(run("rewrite --word A --r 0 --s 0 --d 2 --theta 1,2").code == 2);
}

TEST_CASE("scan determinism and errors") {
    auto a = run("scan --p 5 --n 2 --trials 1000 --seed 42 --output " + path("s1.ndjson"));
    REQUIRE(a.code == 0);
    auto b = run("scan --p 5 --n 2 --trials 1000 --seed 42 --threads 3 --output " + path("s2.ndjson"));
    REQUIRE(b.code == 0);
    auto c = run("scan --p 5 --n 2 --trials 1000 --seed 42", "TDPAIR_THREADS=2");
    REQUIRE(c.code == 0);
    std::string s1 = slurp(path("s1.ndjson"));
    CHECK(s1 == slurp(path("s2.ndjson")));
    CHECK(s1 == c.out);
    auto last = s1.substr(s1.rfind('\n', s1.size() - 2) + 1);
    auto summary = Json::parse(last);
    CHECK(summary["type"] == "summary");
    CHECK(summary["candidates"] == 1000);
    CHECK(summary["accepted"].get<int>() > 0);
    CHECK(summary["check_failures"] == 0);

    CHECK(run("scan --p 5 --n 2 --trials 0 --seed 1").code == 2);
    CHECK(run("scan --p 6 --n 2 --trials 10 --seed 1").code == 2);
    CHECK(run("scan --p 5 --n 0 --trials 10 --seed 1").code == 2);
    CHECK(run("scan --p 7 --n 3 --trials 10 --seed 1 --qform 2").code == 2);
    CHECK(run("scan --p 5 --n 2 --trials 10").code == 2);
}

TEST_CASE("usage errors") {
    CHECK(run("").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("--help").code == 0);
}

#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "feynpoly/io.hpp"
#include "graphs_corpus.hpp"

using namespace feynpoly;
using nlohmann::json;

namespace {

json bubble_json() {
    return json::parse(R"({
        "vertices": ["a", "b"],
        "edges": [
            {"id": "e1", "ends": ["a", "b"]},
            {"id": "e2", "ends": ["a", "b"], "mass": "m", "lambda": "1"}
        ],
        "external": {"a": "p", "b": "q"},
        "kinematics": {"sq:p": 1.0, "m2:e2": 1.25}
    })");
}

#ifdef FEYNPOLY_BIN
int run_cli(const std::string& args) {
    std::string cmd = std::string(FEYNPOLY_BIN) + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = "/tmp/feynpoly_test_" + name;
    std::ofstream out(path);
    out << content;
    return path;
}
#endif

} // namespace

TEST_CASE("graph file parsing") {
    auto gf = parse_graph(bubble_json());
    CHECK(gf.graph.num_vertices() == 2);
    CHECK(gf.graph.num_edges() == 2);
    CHECK(gf.graph.edges()[1].massive);
    CHECK(gf.kinematics.sq.count("p") == 1);
    CHECK(gf.kinematics.m2.at("e2").real() == doctest::Approx(1.25));
    CHECK(gf.kinematics.generic_euclidean());
}

TEST_CASE("complementary sq keys canonicalize to the same symbol") {
    json j = bubble_json();
    j["kinematics"].erase("sq:p");
    j["kinematics"]["sq:q"] = 2.0; // complement of {p}
    auto gf = parse_graph(j);
    CHECK(gf.kinematics.sq.at("p").real() == doctest::Approx(2.0));
}

TEST_CASE("parse errors carry context") {
    json j = bubble_json();
    j["edges"][0].erase("ends");
    CHECK_THROWS_AS(parse_graph(j), parse_error);

    json j2 = bubble_json();
    j2["kinematics"]["sq:nope"] = 1.0;
    CHECK_THROWS_AS(parse_graph(j2), parse_error);

    json j3 = bubble_json();
    j3["kinematics"]["m2:e1"] = 1.0; // e1 is massless
    CHECK_THROWS_AS(parse_graph(j3), parse_error);

    json j4 = bubble_json();
    j4["edges"][0]["ends"] = {"a", "zz"};
    CHECK_THROWS_AS(parse_graph(j4), parse_error);
}

TEST_CASE("polytope report round-trips") {
    auto g = corpus::bubble();
    auto rep = polytope_report(g);
    // canonical formatting: dump and reparse reproduce the same object
    auto again = json::parse(rep.dump());
    CHECK(json(rep) == again);
    CHECK(rep["s_irreducible"] == true);
    REQUIRE(rep["vertices"].size() == 2);
    std::vector<std::int64_t> v0 = rep["vertices"][0];
    CHECK(v0 == std::vector<std::int64_t>{1, 2});
}

TEST_CASE("sector report for the bubble") {
    auto g = corpus::bubble();
    auto kin = corpus::unit_kinematics(g);
    bool fell_back = true;
    auto rep = sectors_report(g, kin, FanStrategy::Hepp, &fell_back);
    CHECK(!fell_back);
    CHECK(rep["sector_count"] == 2);

    auto bad = corpus::bubble_with_massless_tadpole();
    auto bkin = corpus::unit_kinematics(bad);
    sectors_report(bad, bkin, FanStrategy::Motic, &fell_back);
    CHECK(fell_back);
}

TEST_CASE("mellin file parsing") {
    json j = json::parse(R"({
        "torus_rank": 1,
        "factors": [{"exponent": "3",
                     "terms": [{"coeff": 1, "powers": [0]}, {"coeff": 1, "powers": [1]}]}],
        "s": ["1"]
    })");
    auto p = parse_mellin(j);
    CHECK(p.rank == 1);
    CHECK(p.factors.size() == 1);
    CHECK(p.factors[0].terms.size() == 2);

    json bad = j;
    bad["factors"][0]["terms"][1]["coeff"] = -1.0; // not in a half-plane
    CHECK_THROWS_AS(parse_mellin(bad), parse_error);
}

#ifdef FEYNPOLY_BIN

TEST_CASE("cli exit codes") {
    std::string good = write_temp("bubble.json", bubble_json().dump());
    CHECK(run_cli("polytope " + good) == 0);
    CHECK(run_cli("converge " + good + " --lambda 1,1 --dim 4") == 0);
    CHECK(run_cli("expand " + good + " --method sector --order 0") == 0);

    std::string broken = write_temp("broken.json", "{\"vertices\": [");
    CHECK(run_cli("polytope " + broken) == 2);

    // non-generic kinematics: domain error
    json j = bubble_json();
    j["kinematics"]["sq:p"] = -1.0;
    std::string neg = write_temp("neg.json", j.dump());
    CHECK(run_cli("expand " + neg + " --order 0") == 3);

    std::string missing = "/tmp/feynpoly_does_not_exist.json";
    CHECK(run_cli("polytope " + missing) == 2);
}

TEST_CASE("cli output file and reparse") {
    std::string good = write_temp("bubble2.json", bubble_json().dump());
    std::string out = "/tmp/feynpoly_test_out.json";
    CHECK(run_cli("polytope " + good + " -o " + out) == 0);
    std::ifstream in(out);
    REQUIRE(in.good());
    json rep;
    in >> rep;
    CHECK(rep.contains("vertices"));
    CHECK(rep["s_irreducible"] == true);
}

#endif

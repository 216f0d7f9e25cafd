#include <doctest.h>

#include <json.hpp>

#include "symred/json_io.hpp"

using namespace symred;

TEST_CASE("graph json round trip") {
    nlohmann::json j = nlohmann::json::parse(R"({
      "vertices": [1,2,3,4],
      "edges": [
        {"id":1,"u":1,"v":2}, {"id":2,"u":1,"v":3}, {"id":3,"u":3,"v":4},
        {"id":4,"u":2,"v":4}, {"id":5,"u":2,"v":3}, {"id":6,"u":1,"v":4,"mass":true}
      ],
      "terminals": [
        {"vertex":1,"label":"a"}, {"vertex":2,"label":"b"},
        {"vertex":3,"label":"c"}, {"vertex":4,"label":"d"}
      ],
      "kinematics": {"ab|cd":"s", "ac|bd":"t", "ad|bc":"u"}
    })");
    GraphFile gf = graph_from_json(j);
    CHECK(gf.graph.vertex_count() == 4);
    CHECK(gf.graph.edge_count() == 6);
    CHECK(gf.graph.edge(6).massive);
    CHECK(gf.graph.terminal_label(1) == 'a');
    CHECK(gf.kin.mode() == Kinematics::Mode::four_onshell);
    CHECK(gf.symbols.lookup("s") == kinematic_var(0));

    nlohmann::json back = graph_to_json(gf.graph);
    GraphFile gf2 = graph_from_json(back);
    CHECK(gf2.graph.vertex_count() == gf.graph.vertex_count());
    CHECK(gf2.graph.edge_count() == gf.graph.edge_count());
    for (auto& e : gf.graph.edges()) {
        const Edge& e2 = gf2.graph.edge(e.id);
        CHECK(std::minmax(e.u, e.v) == std::minmax(e2.u, e2.v));
        CHECK(e.massive == e2.massive);
    }
    // sorted keys make the dump deterministic
    CHECK(back.dump() == graph_to_json(gf2.graph).dump());
}

TEST_CASE("schema violations are reported") {
    CHECK_THROWS_AS((void)graph_from_json(nlohmann::json::parse("[1,2,3]")),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)graph_from_json(nlohmann::json::parse(R"({"vertices":[1]})")),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)graph_from_json(nlohmann::json::parse(
                        R"({"vertices":[1,2],"edges":[{"u":1}]})")),
                    std::invalid_argument);
    // two terminals only: unsupported
    CHECK_THROWS_AS((void)graph_from_json(nlohmann::json::parse(
                        R"({"vertices":[1,2],"edges":[{"u":1,"v":2}],
                            "terminals":[{"vertex":1,"label":"a"},
                                         {"vertex":2,"label":"b"}]})")),
                    std::invalid_argument);
}

TEST_CASE("graph dsl") {
    GraphFile gf = parse_graph_dsl("edge 1 2\nedge 2 3\nedge 3 1\nterminal 1 a\n");
    CHECK(gf.graph.edge_count() == 3);
    CHECK(gf.graph.terminal_label(1) == 'a');
}

TEST_CASE("sha256 known vectors") {
    CHECK(sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex(std::string("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq")) ==
          "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
}

#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "symred/minors.hpp"

using namespace symred;

namespace {

LabeledGraph grid3x3() {
    LabeledGraph g;
    for (int i = 1; i <= 9; ++i) g.add_vertex(i);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            int v = 3 * r + c + 1;
            if (c < 2) g.add_edge(v, v + 1);
            if (r < 2) g.add_edge(v, v + 3);
        }
    return g;
}

LabeledGraph class_a_pattern() {
    // V={a,b,c,d,e}=1..5, E={ae,ad,be,bd,ce,cd,de}
    LabeledGraph g;
    for (int i = 1; i <= 5; ++i) g.add_vertex(i);
    g.add_edge(1, 5);
    g.add_edge(1, 4);
    g.add_edge(2, 5);
    g.add_edge(2, 4);
    g.add_edge(3, 5);
    g.add_edge(3, 4);
    g.add_edge(4, 5);
    g.set_terminal(1, 'a');
    g.set_terminal(2, 'b');
    g.set_terminal(3, 'c');
    g.set_terminal(4, 'd');
    return g;
}

void label_all(LabeledGraph& g, std::initializer_list<int> vs) {
    char l = 'a';
    for (int v : vs) g.set_terminal(v, l++);
}

}  // namespace

TEST_CASE("plain minors") {
    auto model = has_minor(complete_graph(6), complete_graph(5));
    REQUIRE(model.has_value());
    CHECK(verify_model(complete_graph(6), complete_graph(5), *model));

    CHECK_FALSE(has_minor(grid3x3(), complete_graph(5)).has_value());
    CHECK_FALSE(has_minor(complete_graph(4), complete_graph(5)).has_value());

    // K6 split at any vertex contains K_{3,4}
    LabeledGraph k6 = complete_graph(6);
    auto inc = k6.incident_edges(1);
    LabeledGraph split = k6.split_vertex(1, {inc[0], inc[1]});
    auto m34 = has_minor(split, complete_bipartite(3, 4));
    REQUIRE(m34.has_value());
    CHECK(verify_model(split, complete_bipartite(3, 4), *m34));
}

TEST_CASE("placement family sizes") {
    CHECK(k4x().placements.size() == 24);
    CHECK(w4x().placements.size() == 24);
    CHECK(k24x().placements.size() == 24);
    CHECK(lx().placements.size() == 24);
    CHECK(k22x().placements.size() == 4);
    // automorphism reduction collapses symmetric families
    CHECK(reduce_placements(k4x()).placements.size() == 1);
    CHECK(reduce_placements(k24x()).placements.size() == 1);
    CHECK(reduce_placements(w4x()).placements.size() <= 3);
}

TEST_CASE("rooted minors: identity instances") {
    LabeledGraph k4 = complete_graph(4);
    label_all(k4, {1, 2, 3, 4});
    CHECK(has_rooted_minor(k4, k4x()).has_value());

    LabeledGraph w4 = wheel_graph(4);
    label_all(w4, {1, 2, 3, 4});
    CHECK(has_rooted_minor(w4, w4x()).has_value());
    CHECK_FALSE(has_rooted_minor(w4, k4x()).has_value());

    LabeledGraph k24 = complete_bipartite(2, 4);
    label_all(k24, {3, 4, 5, 6});
    CHECK(has_rooted_minor(k24, k24x()).has_value());

    CHECK_FALSE(has_rooted_minor(class_a_pattern(), k4x()).has_value());
    CHECK_FALSE(has_rooted_minor(class_a_pattern(), w4x()).has_value());

    LabeledGraph missing = complete_graph(4);
    missing.set_terminal(1, 'a');
    CHECK_THROWS_AS((void)has_rooted_minor(missing, k4x()), std::invalid_argument);
}

TEST_CASE("rooted minor on a larger host") {
    // K5 with any four roots has a K4(X) minor
    LabeledGraph k5 = complete_graph(5);
    label_all(k5, {1, 2, 3, 4});
    auto m = has_rooted_minor(k5, k4x());
    REQUIRE(m.has_value());

    // W5 with four of the rim vertices rooted has a W4(X) minor
    LabeledGraph w5 = wheel_graph(5);
    label_all(w5, {1, 2, 3, 4});
    CHECK(has_rooted_minor(w5, w4x()).has_value());
}

TEST_CASE("k22 path criterion") {
    LabeledGraph c4 = cycle_graph(4);
    std::map<char, int> roots{{'a', 1}, {'b', 3}, {'c', 2}, {'d', 4}};
    // crossing pairs cannot be linked disjointly inside a 4-cycle
    CHECK_FALSE(k22_path_criterion(c4, roots));
    LabeledGraph k4 = complete_graph(4);
    CHECK(k22_path_criterion(k4, roots));
}

TEST_CASE("k22 criterion agrees with the branch-set oracle") {
    std::mt19937_64 rng(777);
    int checked = 0;
    for (int it = 0; it < 200; ++it) {
        int n = 4 + static_cast<int>(it % 6);
        LabeledGraph g = oracle::random_connected_graph(n, 0.45, rng);
        auto vs = g.vertices();
        std::vector<int> pick(vs.begin(), vs.end());
        std::shuffle(pick.begin(), pick.end(), rng);
        LabeledGraph rooted = g;
        label_all(rooted, {pick[0], pick[1], pick[2], pick[3]});
        std::map<char, int> roots{{'a', pick[0]}, {'b', pick[1]}, {'c', pick[2]},
                                  {'d', pick[3]}};
        bool by_paths = k22_path_criterion(rooted, roots);
        bool by_minor = has_rooted_minor(rooted, k22x()).has_value();
        CHECK(by_paths == by_minor);
        ++checked;
    }
    CHECK(checked == 200);
}

TEST_CASE("rooted K3 matches the cut-vertex criterion") {
    std::mt19937_64 rng(4141);
    for (int it = 0; it < 60; ++it) {
        int n = 3 + static_cast<int>(it % 7);
        LabeledGraph g = oracle::random_connected_graph(n, 0.4, rng);
        auto vs = g.vertices();
        std::vector<int> pick(vs.begin(), vs.end());
        std::shuffle(pick.begin(), pick.end(), rng);
        LabeledGraph rooted = g;
        rooted.set_terminal(pick[0], 'a');
        rooted.set_terminal(pick[1], 'b');
        rooted.set_terminal(pick[2], 'c');
        bool oracle_says = has_rooted_minor(rooted, k3x()).has_value();
        // no K3(X) iff some vertex leaves at most one root per component
        bool blocked = false;
        for (int v : vs) {
            LabeledGraph rest = g.delete_vertex(v);
            bool all_small = true;
            for (auto& comp : rest.components()) {
                int roots_here = 0;
                for (int r : {pick[0], pick[1], pick[2]})
                    if (comp.count(r)) ++roots_here;
                if (roots_here > 1) all_small = false;
            }
            if (all_small) blocked = true;
        }
        CHECK(oracle_says == !blocked);
    }
}

TEST_CASE("monotonicity under edge addition") {
    std::mt19937_64 rng(99);
    for (int it = 0; it < 20; ++it) {
        LabeledGraph g = oracle::random_connected_graph(6, 0.45, rng);
        if (!has_minor(g, complete_graph(4)).has_value()) continue;
        // add any absent edge; the minor must survive
        auto vs = g.vertices();
        bool added = false;
        for (size_t i = 0; i < vs.size() && !added; ++i)
            for (size_t j = i + 1; j < vs.size() && !added; ++j)
                if (!g.adjacent(vs[i], vs[j])) {
                    g = g.with_edge(vs[i], vs[j]);
                    added = true;
                }
        CHECK(has_minor(g, complete_graph(4)).has_value());
    }
}

TEST_CASE("forbidden minor scan") {
    // V8+e reports itself
    auto rep = forbidden_minor_scan(wagner_plus_02(), "psi");
    bool has_v8e = false;
    for (auto& h : rep.hits)
        if (h.pattern == "v8e") has_v8e = true;
    CHECK(has_v8e);

    auto clean = forbidden_minor_scan(cycle_graph(6), "psi");
    CHECK(clean.clean());

    LabeledGraph w4 = wheel_graph(4);
    label_all(w4, {1, 2, 3, 4});
    auto rep2 = forbidden_minor_scan(w4, "psiphi");
    bool has_w4x = false;
    for (auto& h : rep2.hits)
        if (h.pattern == "w4x") has_w4x = true;
    CHECK(has_w4x);

    CHECK_THROWS_AS((void)forbidden_minor_scan(w4, "psi"), std::invalid_argument);
}

TEST_CASE("certify_forbidden on a reducible graph rejects it") {
    LabeledGraph c4 = cycle_graph(4);
    label_all(c4, {1, 2, 3, 4});
    Reducer r = [](const PolySet& s) { return brown_reducible(s); };
    auto rep = certify_forbidden(c4, Kinematics::four_onshell_stu(), r);
    CHECK(rep.self_reducible);
    CHECK_FALSE(rep.is_forbidden_minor());
}

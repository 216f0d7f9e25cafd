#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "symred/symanzik.hpp"

using namespace symred;

namespace {

std::set<std::set<int>> supports(const Poly& p) {
    std::set<std::set<int>> out;
    for (auto& [m, c] : p.terms()) {
        std::set<int> s;
        for (auto& [v, e] : m.exponents())
            if (v.kind == VarKind::schwinger) s.insert(v.index);
        out.insert(s);
    }
    return out;
}

LabeledGraph k4_terminals() {
    LabeledGraph g = k4_labeled();
    g.set_terminal(1, 'a');
    g.set_terminal(2, 'b');
    g.set_terminal(3, 'c');
    g.set_terminal(4, 'd');
    return g;
}

LabeledGraph w4_terminals() {
    LabeledGraph g = w4_labeled();
    g.set_terminal(1, 'a');
    g.set_terminal(2, 'b');
    g.set_terminal(3, 'c');
    g.set_terminal(4, 'd');
    return g;
}

// terminal labels carried by the schwinger-support complement: which
// invariant symbol multiplies a given monomial
std::map<std::set<int>, VarId> symbol_by_support(const Poly& phi) {
    std::map<std::set<int>, VarId> out;
    for (auto& [m, c] : phi.terms()) {
        std::set<int> sup;
        VarId sym{};
        bool found = false;
        for (auto& [v, e] : m.exponents()) {
            if (v.kind == VarKind::schwinger) sup.insert(v.index);
            if (v.kind == VarKind::kinematic) {
                sym = v;
                found = true;
            }
        }
        REQUIRE(found);
        out[sup] = sym;
    }
    return out;
}

}  // namespace

TEST_CASE("psi of cycles is the sum of the Schwinger variables") {
    for (int n : {3, 4, 5, 6}) {
        Poly p = psi(cycle_graph(n));
        CHECK(p.term_count() == static_cast<size_t>(n));
        Poly expect;
        for (int e = 1; e <= n; ++e) expect += Poly::var(schwinger_var(e));
        CHECK(p == expect);
    }
}

TEST_CASE("psi of K4 matches the printed 16-term cubic") {
    Poly p = psi(k4_labeled());
    CHECK(p.term_count() == 16);
    auto sup = supports(p);
    // complements of the four vertex stars are absent
    CHECK_FALSE(sup.count({1, 2, 6}));
    CHECK_FALSE(sup.count({1, 4, 5}));
    CHECK_FALSE(sup.count({2, 3, 5}));
    CHECK_FALSE(sup.count({3, 4, 6}));
    CHECK(sup.count({1, 2, 3}));
    CHECK(sup.count({4, 5, 6}));
    CHECK(sup.size() == 16);
    for (auto& [m, c] : p.terms()) CHECK(c == 1);
}

TEST_CASE("psi and phi vanish appropriately on disconnected graphs") {
    LabeledGraph two_triangles;
    for (int i = 1; i <= 6; ++i) two_triangles.add_vertex(i);
    two_triangles.add_edge(1, 2);
    two_triangles.add_edge(2, 3);
    two_triangles.add_edge(3, 1);
    two_triangles.add_edge(4, 5);
    two_triangles.add_edge(5, 6);
    two_triangles.add_edge(6, 4);
    CHECK(psi(two_triangles).is_zero());

    // three components: phi = 0
    LabeledGraph three;
    for (int i = 1; i <= 6; ++i) three.add_vertex(i);
    three.add_edge(1, 2);
    three.add_edge(3, 4);
    three.add_edge(5, 6);
    CHECK(phi(three, Kinematics::none()).is_zero());
}

TEST_CASE("phi of K4 with four on-shell momenta") {
    Poly p = phi(k4_terminals(), Kinematics::four_onshell_stu());
    CHECK(p.term_count() == 3);
    auto sym = symbol_by_support(p);
    REQUIRE(sym.count({1, 2, 3, 4}));
    REQUIRE(sym.count({2, 4, 5, 6}));
    REQUIRE(sym.count({1, 3, 5, 6}));
    // three distinct invariant symbols
    std::set<uint32_t> codes;
    for (auto& [s, v] : sym) codes.insert(v.code());
    CHECK(codes.size() == 3);
}

TEST_CASE("psi of W4 matches the printed 45-term listing") {
    Poly p = psi(w4_labeled());
    CHECK(p.term_count() == 45);
    for (auto& [m, c] : p.terms()) CHECK(c == 1);
    std::set<std::set<int>> expected = {
        {1,2,4,6},{1,2,4,7},{1,2,4,8},{1,2,5,6},{1,2,5,7},{1,2,5,8},{1,2,6,7},
        {1,2,7,8},{1,3,4,6},{1,3,4,7},{1,3,4,8},{1,3,5,6},{1,3,5,7},{1,3,5,8},
        {1,3,6,7},{1,3,7,8},{1,4,6,8},{1,4,7,8},{1,5,6,8},{1,5,7,8},{1,6,7,8},
        {2,3,4,6},{2,3,4,7},{2,3,4,8},{2,3,5,6},{2,3,5,7},{2,3,5,8},{2,3,6,7},
        {2,3,7,8},{2,4,5,6},{2,4,5,7},{2,4,5,8},{2,4,6,7},{2,4,6,8},{2,5,6,8},
        {2,5,7,8},{2,6,7,8},{3,4,5,6},{3,4,5,7},{3,4,5,8},{3,4,6,7},{3,4,7,8},
        {4,5,6,8},{4,5,7,8},{4,6,7,8}};
    CHECK(supports(p) == expected);
}

TEST_CASE("phi of W4 with rim momenta matches the printed 12-term listing") {
    Poly p = phi(w4_terminals(), Kinematics::four_onshell_stu());
    CHECK(p.term_count() == 12);
    auto sym = symbol_by_support(p);
    std::set<std::set<int>> s_side = {{1,3,5,7,8}, {2,3,4,5,6}, {2,3,4,5,7},
                                      {2,3,4,5,8}, {2,3,5,7,8}, {3,4,5,7,8}};
    std::set<std::set<int>> u_side = {{1,2,4,6,7}, {1,2,4,6,8}, {1,2,5,6,8},
                                      {1,2,6,7,8}, {1,3,4,6,7}, {1,4,6,7,8}};
    std::set<uint32_t> s_codes, u_codes;
    for (auto& sup : s_side) {
        REQUIRE(sym.count(sup));
        s_codes.insert(sym[sup].code());
    }
    for (auto& sup : u_side) {
        REQUIRE(sym.count(sup));
        u_codes.insert(sym[sup].code());
    }
    CHECK(s_codes.size() == 1);
    CHECK(u_codes.size() == 1);
    CHECK(*s_codes.begin() != *u_codes.begin());
    CHECK(sym.size() == 12);
}

TEST_CASE("phi with masses: triangle with one massive edge") {
    LabeledGraph k3;
    for (int i = 1; i <= 3; ++i) k3.add_vertex(i);
    k3.add_edge(1, 2);
    k3.add_edge(2, 3);
    k3.add_edge(3, 1, true);  // edge 3 massive
    k3.set_terminal(1, 'a');
    k3.set_terminal(2, 'b');
    k3.set_terminal(3, 'c');
    Kinematics kin = Kinematics::three_offshell(kinematic_var(0), kinematic_var(1),
                                                kinematic_var(2));
    Poly p = phi(k3, kin);
    // three rho-terms plus psi * x3 msq3
    Poly mass = psi(k3) * Poly::term(Monomial::var(schwinger_var(3)) *
                                         Monomial::var(mass_square_var(3)),
                                     Rational(1));
    Poly momentum = p - mass;
    CHECK(momentum.term_count() == 3);
    for (auto& [m, c] : momentum.terms()) {
        int kin_deg = 0, sch_deg = 0;
        for (auto& [v, e] : m.exponents()) {
            if (v.kind == VarKind::kinematic) kin_deg += e;
            if (v.kind == VarKind::schwinger) sch_deg += e;
        }
        CHECK(kin_deg == 1);
        CHECK(sch_deg == 2);
    }
    CHECK(phi_mass_term(k3) == mass);
}

TEST_CASE("momentum_term cases") {
    Kinematics kin = Kinematics::four_onshell_stu();
    CHECK(momentum_term(kin, {'a'}, 4).is_zero());
    CHECK(momentum_term(kin, {'a', 'b', 'c', 'd'}, 4).is_zero());
    CHECK(momentum_term(kin, {}, 4).is_zero());
    CHECK(momentum_term(kin, {'a', 'b'}, 4) == Poly::var(kinematic_var(0)));
    CHECK(momentum_term(kin, {'c', 'd'}, 4) == Poly::var(kinematic_var(0)));
    CHECK(momentum_term(kin, {'a', 'c'}, 4) == Poly::var(kinematic_var(1)));
    CHECK(momentum_term(kin, {'a', 'd'}, 4) == Poly::var(kinematic_var(2)));
    CHECK(momentum_term(kin, {'b', 'c'}, 4) == Poly::var(kinematic_var(2)));
}

TEST_CASE("homogeneity and multilinearity") {
    std::mt19937_64 rng(321);
    for (int it = 0; it < 12; ++it) {
        LabeledGraph g = oracle::random_connected_graph(5 + (it % 3), 0.55, rng);
        Poly p = psi(g);
        int loops = g.loop_order();
        for (auto& [m, c] : p.terms()) {
            CHECK(m.total_degree() == loops);
            for (auto& [v, e] : m.exponents()) CHECK(e == 1);
        }
    }
    Poly f = phi(k4_terminals(), Kinematics::four_onshell_stu());
    for (auto& [m, c] : f.terms()) {
        int sch = 0;
        for (auto& [v, e] : m.exponents()) {
            if (v.kind == VarKind::schwinger) {
                sch += e;
                CHECK(e == 1);
            }
        }
        CHECK(sch == complete_graph(4).loop_order() + 1);
    }
}

TEST_CASE("psi/phi agree with brute-force enumeration") {
    std::mt19937_64 rng(888);
    for (int it = 0; it < 12; ++it) {
        LabeledGraph g = oracle::random_connected_graph(6, 0.5, rng);
        CHECK(psi(g) == oracle::psi_brute(g));
    }
    LabeledGraph g = w4_terminals();
    Kinematics kin = Kinematics::four_onshell_stu();
    CHECK(phi(g, kin) == oracle::phi_brute(g, kin));
}

TEST_CASE("symbolic phi evaluates to the numeric Minkowski oracle") {
    std::mt19937_64 rng(2024);
    Kinematics kin = Kinematics::four_onshell_stu();
    for (int it = 0; it < 6; ++it) {
        LabeledGraph g = oracle::random_connected_graph(5, 0.6, rng);
        auto vs = g.vertices();
        g.set_terminal(vs[0], 'a');
        g.set_terminal(vs[1], 'b');
        g.set_terminal(vs[2], 'c');
        g.set_terminal(vs[3], 'd');
        auto quad = oracle::onshell_quadruple(rng);
        std::map<int, oracle::Momentum> momenta{{vs[0], quad[0]},
                                                {vs[1], quad[1]},
                                                {vs[2], quad[2]},
                                                {vs[3], quad[3]}};
        auto pair_sq = [&](int i, int j) {
            oracle::Momentum s;
            for (int c = 0; c < 4; ++c) s[c] = quad[i][c] + quad[j][c];
            return oracle::minkowski_square(s);
        };
        std::map<uint32_t, Rational> assign;
        assign[kinematic_var(0).code()] = pair_sq(0, 1);  // (pa+pb)^2
        assign[kinematic_var(1).code()] = pair_sq(0, 2);  // (pa+pc)^2
        assign[kinematic_var(2).code()] = pair_sq(0, 3);  // (pa+pd)^2
        std::uniform_int_distribution<int> val(1, 5);
        std::map<uint32_t, Rational> xs;
        for (auto& e : g.edges()) {
            Rational r(val(rng), val(rng));
            r.canonicalize();
            assign[schwinger_var(e.id).code()] = r;
            xs[schwinger_var(e.id).code()] = r;
        }
        Poly p = phi(g, kin);
        CHECK(p.eval_rational(assign) == oracle::phi_numeric(g, momenta, xs));
    }
}

TEST_CASE("deletion-contraction identity") {
    Kinematics kin = Kinematics::four_onshell_stu();
    LabeledGraph k4 = k4_terminals();
    for (auto& e : k4.edges()) {
        auto r = check_deletion_contraction(k4, e.id, kin);
        CHECK(r.pass);
    }
    LabeledGraph c3 = cycle_graph(3);
    auto r = check_deletion_contraction(c3, 1, Kinematics::none());
    CHECK(r.pass);

    LabeledGraph with_loop = cycle_graph(3);
    int loop = with_loop.add_edge(1, 1);
    CHECK_THROWS_AS((void)check_deletion_contraction(with_loop, loop, Kinematics::none()),
                    std::invalid_argument);
}

TEST_CASE("loop edge law") {
    LabeledGraph g = cycle_graph(4);
    int loop = g.add_edge(2, 2);
    auto r = check_loop_edge_law(g, loop, Kinematics::none());
    CHECK(r.pass);
}

TEST_CASE("one-separation factorizations") {
    Kinematics kin = Kinematics::four_onshell_stu();
    // 1-sum of K4 (terminals on all four) and a triangle hanging off vertex 4
    LabeledGraph g = k4_terminals();
    g.add_vertex(5);
    g.add_vertex(6);
    g.add_edge(4, 5);
    g.add_edge(5, 6);
    g.add_edge(6, 4);
    Separation sep{{1, 2, 3, 4}, {4, 5, 6}};
    auto r = check_one_separation_factorization(g, sep, kin);
    CHECK(r.pass);
    CHECK(r.rule == "all-terminals-one-side");

    // 3 terminals left, 1 right
    LabeledGraph h = k4_labeled();
    h.add_vertex(5);
    h.add_vertex(6);
    h.add_edge(4, 5);
    h.add_edge(5, 6);
    h.add_edge(6, 4);
    h.set_terminal(1, 'a');
    h.set_terminal(2, 'b');
    h.set_terminal(3, 'c');
    h.set_terminal(5, 'd');
    auto r2 = check_one_separation_factorization(h, sep, kin);
    CHECK(r2.pass);
    CHECK(r2.rule == "re-root-on-cut-vertex");

    // two terminals on each side
    LabeledGraph j = k4_labeled();
    j.add_vertex(5);
    j.add_vertex(6);
    j.add_edge(4, 5);
    j.add_edge(5, 6);
    j.add_edge(6, 4);
    j.set_terminal(1, 'a');
    j.set_terminal(2, 'b');
    j.set_terminal(5, 'c');
    j.set_terminal(6, 'd');
    auto r3 = check_one_separation_factorization(j, sep, kin);
    CHECK(r3.pass);
    CHECK(r3.rule == "two-terminals-each-side");

    // cut vertex itself terminal with terminals on both sides
    LabeledGraph m = k4_labeled();
    m.add_vertex(5);
    m.add_vertex(6);
    m.add_edge(4, 5);
    m.add_edge(5, 6);
    m.add_edge(6, 4);
    m.set_terminal(1, 'a');
    m.set_terminal(2, 'b');
    m.set_terminal(4, 'c');
    m.set_terminal(5, 'd');
    auto r4 = check_one_separation_factorization(m, sep, kin);
    CHECK_FALSE(r4.applicable);
}

TEST_CASE("two-component law") {
    Kinematics kin = Kinematics::four_onshell_stu();
    LabeledGraph g;
    for (int i = 1; i <= 6; ++i) g.add_vertex(i);
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    g.add_edge(3, 1);
    g.add_edge(4, 5);
    g.add_edge(5, 6);
    g.add_edge(6, 4);
    g.set_terminal(1, 'a');
    g.set_terminal(2, 'b');
    g.set_terminal(4, 'c');
    g.set_terminal(5, 'd');
    auto r = check_two_component_law(g, kin);
    CHECK(r.pass);

    // 1/3 split vanishes
    LabeledGraph h = g.delete_vertex(0);  // copy
    LabeledGraph h2;
    for (int i = 1; i <= 6; ++i) h2.add_vertex(i);
    h2.add_edge(1, 2);
    h2.add_edge(2, 3);
    h2.add_edge(3, 1);
    h2.add_edge(4, 5);
    h2.add_edge(5, 6);
    h2.add_edge(6, 4);
    h2.set_terminal(1, 'a');
    h2.set_terminal(2, 'b');
    h2.set_terminal(3, 'c');
    h2.set_terminal(4, 'd');
    CHECK(phi(h2, kin).is_zero());
}

TEST_CASE("subdivision identity") {
    Kinematics kin = Kinematics::four_onshell_stu();
    // C4 with a chord
    LabeledGraph c4c = cycle_graph(4);
    c4c.add_edge(1, 3);
    c4c.set_terminal(1, 'a');
    c4c.set_terminal(2, 'b');
    c4c.set_terminal(3, 'c');
    c4c.set_terminal(4, 'd');
    for (auto& e : c4c.edges()) CHECK(check_subdivision(c4c, e.id, kin).pass);

    // K4 minus an edge
    LabeledGraph k4e = complete_graph(4).delete_edge(1);
    k4e.set_terminal(1, 'a');
    k4e.set_terminal(2, 'b');
    k4e.set_terminal(3, 'c');
    k4e.set_terminal(4, 'd');
    for (auto& e : k4e.edges()) CHECK(check_subdivision(k4e, e.id, kin).pass);

    // W3 with rim terminals plus hub
    LabeledGraph w3 = wheel_graph(3);
    w3.set_terminal(1, 'a');
    w3.set_terminal(2, 'b');
    w3.set_terminal(3, 'c');
    w3.set_terminal(4, 'd');
    for (auto& e : w3.edges()) CHECK(check_subdivision(w3, e.id, kin).pass);
}

TEST_CASE("derivative and evaluation track deletion and contraction") {
    std::mt19937_64 rng(55);
    for (int it = 0; it < 10; ++it) {
        LabeledGraph g = oracle::random_connected_graph(6, 0.5, rng);
        Poly p = psi(g);
        for (auto& e : g.edges()) {
            if (e.is_loop()) continue;
            CHECK(p.partial(schwinger_var(e.id)) == oracle::psi_brute(g.delete_edge(e.id)));
            CHECK(p.eval_zero(schwinger_var(e.id)) ==
                  oracle::psi_brute(g.contract_edge(e.id)));
        }
    }
}

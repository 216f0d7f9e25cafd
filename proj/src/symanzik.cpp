#include "symred/symanzik.hpp"

#include <algorithm>
#include <sstream>

namespace symred {

// ==================== Kinematics ====================

Kinematics Kinematics::none() { return Kinematics(); }

Kinematics Kinematics::four_onshell(VarId ab_cd, VarId ac_bd, VarId ad_bc) {
    Kinematics k;
    k.mode_ = Mode::four_onshell;
    k.inv_["ab"] = ab_cd;
    k.inv_["ac"] = ac_bd;
    k.inv_["ad"] = ad_bc;
    return k;
}

Kinematics Kinematics::four_onshell_stu() {
    return four_onshell(kinematic_var(0), kinematic_var(1), kinematic_var(2));
}

Kinematics Kinematics::three_offshell(VarId qa, VarId qb, VarId qc) {
    Kinematics k;
    k.mode_ = Mode::three_offshell;
    k.inv_["a"] = qa;
    k.inv_["b"] = qb;
    k.inv_["c"] = qc;
    return k;
}

Poly Kinematics::invariant(const std::set<char>& half) const {
    if (mode_ == Mode::none) return Poly::zero();
    std::string all = mode_ == Mode::four_onshell ? "abcd" : "abc";
    std::set<char> side = half;
    if (mode_ == Mode::four_onshell) {
        if (side.size() != 2) return Poly::zero();
        if (!side.count('a')) {
            std::set<char> comp;
            for (char c : all)
                if (!side.count(c)) comp.insert(c);
            side = comp;
        }
    } else {
        if (side.size() == 2) {
            std::set<char> comp;
            for (char c : all)
                if (!side.count(c)) comp.insert(c);
            side = comp;
        }
        if (side.size() != 1) return Poly::zero();
    }
    std::string key(side.begin(), side.end());
    auto it = inv_.find(key);
    if (it == inv_.end()) return Poly::zero();
    return Poly::var(it->second);
}

SymbolTable Kinematics::symbols() const {
    SymbolTable t = SymbolTable::stu();
    return t;
}

Poly momentum_term(const Kinematics& kin, const std::set<char>& labels_in_t1,
                   int total_terminals) {
    switch (kin.mode()) {
        case Kinematics::Mode::none:
            return Poly::zero();
        case Kinematics::Mode::four_onshell:
            if (total_terminals != 4 || labels_in_t1.size() != 2) return Poly::zero();
            return kin.invariant(labels_in_t1);
        case Kinematics::Mode::three_offshell:
            if (total_terminals != 3) return Poly::zero();
            if (labels_in_t1.empty() || labels_in_t1.size() == 3) return Poly::zero();
            return kin.invariant(labels_in_t1);
    }
    return Poly::zero();
}

// ==================== psi / phi ====================

Poly psi(const LabeledGraph& g) {
    if (g.vertex_count() == 0) return Poly::zero();
    std::map<Monomial, Rational> acc;
    std::vector<int> all_edges;
    for (auto& e : g.edges()) all_edges.push_back(e.id);
    g.spanning_trees([&](const std::set<int>& tree) {
        std::vector<std::pair<VarId, int>> exps;
        for (int id : all_edges)
            if (!tree.count(id)) exps.emplace_back(schwinger_var(id), 1);
        acc[Monomial(std::move(exps))] += 1;
    });
    return Poly::from_map(std::move(acc));
}

Poly phi_mass_term(const LabeledGraph& g) {
    Poly masssum;
    for (auto& e : g.edges())
        if (e.massive)
            masssum += Poly::term(Monomial::var(schwinger_var(e.id)) *
                                      Monomial::var(mass_square_var(e.id)),
                                  Rational(1));
    if (masssum.is_zero()) return Poly::zero();
    return psi(g) * masssum;
}

Poly phi(const LabeledGraph& g, const Kinematics& kin) {
    size_t nt = g.terminals().size();
    switch (kin.mode()) {
        case Kinematics::Mode::none:
            if (nt != 0)
                throw std::invalid_argument("phi: terminals present but no kinematics");
            break;
        case Kinematics::Mode::four_onshell:
            if (nt != 4)
                throw std::invalid_argument("phi: four_onshell kinematics needs 4 terminals");
            break;
        case Kinematics::Mode::three_offshell:
            if (nt != 3)
                throw std::invalid_argument("phi: three_offshell kinematics needs 3 terminals");
            break;
    }
    if (g.component_count() > 2) return Poly::zero();

    Poly momentum_part;
    std::vector<int> all_edges;
    for (auto& e : g.edges()) all_edges.push_back(e.id);
    g.spanning_2forests([&](const LabeledGraph::TwoForest& f) {
        std::set<char> labels;
        for (auto& [v, l] : g.terminals())
            if (f.sideA.count(v)) labels.insert(l);
        Poly coeff = momentum_term(kin, labels, static_cast<int>(nt));
        if (coeff.is_zero()) return;
        std::vector<std::pair<VarId, int>> exps;
        for (int id : all_edges)
            if (!f.tree_edges.count(id)) exps.emplace_back(schwinger_var(id), 1);
        momentum_part += coeff * Poly::term(Monomial(std::move(exps)), Rational(1));
    });
    return momentum_part + phi_mass_term(g);
}

// ==================== identity checks ====================

namespace {

bool all_massless(const LabeledGraph& g) {
    for (auto& e : g.edges())
        if (e.massive) return false;
    return true;
}

CheckReport mismatch(CheckReport r, const std::string& what, const Poly& lhs,
                     const Poly& rhs) {
    r.pass = false;
    r.detail = what + ": lhs = " + lhs.str() + " ; rhs = " + rhs.str();
    return r;
}

// sum over spanning 2-forests of h putting t1,t2 in one tree and v in the
// other, weighted by the given invariant symbol. This is the second
// Symanzik polynomial of a side graph whose re-rooted cut vertex carries
// the composite momentum of the far side.
Poly phi_pair_against_vertex(const LabeledGraph& h, int t1, int t2, int v,
                             const Poly& symbol) {
    Poly total;
    std::vector<int> all_edges;
    for (auto& e : h.edges()) all_edges.push_back(e.id);
    h.spanning_2forests([&](const LabeledGraph::TwoForest& f) {
        bool a1 = f.sideA.count(t1) > 0, a2 = f.sideA.count(t2) > 0,
             av = f.sideA.count(v) > 0;
        // need {t1,t2} together and v on the other side
        if (!(a1 == a2 && av != a1)) return;
        std::vector<std::pair<VarId, int>> exps;
        for (int id : all_edges)
            if (!f.tree_edges.count(id)) exps.emplace_back(schwinger_var(id), 1);
        total += Poly::term(Monomial(std::move(exps)), Rational(1));
    });
    return symbol * total;
}

}  // namespace

CheckReport check_deletion_contraction(const LabeledGraph& g, int edge_id,
                                       const Kinematics& kin) {
    CheckReport r;
    r.rule = "deletion-contraction";
    const Edge& e = g.edge(edge_id);
    if (e.is_loop()) throw std::invalid_argument("deletion-contraction needs a non-loop edge");
    if (e.massive) throw std::invalid_argument("deletion-contraction needs a massless edge");
    Poly xe = Poly::var(schwinger_var(edge_id));

    LabeledGraph del = g.delete_edge(edge_id);
    Poly lhs = psi(g);
    Poly rhs;
    bool merged_terminals =
        g.terminal_label(e.u).has_value() && g.terminal_label(e.v).has_value();
    LabeledGraph con = merged_terminals ? g : g.contract_edge(edge_id);
    if (!merged_terminals) {
        rhs = psi(del) * xe + psi(con);
        if (lhs != rhs) return mismatch(r, "psi", lhs, rhs);
        Poly pl = phi(g, kin);
        Poly pr = phi(del, kin) * xe + phi(con, kin);
        if (pl != pr) return mismatch(r, "phi", pl, pr);
    } else {
        // contraction would merge two terminals: check psi only, via the
        // evaluation identity psi_{G/e} = psi_G|_{x_e=0}
        rhs = psi(del) * xe + lhs.eval_zero(schwinger_var(edge_id));
        if (lhs != rhs) return mismatch(r, "psi", lhs, rhs);
        r.detail = "phi skipped: contraction merges two terminals";
    }
    r.pass = true;
    return r;
}

CheckReport check_loop_edge_law(const LabeledGraph& g, int edge_id,
                                const Kinematics& kin) {
    CheckReport r;
    r.rule = "loop-edge-law";
    const Edge& e = g.edge(edge_id);
    if (!e.is_loop()) throw std::invalid_argument("loop law needs a loop edge");
    if (e.massive) throw std::invalid_argument("loop law needs a massless loop");
    Poly xe = Poly::var(schwinger_var(edge_id));
    LabeledGraph del = g.delete_edge(edge_id);
    Poly l1 = psi(g), r1 = xe * psi(del);
    if (l1 != r1) return mismatch(r, "psi", l1, r1);
    Poly l2 = phi(g, kin), r2 = phi(del, kin) * xe;
    if (l2 != r2) return mismatch(r, "phi", l2, r2);
    r.pass = true;
    return r;
}

CheckReport check_one_separation_factorization(const LabeledGraph& g,
                                               const Separation& sep,
                                               const Kinematics& kin) {
    CheckReport r;
    if (!sep.valid_for(g)) throw std::invalid_argument("invalid separation");
    auto bd = sep.boundary();
    if (bd.size() != 1) throw std::invalid_argument("expected a 1-separation");
    int v = *bd.begin();

    int inA = 0, inB = 0;
    char labelB = 0;
    std::vector<std::pair<int, char>> strictA, strictB;
    for (auto& [tv, l] : g.terminals()) {
        if (tv == v) continue;
        if (sep.sideA.count(tv)) {
            ++inA;
            strictA.emplace_back(tv, l);
        } else {
            ++inB;
            strictB.emplace_back(tv, l);
            labelB = l;
        }
    }
    bool v_terminal = g.terminal_label(v).has_value();
    // orient so that side A holds at least as many strict terminals
    if (inB > inA) {
        Separation flipped{sep.sideB, sep.sideA};
        return check_one_separation_factorization(g, flipped, kin);
    }

    LabeledGraph ga = g.induced(sep.sideA);
    LabeledGraph gb_raw = g.induced(sep.sideB);
    Poly psiG = psi(g);
    Poly phiG = phi(g, kin);

    if (v_terminal && inB > 0) {
        r.applicable = false;
        r.rule = "cut-vertex-is-terminal";
        r.detail = "terminals on both sides of a terminal cut vertex: no factorization";
        return r;
    }

    if (inB == 0) {
        // all terminals on side A
        r.rule = "all-terminals-one-side";
        LabeledGraph gb = gb_raw;
        // side B carries no terminal labels except possibly v
        Poly l1 = psiG, r1 = psi(ga) * psi(gb);
        if (l1 != r1) return mismatch(r, "psi", l1, r1);
        Poly l2 = phiG, r2 = phi(ga, kin) * psi(gb);
        if (l2 != r2) return mismatch(r, "phi", l2, r2);
        r.pass = true;
        return r;
    }

    if (!all_massless(g))
        throw std::invalid_argument("momentum 1-separation laws need a massless graph");

    if (inB == 1) {
        // three terminals strictly in A, one strictly in B: re-root the far
        // terminal on the cut vertex
        r.rule = "re-root-on-cut-vertex";
        LabeledGraph ga2 = ga;
        ga2.set_terminal(v, labelB);
        LabeledGraph gb;  // strip the far terminal's label for psi only
        gb = gb_raw;
        Poly l1 = psiG, r1 = psi(ga2) * psi(gb);
        if (l1 != r1) return mismatch(r, "psi", l1, r1);
        Poly l2 = phiG, r2 = phi(ga2, kin) * psi(gb);
        if (l2 != r2) return mismatch(r, "phi", l2, r2);
        r.pass = true;
        return r;
    }

    // two strict terminals on each side
    r.rule = "two-terminals-each-side";
    std::set<char> la{strictA[0].second, strictA[1].second};
    Poly symbol = kin.invariant(la);
    Poly phiA = phi_pair_against_vertex(ga, strictA[0].first, strictA[1].first, v, symbol);
    Poly phiB = phi_pair_against_vertex(gb_raw, strictB[0].first, strictB[1].first, v, symbol);
    Poly l = phiG, rr = phiA * psi(gb_raw) + phiB * psi(ga);
    if (l != rr) return mismatch(r, "phi", l, rr);
    Poly l1 = psiG, r1 = psi(ga) * psi(gb_raw);
    if (l1 != r1) return mismatch(r, "psi", l1, r1);
    r.pass = true;
    return r;
}

CheckReport check_two_component_law(const LabeledGraph& g, const Kinematics& kin) {
    CheckReport r;
    r.rule = "two-component-law";
    auto comps = g.components();
    if (comps.size() != 2) throw std::invalid_argument("graph must have exactly 2 components");
    if (!all_massless(g)) throw std::invalid_argument("two-component law needs massless graph");
    LabeledGraph c1 = g.induced(comps[0]);
    LabeledGraph c2 = g.induced(comps[1]);
    std::set<char> l1;
    for (auto& [tv, l] : g.terminals())
        if (comps[0].count(tv)) l1.insert(l);
    Poly lhs = phi(g, kin);
    Poly rhs;
    if (l1.size() == 2)
        rhs = kin.invariant(l1) * psi(c1) * psi(c2);
    if (lhs != rhs) return mismatch(r, "phi", lhs, rhs);
    Poly pg = psi(g);
    if (!pg.is_zero()) return mismatch(r, "psi(disconnected) == 0", pg, Poly::zero());
    r.pass = true;
    return r;
}

CheckReport check_subdivision(const LabeledGraph& h, int edge_id, const Kinematics& kin) {
    CheckReport r;
    r.rule = "subdivision";
    const Edge& e = h.edge(edge_id);
    if (e.massive) throw std::invalid_argument("subdivision law needs a massless edge");
    LabeledGraph g = h.subdivide_edge(edge_id);
    // the two fresh edges have the largest ids
    std::vector<int> fresh;
    for (auto& f : g.edges())
        if (!h.has_edge_id(f.id)) fresh.push_back(f.id);
    Poly xsum = Poly::var(schwinger_var(fresh[0])) + Poly::var(schwinger_var(fresh[1]));

    LabeledGraph del = h.delete_edge(edge_id);
    bool merges = h.terminal_label(e.u).has_value() && h.terminal_label(e.v).has_value();
    Poly l1 = psi(g);
    Poly r1 = psi(del) * xsum + (merges ? psi(h).eval_zero(schwinger_var(edge_id))
                                        : psi(h.contract_edge(edge_id)));
    if (l1 != r1) return mismatch(r, "psi", l1, r1);
    if (!merges) {
        LabeledGraph con = h.contract_edge(edge_id);
        Poly l2 = phi(g, kin);
        Poly r2 = phi(del, kin) * xsum + phi(con, kin);
        if (l2 != r2) return mismatch(r, "phi", l2, r2);
    } else {
        r.detail = "phi skipped: contraction merges two terminals";
    }
    r.pass = true;
    return r;
}

}  // namespace symred

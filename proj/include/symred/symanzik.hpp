#pragma once

#include "symred/graph.hpp"
#include "symred/poly.hpp"

namespace symred {

// Kinematic data for the second Symanzik polynomial. With four on-shell
// terminals, only 2-2 splits of {a,b,c,d} contribute and each bipartition
// carries one invariant symbol; complementary halves share the symbol.
// With three (not necessarily on-shell) terminals each singleton split
// carries its own symbol.
class Kinematics {
public:
    enum class Mode { none, four_onshell, three_offshell };

    static Kinematics none();
    // invariant({a,b}|{c,d}) = s, ({a,c}|{b,d}) = t, ({a,d}|{b,c}) = u
    static Kinematics four_onshell_stu();
    static Kinematics four_onshell(VarId ab_cd, VarId ac_bd, VarId ad_bc);
    static Kinematics three_offshell(VarId qa, VarId qb, VarId qc);

    Mode mode() const { return mode_; }
    // symbol for the bipartition whose one side is exactly `half`
    // (terminal labels); zero polynomial when the split contributes nothing
    Poly invariant(const std::set<char>& half) const;
    SymbolTable symbols() const;

private:
    Mode mode_ = Mode::none;
    std::map<std::string, VarId> inv_;  // key: sorted labels of the smaller half
};

// momentum factor of a spanning 2-forest whose first tree contains
// exactly the given terminal labels
Poly momentum_term(const Kinematics& kin, const std::set<char>& labels_in_t1,
                   int total_terminals);

Poly psi(const LabeledGraph& g);
Poly phi(const LabeledGraph& g, const Kinematics& kin);

// mass part alone: psi * sum over massive edges of x_e * msq_e
Poly phi_mass_term(const LabeledGraph& g);

struct CheckReport {
    bool applicable = true;
    bool pass = false;
    std::string rule;     // which identity was checked
    std::string detail;   // human-readable mismatch info
};

CheckReport check_deletion_contraction(const LabeledGraph& g, int edge_id,
                                       const Kinematics& kin);
CheckReport check_loop_edge_law(const LabeledGraph& g, int edge_id,
                                const Kinematics& kin);
CheckReport check_one_separation_factorization(const LabeledGraph& g,
                                               const Separation& sep,
                                               const Kinematics& kin);
CheckReport check_two_component_law(const LabeledGraph& g, const Kinematics& kin);
CheckReport check_subdivision(const LabeledGraph& h, int edge_id, const Kinematics& kin);

}  // namespace symred

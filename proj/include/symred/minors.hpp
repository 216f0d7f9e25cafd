#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "symred/graph.hpp"
#include "symred/reduce.hpp"
#include "symred/symanzik.hpp"

namespace symred {

// Pattern graph with a root placement family: each placement maps terminal
// labels injectively into pattern vertices.
struct RootedMinorSpec {
    std::string name;
    LabeledGraph pattern;
    std::string roots;                          // subset of "abcd", sorted
    std::vector<std::map<char, int>> placements;
};

// Branch decomposition witnessing an H-minor: each pattern vertex maps to
// a connected set of G-vertices, pairwise disjoint, with every pattern
// edge realized.
struct MinorModel {
    std::map<int, std::set<int>> branch;        // pattern vertex -> G vertices
    std::map<int, std::pair<int, int>> witness; // pattern edge -> G edge endpoints
};

bool verify_model(const LabeledGraph& g, const LabeledGraph& pattern,
                  const MinorModel& model,
                  const std::map<char, int>* placement = nullptr,
                  const std::map<char, int>* roots_in_g = nullptr);

std::optional<MinorModel> has_minor(const LabeledGraph& g, const LabeledGraph& pattern);
std::optional<MinorModel> has_rooted_minor(const LabeledGraph& g,
                                           const RootedMinorSpec& spec);

// pattern families from the forbidden-minor analysis
RootedMinorSpec k4x();
RootedMinorSpec w4x();
RootedMinorSpec k24x();
RootedMinorSpec lx();
RootedMinorSpec k22x();
RootedMinorSpec k23x();   // roots a,b,c on the 3-side
RootedMinorSpec k31x();   // roots a,b,c on the leaves
RootedMinorSpec k33x();   // roots a,b,c on one side
RootedMinorSpec k3x();    // rooted triangle on a,b,c

// drops placements equivalent under pattern automorphisms that fix the
// root-image set family
RootedMinorSpec reduce_placements(RootedMinorSpec spec);

// true iff there are vertex-disjoint (a,c)/(b,d) paths and vertex-disjoint
// (a,d)/(b,c) paths
bool k22_path_criterion(const LabeledGraph& g, const std::map<char, int>& roots);

// two fully vertex-disjoint paths s1-t1, s2-t2
bool two_disjoint_paths(const LabeledGraph& g, int s1, int t1, int s2, int t2);

struct ScanHit {
    std::string pattern;
    bool rooted = false;
    MinorModel model;
};

struct ScanReport {
    std::vector<ScanHit> hits;
    bool clean() const { return hits.empty(); }
};

// mode "psi": plain K_{3,4} and V8+e minors; mode "psiphi": additionally
// rooted K4(X), W4(X), K2,4(X), L(X) against g's terminals.
// include_k6_candidate searches K6 as well (its status is open).
ScanReport forbidden_minor_scan(const LabeledGraph& g, const std::string& mode,
                                bool include_k6_candidate = false);

// Minor-minimality certificate: g itself non-reducible while every
// single-edge deletion and contraction image is reducible. Reductions act
// on the Symanzik polynomial pair through derivative / evaluation.
struct CertifyEntry {
    std::string operation;  // "delete x3" / "contract x3"
    bool reducible = false;
    bool timed_out = false;
};

struct CertifyReport {
    bool self_reducible = false;
    bool self_timed_out = false;
    std::vector<CertifyEntry> reductions;
    bool is_forbidden_minor() const;
};

using Reducer = std::function<SearchOutcome(const PolySet&)>;

CertifyReport certify_forbidden(const LabeledGraph& g, const Kinematics& kin,
                                const Reducer& reduce);

}  // namespace symred

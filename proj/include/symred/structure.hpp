#pragma once

#include <optional>
#include <string>
#include <vector>

#include "symred/graph.hpp"
#include "symred/minors.hpp"

namespace symred {

// One side of a connectivity reduction: a smaller rooted instance whose
// minor verdicts combine to the original's per the producing lemma.
struct ReducedInstance {
    LabeledGraph graph;               // terminals re-rooted per the lemma
    std::string derivation;           // which lemma produced it
    std::map<char, char> relabeling;  // new label on cut vertex -> original label
};

struct ReductionOutcome {
    enum class Kind { reduced, no_minor, not_applicable } kind;
    std::vector<ReducedInstance> instances;  // verdicts combine by OR
    std::string detail;
};

// cut-vertex lemmas; the pattern is assumed 2-connected
ReductionOutcome cut_vertex_reduce(const LabeledGraph& g, const Separation& sep);
// 2-separation lemmas; the pattern is assumed 3-connected
ReductionOutcome two_sep_reduce(const LabeledGraph& g, const Separation& sep);

// exact search for a cycle containing all terminals; canonical-least form
std::optional<std::vector<int>> cycle_through_roots(const LabeledGraph& g);

// Terminal separating 2-chains and triangles over 2-separations whose
// boundaries lie on the given root cycle (obstruction kinds 1 and 2).
struct Obstruction {
    enum class Kind { chain, triangle } kind;
    std::vector<Separation> separations;
    std::vector<int> cycle;
};

std::optional<Obstruction> find_obstruction(const LabeledGraph& g,
                                            const std::vector<int>& cycle);

// width of the best edge order: maximum boundary of a prefix of edges
int vertex_width(const LabeledGraph& g, int edge_cap = 20);

// exists an edge order with every prefix boundary <= 3 whose last three
// vertices to appear are exactly the given trio
bool is_3_constructable_with_last(const LabeledGraph& g, int v1, int v2, int v3,
                                  int edge_cap = 20);

}  // namespace symred

#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "symred/poly.hpp"

namespace symred {

// Labeled multigraph: stable integer ids for vertices and edges, parallel
// edges and loops allowed. Edge e carries the Schwinger variable x<e.id>
// and optionally the mass square msq<e.id>. Up to four vertices carry
// terminal labels 'a'..'d' (the external momenta).
struct Edge {
    int id = 0;
    int u = 0;
    int v = 0;
    bool massive = false;

    bool is_loop() const { return u == v; }
    int other(int w) const { return w == u ? v : u; }
};

class LabeledGraph {
public:
    LabeledGraph() = default;

    void add_vertex(int id);
    int add_edge(int u, int v, bool massive = false);      // picks next free id
    void add_edge_with_id(int id, int u, int v, bool massive = false);
    void set_terminal(int vertex, char label);  // label in 'a'..'d'

    const std::vector<int>& vertices() const { return verts_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<std::pair<int, char>>& terminals() const { return terminals_; }

    bool has_vertex(int id) const;
    const Edge& edge(int id) const;
    bool has_edge_id(int id) const;
    std::optional<char> terminal_label(int vertex) const;
    std::optional<int> terminal_vertex(char label) const;
    std::vector<int> incident_edges(int vertex) const;
    int degree(int vertex) const;  // loops count twice
    std::vector<int> neighbors(int vertex) const;
    bool adjacent(int u, int v) const;

    size_t vertex_count() const { return verts_.size(); }
    size_t edge_count() const { return edges_.size(); }
    int loop_order() const;  // |E| - |V| + #components

    LabeledGraph delete_edge(int edge_id) const;
    // merges endpoints into the smaller id; rejects loops and rejects
    // merging two terminal vertices
    LabeledGraph contract_edge(int edge_id) const;
    LabeledGraph delete_vertex(int vertex) const;
    LabeledGraph induced(const std::set<int>& vertex_set) const;
    // replace edge by a path of two fresh edges through a fresh vertex
    LabeledGraph subdivide_edge(int edge_id) const;
    // split vertex v into v and a fresh vertex joined by a fresh edge;
    // incident edges listed in moved_edges are re-attached to the new vertex
    LabeledGraph split_vertex(int vertex, const std::vector<int>& moved_edges) const;
    LabeledGraph with_edge(int u, int v) const;

    bool is_connected() const;
    int component_count() const;
    std::vector<std::set<int>> components() const;
    std::set<int> component_of(int vertex) const;

    // spanning trees enumerated by recursive deletion/contraction with
    // bridge and loop shortcuts; callback receives the tree's edge ids
    void spanning_trees(const std::function<void(const std::set<int>&)>& emit) const;
    long count_spanning_trees() const;

    struct TwoForest {
        std::set<int> tree_edges;        // union of both trees' edges
        std::set<int> sideA;             // vertex set of one tree
        std::set<int> sideB;             // vertex set of the other
    };
    void spanning_2forests(const std::function<void(const TwoForest&)>& emit) const;

    std::string dump() const;

private:
    std::vector<int> verts_;
    std::vector<Edge> edges_;
    std::vector<std::pair<int, char>> terminals_;
    int next_edge_id_ = 1;
};

// A separation (A,B): sideA and sideB cover V, no edge joins the strict
// sides, both strict sides nonempty.
struct Separation {
    std::set<int> sideA;
    std::set<int> sideB;

    std::set<int> boundary() const;
    bool valid_for(const LabeledGraph& g) const;
};

int connectivity(const LabeledGraph& g);
bool is_k_connected(const LabeledGraph& g, int k);
std::vector<Separation> enumerate_separations(const LabeledGraph& g, int max_boundary);
std::vector<int> cut_vertices(const LabeledGraph& g);

bool is_isomorphic(const LabeledGraph& g, const LabeledGraph& h);

// ---- stock graphs (vertices 1..n, edges in a fixed deterministic order) ----
LabeledGraph cycle_graph(int n);
LabeledGraph path_graph(int n);
LabeledGraph complete_graph(int n);
LabeledGraph complete_bipartite(int m, int n);
// rim 1..n in cyclic order, hub n+1
LabeledGraph wheel_graph(int rim);
LabeledGraph wagner_graph();       // V8
LabeledGraph wagner_plus_02();     // V8 + chord {0,2} (vertices shifted to 1..8)

// K4 with the edge labelling used for the worked reductions: vertices
// 1,2,3,4; edge ids 1:12, 2:13, 3:34, 4:24, 5:23, 6:14.
LabeledGraph k4_labeled();
// W4 with rim 1,2,3,4 (cyclic), hub 5; rim edges 1:12, 3:23, 6:34, 5:41,
// spokes 4:15, 2:25, 8:35, 7:45.
LabeledGraph w4_labeled();

}  // namespace symred

#pragma once

#include <string>

#include <json.hpp>

#include "symred/graph.hpp"
#include "symred/symanzik.hpp"

namespace symred {

struct GraphFile {
    LabeledGraph graph;
    Kinematics kin;       // four_onshell when 4 terminals, none otherwise
    SymbolTable symbols;  // names for the kinematic invariants
};

GraphFile graph_from_json(const nlohmann::json& j);
nlohmann::json graph_to_json(const LabeledGraph& g);
GraphFile load_graph_file(const std::string& path);

// test helper: one edge per line, "edge u v" (or "u v"), plus optional
// "terminal v a".."d" lines
GraphFile parse_graph_dsl(const std::string& text);

std::string sha256_hex(const std::string& bytes);

}  // namespace symred

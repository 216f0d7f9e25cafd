// Test-only oracles, independent of the production enumeration and
// factorization paths.
#pragma once

#include <array>
#include <optional>
#include <random>

#include "symred/graph.hpp"
#include "symred/symanzik.hpp"

namespace symred::oracle {

// psi/phi by brute force over edge subsets (union-find checks only)
Poly psi_brute(const LabeledGraph& g);
Poly phi_brute(const LabeledGraph& g, const Kinematics& kin);

// number of spanning trees via the Matrix-Tree determinant (Bareiss)
Integer matrix_tree_count(const LabeledGraph& g);

// numeric second Symanzik polynomial from raw momenta vectors with the
// (+,+,+,-) Minkowski square; masses ignored
using Momentum = std::array<Rational, 4>;
Rational minkowski_square(const Momentum& p);
Rational phi_numeric(const LabeledGraph& g, const std::map<int, Momentum>& momenta,
                     const std::map<uint32_t, Rational>& schwinger_values);

// four integer light-like vectors with zero sum (for on-shell oracles)
std::array<Momentum, 4> onshell_quadruple(std::mt19937_64& rng);

// Certificate of irreducibility over Q by exhaustive divisor search mod a
// small prime (degree form preserved). Returns true when certified
// irreducible, false when a rational factorization is exhibited by the
// caller's claim being contradicted... nullopt when inconclusive.
std::optional<bool> certify_irreducible_modp(const Poly& p);

// uniform random connected simple graph on n vertices
LabeledGraph random_connected_graph(int n, double edge_prob, std::mt19937_64& rng);

// random polynomial in the given variables, each term multilinear-ish
Poly random_poly(const std::vector<VarId>& vars, int terms, int max_deg,
                 std::mt19937_64& rng);

}  // namespace symred::oracle

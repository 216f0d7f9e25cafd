#pragma once

#include <vector>

#include "symred/poly.hpp"

namespace symred {

// p = unit * prod(factors[i].first ^ factors[i].second); every factor is
// irreducible over Q, canonical, non-constant. Monomial factors come out
// as single-variable factors.
struct Factorization {
    Rational unit{1};
    std::vector<std::pair<Poly, int>> factors;

    Poly expand() const;
};

// Known prior irreducibles tried by exact division before the general
// machinery kicks in. Reduction steps feed every factor they have already
// seen back in here; resultants overwhelmingly re-factor into those.
class FactorHints {
public:
    void add(const Poly& canonical_irreducible);
    const std::vector<Poly>& polys() const { return hints_; }
    bool empty() const { return hints_.empty(); }

private:
    std::vector<Poly> hints_;
};

Factorization factor(const Poly& p, const FactorHints* hints = nullptr);

// gcd over Q[x1..xn], canonical result; gcd(0,0) = 0
Poly poly_gcd(const Poly& a, const Poly& b);

// dense univariate factorization over Z (Zassenhaus), exposed for tests;
// input maps VarId -> coefficient list (ascending powers)
std::vector<std::pair<std::vector<Integer>, int>> factor_univariate_integer(
    const std::vector<Integer>& coeffs);

}  // namespace symred

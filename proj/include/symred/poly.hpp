#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace symred {

using Rational = mpq_class;
using Integer = mpz_class;

// ==================== VARIABLES ====================

enum class VarKind : uint8_t { schwinger = 0, kinematic = 1, mass_square = 2 };

// A ring variable: a Schwinger parameter x<k>, a kinematic invariant
// (s, t, u or s<k>), or a mass square msq<k>. Ordered by (kind, index);
// that order doubles as the lex priority (earlier = more significant).
struct VarId {
    VarKind kind = VarKind::schwinger;
    int index = 0;

    uint32_t code() const {
        return (static_cast<uint32_t>(kind) << 24) | static_cast<uint32_t>(index);
    }
    friend bool operator==(VarId a, VarId b) { return a.code() == b.code(); }
    friend bool operator!=(VarId a, VarId b) { return !(a == b); }
    friend bool operator<(VarId a, VarId b) { return a.code() < b.code(); }
};

inline VarId schwinger_var(int edge_id) { return VarId{VarKind::schwinger, edge_id}; }
inline VarId kinematic_var(int k) { return VarId{VarKind::kinematic, k}; }
inline VarId mass_square_var(int edge_id) { return VarId{VarKind::mass_square, edge_id}; }

// Maps kinematic VarIds to readable names ("s", "t", "u") for printing and
// parsing. Unnamed variables fall back to x<k>/s<k>/msq<k>.
class SymbolTable {
public:
    void declare(const std::string& name, VarId v);
    std::optional<VarId> lookup(const std::string& name) const;
    std::optional<std::string> name_of(VarId v) const;
    static SymbolTable stu();  // s, t, u -> kinematic 0, 1, 2

private:
    std::map<std::string, VarId> by_name_;
    std::map<uint32_t, std::string> by_var_;
};

std::string var_name(VarId v, const SymbolTable* syms = nullptr);

// ==================== MONOMIALS ====================

// Exponent vector, sorted by VarId, strictly positive exponents.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<std::pair<VarId, int>> exps);

    static Monomial one() { return Monomial(); }
    static Monomial var(VarId v, int exp = 1);

    int degree_in(VarId v) const;
    int total_degree() const;
    bool is_one() const { return exps_.empty(); }
    const std::vector<std::pair<VarId, int>>& exponents() const { return exps_; }

    Monomial operator*(const Monomial& o) const;
    // component-wise division; nullopt if any exponent would go negative
    std::optional<Monomial> divide(const Monomial& o) const;

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

    // graded-lex: total degree first, then earliest differing variable,
    // higher exponent wins
    static int cmp(const Monomial& a, const Monomial& b);
    friend bool operator<(const Monomial& a, const Monomial& b) { return cmp(a, b) < 0; }

private:
    std::vector<std::pair<VarId, int>> exps_;
};

// ==================== POLYNOMIALS ====================

// Exact multivariate polynomial over Q. Terms are kept sorted in
// descending graded-lex order with nonzero coefficients; equality is
// structural.
class Poly {
public:
    using Term = std::pair<Monomial, Rational>;

    Poly() = default;  // zero
    static Poly zero() { return Poly(); }
    static Poly constant(const Rational& c);
    static Poly constant(long c) { return constant(Rational(c)); }
    static Poly var(VarId v);
    static Poly term(const Monomial& m, const Rational& c);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_monomial() const { return terms_.size() == 1; }
    bool is_one() const;
    size_t term_count() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }

    // leading term under graded-lex
    const Term& leading() const;

    int total_degree() const;  // 0 for the zero polynomial
    int degree_in(VarId v) const;
    std::vector<VarId> variables() const;
    bool contains_var(VarId v) const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Rational& c) const;
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
    friend bool operator<(const Poly& a, const Poly& b);  // arbitrary total order

    Poly partial(VarId v) const;
    Poly eval_zero(VarId v) const;                 // substitute v := 0
    Poly coefficient_of(VarId v, int power) const; // collect in v
    Rational eval_rational(const std::map<uint32_t, Rational>& assignment) const;

    // content (gcd of numerators / lcm of denominators); 0 for zero poly
    Rational content() const;
    // divide by content, flip sign so the graded-lex leading coefficient
    // is positive; zero stays zero
    Poly canonical() const;
    // true when this * some positive rational == canonical form already
    bool is_canonical() const;

    // exact division; nullopt when the division leaves a remainder
    std::optional<Poly> divide_exact(const Poly& divisor) const;

    size_t hash() const;
    std::string str(const SymbolTable* syms = nullptr) const;

    // builder used internally by arithmetic
    static Poly from_map(std::map<Monomial, Rational>&& acc);

private:
    std::vector<Term> terms_;
};

Poly parse_poly(const std::string& text, const SymbolTable* syms = nullptr);

}  // namespace symred

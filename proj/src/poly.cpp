#include "symred/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace symred {

// ==================== SymbolTable ====================

void SymbolTable::declare(const std::string& name, VarId v) {
    by_name_[name] = v;
    by_var_[v.code()] = name;
}

std::optional<VarId> SymbolTable::lookup(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::string> SymbolTable::name_of(VarId v) const {
    auto it = by_var_.find(v.code());
    if (it == by_var_.end()) return std::nullopt;
    return it->second;
}

SymbolTable SymbolTable::stu() {
    SymbolTable t;
    t.declare("s", kinematic_var(0));
    t.declare("t", kinematic_var(1));
    t.declare("u", kinematic_var(2));
    return t;
}

std::string var_name(VarId v, const SymbolTable* syms) {
    if (syms) {
        if (auto n = syms->name_of(v)) return *n;
    }
    switch (v.kind) {
        case VarKind::schwinger: return "x" + std::to_string(v.index);
        case VarKind::kinematic: return "s" + std::to_string(v.index);
        case VarKind::mass_square: return "msq" + std::to_string(v.index);
    }
    return "?";
}

// ==================== Monomial ====================

Monomial::Monomial(std::vector<std::pair<VarId, int>> exps) : exps_(std::move(exps)) {
    std::sort(exps_.begin(), exps_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<VarId, int>> clean;
    for (auto& [v, e] : exps_) {
        if (e < 0) throw std::invalid_argument("negative exponent");
        if (e == 0) continue;
        if (!clean.empty() && clean.back().first == v)
            clean.back().second += e;
        else
            clean.emplace_back(v, e);
    }
    exps_ = std::move(clean);
}

Monomial Monomial::var(VarId v, int exp) {
    return Monomial({{v, exp}});
}

int Monomial::degree_in(VarId v) const {
    for (auto& [w, e] : exps_)
        if (w == v) return e;
    return 0;
}

int Monomial::total_degree() const {
    int d = 0;
    for (auto& [v, e] : exps_) d += e;
    return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
    std::vector<std::pair<VarId, int>> out;
    out.reserve(exps_.size() + o.exps_.size());
    size_t i = 0, j = 0;
    while (i < exps_.size() || j < o.exps_.size()) {
        if (j == o.exps_.size() || (i < exps_.size() && exps_[i].first < o.exps_[j].first))
            out.push_back(exps_[i++]);
        else if (i == exps_.size() || o.exps_[j].first < exps_[i].first)
            out.push_back(o.exps_[j++]);
        else {
            out.emplace_back(exps_[i].first, exps_[i].second + o.exps_[j].second);
            ++i, ++j;
        }
    }
    Monomial m;
    m.exps_ = std::move(out);
    return m;
}

std::optional<Monomial> Monomial::divide(const Monomial& o) const {
    std::vector<std::pair<VarId, int>> out;
    size_t i = 0;
    for (auto& [v, e] : o.exps_) {
        while (i < exps_.size() && exps_[i].first < v) out.push_back(exps_[i++]);
        if (i == exps_.size() || exps_[i].first != v || exps_[i].second < e)
            return std::nullopt;
        if (exps_[i].second > e) out.emplace_back(v, exps_[i].second - e);
        ++i;
    }
    while (i < exps_.size()) out.push_back(exps_[i++]);
    Monomial m;
    m.exps_ = std::move(out);
    return m;
}

int Monomial::cmp(const Monomial& a, const Monomial& b) {
    int da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db ? -1 : 1;
    // lex: walk variables in ascending VarId order (most significant first);
    // the monomial with the higher exponent on the earliest differing
    // variable is larger
    size_t i = 0, j = 0;
    while (i < a.exps_.size() && j < b.exps_.size()) {
        VarId va = a.exps_[i].first, vb = b.exps_[j].first;
        if (va == vb) {
            if (a.exps_[i].second != b.exps_[j].second)
                return a.exps_[i].second < b.exps_[j].second ? -1 : 1;
            ++i, ++j;
        } else if (va < vb) {
            return 1;  // a has positive power on an earlier variable
        } else {
            return -1;
        }
    }
    if (i < a.exps_.size()) return 1;
    if (j < b.exps_.size()) return -1;
    return 0;
}

// ==================== Poly ====================

Poly Poly::from_map(std::map<Monomial, Rational>&& acc) {
    Poly p;
    for (auto it = acc.rbegin(); it != acc.rend(); ++it) {
        if (it->second != 0) p.terms_.emplace_back(it->first, it->second);
    }
    return p;
}

Poly Poly::constant(const Rational& c) {
    Poly p;
    if (c != 0) p.terms_.emplace_back(Monomial::one(), c);
    return p;
}

Poly Poly::var(VarId v) {
    Poly p;
    p.terms_.emplace_back(Monomial::var(v), Rational(1));
    return p;
}

Poly Poly::term(const Monomial& m, const Rational& c) {
    Poly p;
    if (c != 0) p.terms_.emplace_back(m, c);
    return p;
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one());
}

bool Poly::is_one() const {
    return terms_.size() == 1 && terms_[0].first.is_one() && terms_[0].second == 1;
}

const Poly::Term& Poly::leading() const {
    if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
    return terms_.front();
}

int Poly::total_degree() const {
    int d = 0;
    for (auto& [m, c] : terms_) d = std::max(d, m.total_degree());
    return d;
}

int Poly::degree_in(VarId v) const {
    int d = 0;
    for (auto& [m, c] : terms_) d = std::max(d, m.degree_in(v));
    return d;
}

std::vector<VarId> Poly::variables() const {
    std::vector<VarId> vs;
    for (auto& [m, c] : terms_)
        for (auto& [v, e] : m.exponents()) vs.push_back(v);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

bool Poly::contains_var(VarId v) const {
    for (auto& [m, c] : terms_)
        if (m.degree_in(v) > 0) return true;
    return false;
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() ||
            (i < terms_.size() && Monomial::cmp(terms_[i].first, o.terms_[j].first) > 0)) {
            out.push_back(terms_[i++]);
        } else if (i == terms_.size() ||
                   Monomial::cmp(o.terms_[j].first, terms_[i].first) > 0) {
            out.push_back(o.terms_[j++]);
        } else {
            Rational c = terms_[i].second + o.terms_[j].second;
            if (c != 0) out.emplace_back(terms_[i].first, c);
            ++i, ++j;
        }
    }
    Poly p;
    p.terms_ = std::move(out);
    return p;
}

Poly Poly::operator-() const {
    Poly p = *this;
    for (auto& [m, c] : p.terms_) c = -c;
    return p;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    std::map<Monomial, Rational> acc;
    for (auto& [ma, ca] : terms_)
        for (auto& [mb, cb] : o.terms_) acc[ma * mb] += ca * cb;
    return from_map(std::move(acc));
}

Poly Poly::operator*(const Rational& c) const {
    if (c == 0) return Poly();
    Poly p = *this;
    for (auto& [m, k] : p.terms_) k *= c;
    return p;
}

bool operator<(const Poly& a, const Poly& b) {
    size_t n = std::min(a.terms_.size(), b.terms_.size());
    for (size_t i = 0; i < n; ++i) {
        int c = Monomial::cmp(a.terms_[i].first, b.terms_[i].first);
        if (c != 0) return c < 0;
        if (a.terms_[i].second != b.terms_[i].second)
            return a.terms_[i].second < b.terms_[i].second;
    }
    return a.terms_.size() < b.terms_.size();
}

Poly Poly::partial(VarId v) const {
    std::map<Monomial, Rational> acc;
    for (auto& [m, c] : terms_) {
        int e = m.degree_in(v);
        if (e == 0) continue;
        Monomial d = *m.divide(Monomial::var(v));
        acc[d] += c * e;
    }
    return from_map(std::move(acc));
}

Poly Poly::eval_zero(VarId v) const {
    Poly p;
    for (auto& [m, c] : terms_)
        if (m.degree_in(v) == 0) p.terms_.emplace_back(m, c);
    return p;
}

Poly Poly::coefficient_of(VarId v, int power) const {
    std::map<Monomial, Rational> acc;
    for (auto& [m, c] : terms_) {
        if (m.degree_in(v) != power) continue;
        Monomial d = power == 0 ? m : *m.divide(Monomial::var(v, power));
        acc[d] += c;
    }
    return from_map(std::move(acc));
}

Rational Poly::eval_rational(const std::map<uint32_t, Rational>& assignment) const {
    Rational total(0);
    for (auto& [m, c] : terms_) {
        Rational t = c;
        for (auto& [v, e] : m.exponents()) {
            auto it = assignment.find(v.code());
            if (it == assignment.end())
                throw std::invalid_argument("eval_rational: no value for variable " +
                                            var_name(v));
            for (int k = 0; k < e; ++k) t *= it->second;
        }
        total += t;
    }
    return total;
}

Rational Poly::content() const {
    if (terms_.empty()) return Rational(0);
    Integer num_gcd(0), den_lcm(1);
    for (auto& [m, c] : terms_) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    }
    Rational r(num_gcd, den_lcm);
    r.canonicalize();
    return r;
}

Poly Poly::canonical() const {
    if (terms_.empty()) return Poly();
    Rational c = content();
    if (terms_.front().second < 0) c = -c;
    Poly p = *this;
    for (auto& [m, k] : p.terms_) {
        k /= c;
        k.canonicalize();
    }
    return p;
}

bool Poly::is_canonical() const { return *this == canonical(); }

std::optional<Poly> Poly::divide_exact(const Poly& divisor) const {
    if (divisor.is_zero()) throw std::invalid_argument("division by zero polynomial");
    Poly rem = *this;
    std::map<Monomial, Rational> q;
    const Term& dl = divisor.leading();
    while (!rem.is_zero()) {
        const Term& rl = rem.leading();
        auto m = rl.first.divide(dl.first);
        if (!m) return std::nullopt;
        Rational c = rl.second / dl.second;
        q[*m] += c;
        rem = rem - divisor * Poly::term(*m, c);
    }
    return from_map(std::move(q));
}

size_t Poly::hash() const {
    size_t h = 1469598103934665603ull;
    auto mix = [&h](size_t x) {
        h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    for (auto& [m, c] : terms_) {
        for (auto& [v, e] : m.exponents()) {
            mix(v.code());
            mix(static_cast<size_t>(e));
        }
        mix(mpz_get_ui(c.get_num().get_mpz_t()));
        mix(mpz_get_ui(c.get_den().get_mpz_t()));
        mix(mpz_sgn(c.get_num().get_mpz_t()) < 0 ? 7u : 13u);
    }
    return h;
}

// ==================== printing ====================

namespace {

std::string rational_str(const Rational& r) {
    std::ostringstream os;
    os << r.get_num();
    if (r.get_den() != 1) os << "/" << r.get_den();
    return os.str();
}

}  // namespace

std::string Poly::str(const SymbolTable* syms) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : terms_) {
        Rational a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        bool coeff_shown = false;
        if (a != 1 || m.is_one()) {
            os << rational_str(a);
            coeff_shown = true;
        }
        bool first_var = true;
        for (auto& [v, e] : m.exponents()) {
            if (coeff_shown || !first_var) os << "*";
            os << var_name(v, syms);
            if (e > 1) os << "^" << e;
            first_var = false;
        }
    }
    return os.str();
}

// ==================== parsing ====================

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;
    const SymbolTable* syms;

    explicit Parser(const std::string& text, const SymbolTable* t) : s(text), syms(t) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw std::invalid_argument("polynomial parse error at position " +
                                    std::to_string(pos) + ": " + msg);
    }

    Integer parse_integer() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) fail("expected number");
        return Integer(s.substr(start, pos - start));
    }

    VarId parse_var() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        std::string name = s.substr(start, pos - start);
        if (name.empty()) fail("expected variable name");
        if (syms) {
            if (auto v = syms->lookup(name)) return *v;
        }
        auto tail_index = [&](size_t prefix_len) -> std::optional<int> {
            if (name.size() <= prefix_len) return std::nullopt;
            for (size_t i = prefix_len; i < name.size(); ++i)
                if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
            return std::stoi(name.substr(prefix_len));
        };
        if (name[0] == 'x') {
            if (auto k = tail_index(1)) return schwinger_var(*k);
        }
        if (name.rfind("msq", 0) == 0) {
            if (auto k = tail_index(3)) return mass_square_var(*k);
        }
        if (name[0] == 's') {
            if (auto k = tail_index(1)) return kinematic_var(*k);
        }
        fail("unknown variable '" + name + "'");
    }

    // factor := number | number/number | var[^exp]
    // term   := factor (* factor)*
    Poly parse_term() {
        Poly acc = Poly::constant(1);
        bool expect_factor = true;
        while (expect_factor) {
            skip_ws();
            if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
                Integer num = parse_integer();
                Integer den(1);
                if (peek() == '/') {
                    ++pos;
                    den = parse_integer();
                    if (den == 0) fail("zero denominator");
                }
                Rational c(num, den);
                c.canonicalize();
                acc *= Poly::constant(c);
            } else {
                VarId v = parse_var();
                int e = 1;
                if (peek() == '^') {
                    ++pos;
                    e = static_cast<int>(parse_integer().get_si());
                    if (e < 0) fail("negative exponent");
                }
                acc *= Poly::term(Monomial::var(v, e), Rational(1));
            }
            if (peek() == '*') {
                ++pos;
            } else {
                expect_factor = false;
            }
        }
        return acc;
    }

    Poly parse() {
        Poly total;
        bool negate = false;
        if (peek() == '-') {
            ++pos;
            negate = true;
        } else if (peek() == '+') {
            ++pos;
        }
        while (true) {
            Poly t = parse_term();
            total += negate ? -t : t;
            if (eof()) break;
            char c = peek();
            if (c == '+') {
                ++pos;
                negate = false;
            } else if (c == '-') {
                ++pos;
                negate = true;
            } else {
                fail(std::string("unexpected character '") + c + "'");
            }
        }
        return total;
    }
};

}  // namespace

Poly parse_poly(const std::string& text, const SymbolTable* syms) {
    Parser p(text, syms);
    if (p.eof()) throw std::invalid_argument("empty polynomial text");
    return p.parse();
}

}  // namespace symred

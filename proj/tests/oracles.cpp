#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace symred::oracle {

namespace {

struct Dsu {
    std::vector<int> p;
    explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    bool join(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        p[a] = b;
        return true;
    }
};

// co-subset monomial over all edges not picked
Poly co_monomial(const LabeledGraph& g, const std::vector<int>& picked) {
    std::vector<std::pair<VarId, int>> exps;
    int k = 0;
    for (auto& e : g.edges()) {
        if (std::find(picked.begin(), picked.end(), k) == picked.end())
            exps.emplace_back(schwinger_var(e.id), 1);
        ++k;
    }
    return Poly::term(Monomial(std::move(exps)), Rational(1));
}

Poly mass_sum(const LabeledGraph& g) {
    Poly s;
    for (auto& e : g.edges())
        if (e.massive)
            s += Poly::term(Monomial::var(schwinger_var(e.id)) *
                                Monomial::var(mass_square_var(e.id)),
                            Rational(1));
    return s;
}

}  // namespace

Poly psi_brute(const LabeledGraph& g) {
    auto vs = g.vertices();
    int n = static_cast<int>(vs.size());
    if (n == 0 || !g.is_connected()) return Poly::zero();
    std::map<int, int> vi;
    for (int i = 0; i < n; ++i) vi[vs[i]] = i;
    auto& edges = g.edges();
    int m = static_cast<int>(edges.size());
    Poly total;
    std::vector<int> idx;
    std::function<void(int, int)> rec = [&](int start, int need) {
        if (need == 0) {
            Dsu d(n);
            for (int k : idx)
                if (!d.join(vi[edges[k].u], vi[edges[k].v])) return;
            total += co_monomial(g, idx);
            return;
        }
        for (int k = start; k + need <= m; ++k) {
            if (edges[k].is_loop()) continue;
            idx.push_back(k);
            rec(k + 1, need - 1);
            idx.pop_back();
        }
    };
    rec(0, n - 1);  // n-1 acyclic edges on a connected graph span it
    return total;
}

Poly phi_brute(const LabeledGraph& g, const Kinematics& kin) {
    auto vs = g.vertices();
    int n = static_cast<int>(vs.size());
    Poly total;
    if (n < 2 || g.component_count() > 2) return total;
    std::map<int, int> vi;
    for (int i = 0; i < n; ++i) vi[vs[i]] = i;
    auto& edges = g.edges();
    int m = static_cast<int>(edges.size());
    std::vector<int> idx;
    std::function<void(int, int)> rec = [&](int start, int need) {
        if (need == 0) {
            Dsu d(n);
            for (int k : idx)
                if (!d.join(vi[edges[k].u], vi[edges[k].v])) return;
            int comps = 0;
            for (int i = 0; i < n; ++i)
                if (d.find(i) == i) ++comps;
            if (comps != 2) return;
            int rootA = d.find(0);
            std::set<char> labels;
            for (auto& [tv, l] : g.terminals())
                if (d.find(vi[tv]) == rootA) labels.insert(l);
            Poly coeff =
                momentum_term(kin, labels, static_cast<int>(g.terminals().size()));
            if (coeff.is_zero()) return;
            total += coeff * co_monomial(g, idx);
            return;
        }
        for (int k = start; k + need <= m; ++k) {
            if (edges[k].is_loop()) continue;
            idx.push_back(k);
            rec(k + 1, need - 1);
            idx.pop_back();
        }
    };
    rec(0, n - 2);
    Poly ms = mass_sum(g);
    if (!ms.is_zero()) total += psi_brute(g) * ms;
    return total;
}

Integer matrix_tree_count(const LabeledGraph& g) {
    auto vs = g.vertices();
    int n = static_cast<int>(vs.size());
    if (n == 0) return 0;
    if (n == 1) return 1;
    std::map<int, int> vi;
    for (int i = 0; i < n; ++i) vi[vs[i]] = i;
    std::vector<std::vector<Integer>> L(n, std::vector<Integer>(n, Integer(0)));
    for (auto& e : g.edges()) {
        if (e.is_loop()) continue;
        int a = vi.at(e.u), b = vi.at(e.v);
        L[a][a] += 1;
        L[b][b] += 1;
        L[a][b] -= 1;
        L[b][a] -= 1;
    }
    int k = n - 1;
    std::vector<std::vector<Integer>> M(k, std::vector<Integer>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) M[i][j] = L[i + 1][j + 1];
    Integer prev(1);
    int sign = 1;
    for (int col = 0; col < k; ++col) {
        int pivot = -1;
        for (int r = col; r < k; ++r)
            if (M[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot == -1) return 0;
        if (pivot != col) {
            std::swap(M[pivot], M[col]);
            sign = -sign;
        }
        for (int r = col + 1; r < k; ++r) {
            for (int c = col + 1; c < k; ++c)
                M[r][c] = (M[r][c] * M[col][col] - M[r][col] * M[col][c]) / prev;
            M[r][col] = 0;
        }
        prev = M[col][col];
    }
    Integer det = M[k - 1][k - 1];
    return sign > 0 ? det : -det;
}

Rational minkowski_square(const Momentum& p) {
    return p[0] * p[0] + p[1] * p[1] + p[2] * p[2] - p[3] * p[3];
}

Rational phi_numeric(const LabeledGraph& g, const std::map<int, Momentum>& momenta,
                     const std::map<uint32_t, Rational>& schwinger_values) {
    auto vs = g.vertices();
    int n = static_cast<int>(vs.size());
    std::map<int, int> vi;
    for (int i = 0; i < n; ++i) vi[vs[i]] = i;
    auto& edges = g.edges();
    int m = static_cast<int>(edges.size());
    Rational total(0);
    std::vector<int> idx;
    std::function<void(int, int)> rec = [&](int start, int need) {
        if (need == 0) {
            Dsu d(n);
            for (int k : idx)
                if (!d.join(vi[edges[k].u], vi[edges[k].v])) return;
            int comps = 0;
            for (int i = 0; i < n; ++i)
                if (d.find(i) == i) ++comps;
            if (comps != 2) return;
            int rootA = d.find(0);
            Momentum flow{Rational(0), Rational(0), Rational(0), Rational(0)};
            for (auto& [v, p] : momenta)
                if (d.find(vi.at(v)) == rootA)
                    for (int c = 0; c < 4; ++c) flow[c] += p[c];
            Rational coeff = minkowski_square(flow);
            if (coeff == 0) return;
            Rational prod(1);
            int k2 = 0;
            for (auto& e : edges) {
                if (std::find(idx.begin(), idx.end(), k2) == idx.end())
                    prod *= schwinger_values.at(schwinger_var(e.id).code());
                ++k2;
            }
            total += coeff * prod;
            return;
        }
        for (int k = start; k + need <= m; ++k) {
            if (edges[k].is_loop()) continue;
            idx.push_back(k);
            rec(k + 1, need - 1);
            idx.pop_back();
        }
    };
    if (n >= 2) rec(0, n - 2);
    return total;
}

std::array<Momentum, 4> onshell_quadruple(std::mt19937_64& rng) {
    std::vector<Momentum> lightlike;
    for (int a = -3; a <= 3; ++a)
        for (int b = -3; b <= 3; ++b)
            for (int c = -3; c <= 3; ++c) {
                long s = long(a) * a + long(b) * b + long(c) * c;
                long r = std::lround(std::sqrt(double(s)));
                if (r * r != s || r == 0) continue;
                for (int sgn : {1, -1})
                    lightlike.push_back(
                        {Rational(a), Rational(b), Rational(c), Rational(sgn * r)});
            }
    std::uniform_int_distribution<size_t> pick(0, lightlike.size() - 1);
    while (true) {
        Momentum p1 = lightlike[pick(rng)], p2 = lightlike[pick(rng)],
                 p3 = lightlike[pick(rng)];
        Momentum p4;
        bool nonzero = false;
        for (int c = 0; c < 4; ++c) {
            p4[c] = -(p1[c] + p2[c] + p3[c]);
            if (p4[c] != 0) nonzero = true;
        }
        if (!nonzero || minkowski_square(p4) != 0) continue;
        return {p1, p2, p3, p4};
    }
}

// ==================== mod-p irreducibility certificate ====================

namespace {

using Expo = std::vector<int>;  // exponent vector aligned with a var list

struct FpBox {
    long p;
    std::vector<int> degs;
    std::map<Expo, long> terms;

    int total_degree() const {
        int d = 0;
        for (auto& [e, c] : terms) {
            int t = 0;
            for (int x : e) t += x;
            d = std::max(d, t);
        }
        return d;
    }
};

int grlex_cmp(const Expo& a, const Expo& b) {
    int da = 0, db = 0;
    for (int x : a) da += x;
    for (int x : b) db += x;
    if (da != db) return da < db ? -1 : 1;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
    return 0;
}

long inv_mod(long a, long p) {
    long r = 1, e = p - 2;
    a %= p;
    while (e) {
        if (e & 1) r = r * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return r;
}

// exact-division test of f by g over F_p (single divisor is a Groebner
// basis of its ideal, so zero remainder is equivalent to divisibility)
bool divides_fp(const FpBox& f, const std::map<Expo, long>& g, long p) {
    if (g.empty()) return false;
    Expo glead;
    long gc = 0;
    for (auto& [e, c] : g) {
        if (c == 0) continue;
        if (glead.empty() || grlex_cmp(e, glead) > 0) {
            glead = e;
            gc = c;
        }
    }
    if (glead.empty()) return false;
    long gcinv = inv_mod(gc, p);
    std::map<Expo, long> rem = f.terms;
    while (true) {
        Expo lead;
        long lc = 0;
        for (auto& [e, c] : rem) {
            if (c == 0) continue;
            if (lead.empty() || grlex_cmp(e, lead) > 0) {
                lead = e;
                lc = c;
            }
        }
        if (lead.empty()) return true;  // zero remainder
        Expo q(lead.size());
        for (size_t i = 0; i < lead.size(); ++i) {
            q[i] = lead[i] - glead[i];
            if (q[i] < 0) return false;  // leading term not divisible
        }
        long scale = lc * gcinv % p;
        for (auto& [e, c] : g) {
            if (c == 0) continue;
            Expo t(e.size());
            for (size_t i = 0; i < e.size(); ++i) t[i] = e[i] + q[i];
            long& slot = rem[t];
            slot = ((slot - scale * c) % p + p) % p;
        }
    }
}

}  // namespace

std::optional<bool> certify_irreducible_modp(const Poly& poly) {
    Poly q = poly.canonical();
    if (q.is_constant()) return std::nullopt;
    auto vars = q.variables();
    std::vector<int> degs;
    for (auto v : vars) degs.push_back(q.degree_in(v));
    int tdeg = q.total_degree();

    for (long p : {3L, 5L, 7L}) {
        FpBox f;
        f.p = p;
        f.degs = degs;
        bool top_form = false;
        for (auto& [m, c] : q.terms()) {
            Expo e(vars.size());
            for (size_t i = 0; i < vars.size(); ++i) e[i] = m.degree_in(vars[i]);
            long cv = mpz_fdiv_ui(c.get_num().get_mpz_t(), (unsigned long)p);
            if (cv) f.terms[e] = cv;
            if (cv && m.total_degree() == tdeg) top_form = true;
        }
        if (!top_form) continue;  // total degree dropped mod p

        // enumerate candidate divisors with total degree in [1, tdeg/2]
        std::vector<Expo> support;
        std::function<void(size_t, int, Expo&)> gen = [&](size_t i, int left, Expo& cur) {
            if (i == vars.size()) {
                support.push_back(cur);
                return;
            }
            for (int d = 0; d <= std::min(degs[i], left); ++d) {
                cur[i] = d;
                gen(i + 1, left - d, cur);
            }
            cur[i] = 0;
        };
        Expo cur(vars.size(), 0);
        gen(0, tdeg / 2, cur);
        double count = std::pow(double(p), double(support.size()));
        if (count > 300000.0) return std::nullopt;

        bool reducible_mod_p = false;
        std::map<Expo, long> cand;
        std::function<bool(size_t)> enumerate = [&](size_t i) -> bool {
            if (i == support.size()) {
                bool nonconst = false;
                for (auto& [e, c] : cand) {
                    if (c == 0) continue;
                    for (int x : e)
                        if (x > 0) nonconst = true;
                }
                if (!nonconst) return false;
                return divides_fp(f, cand, p);
            }
            for (long val = 0; val < p; ++val) {
                if (val == 0)
                    cand.erase(support[i]);
                else
                    cand[support[i]] = val;
                if (enumerate(i + 1)) return true;
            }
            cand.erase(support[i]);
            return false;
        };
        reducible_mod_p = enumerate(0);
        if (!reducible_mod_p) return true;  // irreducible mod p -> irreducible over Q
    }
    return std::nullopt;
}

LabeledGraph random_connected_graph(int n, double edge_prob, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> coin(0, 1);
    while (true) {
        LabeledGraph g;
        for (int i = 1; i <= n; ++i) g.add_vertex(i);
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                if (coin(rng) < edge_prob) g.add_edge(i, j);
        if (g.is_connected() && g.edge_count() >= 1) return g;
    }
}

Poly random_poly(const std::vector<VarId>& vars, int terms, int max_deg,
                 std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::uniform_int_distribution<size_t> var(0, vars.size() - 1);
    Poly p;
    for (int t = 0; t < terms; ++t) {
        int c = coef(rng);
        if (c == 0) c = 1;
        std::map<uint32_t, std::pair<VarId, int>> exps;
        int d = deg(rng);
        for (int k = 0; k < d; ++k) {
            VarId v = vars[var(rng)];
            auto& slot = exps[v.code()];
            slot.first = v;
            slot.second += 1;
        }
        std::vector<std::pair<VarId, int>> ev;
        for (auto& [code, ve] : exps) ev.push_back(ve);
        p += Poly::term(Monomial(std::move(ev)), Rational(c));
    }
    return p;
}

}  // namespace symred::oracle

#include "symred/factor.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>

namespace symred {

Poly Factorization::expand() const {
    Poly p = Poly::constant(unit);
    for (auto& [f, m] : factors)
        for (int i = 0; i < m; ++i) p *= f;
    return p;
}

void FactorHints::add(const Poly& f) {
    if (f.is_constant() || f.is_monomial()) return;
    for (auto& h : hints_)
        if (h == f) return;
    hints_.push_back(f);
}

// ==================== dense univariate over Z ====================

namespace {

using ZPoly = std::vector<Integer>;  // ascending powers, back() != 0

void ztrim(ZPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int zdeg(const ZPoly& f) { return static_cast<int>(f.size()) - 1; }

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly c(a.size() + b.size() - 1, Integer(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

ZPoly zderiv(const ZPoly& f) {
    ZPoly d;
    for (size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<long>(i));
    ztrim(d);
    return d;
}

Integer zcontent(const ZPoly& f) {
    Integer g(0);
    for (auto& c : f) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

ZPoly zprimitive(const ZPoly& f) {
    if (f.empty()) return f;
    Integer c = zcontent(f);
    if (f.back() < 0) c = -c;
    ZPoly g = f;
    for (auto& x : g) x /= c;
    return g;
}

// divides exactly or returns nullopt
std::optional<ZPoly> zdivide_exact(const ZPoly& a, const ZPoly& b) {
    if (b.empty()) throw std::invalid_argument("univariate division by zero");
    ZPoly rem = a, q(a.size(), Integer(0));
    while (zdeg(rem) >= zdeg(b)) {
        Integer& rc = rem.back();
        if (!mpz_divisible_p(rc.get_mpz_t(), b.back().get_mpz_t())) return std::nullopt;
        Integer t = rc / b.back();
        int shift = zdeg(rem) - zdeg(b);
        q[shift] = t;
        for (size_t i = 0; i < b.size(); ++i) rem[shift + i] -= t * b[i];
        ztrim(rem);
    }
    if (!rem.empty()) return std::nullopt;
    ztrim(q);
    return q;
}

// pseudo-remainder of a by b: lc(b)^(da-db+1) * a mod b
ZPoly zprem(ZPoly a, const ZPoly& b) {
    int da = zdeg(a), db = zdeg(b);
    if (da < db) return a;
    Integer lb = b.back();
    for (int k = da; k >= db; --k) {
        ztrim(a);
        if (zdeg(a) < k) {
            for (auto& c : a) c *= lb;
            continue;
        }
        Integer la = a.back();
        for (auto& c : a) c *= lb;
        for (int i = 0; i <= db; ++i) a[k - db + i] -= la * b[i];
        ztrim(a);
        if (a.empty()) break;
    }
    ztrim(a);
    return a;
}

ZPoly zgcd(ZPoly a, ZPoly b) {
    ztrim(a);
    ztrim(b);
    if (a.empty()) return zprimitive(b);
    if (b.empty()) return zprimitive(a);
    Integer ca = zcontent(a), cb = zcontent(b), cg;
    mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    a = zprimitive(a);
    b = zprimitive(b);
    if (zdeg(a) < zdeg(b)) std::swap(a, b);
    while (!b.empty()) {
        ZPoly r = zprem(a, b);
        a = std::move(b);
        b = zprimitive(r);
    }
    ZPoly g = zprimitive(a);
    for (auto& c : g) c *= cg;
    return g;
}

// Yun's squarefree decomposition; input primitive with positive lc
std::vector<std::pair<ZPoly, int>> zsquarefree(const ZPoly& f) {
    std::vector<std::pair<ZPoly, int>> parts;
    if (zdeg(f) < 1) return parts;
    ZPoly df = zderiv(f);
    ZPoly g = zgcd(f, df);
    if (zdeg(g) == 0) {
        parts.emplace_back(f, 1);
        return parts;
    }
    ZPoly c = *zdivide_exact(f, g);
    ZPoly d = *zdivide_exact(df, g);
    ZPoly dc = zderiv(c);
    ZPoly w(d.size() > dc.size() ? d.size() : dc.size(), Integer(0));
    auto sub = [](const ZPoly& x, const ZPoly& y) {
        ZPoly r(std::max(x.size(), y.size()), Integer(0));
        for (size_t i = 0; i < x.size(); ++i) r[i] += x[i];
        for (size_t i = 0; i < y.size(); ++i) r[i] -= y[i];
        ztrim(r);
        return r;
    };
    w = sub(d, dc);
    int mult = 1;
    while (zdeg(c) > 0) {
        ZPoly a = zgcd(c, w);
        if (zdeg(a) > 0) parts.emplace_back(zprimitive(a), mult);
        c = *zdivide_exact(c, a);
        ZPoly t = *zdivide_exact(w, a);
        w = sub(t, zderiv(c));
        ++mult;
    }
    return parts;
}

// ---------- arithmetic mod a word prime ----------

using FpPoly = std::vector<long>;  // ascending, back() != 0

struct Fp {
    long p;
    long add(long a, long b) const { return (a + b) % p; }
    long sub(long a, long b) const { return (a - b % p + p) % p; }
    long mul(long a, long b) const { return (long)((__int128)a * b % p); }
    long pow(long a, long e) const {
        long r = 1;
        a %= p;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    long inv(long a) const { return pow((a % p + p) % p, p - 2); }
};

void ftrim(FpPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

FpPoly fp_from_z(const ZPoly& f, const Fp& K) {
    FpPoly g(f.size());
    for (size_t i = 0; i < f.size(); ++i) {
        long v = mpz_fdiv_ui(f[i].get_mpz_t(), (unsigned long)K.p);
        g[i] = v;
    }
    ftrim(g);
    return g;
}

FpPoly fmul(const FpPoly& a, const FpPoly& b, const Fp& K) {
    if (a.empty() || b.empty()) return {};
    FpPoly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] = K.add(c[i + j], K.mul(a[i], b[j]));
    ftrim(c);
    return c;
}

FpPoly fsub(const FpPoly& a, const FpPoly& b, const Fp& K) {
    FpPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = K.sub(r[i], b[i]);
    ftrim(r);
    return r;
}

FpPoly fmonic(const FpPoly& f, const Fp& K) {
    if (f.empty()) return f;
    long s = K.inv(f.back());
    FpPoly g(f.size());
    for (size_t i = 0; i < f.size(); ++i) g[i] = K.mul(f[i], s);
    return g;
}

FpPoly frem(FpPoly a, const FpPoly& b, const Fp& K) {
    long binv = K.inv(b.back());
    while (!a.empty() && a.size() >= b.size()) {
        long t = K.mul(a.back(), binv);
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i)
            a[shift + i] = K.sub(a[shift + i], K.mul(t, b[i]));
        ftrim(a);
    }
    return a;
}

FpPoly fgcd(FpPoly a, FpPoly b, const Fp& K) {
    while (!b.empty()) {
        FpPoly r = frem(a, b, K);
        a = std::move(b);
        b = std::move(r);
    }
    return a.empty() ? a : fmonic(a, K);
}

FpPoly fpowmod(FpPoly base, Integer e, const FpPoly& mod, const Fp& K) {
    FpPoly r{1};
    base = frem(std::move(base), mod, K);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = frem(fmul(r, base, K), mod, K);
        base = frem(fmul(base, base, K), mod, K);
        e >>= 1;
    }
    return r;
}

FpPoly fderiv(const FpPoly& f, const Fp& K) {
    FpPoly d;
    for (size_t i = 1; i < f.size(); ++i) d.push_back(K.mul(f[i], (long)(i % (size_t)K.p)));
    ftrim(d);
    return d;
}

// distinct-degree + Cantor-Zassenhaus; input monic squarefree
std::vector<FpPoly> fp_factor(FpPoly f, const Fp& K) {
    std::vector<FpPoly> out;
    std::vector<std::pair<FpPoly, int>> stages;  // (product of deg-d factors, d)
    FpPoly x{0, 1};
    FpPoly h = x;
    int d = 0;
    while ((int)f.size() - 1 > 0) {
        ++d;
        if (2 * d > (int)f.size() - 1) {
            stages.emplace_back(f, (int)f.size() - 1);
            break;
        }
        h = fpowmod(h, Integer(K.p), f, K);
        FpPoly g = fgcd(fsub(h, x, K), f, K);
        if (!g.empty() && g.size() > 1) {
            stages.emplace_back(g, d);
            // exact division in Fp
            FpPoly quotient;
            {
                FpPoly rem = f;
                quotient.assign(f.size(), 0);
                long ginv = K.inv(g.back());
                while (rem.size() >= g.size()) {
                    long t = K.mul(rem.back(), ginv);
                    size_t shift = rem.size() - g.size();
                    quotient[shift] = t;
                    for (size_t i = 0; i < g.size(); ++i)
                        rem[shift + i] = K.sub(rem[shift + i], K.mul(t, g[i]));
                    ftrim(rem);
                }
                ftrim(quotient);
            }
            f = quotient;
            h = frem(h, f, K);
        }
    }
    // equal-degree splitting
    unsigned long long rng = 0x853c49e6748fea9bULL;
    auto next_rand = [&rng, &K]() {
        rng = rng * 6364136223846793005ULL + 1442695040888963407ULL;
        return (long)((rng >> 16) % (unsigned long long)K.p);
    };
    for (auto& [prod, deg] : stages) {
        std::vector<FpPoly> work{prod};
        while (!work.empty()) {
            FpPoly g = work.back();
            work.pop_back();
            if ((int)g.size() - 1 == deg) {
                out.push_back(fmonic(g, K));
                continue;
            }
            // random split: r^((p^d-1)/2) - 1 has a root in common with
            // about half the factors
            Integer e;
            mpz_ui_pow_ui(e.get_mpz_t(), (unsigned long)K.p, (unsigned long)deg);
            e = (e - 1) / 2;
            FpPoly r(g.size(), 0);
            for (auto& c : r) c = next_rand();
            ftrim(r);
            if (r.empty()) {
                work.push_back(g);
                continue;
            }
            FpPoly t = fpowmod(r, e, g, K);
            if (!t.empty()) t[0] = K.sub(t[0], 1);
            ftrim(t);
            FpPoly u = fgcd(t, g, K);
            if (u.empty() || u.size() == 1 || u.size() == g.size()) {
                work.push_back(g);
                continue;
            }
            // split g = u * (g/u)
            FpPoly rem = g, quotient(g.size(), 0);
            long uinv = K.inv(u.back());
            while (rem.size() >= u.size()) {
                long t2 = K.mul(rem.back(), uinv);
                size_t shift = rem.size() - u.size();
                quotient[shift] = t2;
                for (size_t i = 0; i < u.size(); ++i)
                    rem[shift + i] = K.sub(rem[shift + i], K.mul(t2, u[i]));
                ftrim(rem);
            }
            ftrim(quotient);
            work.push_back(u);
            work.push_back(quotient);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------- Hensel lifting ----------

Integer zmod_sym(const Integer& a, const Integer& m) {
    Integer r = a % m;
    if (r < 0) r += m;
    if (r * 2 > m) r -= m;
    return r;
}

struct ModPoly {  // coefficients in Z, implicitly mod m
    ZPoly c;
};

ZPoly mp_reduce(ZPoly f, const Integer& m) {
    for (auto& x : f) {
        x %= m;
        if (x < 0) x += m;
    }
    ztrim(f);
    return f;
}

ZPoly mp_mul(const ZPoly& a, const ZPoly& b, const Integer& m) {
    return mp_reduce(zmul(a, b), m);
}

ZPoly mp_sub(const ZPoly& a, const ZPoly& b, const Integer& m) {
    ZPoly r(std::max(a.size(), b.size()), Integer(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return mp_reduce(std::move(r), m);
}

ZPoly mp_add(const ZPoly& a, const ZPoly& b, const Integer& m) {
    ZPoly r(std::max(a.size(), b.size()), Integer(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return mp_reduce(std::move(r), m);
}

// divide by monic h mod m: returns (q, r)
std::pair<ZPoly, ZPoly> mp_divmod_monic(ZPoly a, const ZPoly& h, const Integer& m) {
    a = mp_reduce(std::move(a), m);
    ZPoly q(a.size(), Integer(0));
    while (zdeg(a) >= zdeg(h)) {
        Integer t = a.back();
        int shift = zdeg(a) - zdeg(h);
        q[shift] = t;
        for (size_t i = 0; i < h.size(); ++i) {
            a[shift + i] -= t * h[i];
            a[shift + i] %= m;
            if (a[shift + i] < 0) a[shift + i] += m;
        }
        ztrim(a);
    }
    ztrim(q);
    return {q, a};
}

// One quadratic Hensel step: f = g*h (mod m), s*g + t*h = 1 (mod m), h monic.
// Afterwards the same relations hold mod m^2.
void hensel_step(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t, const Integer& m) {
    Integer m2 = m * m;
    ZPoly e = mp_sub(f, zmul(g, h), m2);
    auto [q, r] = mp_divmod_monic(zmul(s, e), h, m2);
    ZPoly gstar = mp_add(mp_add(g, zmul(t, e), m2), zmul(q, g), m2);
    ZPoly hstar = mp_add(h, r, m2);
    ZPoly b = mp_sub(mp_add(zmul(s, gstar), zmul(t, hstar), m2), ZPoly{Integer(1)}, m2);
    auto [c, d] = mp_divmod_monic(zmul(s, b), hstar, m2);
    ZPoly sstar = mp_sub(s, d, m2);
    ZPoly tstar = mp_sub(mp_sub(t, zmul(t, b), m2), zmul(c, gstar), m2);
    g = gstar;
    h = hstar;
    s = sstar;
    t = tstar;
}

// extended Euclid over Fp: s*a + t*b = 1
void fp_bezout(const FpPoly& a, const FpPoly& b, const Fp& K, FpPoly& s, FpPoly& t) {
    FpPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        // divide r0 by r1
        FpPoly q(r0.size(), 0), rem = r0;
        long inv = K.inv(r1.back());
        while (rem.size() >= r1.size()) {
            long c = K.mul(rem.back(), inv);
            size_t shift = rem.size() - r1.size();
            q[shift] = c;
            for (size_t i = 0; i < r1.size(); ++i)
                rem[shift + i] = K.sub(rem[shift + i], K.mul(c, r1[i]));
            ftrim(rem);
        }
        ftrim(q);
        FpPoly s2 = fsub(s0, fmul(q, s1, K), K);
        FpPoly t2 = fsub(t0, fmul(q, t1, K), K);
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    long inv = K.inv(r0.back());
    s.assign(s0.size(), 0);
    t.assign(t0.size(), 0);
    for (size_t i = 0; i < s0.size(); ++i) s[i] = K.mul(s0[i], inv);
    for (size_t i = 0; i < t0.size(); ++i) t[i] = K.mul(t0[i], inv);
    ftrim(s);
    ftrim(t);
}

ZPoly z_from_fp(const FpPoly& f) {
    ZPoly g(f.size());
    for (size_t i = 0; i < f.size(); ++i) g[i] = Integer((long)f[i]);
    ztrim(g);
    return g;
}

// Lift f = lc * prod(monic factors) (mod p) to mod p^2^levels, recursively.
std::vector<ZPoly> hensel_lift_tree(const ZPoly& f, std::vector<FpPoly> facs,
                                    const Fp& K, int levels) {
    if (facs.size() == 1) {
        // the lifted image of the single factor is f itself (mod p^2^levels)
        return {f};
    }
    size_t half = facs.size() / 2;
    FpPoly Gp{1}, Hp{1};
    for (size_t i = 0; i < half; ++i) Gp = fmul(Gp, facs[i], K);
    for (size_t i = half; i < facs.size(); ++i) Hp = fmul(Hp, facs[i], K);
    // attach lc(f) to the G side
    long lcm = (long)mpz_fdiv_ui(f.back().get_mpz_t(), (unsigned long)K.p);
    FpPoly Gl(Gp.size());
    for (size_t i = 0; i < Gp.size(); ++i) Gl[i] = K.mul(Gp[i], lcm);
    FpPoly sp, tp;
    fp_bezout(Gl, Hp, K, sp, tp);
    ZPoly g = z_from_fp(Gl), h = z_from_fp(Hp), s = z_from_fp(sp), t = z_from_fp(tp);
    Integer m(K.p);
    for (int i = 0; i < levels; ++i) {
        hensel_step(f, g, h, s, t, m);
        m *= m;
    }
    std::vector<FpPoly> left(facs.begin(), facs.begin() + half);
    std::vector<FpPoly> right(facs.begin() + half, facs.end());
    auto lg = hensel_lift_tree(g, std::move(left), K, levels);
    auto lh = hensel_lift_tree(h, std::move(right), K, levels);
    for (auto& x : lh) lg.push_back(std::move(x));
    return lg;
}

// factor a primitive squarefree poly with positive lc, deg >= 2
std::vector<ZPoly> zassenhaus_squarefree(const ZPoly& f) {
    int n = zdeg(f);
    // choose a prime
    static const long primes[] = {3,   5,   7,   11,  13,  17,  19,  23,  29,  31,
                                  37,  41,  43,  47,  53,  59,  61,  67,  71,  73,
                                  79,  83,  89,  97,  101, 103, 107, 109, 113, 127,
                                  131, 137, 139, 149, 151, 157, 163, 167, 173, 179};
    Fp K{0};
    FpPoly fp;
    bool found = false;
    for (long p : primes) {
        K.p = p;
        if (mpz_divisible_ui_p(f.back().get_mpz_t(), (unsigned long)p)) continue;
        fp = fp_from_z(f, K);
        if ((int)fp.size() - 1 != n) continue;
        FpPoly d = fderiv(fp, K);
        FpPoly g = fgcd(fp, d, K);
        if (g.size() == 1) {
            found = true;
            break;
        }
    }
    if (!found) throw std::runtime_error("zassenhaus: no suitable prime found");

    std::vector<FpPoly> modular = fp_factor(fmonic(fp, K), K);
    if (modular.size() == 1) return {f};

    // coefficient bound: |factor coeffs| <= 2^n * sqrt(n+1) * |f|_inf; the
    // candidates also carry lc(f)
    Integer maxc(0);
    for (auto& c : f) {
        Integer a = abs(c);
        if (a > maxc) maxc = a;
    }
    Integer bound = maxc;
    mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), n + 1);
    Integer sq;
    mpz_sqrt(sq.get_mpz_t(), Integer(n + 1).get_mpz_t());
    bound *= (sq + 1) * abs(f.back()) * 2;

    int levels = 0;
    Integer m(K.p);
    while (m <= bound) {
        m *= m;
        ++levels;
    }
    std::vector<ZPoly> lifted = hensel_lift_tree(f, modular, K, levels);
    // normalize lifted factors to monic mod m (they may carry lc on one side)
    for (auto& g : lifted) {
        g = mp_reduce(std::move(g), m);
        Integer lc = g.back();
        if (lc != 1) {
            Integer inv;
            mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), m.get_mpz_t());
            for (auto& c : g) c = ((c * inv) % m + m) % m;
            ztrim(g);
        }
    }

    // subset recombination
    std::vector<ZPoly> out;
    ZPoly rem = f;
    std::vector<int> live(lifted.size());
    std::iota(live.begin(), live.end(), 0);
    size_t take = 1;
    while (2 * take <= live.size()) {
        bool restarted = false;
        std::vector<int> idx(take);
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            ZPoly cand{rem.back()};
            for (size_t i = 0; i < take; ++i) cand = mp_mul(cand, lifted[live[idx[i]]], m);
            for (auto& c : cand) c = zmod_sym(c, m);
            ztrim(cand);
            ZPoly pp = zprimitive(cand);
            if (auto q = zdivide_exact(rem, pp)) {
                out.push_back(pp);
                rem = zprimitive(*q);
                std::vector<int> nl;
                for (size_t i = 0, k = 0; i < live.size(); ++i) {
                    if (k < take && (int)i == idx[k]) {
                        ++k;
                        continue;
                    }
                    nl.push_back(live[i]);
                }
                live = std::move(nl);
                restarted = true;
                break;
            }
            // next combination
            int pos = (int)take - 1;
            while (pos >= 0 && idx[pos] == (int)(live.size() - take + pos)) --pos;
            if (pos < 0) break;
            ++idx[pos];
            for (size_t i = pos + 1; i < take; ++i) idx[i] = idx[i - 1] + 1;
        }
        if (!restarted) ++take;
    }
    if (zdeg(rem) >= 1) out.push_back(zprimitive(rem));
    return out;
}

std::vector<std::pair<ZPoly, int>> zfactor(const ZPoly& input) {
    ZPoly f = zprimitive(input);
    std::vector<std::pair<ZPoly, int>> out;
    // power of x
    size_t k = 0;
    while (k < f.size() && f[k] == 0) ++k;
    if (k > 0) {
        out.emplace_back(ZPoly{Integer(0), Integer(1)}, (int)k);
        f.erase(f.begin(), f.begin() + k);
    }
    if (zdeg(f) < 1) return out;
    for (auto& [w, mult] : zsquarefree(f)) {
        if (zdeg(w) == 1) {
            out.emplace_back(w, mult);
        } else {
            for (auto& g : zassenhaus_squarefree(w)) out.emplace_back(g, mult);
        }
    }
    return out;
}

}  // namespace

std::vector<std::pair<std::vector<Integer>, int>> factor_univariate_integer(
    const std::vector<Integer>& coeffs) {
    ZPoly f = coeffs;
    ztrim(f);
    if (f.empty()) throw std::invalid_argument("factor of zero polynomial");
    return zfactor(f);
}

// ==================== multivariate gcd ====================

namespace {

// coefficients of p as a univariate in v, ascending
std::vector<Poly> coeffs_in(const Poly& p, VarId v) {
    int d = p.degree_in(v);
    std::vector<Poly> cs(d + 1);
    for (int i = 0; i <= d; ++i) cs[i] = p.coefficient_of(v, i);
    return cs;
}

Poly from_coeffs(const std::vector<Poly>& cs, VarId v) {
    Poly r;
    for (size_t i = 0; i < cs.size(); ++i)
        r += cs[i] * Poly::term(Monomial::var(v, (int)i), Rational(1));
    return r;
}

void ptrim(std::vector<Poly>& cs) {
    while (!cs.empty() && cs.back().is_zero()) cs.pop_back();
}

Poly gcd_many(const std::vector<Poly>& ps) {
    Poly g;
    for (auto& p : ps) {
        if (p.is_zero()) continue;
        g = g.is_zero() ? p.canonical() : poly_gcd(g, p);
        if (g.is_one()) return g;
    }
    return g;
}

// pseudo-remainder in variable v
std::vector<Poly> pv_prem(std::vector<Poly> a, const std::vector<Poly>& b) {
    int da = (int)a.size() - 1, db = (int)b.size() - 1;
    const Poly& lb = b.back();
    for (int k = da; k >= db; --k) {
        ptrim(a);
        if ((int)a.size() - 1 < k) {
            for (auto& c : a) c *= lb;
            continue;
        }
        Poly la = a.back();
        for (auto& c : a) c *= lb;
        for (int i = 0; i <= db; ++i) a[k - db + i] -= la * b[i];
        ptrim(a);
        if (a.empty()) break;
    }
    ptrim(a);
    return a;
}

}  // namespace

namespace {

// cheap coprimality certificate: specialize everything but v at small
// integers; when both degrees survive and the univariate images are
// coprime, the gcd is free of v
bool coprime_in_var_by_evaluation(const Poly& a, const Poly& b, VarId v) {
    auto others = a.variables();
    for (auto w : b.variables()) others.push_back(w);
    std::sort(others.begin(), others.end());
    others.erase(std::unique(others.begin(), others.end()), others.end());
    others.erase(std::remove(others.begin(), others.end(), v), others.end());

    unsigned long long seed = 0x9e3779b97f4a7c15ull;
    for (int attempt = 0; attempt < 3; ++attempt) {
        std::map<uint32_t, Rational> point;
        for (auto w : others) {
            seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
            point[w.code()] = Rational(static_cast<long>(1 + (seed >> 33) % 19));
        }
        auto specialize = [&](const Poly& p) {
            std::vector<Rational> cs(p.degree_in(v) + 1, Rational(0));
            for (int k = 0; k <= p.degree_in(v); ++k)
                cs[k] = p.coefficient_of(v, k).eval_rational(point);
            while (!cs.empty() && cs.back() == 0) cs.pop_back();
            return cs;
        };
        auto ua = specialize(a);
        auto ub = specialize(b);
        if (static_cast<int>(ua.size()) != a.degree_in(v) + 1) continue;
        if (static_cast<int>(ub.size()) != b.degree_in(v) + 1) continue;
        // univariate Euclid over Q
        while (!ub.empty()) {
            while (ua.size() >= ub.size() && !ua.empty()) {
                Rational t = ua.back() / ub.back();
                size_t shift = ua.size() - ub.size();
                for (size_t i = 0; i < ub.size(); ++i) ua[shift + i] -= t * ub[i];
                while (!ua.empty() && ua.back() == 0) ua.pop_back();
            }
            std::swap(ua, ub);
        }
        if (ua.size() == 1) return true;
    }
    return false;
}

// remove both the polynomial content w.r.t. v and the rational content
Poly v_primitive(const Poly& p, VarId v) {
    if (p.is_zero()) return p;
    Poly c = gcd_many(coeffs_in(p, v));
    Poly q = p;
    if (!c.is_constant()) q = *q.divide_exact(c);
    return q.canonical();
}

}  // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b.canonical();
    if (b.is_zero()) return a.canonical();
    if (a.is_constant() || b.is_constant()) return Poly::constant(1);
    if (a.canonical() == b.canonical()) return a.canonical();

    auto va = a.variables();
    auto vb = b.variables();
    std::vector<VarId> common;
    std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(),
                          std::back_inserter(common));
    if (common.empty()) return Poly::constant(1);

    // main variable: smallest combined degree
    VarId v = common[0];
    int best = a.degree_in(v) + b.degree_in(v);
    for (auto w : common) {
        int d = a.degree_in(w) + b.degree_in(w);
        if (d < best) {
            best = d;
            v = w;
        }
    }

    auto ca = coeffs_in(a, v);
    auto cb = coeffs_in(b, v);
    Poly cont_a = gcd_many(ca);
    Poly cont_b = gcd_many(cb);
    Poly cont_g = poly_gcd(cont_a, cont_b);

    Poly pa = v_primitive(a, v);
    Poly pb = v_primitive(b, v);
    if (coprime_in_var_by_evaluation(pa, pb, v)) return cont_g;

    // primitive PRS in v with full canonicalization at every step
    Poly x0 = pa, x1 = pb;
    if (x0.degree_in(v) < x1.degree_in(v)) std::swap(x0, x1);
    while (true) {
        if (x1.is_zero()) break;
        if (x1.degree_in(v) == 0) return cont_g;  // coprime in v
        std::vector<Poly> r = pv_prem(coeffs_in(x0, v), coeffs_in(x1, v));
        Poly rp = from_coeffs(r, v);
        x0 = std::move(x1);
        x1 = rp.is_zero() ? rp : v_primitive(rp, v);
    }
    return (x0 * cont_g).canonical();
}

// ==================== multivariate factorization ====================

namespace {

void emit(Factorization& out, const Poly& f, int mult) {
    Poly c = f.canonical();
    for (auto& [g, m] : out.factors) {
        if (g == c) {
            m += mult;
            return;
        }
    }
    out.factors.emplace_back(c, mult);
}

// q canonical, non-constant, no monomial factors, no rational content
void factor_core(const Poly& q, int mult, Factorization& out);

void factor_kronecker(const Poly& q, int mult, Factorization& out) {
    auto vars = q.variables();
    std::vector<int> degs;
    std::vector<long> weights;
    long w = 1;
    for (auto v : vars) {
        degs.push_back(q.degree_in(v));
        weights.push_back(w);
        w *= degs.back() + 1;
        if (w > 2'000'000L) throw std::runtime_error("kronecker substitution degree too large");
    }
    // encode
    ZPoly image((size_t)w, Integer(0));
    for (auto& [m, c] : q.terms()) {
        long e = 0;
        for (size_t i = 0; i < vars.size(); ++i)
            e += (long)m.degree_in(vars[i]) * weights[i];
        // q is canonical => integer coefficients
        image[(size_t)e] = c.get_num();
    }
    ztrim(image);

    auto decode = [&](const ZPoly& u) {
        std::map<Monomial, Rational> acc;
        for (size_t e = 0; e < u.size(); ++e) {
            if (u[e] == 0) continue;
            long rest = (long)e;
            std::vector<std::pair<VarId, int>> exps;
            for (size_t i = vars.size(); i-- > 0;) {
                int digit = (int)(rest / weights[i]);
                rest %= weights[i];
                if (digit > 0) exps.emplace_back(vars[i], digit);
            }
            acc[Monomial(std::move(exps))] += Rational(u[e]);
        }
        return Poly::from_map(std::move(acc));
    };

    auto uni = zfactor(image);
    // expand multiplicities into a flat list
    std::vector<ZPoly> pieces;
    for (auto& [g, m] : uni)
        for (int i = 0; i < m; ++i) pieces.push_back(g);

    Poly rem = q;
    std::vector<int> live(pieces.size());
    std::iota(live.begin(), live.end(), 0);
    size_t take = 1;
    while (take <= live.size() && !rem.is_constant()) {
        bool restarted = false;
        std::vector<int> idx(take);
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            ZPoly prod{Integer(1)};
            for (size_t i = 0; i < take; ++i) prod = zmul(prod, pieces[live[idx[i]]]);
            Poly cand = decode(prod).canonical();
            if (!cand.is_constant()) {
                if (auto quot = rem.divide_exact(cand)) {
                    emit(out, cand, mult);
                    rem = quot->canonical();
                    std::vector<int> nl;
                    for (size_t i = 0, k2 = 0; i < live.size(); ++i) {
                        if (k2 < take && (int)i == idx[k2]) {
                            ++k2;
                            continue;
                        }
                        nl.push_back(live[i]);
                    }
                    live = std::move(nl);
                    restarted = true;
                    break;
                }
            }
            int pos = (int)take - 1;
            while (pos >= 0 && idx[pos] == (int)(live.size() - take + pos)) --pos;
            if (pos < 0) break;
            ++idx[pos];
            for (size_t i = (size_t)pos + 1; i < take; ++i) idx[i] = idx[i - 1] + 1;
        }
        if (!restarted) ++take;
    }
    if (!rem.is_constant()) emit(out, rem, mult);
}

void factor_core(const Poly& q, int mult, Factorization& out) {
    if (q.is_constant()) return;
    auto vars = q.variables();

    if (vars.size() == 1) {
        VarId v = vars[0];
        ZPoly f((size_t)q.degree_in(v) + 1, Integer(0));
        for (auto& [m, c] : q.terms()) f[(size_t)m.degree_in(v)] = c.get_num();
        for (auto& [g, m] : zfactor(f)) {
            std::map<Monomial, Rational> acc;
            for (size_t i = 0; i < g.size(); ++i)
                if (g[i] != 0) acc[Monomial::var(v, (int)i)] += Rational(g[i]);
            emit(out, Poly::from_map(std::move(acc)), mult * m);
        }
        return;
    }

    // a polynomial linear in some variable splits off the gcd of its two
    // coefficients; the cofactor is irreducible
    for (auto v : vars) {
        if (q.degree_in(v) != 1) continue;
        Poly g = q.partial(v);
        Poly h = q.eval_zero(v);
        Poly d = poly_gcd(g, h);
        if (d.is_constant()) {
            emit(out, q, mult);
        } else {
            factor_core(d.canonical(), mult, out);
            emit(out, q.divide_exact(d)->canonical(), mult);
        }
        return;
    }

    // repeated factors come out through gcd with a partial derivative
    for (auto v : vars) {
        Poly w = poly_gcd(q, q.partial(v));
        if (!w.is_constant()) {
            factor_core(w.canonical(), mult, out);
            factor_core(q.divide_exact(w)->canonical(), mult, out);
            return;
        }
    }

    factor_kronecker(q, mult, out);
}

}  // namespace

Factorization factor(const Poly& p, const FactorHints* hints) {
    if (p.is_zero()) throw std::invalid_argument("factor: zero polynomial");
    Factorization out;

    // monomial content
    Poly q = p;
    {
        auto vars = q.variables();
        for (auto v : vars) {
            int mn = q.degree_in(v);
            for (auto& [m, c] : q.terms()) mn = std::min(mn, m.degree_in(v));
            if (mn > 0) {
                emit(out, Poly::var(v), mn);
                q = *q.divide_exact(Poly::term(Monomial::var(v, mn), Rational(1)));
            }
        }
    }
    // rational content and sign
    {
        Rational c = q.content();
        if (q.leading().second < 0) c = -c;
        out.unit = c;
        q = q * (Rational(1) / c);
    }
    if (q.is_constant()) return out;

    if (hints) {
        bool progress = true;
        while (progress && !q.is_constant()) {
            progress = false;
            for (auto& h : hints->polys()) {
                while (true) {
                    auto quot = q.divide_exact(h);
                    if (!quot) break;
                    emit(out, h, 1);
                    Rational c = quot->content();
                    if (!quot->is_zero() && quot->leading().second < 0) c = -c;
                    out.unit *= c;
                    q = *quot * (Rational(1) / c);
                    progress = true;
                    if (q.is_constant()) break;
                }
                if (q.is_constant()) break;
            }
        }
        if (q.is_constant()) {
            out.unit *= q.is_zero() ? Rational(0) : q.leading().second;
            return out;
        }
    }

    factor_core(q, 1, out);
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

}  // namespace symred

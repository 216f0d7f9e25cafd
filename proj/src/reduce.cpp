#include "symred/reduce.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace symred {

// ==================== set plumbing ====================

PolySet normalize_set(std::vector<Poly> polys) {
    PolySet out;
    for (auto& p : polys) {
        if (p.is_zero()) continue;
        out.push_back(p.canonical());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

PolySet strip_trivial(PolySet s) {
    s.erase(std::remove_if(s.begin(), s.end(),
                           [](const Poly& p) { return p.is_constant() || p.is_monomial(); }),
            s.end());
    return s;
}

PolySet irreducible_parts(const PolySet& s, FactorHints* hints) {
    std::vector<Poly> out;
    for (auto& p : s) {
        if (p.is_zero()) continue;
        for (auto& [f, m] : factor(p, hints).factors) out.push_back(f);
    }
    return strip_trivial(normalize_set(std::move(out)));
}

bool all_linear_in(const PolySet& s, VarId v) {
    for (auto& p : s)
        if (p.degree_in(v) > 1) return false;
    return true;
}

std::vector<VarId> schwinger_variables(const PolySet& s) {
    std::vector<VarId> vs;
    for (auto& p : s)
        for (auto v : p.variables())
            if (v.kind == VarKind::schwinger) vs.push_back(v);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

const Factorization& FactorCache::factor_of(const Poly& p) {
    auto it = memo_.find(p);
    if (it != memo_.end()) return it->second;
    Factorization f = factor(p, &hints_);
    for (auto& [g, m] : f.factors) hints_.add(g);
    return memo_.emplace(p, std::move(f)).first->second;
}

// ==================== simple step ====================

std::optional<StepBreakdown> simple_step_full(const PolySet& s, VarId v,
                                              FactorCache& cache) {
    if (!all_linear_in(s, v)) return std::nullopt;
    StepBreakdown b;
    for (auto& f : s) {
        b.derivatives.push_back(f.partial(v));
        b.constants.push_back(f.eval_zero(v));
    }
    size_t n = s.size();
    std::vector<Poly> pool;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            Poly r = b.derivatives[i] * b.constants[j] - b.constants[i] * b.derivatives[j];
            if (r.is_zero()) continue;
            b.resultants.push_back(r.canonical());
        }
    pool = b.derivatives;
    pool.insert(pool.end(), b.constants.begin(), b.constants.end());
    pool.insert(pool.end(), b.resultants.begin(), b.resultants.end());
    std::vector<Poly> factors;
    for (auto& p : pool) {
        if (p.is_zero()) continue;
        for (auto& [g, m] : cache.factor_of(p.canonical()).factors) factors.push_back(g);
    }
    for (auto& g : factors) cache.hints().add(g);
    b.result = strip_trivial(normalize_set(std::move(factors)));
    return b;
}

std::optional<PolySet> simple_step(const PolySet& s, VarId v, FactorCache& cache) {
    auto b = simple_step_full(s, v, cache);
    if (!b) return std::nullopt;
    return std::move(b->result);
}

// ==================== compat states ====================

CompatState CompatState::complete(PolySet polys) {
    CompatState st;
    st.polys = std::move(polys);
    size_t n = st.polys.size();
    st.compat.assign(n, std::vector<bool>(n, true));
    for (size_t i = 0; i < n; ++i) st.compat[i][i] = false;
    return st;
}

size_t CompatState::edge_count() const {
    size_t c = 0;
    for (size_t i = 0; i < polys.size(); ++i)
        for (size_t j = i + 1; j < polys.size(); ++j)
            if (compat[i][j]) ++c;
    return c;
}

namespace {

constexpr int TUPLE_ZERO = -1;
constexpr int TUPLE_INF = -2;

using Tuple = std::pair<int, int>;  // unordered; normalized first<second

Tuple make_tuple(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

bool tuples_intersect(const Tuple& a, const Tuple& b) {
    return a.first == b.first || a.first == b.second || a.second == b.first ||
           a.second == b.second;
}

// non-trivial canonical factors of p
std::vector<Poly> nontrivial_factors(const Poly& p, FactorCache& cache) {
    std::vector<Poly> out;
    if (p.is_zero()) return out;
    for (auto& [g, m] : cache.factor_of(p.canonical()).factors)
        if (!g.is_constant() && !g.is_monomial()) out.push_back(g);
    return out;
}

}  // namespace

std::optional<CompatState> brown_step(const CompatState& st, VarId v, FactorCache& cache) {
    if (!all_linear_in(st.polys, v)) return std::nullopt;
    size_t n = st.polys.size();
    std::vector<Poly> gs(n), hs(n);
    for (size_t i = 0; i < n; ++i) {
        gs[i] = st.polys[i].partial(v);
        hs[i] = st.polys[i].eval_zero(v);
    }
    // provenance 2-tuples per canonical factor
    std::map<Poly, std::vector<Tuple>> tuples;
    auto attach = [&](const Poly& src, int a, int b) {
        for (auto& f : nontrivial_factors(src, cache)) {
            auto& ts = tuples[f];
            Tuple t = make_tuple(a, b);
            if (std::find(ts.begin(), ts.end(), t) == ts.end()) ts.push_back(t);
        }
    };
    for (size_t i = 0; i < n; ++i) {
        attach(gs[i], TUPLE_ZERO, static_cast<int>(i));
        attach(hs[i], static_cast<int>(i), TUPLE_INF);
        if (hs[i] == st.polys[i])  // f_i free of v
            attach(hs[i], TUPLE_ZERO, static_cast<int>(i));
    }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            if (!st.compat[i][j]) continue;
            Poly r = gs[i] * hs[j] - hs[i] * gs[j];
            attach(r, static_cast<int>(i), static_cast<int>(j));
        }

    CompatState out;
    for (auto& [f, ts] : tuples) out.polys.push_back(f);
    std::sort(out.polys.begin(), out.polys.end());
    size_t m = out.polys.size();
    out.compat.assign(m, std::vector<bool>(m, false));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j) {
            bool edge = false;
            for (auto& ta : tuples[out.polys[i]]) {
                for (auto& tb : tuples[out.polys[j]])
                    if (tuples_intersect(ta, tb)) {
                        edge = true;
                        break;
                    }
                if (edge) break;
            }
            out.compat[i][j] = out.compat[j][i] = edge;
        }
    return out;
}

std::optional<CompatState> panzer_step(const CompatState& st, VarId v, FactorCache& cache) {
    if (!all_linear_in(st.polys, v)) return std::nullopt;
    size_t n = st.polys.size();
    std::vector<Poly> gs(n), hs(n);
    for (size_t i = 0; i < n; ++i) {
        gs[i] = st.polys[i].partial(v);
        hs[i] = st.polys[i].eval_zero(v);
    }
    // brackets: [f,0] = g_f ; [f,inf] = h_f (g_f when h_f = 0);
    // [f_i,f_j] = g_i h_j - g_j h_i for compatible pairs
    std::map<Poly, std::vector<Tuple>> sources;
    auto attach = [&](const Poly& src, int a, int b) {
        for (auto& f : nontrivial_factors(src, cache)) {
            auto& ts = sources[f];
            Tuple t = make_tuple(a, b);
            if (std::find(ts.begin(), ts.end(), t) == ts.end()) ts.push_back(t);
        }
    };
    for (size_t i = 0; i < n; ++i) {
        attach(gs[i], static_cast<int>(i), TUPLE_ZERO);
        attach(hs[i].is_zero() ? gs[i] : hs[i], static_cast<int>(i), TUPLE_INF);
    }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            if (!st.compat[i][j]) continue;
            Poly r = gs[i] * hs[j] - gs[j] * hs[i];
            attach(r, static_cast<int>(i), static_cast<int>(j));
        }

    // extended compatibility over S + {0, inf}: sentinels are compatible
    // with everything including each other
    auto ext_compat = [&](int a, int b) {
        if (a == b) return false;
        if (a < 0 || b < 0) return true;
        return static_cast<bool>(st.compat[a][b]);
    };

    CompatState out;
    for (auto& [f, ts] : sources) out.polys.push_back(f);
    std::sort(out.polys.begin(), out.polys.end());
    size_t m = out.polys.size();
    out.compat.assign(m, std::vector<bool>(m, false));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j) {
            bool edge = false;
            // need p | [f,g], q | [g,h] with fg, gh, hf all compatible
            for (auto& sp : sources[out.polys[i]]) {
                for (auto& sq : sources[out.polys[j]]) {
                    int cand_f[2] = {sp.first, sp.second};
                    int cand_h[2] = {sq.first, sq.second};
                    for (int x = 0; x < 2 && !edge; ++x)
                        for (int y = 0; y < 2 && !edge; ++y) {
                            int mid_p = cand_f[x], other_p = cand_f[1 - x];
                            int mid_q = cand_h[y], other_q = cand_h[1 - y];
                            if (mid_p != mid_q) continue;
                            if (ext_compat(other_p, other_q)) edge = true;
                        }
                    if (edge) break;
                }
                if (edge) break;
            }
            out.compat[i][j] = out.compat[j][i] = edge;
        }
    return out;
}

// ==================== straight-line simple reduction ====================

namespace {

std::vector<VarId> complete_order(const PolySet& s, std::vector<VarId> order) {
    auto vars = schwinger_variables(s);
    std::set<uint32_t> seen;
    for (auto v : order) {
        if (v.kind != VarKind::schwinger)
            throw std::invalid_argument("reduction orders range over Schwinger variables");
        if (!seen.insert(v.code()).second)
            throw std::invalid_argument("duplicate variable in order");
        if (!std::binary_search(vars.begin(), vars.end(), v))
            throw std::invalid_argument("order mentions a variable not in the set: " +
                                        var_name(v));
    }
    for (auto v : vars)
        if (!seen.count(v.code())) order.push_back(v);
    return order;
}

}  // namespace

std::pair<bool, ReductionTrace> simply_reducible(const PolySet& s,
                                                 std::vector<VarId> order,
                                                 FactorCache& cache) {
    order = complete_order(s, order);
    ReductionTrace trace;
    PolySet cur = s;
    for (auto v : order) {
        StepInfo info;
        info.var = v;
        info.in_size = cur.size();
        auto b = simple_step_full(cur, v, cache);
        if (!b) {
            info.linear = false;
            trace.steps.push_back(std::move(info));
            return {false, trace};
        }
        info.s1 = b->derivatives.size();
        info.s2 = b->constants.size();
        info.s3 = b->resultants.size();
        info.out_size = b->result.size();
        info.set_after = b->result;
        trace.steps.push_back(std::move(info));
        cur = std::move(b->result);
    }
    trace.completed = true;
    return {true, trace};
}

// ==================== subset search ====================

std::string algo_name(Algo a) {
    switch (a) {
        case Algo::simple: return "simple";
        case Algo::fubini: return "fubini";
        case Algo::brown: return "brown";
        case Algo::panzer: return "panzer";
    }
    return "?";
}

std::optional<Algo> algo_from_name(const std::string& s) {
    if (s == "simple") return Algo::simple;
    if (s == "fubini") return Algo::fubini;
    if (s == "brown") return Algo::brown;
    if (s == "panzer") return Algo::panzer;
    return std::nullopt;
}

ReductionSearch::ReductionSearch(PolySet s, Algo algo)
    : algo_(algo), input_(normalize_set(std::move(s))) {
    base_ = CompatState::complete(strip_trivial(irreducible_parts(input_, &cache_.hints())));
    vars_ = schwinger_variables(input_);
    if (vars_.size() > 31) throw std::invalid_argument("too many Schwinger variables");
}

uint32_t ReductionSearch::mask_of(const std::vector<VarId>& subset) const {
    uint32_t m = 0;
    for (auto v : subset) {
        auto it = std::find(vars_.begin(), vars_.end(), v);
        if (it == vars_.end()) throw std::invalid_argument("variable not in the set");
        m |= 1u << (it - vars_.begin());
    }
    return m;
}

bool ReductionSearch::charge() {
    if (budget_ >= 0 && used_ >= budget_) {
        out_of_budget_ = true;
        return false;
    }
    if (deadline_ && (used_ & 15) == 0 &&
        std::chrono::steady_clock::now() > *deadline_) {
        out_of_budget_ = true;
        return false;
    }
    ++used_;
    return true;
}

std::optional<CompatState> ReductionSearch::compute_state(uint32_t mask) {
    if (mask == 0) return base_;
    std::optional<CompatState> acc;
    bool any_defined = false;
    for (size_t i = 0; i < vars_.size(); ++i) {
        if (!(mask & (1u << i))) continue;
        const auto& sub = state_for(mask & ~(1u << i));
        if (out_of_budget_) return std::nullopt;
        if (!sub) continue;
        if (!charge()) return std::nullopt;
        std::optional<CompatState> advanced;
        if (algo_ == Algo::brown) {
            advanced = brown_step(*sub, vars_[i], cache_);
        } else {
            auto ps = simple_step(sub->polys, vars_[i], cache_);
            if (ps) advanced = CompatState::complete(std::move(*ps));
        }
        if (!advanced) continue;
        if (!any_defined) {
            acc = std::move(advanced);
            any_defined = true;
            continue;
        }
        // intersect polynomial sets (canonical forms) and, for Brown,
        // compatibility edges
        CompatState merged;
        std::vector<size_t> ia, ib;
        for (size_t a = 0; a < acc->polys.size(); ++a) {
            auto it = std::lower_bound(advanced->polys.begin(), advanced->polys.end(),
                                       acc->polys[a]);
            if (it != advanced->polys.end() && *it == acc->polys[a]) {
                ia.push_back(a);
                ib.push_back(static_cast<size_t>(it - advanced->polys.begin()));
            }
        }
        merged.polys.reserve(ia.size());
        for (size_t k = 0; k < ia.size(); ++k) merged.polys.push_back(acc->polys[ia[k]]);
        size_t mcount = ia.size();
        merged.compat.assign(mcount, std::vector<bool>(mcount, false));
        for (size_t x = 0; x < mcount; ++x)
            for (size_t y = x + 1; y < mcount; ++y) {
                bool e = acc->compat[ia[x]][ia[y]] && advanced->compat[ib[x]][ib[y]];
                merged.compat[x][y] = merged.compat[y][x] = e;
            }
        acc = std::move(merged);
    }
    if (!any_defined) return std::nullopt;
    return acc;
}

const std::optional<CompatState>& ReductionSearch::state_for(uint32_t mask) {
    static const std::optional<CompatState> aborted = std::nullopt;
    auto it = memo_.find(mask);
    if (it != memo_.end()) return it->second;
    auto st = compute_state(mask);
    if (out_of_budget_) return aborted;  // never cache partial results
    return memo_.emplace(mask, std::move(st)).first->second;
}

bool ReductionSearch::viable(uint32_t mask) {
    if (mask == 0) return true;
    auto it = viable_.find(mask);
    if (it != viable_.end()) return it->second;
    bool ok = false;
    for (size_t i = 0; i < vars_.size() && !ok; ++i) {
        if (!(mask & (1u << i))) continue;
        uint32_t sub = mask & ~(1u << i);
        if (!viable(sub)) continue;
        const auto& st = state_for(sub);
        if (out_of_budget_) return false;
        if (st && all_linear_in(st->polys, vars_[i])) ok = true;
    }
    if (!out_of_budget_) viable_[mask] = ok ? 1 : 0;
    return ok;
}

std::string ReductionSearch::chain_key(const CompatState& st, uint32_t used) const {
    std::ostringstream os;
    os << used << "|";
    for (auto& p : st.polys) os << p.str() << ";";
    os << "|";
    for (size_t i = 0; i < st.polys.size(); ++i)
        for (size_t j = i + 1; j < st.polys.size(); ++j) os << (st.compat[i][j] ? '1' : '0');
    return os.str();
}

bool ReductionSearch::chain_search(const CompatState& st, uint32_t used,
                                   std::vector<VarId>& order) {
    if (used == (1u << vars_.size()) - 1) return true;
    std::string key = chain_key(st, used);
    auto it = chain_memo_.find(key);
    if (it != chain_memo_.end() && it->second == 0) return false;
    for (size_t i = 0; i < vars_.size(); ++i) {
        if (used & (1u << i)) continue;
        if (!all_linear_in(st.polys, vars_[i])) continue;
        if (!charge()) return false;
        std::optional<CompatState> next;
        if (algo_ == Algo::panzer) {
            next = panzer_step(st, vars_[i], cache_);
        } else {
            auto ps = simple_step(st.polys, vars_[i], cache_);
            if (ps) next = CompatState::complete(std::move(*ps));
        }
        if (!next) continue;
        order.push_back(vars_[i]);
        if (chain_search(*next, used | (1u << i), order)) return true;
        order.pop_back();
        if (out_of_budget_) return false;
    }
    chain_memo_[key] = 0;
    return false;
}

SearchOutcome ReductionSearch::run(long step_budget) {
    budget_ = step_budget;
    out_of_budget_ = false;
    SearchOutcome out;
    out.verdict = SearchOutcome::Verdict::not_reducible;

    if (algo_ == Algo::simple || algo_ == Algo::panzer) {
        // straight-line per-order search with state memoization. For the
        // simple algorithm the start set is the raw input (linearity of
        // the input itself gates the first step); for Panzer we start from
        // irreducible factors with the complete compatibility graph.
        CompatState start =
            algo_ == Algo::simple ? CompatState::complete(input_) : base_;
        std::vector<VarId> order;
        bool ok = chain_search(start, 0, order);
        out.steps_used = used_;
        if (ok) {
            out.verdict = SearchOutcome::Verdict::reducible;
            out.order = order;
        } else if (out_of_budget_) {
            out.verdict = SearchOutcome::Verdict::out_of_budget;
        }
        return out;
    }

    // breadth-first over subset sizes
    uint32_t full = vars_.empty() ? 0 : (1u << vars_.size()) - 1;
    if (viable(full)) {
        out.verdict = SearchOutcome::Verdict::reducible;
        // reconstruct a witness order front to back
        std::vector<uint32_t> chain{full};
        uint32_t cur = full;
        std::vector<VarId> rev;
        while (cur != 0) {
            for (size_t i = 0; i < vars_.size(); ++i) {
                if (!(cur & (1u << i))) continue;
                uint32_t sub = cur & ~(1u << i);
                const auto& st = state_for(sub);
                if (viable(sub) && st && all_linear_in(st->polys, vars_[i])) {
                    rev.push_back(vars_[i]);
                    cur = sub;
                    break;
                }
            }
        }
        out.order.assign(rev.rbegin(), rev.rend());
    } else if (out_of_budget_) {
        out.verdict = SearchOutcome::Verdict::out_of_budget;
    }
    out.steps_used = used_;
    return out;
}

bool ReductionSearch::reducible_with_order(const std::vector<VarId>& order) {
    auto full_order = complete_order(input_, order);
    if (algo_ == Algo::fubini || algo_ == Algo::brown) {
        uint32_t mask = 0;
        for (auto v : full_order) {
            size_t i = std::find(vars_.begin(), vars_.end(), v) - vars_.begin();
            const auto& st = state_for(mask);
            if (!st || !all_linear_in(st->polys, v)) return false;
            mask |= 1u << i;
        }
        return state_for(mask).has_value();
    }
    // simple / panzer: walk the chain
    CompatState cur = algo_ == Algo::simple ? CompatState::complete(input_) : base_;
    for (auto v : full_order) {
        std::optional<CompatState> next;
        if (algo_ == Algo::panzer) {
            next = panzer_step(cur, v, cache_);
        } else {
            auto ps = simple_step(cur.polys, v, cache_);
            if (ps) next = CompatState::complete(std::move(*ps));
        }
        if (!next) return false;
        cur = std::move(*next);
    }
    return true;
}

// ==================== memo spill ====================

std::string ReductionSearch::serialize_memo() const {
    std::ostringstream os;
    os << "symred-memo v1 " << algo_name(algo_) << " " << vars_.size() << "\n";
    for (auto& [mask, st] : memo_) {
        os << mask;
        if (!st) {
            os << " undefined\n";
            continue;
        }
        os << " defined " << st->polys.size() << "\n";
        for (auto& p : st->polys) os << p.str() << "\n";
        for (size_t i = 0; i < st->polys.size(); ++i) {
            for (size_t j = 0; j < st->polys.size(); ++j)
                os << (st->compat[i][j] ? '1' : '0');
            os << "\n";
        }
    }
    return os.str();
}

void ReductionSearch::load_memo(const std::string& text) {
    std::istringstream is(text);
    std::string magic, ver, alg;
    size_t nvars = 0;
    is >> magic >> ver >> alg >> nvars;
    if (magic != "symred-memo" || alg != algo_name(algo_) || nvars != vars_.size())
        throw std::invalid_argument("memo file does not match this reduction");
    std::string line;
    std::getline(is, line);
    uint32_t mask;
    std::string kind;
    while (is >> mask >> kind) {
        if (kind == "undefined") {
            memo_[mask] = std::nullopt;
            continue;
        }
        size_t n;
        is >> n;
        std::getline(is, line);
        CompatState st;
        for (size_t i = 0; i < n; ++i) {
            std::getline(is, line);
            st.polys.push_back(parse_poly(line).canonical());
        }
        st.compat.assign(n, std::vector<bool>(n, false));
        for (size_t i = 0; i < n; ++i) {
            std::getline(is, line);
            for (size_t j = 0; j < n && j < line.size(); ++j)
                st.compat[i][j] = line[j] == '1';
        }
        memo_[mask] = std::move(st);
    }
}

// ==================== wrappers ====================

SearchOutcome fubini_reducible(const PolySet& s, long budget) {
    ReductionSearch r(s, Algo::fubini);
    return r.run(budget);
}

SearchOutcome brown_reducible(const PolySet& s, long budget) {
    ReductionSearch r(s, Algo::brown);
    return r.run(budget);
}

SearchOutcome panzer_reducible(const PolySet& s, long budget) {
    ReductionSearch r(s, Algo::panzer);
    return r.run(budget);
}

SearchOutcome simple_reducible_any_order(const PolySet& s, long budget) {
    ReductionSearch r(s, Algo::simple);
    return r.run(budget);
}

std::optional<PolySet> fubini_set(ReductionSearch& search, const std::vector<VarId>& subset) {
    const auto& st = search.state_for(search.mask_of(subset));
    if (!st) return std::nullopt;
    return st->polys;
}

ReductionTrace replay_order(const PolySet& s, const std::vector<VarId>& order, Algo algo) {
    ReductionTrace trace;
    if (algo == Algo::simple) {
        FactorCache cache;
        return simply_reducible(s, order, cache).second;
    }
    ReductionSearch search(s, algo);
    uint32_t mask = 0;
    for (auto v : order) {
        StepInfo info;
        info.var = v;
        const auto& before = search.state_for(mask);
        if (!before || !all_linear_in(before->polys, v)) {
            info.linear = before.has_value();
            trace.steps.push_back(std::move(info));
            return trace;
        }
        info.in_size = before->polys.size();
        mask = search.mask_of({v}) | mask;
        const auto& after = search.state_for(mask);
        if (!after) {
            trace.steps.push_back(std::move(info));
            return trace;
        }
        info.out_size = after->polys.size();
        info.set_after = after->polys;
        trace.steps.push_back(std::move(info));
    }
    trace.completed = true;
    return trace;
}

}  // namespace symred

#include "symred/minors.hpp"

#include <algorithm>
#include <queue>

#include "symred/symanzik.hpp"

namespace symred {

// ==================== model verification ====================

bool verify_model(const LabeledGraph& g, const LabeledGraph& pattern,
                  const MinorModel& model, const std::map<char, int>* placement,
                  const std::map<char, int>* roots_in_g) {
    // branch sets: nonempty, pairwise disjoint, connected
    std::set<int> used;
    for (int pv : pattern.vertices()) {
        auto it = model.branch.find(pv);
        if (it == model.branch.end() || it->second.empty()) return false;
        for (int v : it->second) {
            if (!g.has_vertex(v)) return false;
            if (!used.insert(v).second) return false;
        }
        LabeledGraph sub = g.induced(it->second);
        if (!sub.is_connected()) return false;
    }
    // every pattern edge realized
    for (auto& pe : pattern.edges()) {
        if (pe.is_loop()) continue;
        const std::set<int>& bu = model.branch.at(pe.u);
        const std::set<int>& bv = model.branch.at(pe.v);
        bool ok = false;
        for (auto& e : g.edges()) {
            if ((bu.count(e.u) && bv.count(e.v)) || (bu.count(e.v) && bv.count(e.u))) {
                ok = true;
                break;
            }
        }
        if (!ok) return false;
    }
    // roots land in their mapped branch sets
    if (placement && roots_in_g) {
        for (auto& [label, pv] : *placement) {
            auto rv = roots_in_g->find(label);
            if (rv == roots_in_g->end()) return false;
            if (!model.branch.at(pv).count(rv->second)) return false;
        }
    }
    return true;
}

// ==================== branch-set search ====================

namespace {

struct BranchSearch {
    const LabeledGraph& g;
    const LabeledGraph& pattern;
    std::vector<int> gv, pv;
    std::vector<std::vector<bool>> gadj, padj;
    std::vector<int> assign;   // g index -> pattern index, -1 discard, -2 open
    std::vector<int> forced;   // g index -> pattern index or -2

    BranchSearch(const LabeledGraph& g_, const LabeledGraph& p_) : g(g_), pattern(p_) {
        gv = g.vertices();
        pv = pattern.vertices();
        size_t n = gv.size(), k = pv.size();
        gadj.assign(n, std::vector<bool>(n, false));
        padj.assign(k, std::vector<bool>(k, false));
        std::map<int, int> gi, pi;
        for (size_t i = 0; i < n; ++i) gi[gv[i]] = static_cast<int>(i);
        for (size_t i = 0; i < k; ++i) pi[pv[i]] = static_cast<int>(i);
        for (auto& e : g.edges())
            if (!e.is_loop()) gadj[gi[e.u]][gi[e.v]] = gadj[gi[e.v]][gi[e.u]] = true;
        for (auto& e : pattern.edges())
            if (!e.is_loop()) padj[pi[e.u]][pi[e.v]] = padj[pi[e.v]][pi[e.u]] = true;
        assign.assign(n, -2);
        forced.assign(n, -2);
    }

    int g_index(int vertex) const {
        return static_cast<int>(std::lower_bound(gv.begin(), gv.end(), vertex) - gv.begin());
    }
    int p_index(int vertex) const {
        return static_cast<int>(std::lower_bound(pv.begin(), pv.end(), vertex) - pv.begin());
    }

    bool feasible(size_t pos) const {
        size_t n = gv.size(), k = pv.size();
        // open vertices may still join any branch
        size_t empties = 0;
        std::vector<std::vector<int>> branch(k);
        for (size_t i = 0; i < n; ++i)
            if (assign[i] >= 0) branch[assign[i]].push_back(static_cast<int>(i));
        for (size_t b = 0; b < k; ++b)
            if (branch[b].empty()) ++empties;
        if (empties > n - pos) return false;

        // each started branch must be connectable through open vertices
        for (size_t b = 0; b < k; ++b) {
            if (branch[b].size() < 2) continue;
            std::vector<bool> allowed(n, false), seen(n, false);
            for (int i : branch[b]) allowed[i] = true;
            for (size_t i = pos; i < n; ++i)
                if (assign[i] == -2) allowed[i] = true;
            std::queue<int> q;
            q.push(branch[b][0]);
            seen[branch[b][0]] = true;
            while (!q.empty()) {
                int x = q.front();
                q.pop();
                for (size_t y = 0; y < n; ++y)
                    if (allowed[y] && !seen[y] && gadj[x][y]) {
                        seen[y] = true;
                        q.push(static_cast<int>(y));
                    }
            }
            for (int i : branch[b])
                if (!seen[i]) return false;
        }

        // pattern edges must stay realizable
        for (size_t a = 0; a < k; ++a)
            for (size_t b = a + 1; b < k; ++b) {
                if (!padj[a][b]) continue;
                bool possible = false;
                for (size_t x = 0; x < n && !possible; ++x) {
                    bool x_in_a = assign[x] == static_cast<int>(a) ||
                                  (assign[x] == -2 && x >= pos);
                    if (!x_in_a) continue;
                    for (size_t y = 0; y < n && !possible; ++y) {
                        if (x == y || !gadj[x][y]) continue;
                        bool y_in_b = assign[y] == static_cast<int>(b) ||
                                      (assign[y] == -2 && y >= pos);
                        if (y_in_b) possible = true;
                    }
                }
                if (!possible) return false;
            }
        return true;
    }

    bool search(size_t pos, MinorModel& out) {
        size_t n = gv.size(), k = pv.size();
        if (pos == n) {
            MinorModel model;
            for (size_t i = 0; i < n; ++i)
                if (assign[i] >= 0) model.branch[pv[assign[i]]].insert(gv[i]);
            for (size_t b = 0; b < k; ++b)
                if (!model.branch.count(pv[b])) return false;
            // exact witnesses and connectivity
            for (auto& pe : pattern.edges()) {
                if (pe.is_loop()) continue;
                auto& bu = model.branch[pe.u];
                auto& bv = model.branch[pe.v];
                bool found = false;
                for (auto& e : g.edges()) {
                    if (e.is_loop()) continue;
                    if ((bu.count(e.u) && bv.count(e.v)) ||
                        (bu.count(e.v) && bv.count(e.u))) {
                        model.witness[pe.id] = {e.u, e.v};
                        found = true;
                        break;
                    }
                }
                if (!found) return false;
            }
            for (auto& [pvid, bs] : model.branch)
                if (!g.induced(bs).is_connected()) return false;
            out = std::move(model);
            return true;
        }
        std::vector<int> options;
        if (forced[pos] != -2) {
            options.push_back(forced[pos]);
        } else {
            for (size_t b = 0; b < k; ++b) options.push_back(static_cast<int>(b));
            options.push_back(-1);
        }
        for (int opt : options) {
            assign[pos] = opt;
            if (feasible(pos + 1) && search(pos + 1, out)) return true;
        }
        assign[pos] = -2;
        return false;
    }
};

}  // namespace

std::optional<MinorModel> has_minor(const LabeledGraph& g, const LabeledGraph& pattern) {
    if (g.vertex_count() < pattern.vertex_count()) return std::nullopt;
    BranchSearch bs(g, pattern);
    MinorModel model;
    if (bs.search(0, model)) return model;
    return std::nullopt;
}

std::optional<MinorModel> has_rooted_minor(const LabeledGraph& g,
                                           const RootedMinorSpec& spec) {
    std::map<char, int> roots_in_g;
    for (char label : spec.roots) {
        auto v = g.terminal_vertex(label);
        if (!v)
            throw std::invalid_argument(std::string("missing terminal '") + label +
                                        "' in graph");
        roots_in_g[label] = *v;
    }
    if (g.vertex_count() < spec.pattern.vertex_count()) return std::nullopt;
    RootedMinorSpec reduced = reduce_placements(spec);
    for (auto& placement : reduced.placements) {
        BranchSearch bs(g, spec.pattern);
        bool clash = false;
        for (auto& [label, pvert] : placement) {
            int gi = bs.g_index(roots_in_g[label]);
            int pi = bs.p_index(pvert);
            if (bs.forced[gi] != -2 && bs.forced[gi] != pi) {
                clash = true;
                break;
            }
            bs.forced[gi] = pi;
        }
        if (clash) continue;
        MinorModel model;
        if (bs.search(0, model)) {
            if (!verify_model(g, spec.pattern, model, &placement, &roots_in_g))
                throw std::logic_error("minor search returned an invalid model");
            return model;
        }
    }
    return std::nullopt;
}

// ==================== placement families ====================

namespace {

std::vector<std::map<char, int>> injections(const std::string& labels,
                                            const std::vector<int>& targets) {
    std::vector<std::map<char, int>> out;
    std::vector<int> perm(targets);
    std::sort(perm.begin(), perm.end());
    // all injective assignments labels -> targets
    std::vector<int> idx(labels.size(), 0);
    std::function<void(size_t, std::vector<int>&, std::map<char, int>&)> rec =
        [&](size_t pos, std::vector<int>& used, std::map<char, int>& cur) {
            if (pos == labels.size()) {
                out.push_back(cur);
                return;
            }
            for (size_t t = 0; t < perm.size(); ++t) {
                if (used[t]) continue;
                used[t] = 1;
                cur[labels[pos]] = perm[t];
                rec(pos + 1, used, cur);
                cur.erase(labels[pos]);
                used[t] = 0;
            }
        };
    std::vector<int> used(perm.size(), 0);
    std::map<char, int> cur;
    rec(0, used, cur);
    return out;
}

std::vector<std::map<int, int>> all_automorphisms(const LabeledGraph& g) {
    std::vector<int> vs = g.vertices();
    size_t n = vs.size();
    std::map<int, int> idx;
    for (size_t i = 0; i < n; ++i) idx[vs[i]] = static_cast<int>(i);
    std::vector<std::vector<int>> adj(n, std::vector<int>(n, 0));
    for (auto& e : g.edges()) {
        if (e.is_loop()) continue;
        adj[idx[e.u]][idx[e.v]]++;
        adj[idx[e.v]][idx[e.u]]++;
    }
    std::vector<std::map<int, int>> autos;
    std::vector<int> map_(n, -1);
    std::vector<bool> used(n, false);
    std::function<void(size_t)> rec = [&](size_t pos) {
        if (pos == n) {
            std::map<int, int> a;
            for (size_t i = 0; i < n; ++i) a[vs[i]] = vs[map_[i]];
            autos.push_back(std::move(a));
            return;
        }
        for (size_t j = 0; j < n; ++j) {
            if (used[j]) continue;
            bool ok = true;
            for (size_t k = 0; k < pos && ok; ++k)
                if (adj[pos][k] != adj[j][map_[k]]) ok = false;
            if (!ok) continue;
            map_[pos] = static_cast<int>(j);
            used[j] = true;
            rec(pos + 1);
            used[j] = false;
        }
    };
    rec(0);
    return autos;
}

}  // namespace

RootedMinorSpec reduce_placements(RootedMinorSpec spec) {
    auto autos = all_automorphisms(spec.pattern);
    if (autos.size() <= 1) return spec;
    std::set<std::vector<int>> canon_seen;
    std::vector<std::map<char, int>> kept;
    for (auto& placement : spec.placements) {
        std::vector<int> best;
        for (auto& sigma : autos) {
            std::vector<int> key;
            for (char l : spec.roots) key.push_back(sigma.at(placement.at(l)));
            if (best.empty() || key < best) best = key;
        }
        if (canon_seen.insert(best).second) kept.push_back(placement);
    }
    spec.placements = std::move(kept);
    return spec;
}

RootedMinorSpec k4x() {
    RootedMinorSpec s;
    s.name = "k4x";
    s.pattern = complete_graph(4);
    s.roots = "abcd";
    s.placements = injections("abcd", {1, 2, 3, 4});
    return s;
}

RootedMinorSpec w4x() {
    RootedMinorSpec s;
    s.name = "w4x";
    s.pattern = wheel_graph(4);
    s.roots = "abcd";
    s.placements = injections("abcd", {1, 2, 3, 4});  // distinct rim vertices
    return s;
}

RootedMinorSpec k24x() {
    RootedMinorSpec s;
    s.name = "k24x";
    s.pattern = complete_bipartite(2, 4);
    s.roots = "abcd";
    s.placements = injections("abcd", {3, 4, 5, 6});  // the 4-side
    return s;
}

RootedMinorSpec lx() {
    RootedMinorSpec s;
    s.name = "lx";
    LabeledGraph L;
    for (int i = 1; i <= 8; ++i) L.add_vertex(i);
    int E[][2] = {{1, 2}, {1, 5}, {2, 7}, {2, 8}, {2, 3}, {3, 4},
                  {4, 5}, {4, 7}, {5, 6}, {6, 7}, {6, 8}, {7, 8}};
    for (auto& e : E) L.add_edge(e[0], e[1]);
    s.pattern = L;
    s.roots = "abcd";
    s.placements = injections("abcd", {1, 3, 4, 5});
    return s;
}

RootedMinorSpec k22x() {
    RootedMinorSpec s;
    s.name = "k22x";
    s.pattern = complete_bipartite(2, 2);  // side {1,2}, side {3,4}
    s.roots = "abcd";
    // a,b onto one side, c,d onto the other
    for (auto& ab : injections("ab", {1, 2}))
        for (auto& cd : injections("cd", {3, 4})) {
            std::map<char, int> m = ab;
            m.insert(cd.begin(), cd.end());
            s.placements.push_back(m);
        }
    return s;
}

RootedMinorSpec k23x() {
    RootedMinorSpec s;
    s.name = "k23x";
    s.pattern = complete_bipartite(2, 3);
    s.roots = "abc";
    s.placements = injections("abc", {3, 4, 5});
    return s;
}

RootedMinorSpec k31x() {
    RootedMinorSpec s;
    s.name = "k31x";
    s.pattern = complete_bipartite(1, 3);
    s.roots = "abc";
    s.placements = injections("abc", {2, 3, 4});
    return s;
}

RootedMinorSpec k33x() {
    RootedMinorSpec s;
    s.name = "k33x";
    s.pattern = complete_bipartite(3, 3);
    s.roots = "abc";
    s.placements = injections("abc", {1, 2, 3});
    return s;
}

RootedMinorSpec k3x() {
    RootedMinorSpec s;
    s.name = "k3x";
    s.pattern = complete_graph(3);
    s.roots = "abc";
    s.placements = injections("abc", {1, 2, 3});
    return s;
}

// ==================== disjoint paths ====================

bool two_disjoint_paths(const LabeledGraph& g, int s1, int t1, int s2, int t2) {
    // enumerate simple s1-t1 paths avoiding {s2,t2}; check s2-t2 survives
    std::vector<int> vs = g.vertices();
    std::set<int> onpath{s1};
    bool found = false;
    std::function<void(int)> dfs = [&](int cur) {
        if (found) return;
        if (cur == t1) {
            std::set<int> keep;
            for (int v : vs)
                if (!onpath.count(v)) keep.insert(v);
            LabeledGraph rest = g.induced(keep);
            if (rest.has_vertex(s2) && rest.has_vertex(t2) &&
                rest.component_of(s2).count(t2))
                found = true;
            return;
        }
        for (int nb : g.neighbors(cur)) {
            if (onpath.count(nb) || nb == s2 || nb == t2) continue;
            onpath.insert(nb);
            dfs(nb);
            onpath.erase(nb);
            if (found) return;
        }
    };
    if (s1 == t1 || s2 == t2) return false;
    dfs(s1);
    return found;
}

bool k22_path_criterion(const LabeledGraph& g, const std::map<char, int>& roots) {
    int a = roots.at('a'), b = roots.at('b'), c = roots.at('c'), d = roots.at('d');
    return two_disjoint_paths(g, a, c, b, d) && two_disjoint_paths(g, a, d, b, c);
}

// ==================== scanning / certification ====================

ScanReport forbidden_minor_scan(const LabeledGraph& g, const std::string& mode,
                                bool include_k6_candidate) {
    ScanReport rep;
    if (mode != "psi" && mode != "psiphi")
        throw std::invalid_argument("scan mode must be psi or psiphi");
    if (mode == "psi" && !g.terminals().empty())
        throw std::invalid_argument("psi mode expects a graph without terminals");
    if (mode == "psiphi" && g.terminals().size() != 4)
        throw std::invalid_argument("psiphi mode expects four terminals");

    auto try_plain = [&](const std::string& name, const LabeledGraph& pattern) {
        if (auto m = has_minor(g, pattern)) rep.hits.push_back({name, false, *m});
    };
    try_plain("k34", complete_bipartite(3, 4));
    try_plain("v8e", wagner_plus_02());
    if (include_k6_candidate) try_plain("k6", complete_graph(6));

    if (mode == "psiphi") {
        for (auto spec : {k4x(), w4x(), k24x(), lx()}) {
            if (auto m = has_rooted_minor(g, spec))
                rep.hits.push_back({spec.name, true, *m});
        }
    }
    return rep;
}

bool CertifyReport::is_forbidden_minor() const {
    if (self_timed_out || self_reducible) return false;
    for (auto& r : reductions)
        if (r.timed_out || !r.reducible) return false;
    return true;
}

CertifyReport certify_forbidden(const LabeledGraph& g, const Kinematics& kin,
                                const Reducer& reduce) {
    CertifyReport rep;
    Poly p = psi(g);
    Poly f = phi(g, kin);
    PolySet s = normalize_set({p, f});

    auto outcome = reduce(s);
    rep.self_timed_out = outcome.verdict == SearchOutcome::Verdict::out_of_budget;
    rep.self_reducible = outcome.verdict == SearchOutcome::Verdict::reducible;

    for (auto& e : g.edges()) {
        VarId xe = schwinger_var(e.id);
        {
            CertifyEntry entry;
            entry.operation = "delete x" + std::to_string(e.id);
            auto del = reduce(normalize_set({p.partial(xe), f.partial(xe)}));
            entry.reducible = del.verdict == SearchOutcome::Verdict::reducible;
            entry.timed_out = del.verdict == SearchOutcome::Verdict::out_of_budget;
            rep.reductions.push_back(entry);
        }
        if (!e.is_loop()) {
            CertifyEntry entry;
            entry.operation = "contract x" + std::to_string(e.id);
            auto con = reduce(normalize_set({p.eval_zero(xe), f.eval_zero(xe)}));
            entry.reducible = con.verdict == SearchOutcome::Verdict::reducible;
            entry.timed_out = con.verdict == SearchOutcome::Verdict::out_of_budget;
            rep.reductions.push_back(entry);
        }
    }
    return rep;
}

}  // namespace symred

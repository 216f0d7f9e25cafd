#include "symred/structure.hpp"

#include <algorithm>
#include <functional>

namespace symred {

// ==================== connectivity reductions ====================

namespace {

struct Placement {
    std::vector<std::pair<int, char>> strictA, strictB;  // off-boundary terminals
    std::vector<std::pair<int, char>> on_boundary;
};

Placement classify(const LabeledGraph& g, const Separation& sep) {
    Placement p;
    auto bd = sep.boundary();
    for (auto& [v, l] : g.terminals()) {
        if (bd.count(v))
            p.on_boundary.emplace_back(v, l);
        else if (sep.sideA.count(v))
            p.strictA.emplace_back(v, l);
        else
            p.strictB.emplace_back(v, l);
    }
    return p;
}

LabeledGraph side_graph(const LabeledGraph& g, const std::set<int>& side,
                        bool join_boundary, const std::set<int>& bd) {
    LabeledGraph h = g.induced(side);
    if (join_boundary && bd.size() == 2) {
        auto it = bd.begin();
        int u = *it++;
        int v = *it;
        h = h.with_edge(u, v);
    }
    return h;
}

// strip all terminal labels, then apply the given labelling
LabeledGraph relabel(const LabeledGraph& g, const std::map<char, int>& labels) {
    LabeledGraph h;
    for (int v : g.vertices()) h.add_vertex(v);
    for (auto& e : g.edges()) h.add_edge_with_id(e.id, e.u, e.v, e.massive);
    for (auto& [l, v] : labels) h.set_terminal(v, l);
    return h;
}

std::map<char, int> current_labels(const LabeledGraph& g) {
    std::map<char, int> m;
    for (auto& [v, l] : g.terminals()) m[l] = v;
    return m;
}

}  // namespace

ReductionOutcome cut_vertex_reduce(const LabeledGraph& g, const Separation& sep) {
    ReductionOutcome out;
    auto bd = sep.boundary();
    if (bd.size() != 1) throw std::invalid_argument("cut_vertex_reduce needs a 1-separation");
    if (!sep.valid_for(g)) throw std::invalid_argument("invalid separation");
    int v = *bd.begin();
    Placement p = classify(g, sep);
    bool v_terminal = g.terminal_label(v).has_value();

    // orient: strict side A carries at least as many terminals
    if (p.strictB.size() > p.strictA.size()) {
        Separation flipped{sep.sideB, sep.sideA};
        return cut_vertex_reduce(g, flipped);
    }

    if (p.strictB.empty()) {
        // all terminals on one side (the cut vertex may be one of them)
        ReducedInstance inst;
        inst.graph = g.induced(sep.sideA);
        inst.derivation = "cut-all-one-side";
        out.kind = ReductionOutcome::Kind::reduced;
        out.instances.push_back(std::move(inst));
        return out;
    }
    if (v_terminal) {
        out.kind = ReductionOutcome::Kind::no_minor;
        out.detail = "terminal cut vertex separates the other terminals";
        return out;
    }
    if (p.strictA.size() == 3 && p.strictB.size() == 1) {
        // re-root the far terminal on the cut vertex
        ReducedInstance inst;
        auto labels = current_labels(g);
        char far = p.strictB[0].second;
        labels[far] = v;
        inst.graph = relabel(g.induced(sep.sideA), labels);
        inst.derivation = "cut-reroot";
        inst.relabeling[far] = far;
        out.kind = ReductionOutcome::Kind::reduced;
        out.instances.push_back(std::move(inst));
        return out;
    }
    if (p.strictA.size() == 2 && p.strictB.size() == 2) {
        out.kind = ReductionOutcome::Kind::no_minor;
        out.detail = "two terminals on each side of a cut vertex";
        return out;
    }
    out.kind = ReductionOutcome::Kind::not_applicable;
    out.detail = "fewer than four terminals placed";
    return out;
}

ReductionOutcome two_sep_reduce(const LabeledGraph& g, const Separation& sep) {
    ReductionOutcome out;
    auto bd = sep.boundary();
    if (bd.size() != 2) throw std::invalid_argument("two_sep_reduce needs a 2-separation");
    if (!sep.valid_for(g)) throw std::invalid_argument("invalid separation");
    auto it = bd.begin();
    int u = *it++;
    int v = *it;
    Placement p = classify(g, sep);

    auto in_side = [&](const std::set<int>& side) {
        for (auto& [tv, l] : g.terminals())
            if (!side.count(tv)) return false;
        return true;
    };
    if (in_side(sep.sideA) || in_side(sep.sideB)) {
        const std::set<int>& side = in_side(sep.sideA) ? sep.sideA : sep.sideB;
        ReducedInstance inst;
        inst.graph = side_graph(g, side, true, bd);
        inst.derivation = "2sep-all-one-side";
        out.kind = ReductionOutcome::Kind::reduced;
        out.instances.push_back(std::move(inst));
        return out;
    }

    size_t nbd = p.on_boundary.size();
    if (nbd == 2 && !p.strictA.empty() && !p.strictB.empty()) {
        out.kind = ReductionOutcome::Kind::no_minor;
        out.detail = "both cut vertices are terminals and the rest split";
        return out;
    }
    if (nbd == 1) {
        // one terminal in the cut; orient so that side B holds two
        if (p.strictA.size() == 2 && p.strictB.size() == 1) {
            Separation flipped{sep.sideB, sep.sideA};
            return two_sep_reduce(g, flipped);
        }
        if (p.strictA.size() == 1 && p.strictB.size() == 2) {
            ReducedInstance inst;
            auto labels = current_labels(g);
            char far = p.strictA[0].second;
            int boundary_terminal = p.on_boundary[0].first;
            int other = boundary_terminal == u ? v : u;
            labels[far] = other;
            inst.graph = relabel(side_graph(g, sep.sideB, true, bd), labels);
            inst.derivation = "2sep-one-terminal-in-cut";
            inst.relabeling[far] = far;
            out.kind = ReductionOutcome::Kind::reduced;
            out.instances.push_back(std::move(inst));
            return out;
        }
        out.kind = ReductionOutcome::Kind::not_applicable;
        out.detail = "unsupported placement around a terminal cut vertex";
        return out;
    }
    if (nbd == 0 && p.strictA.size() == 2 && p.strictB.size() == 2) {
        // either side may host the minor with the far pair re-rooted on the cut
        out.kind = ReductionOutcome::Kind::reduced;
        for (int side = 0; side < 2; ++side) {
            const std::set<int>& keep = side == 0 ? sep.sideA : sep.sideB;
            auto& far = side == 0 ? p.strictB : p.strictA;
            ReducedInstance inst;
            auto labels = current_labels(g);
            labels[far[0].second] = u;
            labels[far[1].second] = v;
            inst.graph = relabel(side_graph(g, keep, true, bd), labels);
            inst.derivation = "2sep-two-each-side";
            inst.relabeling[far[0].second] = far[0].second;
            inst.relabeling[far[1].second] = far[1].second;
            out.instances.push_back(std::move(inst));
        }
        return out;
    }
    if (nbd == 0 && (p.strictA.size() == 1 || p.strictB.size() == 1)) {
        // 1+3 split: the lone terminal contracts onto either cut vertex
        const auto& lone = p.strictA.size() == 1 ? p.strictA : p.strictB;
        const std::set<int>& keep = p.strictA.size() == 1 ? sep.sideB : sep.sideA;
        out.kind = ReductionOutcome::Kind::reduced;
        for (int w : {u, v}) {
            ReducedInstance inst;
            auto labels = current_labels(g);
            labels[lone[0].second] = w;
            inst.graph = relabel(side_graph(g, keep, true, bd), labels);
            inst.derivation = "2sep-one-terminal-far-side";
            inst.relabeling[lone[0].second] = lone[0].second;
            out.instances.push_back(std::move(inst));
        }
        return out;
    }
    out.kind = ReductionOutcome::Kind::not_applicable;
    out.detail = "terminal placement matches no reduction lemma";
    return out;
}

// ==================== cycles through the roots ====================

namespace {

std::vector<int> canonical_cycle(std::vector<int> cyc) {
    // rotate to the minimal vertex, then pick the smaller direction
    size_t n = cyc.size();
    size_t mi = 0;
    for (size_t i = 1; i < n; ++i)
        if (cyc[i] < cyc[mi]) mi = i;
    std::vector<int> fwd(n), bwd(n);
    for (size_t i = 0; i < n; ++i) {
        fwd[i] = cyc[(mi + i) % n];
        bwd[i] = cyc[(mi + n - i) % n];
    }
    return std::min(fwd, bwd);
}

}  // namespace

std::optional<std::vector<int>> cycle_through_roots(const LabeledGraph& g) {
    auto terminals = g.terminals();
    if (terminals.empty()) throw std::invalid_argument("graph has no terminals");
    std::set<int> roots;
    for (auto& [v, l] : terminals) roots.insert(v);
    int start = *roots.begin();

    std::optional<std::vector<int>> best;
    std::vector<int> path{start};
    std::set<int> onpath{start};
    long nodes = 0;
    const long cap = 20'000'000;

    std::function<void(int)> dfs = [&](int cur) {
        if (++nodes > cap) return;
        for (int nb : g.neighbors(cur)) {
            if (nb == start && path.size() >= 3) {
                bool all = true;
                for (int r : roots)
                    if (!onpath.count(r)) {
                        all = false;
                        break;
                    }
                if (all) {
                    auto canon = canonical_cycle(path);
                    if (!best || canon < *best) best = canon;
                }
                continue;
            }
            if (onpath.count(nb)) continue;
            path.push_back(nb);
            onpath.insert(nb);
            dfs(nb);
            path.pop_back();
            onpath.erase(nb);
        }
    };
    dfs(start);
    return best;
}

// ==================== obstructions 1 and 2 ====================

namespace {

struct OrientedSep {
    std::set<int> A, B, bd;
    int roots_in_A_strict = 0;
    int roots_in_bd = 0;
};

bool nested(const OrientedSep& s, const OrientedSep& t) {
    // s before t in a chain: A_s subseteq A_t, B_t subseteq B_s
    return std::includes(t.A.begin(), t.A.end(), s.A.begin(), s.A.end()) &&
           std::includes(s.B.begin(), s.B.end(), t.B.begin(), t.B.end());
}

bool boundaries_touch(const OrientedSep& s, const OrientedSep& t) {
    for (int x : s.bd)
        if (t.bd.count(x)) return true;
    return false;
}

}  // namespace

std::optional<Obstruction> find_obstruction(const LabeledGraph& g,
                                            const std::vector<int>& cycle) {
    std::set<int> cyc(cycle.begin(), cycle.end());
    std::set<int> roots;
    for (auto& [v, l] : g.terminals()) roots.insert(v);

    std::vector<OrientedSep> seps;
    for (auto& sep : enumerate_separations(g, 2)) {
        auto bd = sep.boundary();
        if (bd.size() != 2) continue;
        bool on_cycle = true;
        for (int x : bd)
            if (!cyc.count(x)) on_cycle = false;
        if (!on_cycle) continue;
        for (int flip = 0; flip < 2; ++flip) {
            OrientedSep os;
            os.A = flip ? sep.sideB : sep.sideA;
            os.B = flip ? sep.sideA : sep.sideB;
            os.bd = bd;
            for (int r : roots) {
                if (os.bd.count(r)) ++os.roots_in_bd;
                else if (os.A.count(r)) ++os.roots_in_A_strict;
            }
            seps.push_back(std::move(os));
        }
    }

    // obstruction 1: terminal separating 2-chain
    {
        std::vector<size_t> chain;
        std::function<bool(size_t)> extend = [&](size_t last) -> bool {
            const OrientedSep& s = seps[last];
            int roots_in_B_strict =
                static_cast<int>(roots.size()) - s.roots_in_A_strict;
            for (int r : roots)
                if (s.bd.count(r)) --roots_in_B_strict;
            // close the chain here?
            if (s.roots_in_bd >= 1 && roots_in_B_strict == 1 &&
                seps[chain.front()].roots_in_bd >= 1)
                return true;
            for (size_t j = 0; j < seps.size(); ++j) {
                if (j == last) continue;
                if (seps[j].A == s.A && seps[j].B == s.B) continue;
                if (!nested(s, seps[j]) || !boundaries_touch(s, seps[j])) continue;
                if (std::find(chain.begin(), chain.end(), j) != chain.end()) continue;
                chain.push_back(j);
                if (extend(j)) return true;
                chain.pop_back();
            }
            return false;
        };
        for (size_t i = 0; i < seps.size(); ++i) {
            if (seps[i].roots_in_A_strict != 1 || seps[i].roots_in_bd < 1) continue;
            chain = {i};
            if (extend(i)) {
                Obstruction ob;
                ob.kind = Obstruction::Kind::chain;
                ob.cycle = cycle;
                for (size_t k : chain) ob.separations.push_back({seps[k].A, seps[k].B});
                return ob;
            }
        }
    }

    // obstruction 2: terminal separating triangle with a root in the first
    // boundary
    for (size_t i = 0; i < seps.size(); ++i) {
        const auto& s1 = seps[i];
        int roots_in_A1 = s1.roots_in_A_strict + s1.roots_in_bd;
        // "exactly two vertices of X contained in A1" with a root on bd1
        int roots_on_bd1_insideA1 = 0;
        for (int r : roots)
            if (s1.bd.count(r)) ++roots_on_bd1_insideA1;
        if (s1.roots_in_A_strict + roots_on_bd1_insideA1 != 2) continue;
        if (s1.roots_in_bd < 1) continue;
        for (size_t j = 0; j < seps.size(); ++j) {
            const auto& s2 = seps[j];
            if (s2.roots_in_A_strict != 1) continue;
            std::set<int> shared_xy;
            for (int x : s1.bd)
                if (s2.bd.count(x)) shared_xy.insert(x);
            if (shared_xy.size() != 1) continue;
            for (size_t k = 0; k < seps.size(); ++k) {
                const auto& s3 = seps[k];
                if (s3.roots_in_A_strict != 1) continue;
                // boundary structure {x,y},{x,w},{w,y}
                std::set<int> all_bd = s1.bd;
                all_bd.insert(s2.bd.begin(), s2.bd.end());
                all_bd.insert(s3.bd.begin(), s3.bd.end());
                if (all_bd.size() != 3) continue;
                std::set<int> s13, s23;
                for (int x : s1.bd)
                    if (s3.bd.count(x)) s13.insert(x);
                for (int x : s2.bd)
                    if (s3.bd.count(x)) s23.insert(x);
                if (s13.size() != 1 || s23.size() != 1) continue;
                if (*s13.begin() == *shared_xy.begin()) continue;
                // strict A-sides pairwise disjoint
                auto strict = [](const OrientedSep& s) {
                    std::set<int> out;
                    for (int v : s.A)
                        if (!s.bd.count(v)) out.insert(v);
                    return out;
                };
                auto d1 = strict(s1), d2 = strict(s2), d3 = strict(s3);
                auto disjoint = [](const std::set<int>& a, const std::set<int>& b) {
                    for (int v : a)
                        if (b.count(v)) return false;
                    return true;
                };
                if (!disjoint(d1, d2) || !disjoint(d1, d3) || !disjoint(d2, d3)) continue;
                Obstruction ob;
                ob.kind = Obstruction::Kind::triangle;
                ob.cycle = cycle;
                ob.separations.push_back({s1.A, s1.B});
                ob.separations.push_back({s2.A, s2.B});
                ob.separations.push_back({s3.A, s3.B});
                return ob;
            }
        }
    }
    return std::nullopt;
}

// ==================== vertex width ====================

namespace {

struct EdgeSubsetContext {
    std::vector<uint32_t> edge_verts;  // per edge, bitmask of its endpoints
    std::vector<uint32_t> vert_edges;  // per vertex, bitmask of incident edges
    int n = 0, m = 0;

    explicit EdgeSubsetContext(const LabeledGraph& g, int cap) {
        auto vs = g.vertices();
        n = static_cast<int>(vs.size());
        m = static_cast<int>(g.edge_count());
        if (m > cap)
            throw std::invalid_argument("edge count exceeds the subset-DP cap");
        if (n > 31) throw std::invalid_argument("too many vertices");
        std::map<int, int> vi;
        for (int i = 0; i < n; ++i) vi[vs[i]] = i;
        edge_verts.resize(m);
        vert_edges.assign(n, 0);
        int idx = 0;
        for (auto& e : g.edges()) {
            edge_verts[idx] = (1u << vi[e.u]) | (1u << vi[e.v]);
            vert_edges[vi[e.u]] |= 1u << idx;
            vert_edges[vi[e.v]] |= 1u << idx;
            ++idx;
        }
    }

    int boundary(uint32_t S) const {
        uint32_t full = m == 32 ? ~0u : (1u << m) - 1;
        uint32_t comp = full & ~S;
        int b = 0;
        for (int v = 0; v < n; ++v)
            if ((vert_edges[v] & S) && (vert_edges[v] & comp)) ++b;
        return b;
    }

    uint32_t vertex_set(uint32_t S) const {
        uint32_t vs = 0;
        for (int e = 0; e < m; ++e)
            if (S & (1u << e)) vs |= edge_verts[e];
        return vs;
    }
};

}  // namespace

int vertex_width(const LabeledGraph& g, int edge_cap) {
    EdgeSubsetContext ctx(g, edge_cap);
    int m = ctx.m;
    if (m == 0) return 0;
    uint32_t full = (m == 32) ? ~0u : (1u << m) - 1;
    std::vector<uint8_t> width(full + 1u, 0);
    for (uint32_t S = 1; S <= full; ++S) {
        int best = 255;
        for (int e = 0; e < m; ++e) {
            if (!(S & (1u << e))) continue;
            best = std::min<int>(best, width[S & ~(1u << e)]);
        }
        width[S] = static_cast<uint8_t>(std::max(best, ctx.boundary(S)));
    }
    return width[full];
}

bool is_3_constructable_with_last(const LabeledGraph& g, int v1, int v2, int v3,
                                  int edge_cap) {
    EdgeSubsetContext ctx(g, edge_cap);
    int m = ctx.m;
    auto vs = g.vertices();
    std::map<int, int> vi;
    for (size_t i = 0; i < vs.size(); ++i) vi[vs[i]] = static_cast<int>(i);
    if (!vi.count(v1) || !vi.count(v2) || !vi.count(v3))
        throw std::invalid_argument("trio vertex not in graph");
    uint32_t trio = (1u << vi[v1]) | (1u << vi[v2]) | (1u << vi[v3]);
    uint32_t all_verts = vs.size() == 32 ? ~0u : (1u << vs.size()) - 1;
    if (m == 0) return false;
    uint32_t full = (m == 32) ? ~0u : (1u << m) - 1;

    std::vector<uint8_t> up(full + 1u, 0), down(full + 1u, 0);
    up[0] = 1;
    for (uint32_t S = 1; S <= full; ++S) {
        if (ctx.boundary(S) > 3) continue;
        for (int e = 0; e < m; ++e)
            if ((S & (1u << e)) && up[S & ~(1u << e)]) {
                up[S] = 1;
                break;
            }
    }
    down[full] = 1;
    for (uint32_t S = full; S-- > 0;) {
        for (int e = 0; e < m; ++e) {
            if (S & (1u << e)) continue;
            uint32_t T = S | (1u << e);
            if (ctx.boundary(T) <= 3 && down[T]) {
                down[S] = 1;
                break;
            }
        }
    }
    // split point: everything outside the trio already placed, nothing of
    // the trio placed yet (the continuing edge may bring in stragglers)
    for (uint32_t S = 0; S <= full; ++S) {
        if (!up[S]) continue;
        uint32_t placed = ctx.vertex_set(S);
        if (placed & trio) continue;
        for (int e = 0; e < m; ++e) {
            if (S & (1u << e)) continue;
            uint32_t T = S | (1u << e);
            if (ctx.boundary(T) > 3 || !down[T]) continue;
            uint32_t covered = placed | ctx.edge_verts[e];
            if ((all_verts & ~trio & ~covered) == 0) return true;
        }
        if (S == full) break;
    }
    return false;
}

}  // namespace symred

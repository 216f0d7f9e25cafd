#include "symred/graph.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>

namespace symred {

// ==================== LabeledGraph basics ====================

void LabeledGraph::add_vertex(int id) {
    if (!has_vertex(id)) {
        verts_.push_back(id);
        std::sort(verts_.begin(), verts_.end());
    }
}

int LabeledGraph::add_edge(int u, int v, bool massive) {
    int id = next_edge_id_++;
    add_edge_with_id(id, u, v, massive);
    return id;
}

void LabeledGraph::add_edge_with_id(int id, int u, int v, bool massive) {
    if (!has_vertex(u)) add_vertex(u);
    if (!has_vertex(v)) add_vertex(v);
    if (has_edge_id(id)) throw std::invalid_argument("duplicate edge id " + std::to_string(id));
    edges_.push_back(Edge{id, u, v, massive});
    next_edge_id_ = std::max(next_edge_id_, id + 1);
}

void LabeledGraph::set_terminal(int vertex, char label) {
    if (!has_vertex(vertex)) throw std::invalid_argument("terminal on unknown vertex");
    if (label < 'a' || label > 'd') throw std::invalid_argument("terminal label must be a..d");
    for (auto& [v, l] : terminals_) {
        if (l == label) throw std::invalid_argument("duplicate terminal label");
        if (v == vertex) throw std::invalid_argument("vertex already has a terminal label");
    }
    terminals_.emplace_back(vertex, label);
    std::sort(terminals_.begin(), terminals_.end(),
              [](auto& a, auto& b) { return a.second < b.second; });
}

bool LabeledGraph::has_vertex(int id) const {
    return std::binary_search(verts_.begin(), verts_.end(), id);
}

const Edge& LabeledGraph::edge(int id) const {
    for (auto& e : edges_)
        if (e.id == id) return e;
    throw std::invalid_argument("unknown edge id " + std::to_string(id));
}

bool LabeledGraph::has_edge_id(int id) const {
    for (auto& e : edges_)
        if (e.id == id) return true;
    return false;
}

std::optional<char> LabeledGraph::terminal_label(int vertex) const {
    for (auto& [v, l] : terminals_)
        if (v == vertex) return l;
    return std::nullopt;
}

std::optional<int> LabeledGraph::terminal_vertex(char label) const {
    for (auto& [v, l] : terminals_)
        if (l == label) return v;
    return std::nullopt;
}

std::vector<int> LabeledGraph::incident_edges(int vertex) const {
    std::vector<int> out;
    for (auto& e : edges_)
        if (e.u == vertex || e.v == vertex) out.push_back(e.id);
    return out;
}

int LabeledGraph::degree(int vertex) const {
    int d = 0;
    for (auto& e : edges_) {
        if (e.u == vertex) ++d;
        if (e.v == vertex) ++d;
    }
    return d;
}

std::vector<int> LabeledGraph::neighbors(int vertex) const {
    std::set<int> out;
    for (auto& e : edges_) {
        if (e.u == vertex && e.v != vertex) out.insert(e.v);
        if (e.v == vertex && e.u != vertex) out.insert(e.u);
    }
    return {out.begin(), out.end()};
}

bool LabeledGraph::adjacent(int u, int v) const {
    for (auto& e : edges_)
        if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) return true;
    return false;
}

int LabeledGraph::loop_order() const {
    return static_cast<int>(edges_.size()) - static_cast<int>(verts_.size()) +
           component_count();
}

LabeledGraph LabeledGraph::delete_edge(int edge_id) const {
    edge(edge_id);  // validates
    LabeledGraph g = *this;
    g.edges_.erase(std::remove_if(g.edges_.begin(), g.edges_.end(),
                                  [&](const Edge& e) { return e.id == edge_id; }),
                   g.edges_.end());
    return g;
}

LabeledGraph LabeledGraph::contract_edge(int edge_id) const {
    const Edge& e = edge(edge_id);
    if (e.is_loop()) throw std::invalid_argument("cannot contract a loop edge");
    int keep = std::min(e.u, e.v), gone = std::max(e.u, e.v);
    auto lk = terminal_label(keep), lg = terminal_label(gone);
    if (lk && lg)
        throw std::invalid_argument("contraction would merge two terminal vertices");
    LabeledGraph g;
    g.verts_ = verts_;
    g.verts_.erase(std::remove(g.verts_.begin(), g.verts_.end(), gone), g.verts_.end());
    for (auto& f : edges_) {
        if (f.id == edge_id) continue;
        int u = f.u == gone ? keep : f.u;
        int v = f.v == gone ? keep : f.v;
        g.edges_.push_back(Edge{f.id, u, v, f.massive});
    }
    for (auto& [v, l] : terminals_) g.terminals_.emplace_back(v == gone ? keep : v, l);
    g.next_edge_id_ = next_edge_id_;
    return g;
}

LabeledGraph LabeledGraph::delete_vertex(int vertex) const {
    LabeledGraph g;
    for (int v : verts_)
        if (v != vertex) g.verts_.push_back(v);
    for (auto& e : edges_)
        if (e.u != vertex && e.v != vertex) g.edges_.push_back(e);
    for (auto& [v, l] : terminals_)
        if (v != vertex) g.terminals_.emplace_back(v, l);
    g.next_edge_id_ = next_edge_id_;
    return g;
}

LabeledGraph LabeledGraph::induced(const std::set<int>& vertex_set) const {
    LabeledGraph g;
    for (int v : verts_)
        if (vertex_set.count(v)) g.verts_.push_back(v);
    for (auto& e : edges_)
        if (vertex_set.count(e.u) && vertex_set.count(e.v)) g.edges_.push_back(e);
    for (auto& [v, l] : terminals_)
        if (vertex_set.count(v)) g.terminals_.emplace_back(v, l);
    g.next_edge_id_ = next_edge_id_;
    return g;
}

LabeledGraph LabeledGraph::subdivide_edge(int edge_id) const {
    const Edge& e = edge(edge_id);
    LabeledGraph g = delete_edge(edge_id);
    int w = verts_.back() + 1;
    g.add_vertex(w);
    g.add_edge(e.u, w, e.massive);
    g.add_edge(w, e.v, e.massive);
    return g;
}

LabeledGraph LabeledGraph::split_vertex(int vertex, const std::vector<int>& moved_edges) const {
    if (degree(vertex) < 4)
        throw std::invalid_argument("split_vertex: degree must be at least 4");
    auto inc = incident_edges(vertex);
    for (int id : moved_edges) {
        if (std::find(inc.begin(), inc.end(), id) == inc.end())
            throw std::invalid_argument("split_vertex: edge not incident to vertex");
        if (edge(id).is_loop())
            throw std::invalid_argument("split_vertex: loop edges not supported");
    }
    size_t kept = inc.size() - moved_edges.size();
    if (moved_edges.size() < 2 || kept < 2)
        throw std::invalid_argument("split_vertex: both sides need at least 2 edges");
    LabeledGraph g = *this;
    int w = verts_.back() + 1;
    g.add_vertex(w);
    for (auto& e : g.edges_) {
        if (std::find(moved_edges.begin(), moved_edges.end(), e.id) == moved_edges.end())
            continue;
        if (e.u == vertex) e.u = w;
        else e.v = w;
    }
    g.add_edge(vertex, w);
    return g;
}

LabeledGraph LabeledGraph::with_edge(int u, int v) const {
    if (adjacent(u, v)) return *this;
    LabeledGraph g = *this;
    g.add_edge(u, v);
    return g;
}

// ==================== connectivity ====================

namespace {

std::vector<std::set<int>> components_of(const std::vector<int>& verts,
                                         const std::vector<Edge>& edges) {
    std::map<int, int> comp;
    for (int v : verts) comp[v] = v;
    std::function<int(int)> find = [&](int x) {
        while (comp[x] != x) x = comp[x] = comp[comp[x]];
        return x;
    };
    for (auto& e : edges) comp[find(e.u)] = find(e.v);
    std::map<int, std::set<int>> groups;
    for (int v : verts) groups[find(v)].insert(v);
    std::vector<std::set<int>> out;
    for (auto& [r, s] : groups) out.push_back(s);
    return out;
}

}  // namespace

bool LabeledGraph::is_connected() const { return component_count() <= 1; }

int LabeledGraph::component_count() const {
    return static_cast<int>(components_of(verts_, edges_).size());
}

std::vector<std::set<int>> LabeledGraph::components() const {
    return components_of(verts_, edges_);
}

std::set<int> LabeledGraph::component_of(int vertex) const {
    for (auto& c : components_of(verts_, edges_))
        if (c.count(vertex)) return c;
    throw std::invalid_argument("unknown vertex");
}

// ==================== spanning structures ====================

namespace {

struct ShrunkGraph {
    std::vector<int> verts;
    std::vector<Edge> edges;

    bool connected() const {
        return components_of(verts, edges).size() <= 1;
    }
    bool connected_without(int edge_id) const {
        std::vector<Edge> rest;
        for (auto& e : edges)
            if (e.id != edge_id) rest.push_back(e);
        return components_of(verts, rest).size() <= 1;
    }
};

void spanning_rec(ShrunkGraph g, std::set<int>& tree,
                  const std::function<void(const std::set<int>&)>& emit) {
    // drop loops: never tree members
    g.edges.erase(std::remove_if(g.edges.begin(), g.edges.end(),
                                 [](const Edge& e) { return e.is_loop(); }),
                  g.edges.end());
    if (g.verts.size() == 1) {
        emit(tree);
        return;
    }
    const Edge e = g.edges.front();

    // branch 1: e in the tree -> contract
    {
        ShrunkGraph c;
        int keep = std::min(e.u, e.v), gone = std::max(e.u, e.v);
        for (int v : g.verts)
            if (v != gone) c.verts.push_back(v);
        for (auto& f : g.edges) {
            if (f.id == e.id) continue;
            Edge f2 = f;
            if (f2.u == gone) f2.u = keep;
            if (f2.v == gone) f2.v = keep;
            c.edges.push_back(f2);
        }
        tree.insert(e.id);
        spanning_rec(std::move(c), tree, emit);
        tree.erase(e.id);
    }
    // branch 2: e deleted (only when that leaves the graph connected)
    if (g.connected_without(e.id)) {
        ShrunkGraph d = g;
        d.edges.erase(d.edges.begin());
        spanning_rec(std::move(d), tree, emit);
    }
}

}  // namespace

void LabeledGraph::spanning_trees(
    const std::function<void(const std::set<int>&)>& emit) const {
    if (verts_.empty() || !is_connected()) return;
    ShrunkGraph g{verts_, edges_};
    std::set<int> tree;
    spanning_rec(std::move(g), tree, emit);
}

long LabeledGraph::count_spanning_trees() const {
    long n = 0;
    spanning_trees([&n](const std::set<int>&) { ++n; });
    return n;
}

void LabeledGraph::spanning_2forests(
    const std::function<void(const TwoForest&)>& emit) const {
    int n = static_cast<int>(verts_.size());
    int want = n - 2;
    if (want < 0) return;
    std::map<int, int> vidx;
    for (int i = 0; i < n; ++i) vidx[verts_[i]] = i;

    std::vector<int> parent(n);
    std::vector<int> chosen;
    // union-find with rollback via full recompute on emit (sizes are small)
    std::function<void(size_t, int)> rec = [&](size_t start, int remaining) {
        if (remaining == 0) {
            TwoForest f;
            std::vector<int> comp(n);
            for (int i = 0; i < n; ++i) comp[i] = i;
            std::function<int(int)> find = [&](int x) {
                while (comp[x] != x) x = comp[x] = comp[comp[x]];
                return x;
            };
            for (int id : chosen) {
                const Edge& e = edge(id);
                comp[find(vidx[e.u])] = find(vidx[e.v]);
                f.tree_edges.insert(id);
            }
            int rootA = find(0);
            for (int i = 0; i < n; ++i)
                (find(i) == rootA ? f.sideA : f.sideB).insert(verts_[i]);
            if (f.sideB.empty()) return;  // cycle slipped through; cannot happen
            emit(f);
            return;
        }
        for (size_t i = start; i + remaining <= edges_.size(); ++i) {
            const Edge& e = edges_[i];
            if (e.is_loop()) continue;
            // acyclicity: check e does not close a cycle among chosen
            std::vector<int> comp(n);
            for (int k = 0; k < n; ++k) comp[k] = k;
            std::function<int(int)> find = [&](int x) {
                while (comp[x] != x) x = comp[x] = comp[comp[x]];
                return x;
            };
            for (int id : chosen) {
                const Edge& f2 = edge(id);
                comp[find(vidx[f2.u])] = find(vidx[f2.v]);
            }
            if (find(vidx[e.u]) == find(vidx[e.v])) continue;
            chosen.push_back(e.id);
            rec(i + 1, remaining - 1);
            chosen.pop_back();
        }
    };
    if (n >= 2) rec(0, want);
}

// ==================== separations / connectivity ====================

std::set<int> Separation::boundary() const {
    std::set<int> b;
    std::set_intersection(sideA.begin(), sideA.end(), sideB.begin(), sideB.end(),
                          std::inserter(b, b.begin()));
    return b;
}

bool Separation::valid_for(const LabeledGraph& g) const {
    std::set<int> all;
    all.insert(sideA.begin(), sideA.end());
    all.insert(sideB.begin(), sideB.end());
    if (all.size() != g.vertex_count()) return false;
    auto b = boundary();
    auto strictly = [&](const std::set<int>& side, int v) {
        return side.count(v) && !b.count(v);
    };
    for (auto& e : g.edges())
        if ((strictly(sideA, e.u) && strictly(sideB, e.v)) ||
            (strictly(sideB, e.u) && strictly(sideA, e.v)))
            return false;
    size_t strictA = sideA.size() - b.size(), strictB = sideB.size() - b.size();
    return strictA > 0 && strictB > 0;
}

namespace {

// max number of internally vertex-disjoint s-t paths (s,t non-adjacent)
int disjoint_paths(const LabeledGraph& g, int s, int t) {
    // split each vertex v into in/out with capacity 1 (s,t unbounded)
    std::vector<int> vs = g.vertices();
    int n = static_cast<int>(vs.size());
    std::map<int, int> idx;
    for (int i = 0; i < n; ++i) idx[vs[i]] = i;
    int N = 2 * n;
    std::vector<std::vector<int>> cap(N, std::vector<int>(N, 0));
    const int INF = 1 << 20;
    for (int i = 0; i < n; ++i) cap[2 * i][2 * i + 1] = (vs[i] == s || vs[i] == t) ? INF : 1;
    for (auto& e : g.edges()) {
        if (e.is_loop()) continue;
        cap[2 * idx[e.u] + 1][2 * idx[e.v]] += INF;
        cap[2 * idx[e.v] + 1][2 * idx[e.u]] += INF;
    }
    int src = 2 * idx[s] + 1, dst = 2 * idx[t];
    int flow = 0;
    while (true) {
        std::vector<int> prev(N, -1);
        std::queue<int> q;
        q.push(src);
        prev[src] = src;
        while (!q.empty() && prev[dst] == -1) {
            int x = q.front();
            q.pop();
            for (int y = 0; y < N; ++y)
                if (prev[y] == -1 && cap[x][y] > 0) {
                    prev[y] = x;
                    q.push(y);
                }
        }
        if (prev[dst] == -1) break;
        int add = INF;
        for (int y = dst; y != src; y = prev[y]) add = std::min(add, cap[prev[y]][y]);
        for (int y = dst; y != src; y = prev[y]) {
            cap[prev[y]][y] -= add;
            cap[y][prev[y]] += add;
        }
        flow += add;
        if (flow > n) break;
    }
    return flow;
}

}  // namespace

int connectivity(const LabeledGraph& g) {
    int n = static_cast<int>(g.vertex_count());
    if (n <= 1) return 0;
    if (!g.is_connected()) return 0;
    auto vs = g.vertices();
    int best = n - 1;
    bool found_pair = false;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (g.adjacent(vs[i], vs[j])) continue;
            found_pair = true;
            best = std::min(best, disjoint_paths(g, vs[i], vs[j]));
        }
    if (!found_pair) return n - 1;  // complete graph
    return best;
}

bool is_k_connected(const LabeledGraph& g, int k) {
    return static_cast<int>(g.vertex_count()) > k && connectivity(g) >= k;
}

std::vector<Separation> enumerate_separations(const LabeledGraph& g, int max_boundary) {
    std::vector<Separation> out;
    std::set<std::pair<std::set<int>, std::set<int>>> seen;
    auto vs = g.vertices();
    int n = static_cast<int>(vs.size());

    std::vector<int> pick;
    std::function<void(int)> rec = [&](int start) {
        std::set<int> S(pick.begin(), pick.end());
        LabeledGraph rest = g;
        for (int v : S) rest = rest.delete_vertex(v);
        auto comps = rest.components();
        if (comps.size() >= 2) {
            // all 2-groupings of components
            int c = static_cast<int>(comps.size());
            for (int mask = 1; mask < (1 << c) - 1; ++mask) {
                Separation sep;
                sep.sideA = S;
                sep.sideB = S;
                for (int i = 0; i < c; ++i) {
                    auto& dst = (mask >> i) & 1 ? sep.sideA : sep.sideB;
                    dst.insert(comps[i].begin(), comps[i].end());
                }
                auto key = std::minmax(sep.sideA, sep.sideB);
                std::pair<std::set<int>, std::set<int>> norm{key.first, key.second};
                if (seen.insert(norm).second) {
                    sep.sideA = norm.first;
                    sep.sideB = norm.second;
                    out.push_back(sep);
                }
            }
        }
        if (static_cast<int>(pick.size()) == max_boundary) return;
        for (int i = start; i < n; ++i) {
            pick.push_back(vs[i]);
            rec(i + 1);
            pick.pop_back();
        }
    };
    rec(0);
    return out;
}

std::vector<int> cut_vertices(const LabeledGraph& g) {
    std::vector<int> out;
    if (!g.is_connected()) return out;
    for (int v : g.vertices()) {
        LabeledGraph rest = g.delete_vertex(v);
        if (rest.vertex_count() > 0 && rest.component_count() > 1) out.push_back(v);
    }
    return out;
}

// ==================== isomorphism ====================

namespace {

struct IsoProblem {
    std::vector<int> gv, hv;
    std::vector<std::vector<int>> gm, hm;  // adjacency multiplicity (loops on diag)

    bool backtrack(std::vector<int>& map_gh, std::vector<bool>& used, size_t pos) {
        size_t n = gv.size();
        if (pos == n) return true;
        for (size_t j = 0; j < n; ++j) {
            if (used[j]) continue;
            if (gm[pos][pos] != hm[j][j]) continue;
            bool ok = true;
            for (size_t k = 0; k < pos && ok; ++k)
                if (gm[pos][k] != hm[j][map_gh[k]]) ok = false;
            if (!ok) continue;
            map_gh[pos] = static_cast<int>(j);
            used[j] = true;
            if (backtrack(map_gh, used, pos + 1)) return true;
            used[j] = false;
        }
        return false;
    }
};

std::vector<std::vector<int>> mult_matrix(const LabeledGraph& g, std::vector<int>& order) {
    order = g.vertices();
    std::map<int, int> idx;
    for (size_t i = 0; i < order.size(); ++i) idx[order[i]] = static_cast<int>(i);
    std::vector<std::vector<int>> m(order.size(), std::vector<int>(order.size(), 0));
    for (auto& e : g.edges()) {
        if (e.is_loop())
            m[idx[e.u]][idx[e.u]] += 1;
        else {
            m[idx[e.u]][idx[e.v]] += 1;
            m[idx[e.v]][idx[e.u]] += 1;
        }
    }
    return m;
}

}  // namespace

bool is_isomorphic(const LabeledGraph& g, const LabeledGraph& h) {
    if (g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count())
        return false;
    IsoProblem p;
    p.gm = mult_matrix(g, p.gv);
    p.hm = mult_matrix(h, p.hv);
    // degree multiset must match
    auto degs = [](const std::vector<std::vector<int>>& m) {
        std::vector<int> d;
        for (size_t i = 0; i < m.size(); ++i) {
            int s = m[i][i] * 2;
            for (size_t j = 0; j < m.size(); ++j)
                if (j != i) s += m[i][j];
            d.push_back(s);
        }
        std::sort(d.begin(), d.end());
        return d;
    };
    if (degs(p.gm) != degs(p.hm)) return false;
    std::vector<int> map_gh(p.gv.size(), -1);
    std::vector<bool> used(p.gv.size(), false);
    return p.backtrack(map_gh, used, 0);
}

// ==================== stock graphs ====================

LabeledGraph cycle_graph(int n) {
    LabeledGraph g;
    for (int i = 1; i <= n; ++i) g.add_vertex(i);
    for (int i = 1; i <= n; ++i) g.add_edge(i, i % n + 1);
    return g;
}

LabeledGraph path_graph(int n) {
    LabeledGraph g;
    for (int i = 1; i <= n; ++i) g.add_vertex(i);
    for (int i = 1; i < n; ++i) g.add_edge(i, i + 1);
    return g;
}

LabeledGraph complete_graph(int n) {
    LabeledGraph g;
    for (int i = 1; i <= n; ++i) g.add_vertex(i);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) g.add_edge(i, j);
    return g;
}

LabeledGraph complete_bipartite(int m, int n) {
    LabeledGraph g;
    for (int i = 1; i <= m + n; ++i) g.add_vertex(i);
    for (int i = 1; i <= m; ++i)
        for (int j = m + 1; j <= m + n; ++j) g.add_edge(i, j);
    return g;
}

LabeledGraph wheel_graph(int rim) {
    LabeledGraph g;
    for (int i = 1; i <= rim + 1; ++i) g.add_vertex(i);
    for (int i = 1; i <= rim; ++i) g.add_edge(i, i % rim + 1);
    for (int i = 1; i <= rim; ++i) g.add_edge(i, rim + 1);
    return g;
}

LabeledGraph wagner_graph() {
    LabeledGraph g;
    for (int i = 1; i <= 8; ++i) g.add_vertex(i);
    for (int i = 1; i <= 8; ++i) g.add_edge(i, i % 8 + 1);
    for (int i = 1; i <= 4; ++i) g.add_edge(i, i + 4);
    return g;
}

LabeledGraph wagner_plus_02() {
    LabeledGraph g = wagner_graph();
    g.add_edge(1, 3);
    return g;
}

LabeledGraph k4_labeled() {
    LabeledGraph g;
    for (int i = 1; i <= 4; ++i) g.add_vertex(i);
    g.add_edge_with_id(1, 1, 2);
    g.add_edge_with_id(2, 1, 3);
    g.add_edge_with_id(3, 3, 4);
    g.add_edge_with_id(4, 2, 4);
    g.add_edge_with_id(5, 2, 3);
    g.add_edge_with_id(6, 1, 4);
    return g;
}

LabeledGraph w4_labeled() {
    LabeledGraph g;
    for (int i = 1; i <= 5; ++i) g.add_vertex(i);
    g.add_edge_with_id(1, 1, 2);
    g.add_edge_with_id(3, 2, 3);
    g.add_edge_with_id(6, 3, 4);
    g.add_edge_with_id(5, 4, 1);
    g.add_edge_with_id(4, 1, 5);
    g.add_edge_with_id(2, 2, 5);
    g.add_edge_with_id(8, 3, 5);
    g.add_edge_with_id(7, 4, 5);
    return g;
}

std::string LabeledGraph::dump() const {
    std::ostringstream os;
    os << "V={";
    for (size_t i = 0; i < verts_.size(); ++i) os << (i ? "," : "") << verts_[i];
    os << "} E={";
    for (size_t i = 0; i < edges_.size(); ++i)
        os << (i ? "," : "") << edges_[i].id << ":" << edges_[i].u << "-" << edges_[i].v;
    os << "}";
    if (!terminals_.empty()) {
        os << " X={";
        for (size_t i = 0; i < terminals_.size(); ++i)
            os << (i ? "," : "") << terminals_[i].second << "=" << terminals_[i].first;
        os << "}";
    }
    return os.str();
}

}  // namespace symred

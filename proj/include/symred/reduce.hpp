#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symred/factor.hpp"
#include "symred/poly.hpp"

namespace symred {

// canonical, sorted, duplicate-free set of polynomials
using PolySet = std::vector<Poly>;

PolySet normalize_set(std::vector<Poly> polys);
// drop constants and monomials; idempotent
PolySet strip_trivial(PolySet s);
// canonical irreducible factors of everything in s, trivial-stripped
PolySet irreducible_parts(const PolySet& s, FactorHints* hints = nullptr);

bool all_linear_in(const PolySet& s, VarId v);
std::vector<VarId> schwinger_variables(const PolySet& s);

// Factorization cache for one reduction run: every canonical factor seen
// so far is fed back as a trial-division hint.
class FactorCache {
public:
    const Factorization& factor_of(const Poly& p);
    FactorHints& hints() { return hints_; }

private:
    FactorHints hints_;
    std::map<Poly, Factorization> memo_;
};

// ==================== single elimination steps ====================

struct StepBreakdown {
    std::vector<Poly> derivatives;  // g_i = df_i/dv, aligned with the input set
    std::vector<Poly> constants;    // h_i = f_i|_{v=0}
    std::vector<Poly> resultants;   // g_i h_j - h_i g_j over admitted pairs, canonical
    PolySet result;                 // irreducible factors, trivial-stripped
};

std::optional<StepBreakdown> simple_step_full(const PolySet& s, VarId v,
                                              FactorCache& cache);
std::optional<PolySet> simple_step(const PolySet& s, VarId v, FactorCache& cache);

// polynomial set plus compatibility graph over it (indices follow the
// sorted set order)
struct CompatState {
    PolySet polys;
    std::vector<std::vector<bool>> compat;

    static CompatState complete(PolySet polys);
    bool edge(size_t i, size_t j) const { return compat[i][j]; }
    size_t edge_count() const;
    bool operator==(const CompatState& o) const = default;
};

std::optional<CompatState> brown_step(const CompatState& st, VarId v, FactorCache& cache);
std::optional<CompatState> panzer_step(const CompatState& st, VarId v, FactorCache& cache);

// ==================== traces ====================

struct StepInfo {
    VarId var;
    size_t in_size = 0, s1 = 0, s2 = 0, s3 = 0, out_size = 0;
    bool linear = true;
    PolySet set_after;  // full set, for replay/golden tests
};

struct ReductionTrace {
    std::vector<StepInfo> steps;
    bool completed = false;
};

// straight-line simple reduction along one order; order may be a prefix,
// the remaining Schwinger variables are appended in creation order
std::pair<bool, ReductionTrace> simply_reducible(const PolySet& s,
                                                 std::vector<VarId> order,
                                                 FactorCache& cache);

// ==================== subset-memoized searches ====================

enum class Algo { simple, fubini, brown, panzer };

std::string algo_name(Algo a);
std::optional<Algo> algo_from_name(const std::string& s);

struct SearchOutcome {
    enum class Verdict { reducible, not_reducible, out_of_budget } verdict;
    std::vector<VarId> order;  // witness when reducible
    long steps_used = 0;
};

// Fubini / Brown subset dynamic programming. The per-subset sets are pure
// functions of the unordered subset; searching runs breadth-first over
// subset sizes. Simple and Panzer have order-dependent states and run as
// a depth-first search with state memoization instead.
class ReductionSearch {
public:
    ReductionSearch(PolySet s, Algo algo);

    // budget < 0: unlimited. Each elimination-step computation costs 1.
    SearchOutcome run(long step_budget = -1);
    // wall-clock limit; exceeding it surfaces as out_of_budget
    void set_deadline(std::chrono::steady_clock::time_point t) { deadline_ = t; }

    // reducibility along one fixed order (same definitions, no search)
    bool reducible_with_order(const std::vector<VarId>& order);

    // S_[subset] for Fubini/Brown; nullopt when the subset's set is undefined
    const std::optional<CompatState>& state_for(uint32_t mask);
    PolySet initial_set() const { return base_.polys; }
    const std::vector<VarId>& variables() const { return vars_; }
    uint32_t mask_of(const std::vector<VarId>& subset) const;

    // subset-memo spill for long runs
    std::string serialize_memo() const;
    void load_memo(const std::string& text);
    size_t memo_size() const { return memo_.size(); }

private:
    Algo algo_;
    PolySet input_;
    CompatState base_;
    std::vector<VarId> vars_;
    FactorCache cache_;
    long budget_ = -1;
    long used_ = 0;
    bool out_of_budget_ = false;
    std::optional<std::chrono::steady_clock::time_point> deadline_;

    std::map<uint32_t, std::optional<CompatState>> memo_;         // fubini/brown
    std::map<uint32_t, char> viable_;                             // 0/1
    std::map<std::string, char> chain_memo_;                      // simple/panzer
    bool charge();
    std::optional<CompatState> compute_state(uint32_t mask);
    bool viable(uint32_t mask);
    bool chain_search(const CompatState& st, uint32_t used, std::vector<VarId>& order);
    std::string chain_key(const CompatState& st, uint32_t used) const;
};

// convenience wrappers
SearchOutcome fubini_reducible(const PolySet& s, long budget = -1);
SearchOutcome brown_reducible(const PolySet& s, long budget = -1);
SearchOutcome panzer_reducible(const PolySet& s, long budget = -1);
SearchOutcome simple_reducible_any_order(const PolySet& s, long budget = -1);

// S_[subset] as a plain polynomial set (Fubini flavour)
std::optional<PolySet> fubini_set(ReductionSearch& search, const std::vector<VarId>& subset);

ReductionTrace replay_order(const PolySet& s, const std::vector<VarId>& order, Algo algo);

}  // namespace symred

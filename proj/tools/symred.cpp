// Command-line front end: Symanzik polynomials, reducibility runs, minor
// searches, structural checks, batch scans with manifests.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "symred/json_io.hpp"
#include "symred/minors.hpp"
#include "symred/reduce.hpp"
#include "symred/structure.hpp"
#include "symred/symanzik.hpp"

using nlohmann::json;
using namespace symred;

namespace {

constexpr const char* kVersion = "symred 1.0.0";

// exit codes: 0 reducible / found / ok, 1 not reducible / not found,
// 2 error, 3 timeout
enum ExitCode { EXIT_YES = 0, EXIT_NO = 1, EXIT_ERROR = 2, EXIT_TIMEOUT = 3 };

struct GlobalOpts {
    bool json_out = false;
    double timeout_s = 0;  // 0: none
    int threads = 1;
    long max_steps = -1;
    unsigned seed = 1;
};

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return sha256_hex(ss.str());
}

PolySet symanzik_set(const GraphFile& gf, const std::string& which) {
    std::vector<Poly> polys;
    if (which == "psi" || which == "both") polys.push_back(psi(gf.graph));
    if (which == "phi" || which == "both") polys.push_back(phi(gf.graph, gf.kin));
    if (polys.empty()) throw std::invalid_argument("--polys must be psi, phi or both");
    return normalize_set(std::move(polys));
}

std::vector<VarId> parse_order(const std::string& text) {
    std::vector<VarId> order;
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (tok.empty()) continue;
        if (tok[0] != 'x') throw std::invalid_argument("order entries look like x3");
        order.push_back(schwinger_var(std::stoi(tok.substr(1))));
    }
    return order;
}

json order_json(const std::vector<VarId>& order) {
    json a = json::array();
    for (auto v : order) a.push_back(var_name(v));
    return a;
}

struct ReductionRun {
    std::string verdict;  // reducible | not-reducible | timeout
    std::vector<VarId> order;
    long steps = 0;
    double wall_s = 0;
};

ReductionRun run_reduction(const PolySet& s, Algo algo, const GlobalOpts& g,
                           const std::string& checkpoint_path) {
    ReductionSearch search(s, algo);
    if (!checkpoint_path.empty() && std::filesystem::exists(checkpoint_path)) {
        std::ifstream in(checkpoint_path);
        std::ostringstream ss;
        ss << in.rdbuf();
        search.load_memo(ss.str());
        std::cerr << "resumed from checkpoint (" << search.memo_size()
                  << " memo entries)\n";
    }
    auto t0 = std::chrono::steady_clock::now();
    if (g.timeout_s > 0)
        search.set_deadline(t0 + std::chrono::milliseconds(long(g.timeout_s * 1000)));
    auto outcome = search.run(g.max_steps);
    auto t1 = std::chrono::steady_clock::now();

    if (!checkpoint_path.empty()) {
        std::ofstream out(checkpoint_path);
        out << search.serialize_memo();
    }
    ReductionRun r;
    r.steps = outcome.steps_used;
    r.wall_s = std::chrono::duration<double>(t1 - t0).count();
    switch (outcome.verdict) {
        case SearchOutcome::Verdict::reducible:
            r.verdict = "reducible";
            r.order = outcome.order;
            break;
        case SearchOutcome::Verdict::not_reducible:
            r.verdict = "not-reducible";
            break;
        case SearchOutcome::Verdict::out_of_budget:
            r.verdict = "timeout";
            break;
    }
    return r;
}

int exit_for(const ReductionRun& r) {
    if (r.verdict == "reducible") return EXIT_YES;
    if (r.verdict == "not-reducible") return EXIT_NO;
    return EXIT_TIMEOUT;
}

// ==================== subcommands ====================

int cmd_poly(const std::string& path, const std::string& which, const GlobalOpts& g) {
    GraphFile gf = load_graph_file(path);
    json out;
    out["graph"] = path;
    if (which == "psi" || which == "both") {
        Poly p = psi(gf.graph);
        out["psi"] = p.str(&gf.symbols);
        out["psi_terms"] = p.term_count();
    }
    if (which == "phi" || which == "both") {
        Poly p = phi(gf.graph, gf.kin);
        out["phi"] = p.str(&gf.symbols);
        out["phi_terms"] = p.term_count();
    }
    if (g.json_out) {
        std::cout << out.dump(2) << "\n";
    } else {
        if (out.contains("psi")) std::cout << "psi = " << out["psi"].get<std::string>() << "\n";
        if (out.contains("phi")) std::cout << "phi = " << out["phi"].get<std::string>() << "\n";
    }
    return EXIT_YES;
}

int cmd_reduce(const std::string& path, const std::string& algo_s,
               const std::string& which, const std::string& order_s, bool verbose,
               const std::string& checkpoint, const GlobalOpts& g) {
    GraphFile gf = load_graph_file(path);
    auto algo = algo_from_name(algo_s);
    if (!algo) throw std::invalid_argument("unknown algorithm: " + algo_s);
    PolySet s = symanzik_set(gf, which);

    json out;
    out["input"] = path;
    out["algo"] = algo_s;
    out["polys"] = which;

    ReductionRun run;
    if (!order_s.empty()) {
        auto order = parse_order(order_s);
        auto t0 = std::chrono::steady_clock::now();
        ReductionSearch search(s, *algo);
        bool ok = search.reducible_with_order(order);
        run.verdict = ok ? "reducible" : "not-reducible";
        if (ok) run.order = order;
        run.wall_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (verbose) {
            auto trace = replay_order(s, order, *algo);
            json steps = json::array();
            for (auto& st : trace.steps) {
                json js;
                js["var"] = var_name(st.var);
                js["in"] = st.in_size;
                js["out"] = st.out_size;
                json setj = json::array();
                for (auto& p : st.set_after) setj.push_back(p.str(&gf.symbols));
                js["set"] = setj;
                steps.push_back(js);
            }
            out["steps"] = steps;
        }
    } else {
        run = run_reduction(s, *algo, g, checkpoint);
    }
    out["verdict"] = run.verdict;
    if (run.verdict == "reducible") out["order"] = order_json(run.order);
    out["steps_used"] = run.steps;
    out["wall_s"] = run.wall_s;
    if (g.json_out)
        std::cout << out.dump(2) << "\n";
    else {
        std::cout << "verdict: " << run.verdict;
        if (run.verdict == "reducible") {
            std::cout << "  order:";
            for (auto v : run.order) std::cout << " " << var_name(v);
        }
        std::cout << "\n";
        if (out.contains("steps"))
            for (auto& st : out["steps"])
                std::cout << "  after " << st["var"].get<std::string>() << ": "
                          << st["set"].dump() << "\n";
    }
    return exit_for(run);
}

json model_json(const MinorModel& m) {
    json jb;
    for (auto& [pv, bs] : m.branch) jb[std::to_string(pv)] = bs;
    return jb;
}

int cmd_minor(const std::string& path, const std::string& pattern, const GlobalOpts& g) {
    GraphFile gf = load_graph_file(path);
    std::optional<MinorModel> model;
    bool rooted = true;
    if (pattern == "k4x") model = has_rooted_minor(gf.graph, k4x());
    else if (pattern == "w4x") model = has_rooted_minor(gf.graph, w4x());
    else if (pattern == "k24x") model = has_rooted_minor(gf.graph, k24x());
    else if (pattern == "lx") model = has_rooted_minor(gf.graph, lx());
    else if (pattern == "k22x") model = has_rooted_minor(gf.graph, k22x());
    else {
        rooted = false;
        LabeledGraph pat;
        if (pattern == "k34") pat = complete_bipartite(3, 4);
        else if (pattern == "k6") pat = complete_graph(6);
        else if (pattern == "v8e") pat = wagner_plus_02();
        else throw std::invalid_argument("unknown pattern: " + pattern);
        model = has_minor(gf.graph, pat);
    }
    json out;
    out["pattern"] = pattern;
    out["rooted"] = rooted;
    out["found"] = model.has_value();
    if (model) out["model"] = model_json(*model);
    if (g.json_out)
        std::cout << out.dump(2) << "\n";
    else if (model) {
        std::cout << "minor found; branch sets:\n";
        for (auto& [pv, bs] : model->branch) {
            std::cout << "  " << pv << " <- {";
            bool first = true;
            for (int v : bs) {
                std::cout << (first ? "" : ",") << v;
                first = false;
            }
            std::cout << "}\n";
        }
    } else {
        std::cout << "no " << pattern << " minor\n";
    }
    return model ? EXIT_YES : EXIT_NO;
}

int cmd_structure(const std::string& path, const std::string& check,
                  const GlobalOpts& g) {
    GraphFile gf = load_graph_file(path);
    json out;
    out["check"] = check;
    int code = EXIT_YES;
    if (check == "width") {
        int w = vertex_width(gf.graph);
        out["vertex_width"] = w;
        if (!g.json_out) std::cout << "vertex width: " << w << "\n";
    } else if (check == "obstructions") {
        auto cyc = cycle_through_roots(gf.graph);
        if (!cyc) {
            out["cycle"] = nullptr;
            out["obstruction"] = "no-root-cycle";
            if (!g.json_out) std::cout << "no cycle through the roots\n";
        } else {
            out["cycle"] = *cyc;
            auto ob = find_obstruction(gf.graph, *cyc);
            if (ob) {
                out["obstruction"] =
                    ob->kind == Obstruction::Kind::chain ? "chain" : "triangle";
                json seps = json::array();
                for (auto& s : ob->separations) {
                    json js;
                    js["A"] = s.sideA;
                    js["B"] = s.sideB;
                    seps.push_back(js);
                }
                out["separations"] = seps;
            } else {
                out["obstruction"] = nullptr;
                code = EXIT_NO;
            }
            if (!g.json_out)
                std::cout << "obstruction: " << out["obstruction"].dump() << "\n";
        }
    } else if (check == "constructable") {
        auto ts = gf.graph.terminals();
        if (ts.size() != 3)
            throw std::invalid_argument("constructable check needs three terminals");
        bool ok = is_3_constructable_with_last(gf.graph, ts[0].first, ts[1].first,
                                               ts[2].first);
        out["constructable"] = ok;
        code = ok ? EXIT_YES : EXIT_NO;
        if (!g.json_out) std::cout << (ok ? "3-constructable" : "not 3-constructable") << "\n";
    } else {
        throw std::invalid_argument("unknown check: " + check);
    }
    if (g.json_out) std::cout << out.dump(2) << "\n";
    return code;
}

int cmd_certify(const std::string& path, const GlobalOpts& g) {
    GraphFile gf = load_graph_file(path);
    Reducer reducer = [&](const PolySet& s) {
        ReductionSearch search(s, Algo::brown);
        if (g.timeout_s > 0)
            search.set_deadline(std::chrono::steady_clock::now() +
                                std::chrono::milliseconds(long(g.timeout_s * 1000)));
        return search.run(g.max_steps);
    };
    auto rep = certify_forbidden(gf.graph, gf.kin, reducer);
    json out;
    out["input"] = path;
    out["self_reducible"] = rep.self_reducible;
    out["self_timed_out"] = rep.self_timed_out;
    json rs = json::array();
    for (auto& r : rep.reductions) {
        json jr;
        jr["operation"] = r.operation;
        jr["reducible"] = r.reducible;
        jr["timed_out"] = r.timed_out;
        rs.push_back(jr);
    }
    out["reductions"] = rs;
    out["forbidden_minor"] = rep.is_forbidden_minor();
    if (g.json_out)
        std::cout << out.dump(2) << "\n";
    else {
        std::cout << "self: "
                  << (rep.self_timed_out ? "timeout"
                                         : (rep.self_reducible ? "reducible" : "not-reducible"))
                  << "\n";
        for (auto& r : rep.reductions)
            std::cout << "  " << r.operation << ": "
                      << (r.timed_out ? "timeout" : (r.reducible ? "reducible" : "not-reducible"))
                      << "\n";
        std::cout << "forbidden minor: " << (rep.is_forbidden_minor() ? "yes" : "no") << "\n";
    }
    return rep.is_forbidden_minor() ? EXIT_YES : EXIT_NO;
}

int cmd_scan(const std::string& dir, const std::string& mode, const std::string& algo_s,
             const std::string& out_path, const GlobalOpts& g) {
    auto algo = algo_from_name(algo_s);
    if (!algo) throw std::invalid_argument("unknown algorithm: " + algo_s);
    std::vector<std::string> files;
    for (auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.path().extension() == ".json") files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());

    json manifest;
    manifest["tool"] = kVersion;
    manifest["command"] = "scan --mode " + mode + " --algo " + algo_s;
    manifest["results"] = json::array();
    std::mutex mu;
    std::vector<json> results(files.size());

    auto process = [&](size_t idx) {
        const std::string& f = files[idx];
        json r;
        r["file"] = std::filesystem::path(f).filename().string();
        r["digest"] = file_digest(f);
        try {
            GraphFile gf = load_graph_file(f);
            std::string which = mode == "psi" ? "psi" : "both";
            ScanReport scan = forbidden_minor_scan(gf.graph, mode == "psi" ? "psi" : "psiphi");
            json hits = json::array();
            for (auto& h : scan.hits) {
                json jh;
                jh["pattern"] = h.pattern;
                jh["rooted"] = h.rooted;
                jh["model"] = model_json(h.model);
                hits.push_back(jh);
            }
            r["minor_hits"] = hits;
            auto run = run_reduction(symanzik_set(gf, which), *algo, g, "");
            r["verdict"] = run.verdict;
            if (run.verdict == "reducible") r["order"] = order_json(run.order);
            r["steps_used"] = run.steps;
            r["wall_s"] = run.wall_s;
        } catch (const std::exception& e) {
            r["verdict"] = "error";
            r["error"] = e.what();
        }
        std::lock_guard<std::mutex> lock(mu);
        results[idx] = std::move(r);
    };

    if (g.threads <= 1) {
        for (size_t i = 0; i < files.size(); ++i) process(i);
    } else {
        std::vector<std::thread> pool;
        std::atomic<size_t> next{0};
        for (int t = 0; t < g.threads; ++t)
            pool.emplace_back([&] {
                while (true) {
                    size_t i = next.fetch_add(1);
                    if (i >= files.size()) break;
                    process(i);
                }
            });
        for (auto& t : pool) t.join();
    }
    for (auto& r : results) manifest["results"].push_back(r);
    std::string text = manifest.dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else {
        std::ofstream out(out_path);
        out << text;
    }
    return EXIT_YES;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Symanzik polynomial reducibility and rooted-minor toolkit"};
    app.set_version_flag("--version", kVersion);
    GlobalOpts g;
    app.add_flag("--json", g.json_out, "machine-readable output");
    app.add_option("--timeout", g.timeout_s, "per-run wall clock limit in seconds");
    app.add_option("--threads", g.threads, "worker threads for scan");
    app.add_option("--max-steps", g.max_steps, "step budget for reductions");
    app.add_option("--seed", g.seed, "seed for randomized helpers");

    std::string graph_path, which = "both", algo = "brown", order, pattern, check,
                dir, mode = "psi", out_path, checkpoint;
    bool verbose = false;

    auto* cpoly = app.add_subcommand("poly", "print Symanzik polynomials");
    cpoly->add_option("--graph", graph_path)->required();
    cpoly->add_option("--which", which, "psi|phi|both");

    auto* creduce = app.add_subcommand("reduce", "decide reducibility");
    creduce->add_option("--graph", graph_path)->required();
    creduce->add_option("--algo", algo, "simple|fubini|brown|panzer");
    creduce->add_option("--polys", which, "psi|phi|both");
    creduce->add_option("--order", order, "fixed elimination order x1,x2,...");
    creduce->add_flag("--verbose", verbose, "print per-step sets");
    creduce->add_option("--checkpoint", checkpoint, "memo spill file (resume if present)");

    auto* cminor = app.add_subcommand("minor", "search a (rooted) minor");
    cminor->add_option("--graph", graph_path)->required();
    cminor->add_option("--pattern", pattern, "k4x|w4x|k24x|lx|k22x|k34|k6|v8e")->required();

    auto* cstructure = app.add_subcommand("structure", "structural checks");
    cstructure->add_option("--graph", graph_path)->required();
    cstructure->add_option("--check", check, "obstructions|width|constructable")->required();

    auto* cscan = app.add_subcommand("scan", "scan a directory of graph files");
    cscan->add_option("--dir", dir)->required();
    cscan->add_option("--mode", mode, "psi|psiphi");
    cscan->add_option("--algo", algo, "simple|fubini|brown|panzer");
    cscan->add_option("--out", out_path, "manifest output path");

    auto* ccertify = app.add_subcommand("certify", "forbidden-minor certificate");
    ccertify->add_option("--graph", graph_path)->required();

    app.require_subcommand(1);
    CLI11_PARSE(app, argc, argv);

    // the subset-memo spill cache directory doubles as a default checkpoint
    if (checkpoint.empty()) {
        if (const char* cache = std::getenv("SYMRED_CACHE_DIR")) {
            if (creduce->parsed() && !graph_path.empty()) {
                std::filesystem::create_directories(cache);
                checkpoint = std::string(cache) + "/" + file_digest(graph_path) + "-" +
                             algo + "-" + which + ".memo";
            }
        }
    }

    try {
        if (cpoly->parsed()) return cmd_poly(graph_path, which, g);
        if (creduce->parsed())
            return cmd_reduce(graph_path, algo, which, order, verbose, checkpoint, g);
        if (cminor->parsed()) return cmd_minor(graph_path, pattern, g);
        if (cstructure->parsed()) return cmd_structure(graph_path, check, g);
        if (cscan->parsed()) return cmd_scan(dir, mode, algo, out_path, g);
        if (ccertify->parsed()) return cmd_certify(graph_path, g);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_ERROR;
    }
    return EXIT_ERROR;
}

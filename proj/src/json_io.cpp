#include "symred/json_io.hpp"

#include <array>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace symred {

GraphFile graph_from_json(const nlohmann::json& j) {
    GraphFile out;
    if (!j.is_object()) throw std::invalid_argument("graph json: expected an object");
    if (!j.contains("vertices") || !j.contains("edges"))
        throw std::invalid_argument("graph json: 'vertices' and 'edges' are required");
    for (auto& v : j.at("vertices")) out.graph.add_vertex(v.get<int>());
    for (auto& e : j.at("edges")) {
        if (!e.contains("u") || !e.contains("v"))
            throw std::invalid_argument("graph json: edge needs fields 'u' and 'v'");
        bool massive = e.value("mass", false);
        if (e.contains("id"))
            out.graph.add_edge_with_id(e.at("id").get<int>(), e.at("u").get<int>(),
                                       e.at("v").get<int>(), massive);
        else
            out.graph.add_edge(e.at("u").get<int>(), e.at("v").get<int>(), massive);
    }
    if (j.contains("terminals")) {
        for (auto& t : j.at("terminals")) {
            std::string label = t.at("label").get<std::string>();
            if (label.size() != 1)
                throw std::invalid_argument("graph json: terminal label must be a..d");
            out.graph.set_terminal(t.at("vertex").get<int>(), label[0]);
        }
    }
    out.symbols = SymbolTable::stu();
    size_t nt = out.graph.terminals().size();
    if (nt == 4) {
        VarId ab = kinematic_var(0), ac = kinematic_var(1), ad = kinematic_var(2);
        out.symbols = SymbolTable();
        std::string nab = "s", nac = "t", nad = "u";
        if (j.contains("kinematics")) {
            auto& k = j.at("kinematics");
            nab = k.value("ab|cd", "s");
            nac = k.value("ac|bd", "t");
            nad = k.value("ad|bc", "u");
        }
        out.symbols.declare(nab, ab);
        out.symbols.declare(nac, ac);
        out.symbols.declare(nad, ad);
        out.kin = Kinematics::four_onshell(ab, ac, ad);
    } else if (nt == 0) {
        out.kin = Kinematics::none();
    } else if (nt == 3) {
        out.symbols = SymbolTable();
        out.symbols.declare("qa", kinematic_var(0));
        out.symbols.declare("qb", kinematic_var(1));
        out.symbols.declare("qc", kinematic_var(2));
        out.kin = Kinematics::three_offshell(kinematic_var(0), kinematic_var(1),
                                             kinematic_var(2));
    } else {
        throw std::invalid_argument("graph json: 0, 3 or 4 terminals supported");
    }
    return out;
}

nlohmann::json graph_to_json(const LabeledGraph& g) {
    nlohmann::json j;
    j["vertices"] = g.vertices();
    j["edges"] = nlohmann::json::array();
    for (auto& e : g.edges()) {
        nlohmann::json je;
        je["id"] = e.id;
        je["u"] = e.u;
        je["v"] = e.v;
        je["mass"] = e.massive;
        j["edges"].push_back(je);
    }
    if (!g.terminals().empty()) {
        j["terminals"] = nlohmann::json::array();
        for (auto& [v, l] : g.terminals()) {
            nlohmann::json jt;
            jt["vertex"] = v;
            jt["label"] = std::string(1, l);
            j["terminals"].push_back(jt);
        }
    }
    return j;
}

GraphFile load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("graph json parse error in " + path + ": " + e.what());
    }
    return graph_from_json(j);
}

GraphFile parse_graph_dsl(const std::string& text) {
    GraphFile out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "terminal") {
            int v;
            std::string label;
            ls >> v >> label;
            out.graph.set_terminal(v, label.at(0));
        } else if (tok == "edge") {
            int u, v;
            ls >> u >> v;
            out.graph.add_edge(u, v);
        } else {
            int u = std::stoi(tok), v;
            ls >> v;
            out.graph.add_edge(u, v);
        }
    }
    out.symbols = SymbolTable::stu();
    out.kin = out.graph.terminals().size() == 4 ? Kinematics::four_onshell_stu()
                                                : Kinematics::none();
    return out;
}

// ==================== SHA-256 ====================

namespace {

struct Sha256 {
    uint32_t h[8] = {0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
                     0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};
    static constexpr uint32_t K[64] = {
        0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1,
        0x923f82a4, 0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3,
        0x72be5d74, 0x80deb1fe, 0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786,
        0x0fc19dc6, 0x240ca1cc, 0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da,
        0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147,
        0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc, 0x53380d13,
        0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
        0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070,
        0x19a4c116, 0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a,
        0x5b9cca4f, 0x682e6ff3, 0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208,
        0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2};

    static uint32_t rotr(uint32_t x, int n) { return (x >> n) | (x << (32 - n)); }

    void block(const uint8_t* p) {
        uint32_t w[64];
        for (int i = 0; i < 16; ++i)
            w[i] = (uint32_t(p[4 * i]) << 24) | (uint32_t(p[4 * i + 1]) << 16) |
                   (uint32_t(p[4 * i + 2]) << 8) | uint32_t(p[4 * i + 3]);
        for (int i = 16; i < 64; ++i) {
            uint32_t s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
            uint32_t s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
            w[i] = w[i - 16] + s0 + w[i - 7] + s1;
        }
        uint32_t a = h[0], b = h[1], c = h[2], d = h[3], e = h[4], f = h[5], g = h[6],
                 hh = h[7];
        for (int i = 0; i < 64; ++i) {
            uint32_t S1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
            uint32_t ch = (e & f) ^ (~e & g);
            uint32_t t1 = hh + S1 + ch + K[i] + w[i];
            uint32_t S0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
            uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
            uint32_t t2 = S0 + maj;
            hh = g;
            g = f;
            f = e;
            e = d + t1;
            d = c;
            c = b;
            b = a;
            a = t1 + t2;
        }
        h[0] += a;
        h[1] += b;
        h[2] += c;
        h[3] += d;
        h[4] += e;
        h[5] += f;
        h[6] += g;
        h[7] += hh;
    }
};

constexpr uint32_t Sha256::K[64];

}  // namespace

std::string sha256_hex(const std::string& bytes) {
    Sha256 ctx;
    std::string data = bytes;
    uint64_t bitlen = uint64_t(bytes.size()) * 8;
    data.push_back(char(0x80));
    while (data.size() % 64 != 56) data.push_back(char(0));
    for (int i = 7; i >= 0; --i) data.push_back(char((bitlen >> (8 * i)) & 0xff));
    for (size_t off = 0; off < data.size(); off += 64)
        ctx.block(reinterpret_cast<const uint8_t*>(data.data() + off));
    std::ostringstream os;
    for (int i = 0; i < 8; ++i) {
        for (int b = 3; b >= 0; --b) {
            static const char* hexd = "0123456789abcdef";
            uint8_t byte = (ctx.h[i] >> (8 * b)) & 0xff;
            os << hexd[byte >> 4] << hexd[byte & 0xf];
        }
    }
    return os.str();
}

}  // namespace symred

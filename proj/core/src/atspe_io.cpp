#include "genus_atsp/atspe_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace genus_atsp {

namespace {

struct RawArc {
    int tail, head;
    double cost;
};

struct RawEdge {
    int fwd = -1;  // arc running end0 -> end1, or -1
    int rev = -1;
};

int parse_int(const std::string& tok, const char* what) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(tok, &used);
        require(used == tok.size(), ErrorCode::MalformedInstance,
                std::string("bad integer for ") + what + ": " + tok);
        return v;
    } catch (const Error&) {
        throw;
    } catch (...) {
        fail(ErrorCode::MalformedInstance,
             std::string("bad integer for ") + what + ": " + tok);
    }
}

double parse_cost(const std::string& tok) {
    try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        require(used == tok.size() && std::isfinite(v), ErrorCode::MalformedInstance,
                "bad cost: " + tok);
        return v;
    } catch (const Error&) {
        throw;
    } catch (...) {
        fail(ErrorCode::MalformedInstance, "bad cost: " + tok);
    }
}

}  // namespace

EmbeddedDigraph parse_atspe(std::istream& in) {
    std::vector<std::vector<std::string>> lines;
    std::string raw;
    while (std::getline(in, raw)) {
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t) toks.push_back(t);
        if (!toks.empty()) lines.push_back(std::move(toks));
    }
    require(!lines.empty() && lines[0].size() == 2 && lines[0][0] == "atspe" &&
                lines[0][1] == "1",
            ErrorCode::MalformedInstance, "missing 'atspe 1' header");

    int n = -1;
    std::map<int, RawArc> raw_arcs;
    std::map<int, RawEdge> raw_edges;
    std::map<int, std::vector<std::pair<int, int>>> raw_rot;  // vertex -> (edge,end)
    std::map<int, int> raw_sig;

    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto& tk = lines[li];
        const std::string& kw = tk[0];
        if (kw == "vertices") {
            require(tk.size() == 2, ErrorCode::MalformedInstance, "vertices line");
            require(n < 0, ErrorCode::MalformedInstance, "duplicate vertices line");
            n = parse_int(tk[1], "vertex count");
            require(n >= 1, ErrorCode::MalformedInstance, "vertex count must be >= 1");
        } else if (kw == "arc") {
            require(tk.size() == 5, ErrorCode::MalformedInstance, "arc line");
            const int id = parse_int(tk[1], "arc id");
            require(!raw_arcs.count(id), ErrorCode::MalformedInstance,
                    "duplicate arc id " + tk[1]);
            raw_arcs[id] = RawArc{parse_int(tk[2], "arc tail"),
                                  parse_int(tk[3], "arc head"), parse_cost(tk[4])};
        } else if (kw == "edge") {
            require(tk.size() == 4, ErrorCode::MalformedInstance, "edge line");
            const int id = parse_int(tk[1], "edge id");
            require(!raw_edges.count(id), ErrorCode::MalformedInstance,
                    "duplicate edge id " + tk[1]);
            RawEdge e;
            if (tk[2] != "-") e.fwd = parse_int(tk[2], "edge arc");
            if (tk[3] != "-") e.rev = parse_int(tk[3], "edge arc");
            require(e.fwd >= 0 || e.rev >= 0, ErrorCode::MalformedInstance,
                    "edge " + tk[1] + " owns no arc");
            raw_edges[id] = e;
        } else if (kw == "rot") {
            require(tk.size() >= 2, ErrorCode::MalformedInstance, "rot line");
            const int v = parse_int(tk[1], "rotation vertex");
            require(!raw_rot.count(v), ErrorCode::MalformedRotation,
                    "duplicate rotation line for vertex " + tk[1]);
            auto& rot = raw_rot[v];
            for (std::size_t i = 2; i < tk.size(); ++i) {
                const auto dot = tk[i].find('.');
                require(dot != std::string::npos && dot + 2 == tk[i].size() &&
                            (tk[i][dot + 1] == '0' || tk[i][dot + 1] == '1'),
                        ErrorCode::MalformedRotation, "bad end token: " + tk[i]);
                rot.emplace_back(parse_int(tk[i].substr(0, dot), "end edge id"),
                                 tk[i][dot + 1] - '0');
            }
        } else if (kw == "sig") {
            require(tk.size() == 3, ErrorCode::MalformedInstance, "sig line");
            const int e = parse_int(tk[1], "signature edge id");
            require(!raw_sig.count(e), ErrorCode::MalformedInstance,
                    "duplicate signature for edge " + tk[1]);
            require(tk[2] == "+1" || tk[2] == "-1" || tk[2] == "1",
                    ErrorCode::MalformedInstance, "bad signature: " + tk[2]);
            raw_sig[e] = tk[2] == "-1" ? -1 : +1;
        } else {
            fail(ErrorCode::MalformedInstance, "unknown keyword: " + kw);
        }
    }

    require(n >= 1, ErrorCode::MalformedInstance, "missing vertices line");
    const int m = static_cast<int>(raw_arcs.size());
    const int k = static_cast<int>(raw_edges.size());
    for (int a = 0; a < m; ++a)
        require(raw_arcs.count(a), ErrorCode::MalformedInstance,
                "arc ids must be dense from 0");
    for (int e = 0; e < k; ++e)
        require(raw_edges.count(e), ErrorCode::MalformedInstance,
                "edge ids must be dense from 0");

    EmbeddedDigraph g(n);
    for (int a = 0; a < m; ++a) {
        const RawArc& ra = raw_arcs[a];
        require(ra.tail >= 0 && ra.tail < n && ra.head >= 0 && ra.head < n,
                ErrorCode::MalformedInstance, "arc endpoint out of range");
        require(ra.cost >= 0.0, ErrorCode::NegativeCost, "arc cost is negative");
        g.add_arc(ra.tail, ra.head, ra.cost);
    }
    // Slot order is (end0 -> end1, end1 -> end0); either slot may be absent.
    for (int e = 0; e < k; ++e) {
        const RawEdge& re = raw_edges[e];
        for (int a : {re.fwd, re.rev})
            require(a < m, ErrorCode::MalformedInstance, "edge references a missing arc");
        int u, v;
        if (re.fwd >= 0) {
            u = raw_arcs[re.fwd].tail;
            v = raw_arcs[re.fwd].head;
        } else {
            u = raw_arcs[re.rev].head;
            v = raw_arcs[re.rev].tail;
        }
        g.bind_edge_between(u, v, re.fwd, re.rev);
    }
    for (const auto& [e, s] : raw_sig) {
        require(e >= 0 && e < k, ErrorCode::MalformedInstance,
                "signature for missing edge");
        g.set_signature(e, s);
    }
    for (const auto& [v, rot] : raw_rot) {
        require(v >= 0 && v < n, ErrorCode::MalformedRotation,
                "rotation for missing vertex");
        std::vector<EndRef> ends;
        ends.reserve(rot.size());
        for (const auto& [e, end] : rot) {
            require(e >= 0 && e < k, ErrorCode::MalformedRotation,
                    "rotation references a missing edge");
            ends.push_back(EndRef{e, end});
        }
        g.set_rotation(v, std::move(ends));
    }
    g.validate();
    return g;
}

EmbeddedDigraph parse_atspe_string(const std::string& text) {
    std::istringstream in(text);
    return parse_atspe(in);
}

EmbeddedDigraph load_atspe_file(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), ErrorCode::MalformedInstance, "cannot open " + path);
    return parse_atspe(in);
}

namespace {

std::string format_cost(double c) {
    if (c == std::floor(c) && std::abs(c) < 9.007199254740992e15) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(c));
        return buf;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", c);
    return buf;
}

}  // namespace

void write_atspe(std::ostream& out, const EmbeddedDigraph& g) {
    require(g.vertex_count() == g.vertex_slots() && g.edge_count() == g.edge_slots(),
            ErrorCode::Internal, "writer expects a graph without removed slots");
    out << "atspe 1\n";
    out << "vertices " << g.vertex_count() << "\n";
    for (int a = 0; a < g.arc_slots(); ++a) {
        const Arc& arc = g.arc(a);
        out << "arc " << a << " " << arc.tail << " " << arc.head << " "
            << format_cost(arc.cost) << "\n";
    }
    for (int e = 0; e < g.edge_slots(); ++e) {
        const auto& pair = g.edge_arcs(e);
        out << "edge " << e;
        for (int a : pair) {
            if (a >= 0)
                out << " " << a;
            else
                out << " -";
        }
        out << "\n";
    }
    for (int v = 0; v < g.vertex_slots(); ++v) {
        out << "rot " << v;
        for (const EndRef& h : g.embedding().rotation(v))
            out << " " << h.edge << "." << h.end;
        out << "\n";
    }
    for (int e = 0; e < g.edge_slots(); ++e)
        if (g.signature(e) == -1) out << "sig " << e << " -1\n";
}

std::string write_atspe_string(const EmbeddedDigraph& g) {
    std::ostringstream out;
    write_atspe(out, g);
    return out.str();
}

void save_atspe_file(const std::string& path, const EmbeddedDigraph& g) {
    std::ofstream out(path, std::ios::trunc);
    require(out.good(), ErrorCode::MalformedInstance, "cannot open " + path);
    write_atspe(out, g);
}

}  // namespace genus_atsp

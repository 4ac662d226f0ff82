#include "mmc/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mmc {

namespace {

bool is_comment(std::string_view s) {
    size_t i = s.find_first_not_of(" \t\r");
    if (i == std::string_view::npos) return true;
    return s[i] == 'c' || s[i] == '#';
}

long parse_int(const std::string& tok, int line) {
    size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(tok, &pos);
    } catch (const std::exception&) {
        throw ParseError(line, "expected integer, got '" + tok + "'");
    }
    if (pos != tok.size()) throw ParseError(line, "expected integer, got '" + tok + "'");
    return v;
}

}  // namespace

Graph parse_graph(std::string_view text, GraphFormat format) {
    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    long n = -1, m = -1;
    long edge_lines = 0;
    long max_id = 0;
    std::vector<Edge> edges;
    while (std::getline(in, raw)) {
        ++line;
        if (is_comment(raw)) continue;
        std::istringstream ls(raw);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok[0] == "p") {
            if (format == GraphFormat::EdgeList) throw ParseError(line, "unexpected header");
            if (n >= 0) throw ParseError(line, "duplicate header");
            const char* want = format == GraphFormat::PaceGr ? "tw" : "edge";
            if (tok.size() != 4 || tok[1] != want)
                throw ParseError(line, std::string("expected 'p ") + want + " n m'");
            n = parse_int(tok[2], line);
            m = parse_int(tok[3], line);
            if (n < 0 || m < 0) throw ParseError(line, "negative header count");
            continue;
        }
        size_t off = 0;
        if (format == GraphFormat::Dimacs) {
            if (tok[0] != "e") throw ParseError(line, "expected 'e u v'");
            off = 1;
        }
        if (format != GraphFormat::EdgeList && n < 0) throw ParseError(line, "edge before header");
        if (tok.size() != off + 2) throw ParseError(line, "expected two vertex ids");
        long u = parse_int(tok[off], line), v = parse_int(tok[off + 1], line);
        if (u < 1 || v < 1 || (n >= 0 && (u > n || v > n)))
            throw ParseError(line, "vertex id out of range");
        if (u == v) throw ParseError(line, "self-loop at vertex " + std::to_string(u));
        max_id = std::max({max_id, u, v});
        edges.emplace_back(static_cast<int>(u - 1), static_cast<int>(v - 1));
        ++edge_lines;
    }
    if (format == GraphFormat::EdgeList) {
        n = max_id;
    } else {
        if (n < 0) throw ParseError(line, "missing header");
        if (edge_lines != m)
            throw ParseError(line, "header declares " + std::to_string(m) + " edges, found " +
                                       std::to_string(edge_lines));
    }
    return Graph::from_edges(static_cast<int>(n), edges);
}

GraphFormat format_from_name(const std::string& name) {
    if (name == "pace-gr" || name == "gr") return GraphFormat::PaceGr;
    if (name == "dimacs") return GraphFormat::Dimacs;
    if (name == "edge-list" || name == "edges") return GraphFormat::EdgeList;
    throw std::invalid_argument("unknown graph format '" + name + "'");
}

GraphFormat guess_format(const std::string& path) {
    auto ends = [&](const std::string& s) {
        return path.size() >= s.size() && path.compare(path.size() - s.size(), s.size(), s) == 0;
    };
    if (ends(".dimacs") || ends(".col")) return GraphFormat::Dimacs;
    if (ends(".edges") || ends(".txt")) return GraphFormat::EdgeList;
    return GraphFormat::PaceGr;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
}

std::string write_pace(const Graph& g) {
    std::ostringstream out;
    out << "p tw " << g.n() << ' ' << g.m() << '\n';
    for (auto [u, v] : g.edges()) out << u + 1 << ' ' << v + 1 << '\n';
    return out.str();
}

std::string multicut_text(const Multicut& mc) {
    std::ostringstream out;
    auto parts = mc.parts();
    for (size_t i = 0; i < parts.size(); ++i) {
        out << "part " << i + 1 << ':';
        for (int v : parts[i]) out << ' ' << v + 1;
        out << '\n';
    }
    return out.str();
}

std::string multicut_json(const Multicut& mc) {
    nlohmann::json j;
    j["parts"] = nlohmann::json::array();
    for (auto& part : mc.parts()) {
        auto arr = nlohmann::json::array();
        for (int v : part) arr.push_back(v + 1);
        j["parts"].push_back(arr);
    }
    j["cut_edges"] = nlohmann::json::array();
    for (auto [u, v] : mc.cut_edges) j["cut_edges"].push_back({u + 1, v + 1});
    return j.dump();
}

}  // namespace mmc

#include "lks/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace lks {

Graph parse_edge_list(std::istream& in) {
    std::string line;
    auto next_line = [&](std::string& out) {
        while (std::getline(in, out)) {
            auto pos = out.find('#');
            if (pos != std::string::npos) out.erase(pos);
            if (out.find_first_not_of(" \t\r") != std::string::npos) return true;
        }
        return false;
    };
    if (!next_line(line)) throw ParseError("edge list: missing header");
    long long n = -1, m = -1;
    {
        std::istringstream hs(line);
        std::string extra;
        if (!(hs >> n >> m) || (hs >> extra) || n < 0 || m < 0) throw ParseError("edge list: bad header '" + line + "'");
    }
    Graph g(static_cast<int>(n));
    for (long long i = 0; i < m; ++i) {
        if (!next_line(line)) throw ParseError("edge list: expected " + std::to_string(m) + " edges, got " + std::to_string(i));
        std::istringstream es(line);
        long long u, v;
        std::string extra;
        if (!(es >> u >> v) || (es >> extra)) throw ParseError("edge list: bad edge line '" + line + "'");
        if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError("edge list: endpoint out of range in '" + line + "'");
        if (u == v) throw ParseError("edge list: self loop at " + std::to_string(u));
        if (!g.add_edge(static_cast<int>(u), static_cast<int>(v))) throw ParseError("edge list: repeated edge '" + line + "'");
    }
    if (next_line(line)) throw ParseError("edge list: trailing data '" + line + "'");
    return g;
}

Graph parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    return parse_edge_list(in);
}

std::string render_edge_list(const Graph& g) {
    std::ostringstream out;
    out << g.n() << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
    return out.str();
}

Json tree_to_json(const RootedTree& t) {
    return Json{{"n", t.n()}, {"root", t.root()}, {"parent", t.parents()}, {"colour", t.colours()}};
}

RootedTree tree_from_json(const Json& j) {
    try {
        int n = j.at("n").get<int>();
        int root = j.at("root").get<int>();
        auto parent = j.at("parent").get<std::vector<int>>();
        if (static_cast<int>(parent.size()) != n) throw ParseError("tree: parent array length differs from n");
        RootedTree t(root, parent);
        if (j.contains("colour")) {
            auto colour = j.at("colour").get<std::vector<int>>();
            if (colour != t.colours()) {
                // accept either 2-colouring, reject improper ones
                std::vector<int> flipped = t.colours();
                for (int& c : flipped) c = 3 - c;
                if (colour != flipped) throw ParseError("tree: colour array is not the proper 2-colouring");
            }
        }
        return t;
    } catch (const Json::exception& e) {
        throw ParseError(std::string("tree json: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("tree json: ") + e.what());
    }
}

Json certificate_to_json(const EmbeddingCertificate& c) {
    return Json{{"map", c.map}, {"provenance", c.provenance}};
}

EmbeddingCertificate certificate_from_json(const Json& j) {
    try {
        EmbeddingCertificate c;
        c.map = j.at("map").get<std::vector<int>>();
        c.provenance = j.value("provenance", std::vector<std::string>(c.map.size()));
        if (c.provenance.size() != c.map.size()) throw ParseError("certificate: provenance length differs from map");
        return c;
    } catch (const Json::exception& e) {
        throw ParseError(std::string("certificate json: ") + e.what());
    }
}

Json graph_to_json(const Graph& g) {
    Json edges = Json::array();
    for (auto [u, v] : g.edges()) edges.push_back({u, v});
    Json j{{"n", g.n()}, {"edges", edges}};
    if (!g.labels().empty()) j["labels"] = g.labels();
    return j;
}

Graph graph_from_json(const Json& j) {
    try {
        Graph g(j.at("n").get<int>());
        for (const auto& e : j.at("edges")) {
            int u = e.at(0).get<int>(), v = e.at(1).get<int>();
            if (u < 0 || v < 0 || u >= g.n() || v >= g.n() || u == v) throw ParseError("graph json: bad edge");
            g.add_edge(u, v);
        }
        if (j.contains("labels")) g.set_labels(j.at("labels").get<std::vector<int>>());
        return g;
    } catch (const Json::exception& e) {
        throw ParseError(std::string("graph json: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("graph json: ") + e.what());
    }
}

Json vertex_set_json(const VertexSet& s) { return Json(s); }

VertexSet vertex_set_from_json(const Json& j) {
    auto v = j.get<std::vector<int>>();
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

}  // namespace lks
